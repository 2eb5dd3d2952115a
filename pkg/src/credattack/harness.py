"""Run orchestration: datasets in, outcomes and report rows out.

Datasets are UTF-8 TSV files with columns label, text1 and an optional
text2; a header line is detected by a non-numeric first field. Attacks
run per instance with seeds derived from the master seed and the
instance id, so the report is invariant under the parallelism degree.
Outcomes persist as newline-delimited JSON, one object per instance,
free of timestamps so reruns are byte-identical.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .attacks import Attack, AttackOutcome
from .errors import EmptyDataset, FormatError, ValidationError
from .rng import derive_seed
from .scoring import (ReportRow, ScoreBreakdown, SemanticScorer,
                      TokenOverlapScorer, aggregate_scores, bodega_instance,
                      char_score, con_score)
from .types import Label, TextInstance
from .victims import Victim, predicted_label


@dataclass(frozen=True)
class TaskDataset:
    name: str
    instances: tuple[TextInstance, ...]

    def __len__(self) -> int:
        return len(self.instances)


def load_dataset(path, name: Optional[str] = None) -> TaskDataset:
    """Load a TSV dataset; see the module docstring for the format."""
    path = Path(path)
    instances = []
    with open(path, "r", encoding="utf-8") as handle:
        for row, line in enumerate(handle, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            fields = line.split("\t")
            if row == 1 and not fields[0].strip().lstrip("-").isdigit():
                continue  # header
            raw_label = fields[0].strip()
            if raw_label not in ("0", "1"):
                raise FormatError(f"label must be 0 or 1, got {raw_label!r}", row=row)
            parts = [f for f in (fields[1:3] if len(fields) > 1 else []) if f.strip()]
            if not parts:
                raise FormatError("a text column is required", row=row)
            instances.append(TextInstance(str(len(instances)), tuple(parts),
                                          Label(int(raw_label))))
    if not instances:
        raise EmptyDataset(f"no instances in {path}")
    return TaskDataset(name or path.stem, tuple(instances))


def run_attack_set(dataset: TaskDataset, victim: Victim, attack: Attack, *,
                   scorer: Optional[SemanticScorer] = None,
                   parallelism: int = 1,
                   seed: int = 0) -> tuple[list[AttackOutcome], ReportRow]:
    """Attack every instance and aggregate one report row.

    Instances the victim already misclassifies are attacked like any
    other: the confusion score only asks whether the decision flipped.
    """
    if not dataset.instances:
        raise EmptyDataset(f"dataset {dataset.name} is empty")
    scorer = scorer if scorer is not None else TokenOverlapScorer()

    def attack_one(instance: TextInstance) -> AttackOutcome:
        return attack.run(victim, instance, scorer=scorer,
                          seed=derive_seed(seed, instance.id))

    if parallelism <= 1:
        outcomes = [attack_one(instance) for instance in dataset.instances]
    else:
        with ThreadPoolExecutor(max_workers=parallelism) as pool:
            outcomes = list(pool.map(attack_one, dataset.instances))
    row = aggregate_scores([o.scores for o in outcomes],
                           [o.queries_used for o in outcomes],
                           task=dataset.name, victim=victim.name,
                           method=attack.name)
    return outcomes, row


def score_pairs(pairs: Sequence[tuple[str, str]], victim: Victim, *,
                scorer: Optional[SemanticScorer] = None, task: str = "pairs",
                method: str = "external") -> tuple[list[ScoreBreakdown], ReportRow]:
    """Score pre-made (original, adversarial) texts against a victim."""
    if not pairs:
        raise EmptyDataset("no pairs to score")
    scorer = scorer if scorer is not None else TokenOverlapScorer()
    breakdowns = []
    for original, adversarial in pairs:
        scored = victim.classify([original, adversarial])
        con = con_score(predicted_label(scored[0]), predicted_label(scored[1]))
        breakdowns.append(bodega_instance(con, scorer.score(original, adversarial),
                                          char_score(original, adversarial)))
    row = aggregate_scores(breakdowns, [2] * len(pairs), task=task,
                           victim=victim.name, method=method)
    return breakdowns, row


REPORT_COLUMNS = ("Task", "Victim", "Method", "BODEGA", "Success", "Semantic",
                  "Character", "Queries")


def _row_cells(row: ReportRow) -> list[str]:
    return [row.task, row.victim, row.method,
            f"{row.bodega:.2f}", f"{row.success:.2f}", f"{row.semantic:.2f}",
            f"{row.character:.2f}", f"{row.queries:.2f}"]


def render_report(rows: Sequence[ReportRow], format: str = "markdown") -> str:
    """Render rows as a markdown table, CSV, or JSON document."""
    if not rows:
        raise EmptyDataset("report has no rows")
    if format == "markdown":
        lines = ["| " + " | ".join(REPORT_COLUMNS) + " |",
                 "|" + "|".join(["---"] * len(REPORT_COLUMNS)) + "|"]
        lines += ["| " + " | ".join(_row_cells(row)) + " |" for row in rows]
        return "\n".join(lines) + "\n"
    if format == "csv":
        lines = [",".join(REPORT_COLUMNS)]
        lines += [",".join(_row_cells(row)) for row in rows]
        return "\n".join(lines) + "\n"
    if format == "json":
        payload = [{
            "task": row.task, "victim": row.victim, "method": row.method,
            "bodega": row.bodega, "success": row.success,
            "semantic": row.semantic, "character": row.character,
            "queries": row.queries, "instances": row.instances,
        } for row in rows]
        return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"
    raise ValidationError(f"unknown report format {format!r}")


def outcome_to_json(outcome: AttackOutcome) -> dict:
    """JSON form of one outcome; the edited part index is derived per edit."""
    from .tokenizer import tokenize_instance

    boundary = tokenize_instance(outcome.instance).part_boundary
    edits = []
    for edit in outcome.edit_trace:
        part = 0 if boundary is None or edit.position < boundary else 1
        edits.append({"kind": edit.kind.value, "position": edit.position,
                      "before": edit.before, "after": edit.after,
                      "iteration": edit.iteration, "part": part})
    return {
        "id": outcome.instance.id,
        "label": int(outcome.instance.label),
        "original": outcome.original_text,
        "adversarial": outcome.adversarial_text,
        "success": outcome.success,
        "method": outcome.method_used,
        "scores": {"con": outcome.scores.con, "sem": outcome.scores.sem,
                   "char": outcome.scores.char, "bodega": outcome.scores.bodega},
        "queries": outcome.queries_used,
        "edits": edits,
    }


def write_outcomes(outcomes: Iterable[AttackOutcome], path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for outcome in outcomes:
            handle.write(json.dumps(outcome_to_json(outcome), ensure_ascii=False,
                                    sort_keys=True) + "\n")


def read_outcome_rows(path) -> list[dict]:
    rows = []
    with open(path, "r", encoding="utf-8") as handle:
        for line in handle:
            if line.strip():
                rows.append(json.loads(line))
    if not rows:
        raise EmptyDataset(f"no outcomes in {path}")
    return rows


def aggregate_outcome_rows(rows: Sequence[dict], *, task: str, victim: str,
                           method: str) -> ReportRow:
    """Rebuild a report row from persisted outcome objects."""
    breakdowns = [ScoreBreakdown(con=r["scores"]["con"], sem=r["scores"]["sem"],
                                 char=r["scores"]["char"],
                                 bodega=r["scores"]["bodega"]) for r in rows]
    return aggregate_scores(breakdowns, [r["queries"] for r in rows],
                            task=task, victim=victim, method=method)
