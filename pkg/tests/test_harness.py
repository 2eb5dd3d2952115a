import json

import pytest

from credattack.attacks import BamAttack, make_attack
from credattack.errors import EmptyDataset, FormatError, ValidationError
from credattack.harness import (aggregate_outcome_rows, load_dataset,
                                read_outcome_rows, render_report,
                                run_attack_set, score_pairs, write_outcomes)
from credattack.scoring import ReportRow
from credattack.types import Label

from conftest import FunctionVictim, MappingProvider, keyword_victim


def write(path, text):
    path.write_text(text, encoding="utf-8")
    return path


def test_load_dataset_mixed_parts(tmp_path):
    path = write(tmp_path / "toy.tsv",
                 "label\ttext1\ttext2\n"
                 "0\tclaim only\t\n"
                 "1\tclaim here\tevidence here\n"
                 "0\tanother single\n")
    dataset = load_dataset(path)
    assert dataset.name == "toy"
    assert len(dataset) == 3
    assert [len(i.parts) for i in dataset.instances] == [1, 2, 1]
    assert dataset.instances[1].label is Label.NON_CREDIBLE
    assert [i.id for i in dataset.instances] == ["0", "1", "2"]


def test_load_dataset_without_header(tmp_path):
    path = write(tmp_path / "raw.tsv", "1\tfirst text\n0\tsecond text\n")
    assert len(load_dataset(path)) == 2


def test_load_dataset_bad_label_reports_row(tmp_path):
    path = write(tmp_path / "bad.tsv",
                 "label\ttext1\n0\tok\n0\tok\n0\tok\n2\tbroken\n")
    with pytest.raises(FormatError) as info:
        load_dataset(path)
    assert info.value.row == 5


def test_load_dataset_at_task_scale(tmp_path):
    # Shape check at the size of the largest published task split (595 rows).
    rows = "\n".join(f"{i % 2}\tinstance number {i}" for i in range(595))
    dataset = load_dataset(write(tmp_path / "c19.tsv", rows + "\n"))
    assert len(dataset) == 595


def test_load_dataset_empty_file(tmp_path):
    path = write(tmp_path / "empty.tsv", "")
    with pytest.raises(EmptyDataset):
        load_dataset(path)
    header_only = write(tmp_path / "h.tsv", "label\ttext1\n")
    with pytest.raises(EmptyDataset):
        load_dataset(header_only)


@pytest.fixture
def flip_world(tmp_path):
    """Dataset + victim + attack where every instance flips on one swap."""
    rows = ["label\ttext1"]
    for i in range(10):
        rows.append(f"{i % 2}\tgood story number{i}")
    dataset = load_dataset(write(tmp_path / "set.tsv", "\n".join(rows) + "\n"))
    victim = keyword_victim({"bad": 4.0})
    provider = MappingProvider({"good": [("bad", 0.9)]})
    return dataset, victim, provider


def test_run_attack_set_always_successful(flip_world):
    dataset, victim, provider = flip_world
    attack = BamAttack(provider)
    outcomes, row = run_attack_set(dataset, victim, attack, seed=5)
    assert row.success == 1.0
    assert row.bodega > 0.0
    assert row.task == "set"
    assert row.method == "bam"
    assert len(outcomes) == 10


def test_always_successful_mock_attack_gives_all_ones_row(flip_world):
    from credattack.attacks import AttackOutcome
    from credattack.attacks.base import Attack
    from credattack.scoring import bodega_instance

    class PerfectAttack(Attack):
        method_name = "perfect"
        query_budget = 10_000
        seed = 0

        def run(self, victim, target, *, scorer=None, seed=None):
            victim.classify([target.serialized()])
            text = target.serialized()
            return AttackOutcome(target, text, text, (), True,
                                 bodega_instance(1, 1.0, 1.0), 1, self.name)

    dataset, victim, _ = flip_world
    _, row = run_attack_set(dataset, victim, PerfectAttack(), seed=0)
    assert (row.bodega, row.success, row.semantic, row.character) == \
        (1.0, 1.0, 1.0, 1.0)
    assert row.queries == 1.0


def test_query_accounting_matches_victim_counter(flip_world):
    dataset, victim, provider = flip_world
    before = victim.query_count
    outcomes, row = run_attack_set(dataset, victim, BamAttack(provider), seed=5)
    delta = victim.query_count - before
    assert delta == sum(o.queries_used for o in outcomes)
    assert row.queries == pytest.approx(delta / len(outcomes))


def test_parallelism_does_not_change_results(flip_world):
    dataset, _, provider = flip_world
    attack = make_attack("bam2+genetic", provider=MappingProvider(
        {"good": [("bad", 0.9)], "story": [("tale", 0.8)]}))
    serial_outcomes, serial_row = run_attack_set(
        dataset, keyword_victim({"bad": 4.0}), attack, parallelism=1, seed=3)
    parallel_outcomes, parallel_row = run_attack_set(
        dataset, keyword_victim({"bad": 4.0}), attack, parallelism=8, seed=3)
    assert serial_row == parallel_row
    for a, b in zip(serial_outcomes, parallel_outcomes):
        assert a.adversarial_text == b.adversarial_text
        assert a.queries_used == b.queries_used
        assert a.edit_trace == b.edit_trace


def test_misclassified_instances_are_still_attacked(tmp_path):
    # The victim disagrees with the gold labels; attacks run regardless,
    # and success still means the decision flipped.
    path = write(tmp_path / "m.tsv", "1\tgood story\n0\tgood story\n")
    dataset = load_dataset(path)
    victim = keyword_victim({"bad": 4.0})
    provider = MappingProvider({"good": [("bad", 0.9)]})
    outcomes, row = run_attack_set(dataset, victim, BamAttack(provider), seed=0)
    assert row.success == 1.0


def test_score_pairs_identity_never_succeeds():
    victim = keyword_victim({"bad": 4.0})
    texts = ["good story", "bad story", "plain text"]
    breakdowns, row = score_pairs([(t, t) for t in texts], victim)
    assert row.success == 0.0
    assert row.bodega == 0.0
    assert all(b.con == 0 for b in breakdowns)
    assert row.queries == 2.0


def test_score_pairs_detects_flips():
    victim = keyword_victim({"bad": 4.0})
    _, row = score_pairs([("good story", "bad story")], victim)
    assert row.success == 1.0
    assert 0 < row.bodega <= 1


ROW = ReportRow(task="FC", victim="builtin", method="bam2+genetic",
                bodega=0.684, success=0.97, semantic=0.72, character=0.953,
                queries=123.456, instances=10)


def test_render_markdown_columns():
    document = render_report([ROW], "markdown")
    header = document.splitlines()[0]
    assert header.split("|")[1:-1] == [
        " Task ", " Victim ", " Method ", " BODEGA ", " Success ",
        " Semantic ", " Character ", " Queries "]
    assert "| 0.68 |" in document
    assert "123.46" in document


def test_render_csv_matches_markdown_rounding():
    markdown = render_report([ROW], "markdown")
    csv_doc = render_report([ROW], "csv")
    assert "0.68" in csv_doc and "0.68" in markdown
    assert csv_doc.splitlines()[0] == "Task,Victim,Method,BODEGA,Success,Semantic,Character,Queries"
    assert csv_doc.splitlines()[1].split(",")[3] == "0.68"


def test_render_json_full_precision():
    payload = json.loads(render_report([ROW], "json"))
    assert payload[0]["bodega"] == 0.684
    assert payload[0]["character"] == 0.953


def test_render_rejects_unknown_format():
    with pytest.raises(ValidationError):
        render_report([ROW], "yaml")


def test_outcomes_round_trip(tmp_path, flip_world):
    dataset, victim, provider = flip_world
    outcomes, row = run_attack_set(dataset, victim, BamAttack(provider), seed=5)
    path = tmp_path / "outcomes.ndjson"
    write_outcomes(outcomes, path)
    rows = read_outcome_rows(path)
    assert len(rows) == 10
    rebuilt = aggregate_outcome_rows(rows, task=row.task, victim=row.victim,
                                     method=row.method)
    assert rebuilt == row
    assert all("edits" in r and "original" in r for r in rows)


def test_outcome_edits_record_part(tmp_path):
    from credattack.attacks import ClareAttack
    from credattack.harness import outcome_to_json
    from credattack.providers import StaticSynonymProvider
    from conftest import instance

    provider = StaticSynonymProvider({"evidence": ["proof"]})
    victim = FunctionVictim(lambda t: 0.9 if "proof" in t.split() else 0.1)
    outcome = ClareAttack(provider).run(victim,
                                        instance("claim text", second="some evidence"))
    assert outcome.success
    payload = outcome_to_json(outcome)
    assert payload["edits"][0]["part"] == 1
