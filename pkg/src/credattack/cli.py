"""Command-line interface.

Subcommands:

* ``train-victim`` — fit the built-in linear victim on a corpus TSV and
  save it in the documented model format.
* ``attack`` — run a method or ``+``-joined cascade over a dataset,
  writing outcomes NDJSON, a rendered report, and run metadata.
* ``score`` — score pre-made original/adversarial pairs (NDJSON with
  ``original`` and ``adversarial`` fields) against a victim.
* ``report`` — re-render a report from persisted outcomes.
* ``gen-fixtures`` — emit the synthetic corpora, embeddings, and synonym
  table used by tests and the quickstart.

Exit status: 0 on success, 1 on usage errors (including unknown method
names), 2 on runtime failures. The ``CREDATTACK_ENDPOINT`` environment
variable supplies a default remote server target.
"""

from __future__ import annotations

import argparse
import json
import os
import platform
import sys
import time
from pathlib import Path

from . import __version__
from .attacks import catalog_names, make_attack
from .errors import CredAttackError, ValidationError
from .fixtures import generate_fixtures
from .harness import (aggregate_outcome_rows, load_dataset, read_outcome_rows,
                      render_report, run_attack_set, score_pairs,
                      write_outcomes)
from .protocol import open_client
from .providers import (EmbeddingProvider, StaticSynonymProvider,
                        RemoteProvider, load_embeddings)
from .scoring import (EmbeddingCosineScorer, RemoteScorer, TokenOverlapScorer)
from .victims import LinearVictim, RemoteVictim

ENDPOINT_ENV = "CREDATTACK_ENDPOINT"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _remote_target(rest: str) -> str:
    target = rest or os.environ.get(ENDPOINT_ENV, "")
    if not target:
        raise UsageError(
            f"remote spec needs a target (or set {ENDPOINT_ENV})")
    return target


def _build_victim(spec: str):
    kind, _, rest = spec.partition(":")
    if kind == "builtin":
        if not rest:
            raise UsageError("builtin victim spec needs a model path: builtin:PATH")
        return LinearVictim.load(rest)
    if kind == "remote":
        return RemoteVictim(open_client(_remote_target(rest)))
    raise UsageError(f"unknown victim spec {spec!r} (builtin:PATH or remote:TARGET)")


def _build_provider(spec: str):
    kind, _, rest = spec.partition(":")
    if kind == "embedding":
        return EmbeddingProvider(load_embeddings(rest))
    if kind == "static":
        return StaticSynonymProvider.from_file(rest)
    if kind == "remote":
        return RemoteProvider(open_client(_remote_target(rest)))
    raise UsageError(
        f"unknown provider spec {spec!r} (embedding:PATH, static:PATH, remote:TARGET)")


def _build_scorer(spec: str):
    kind, _, rest = spec.partition(":")
    if kind == "token-overlap":
        return TokenOverlapScorer()
    if kind == "embedding":
        return EmbeddingCosineScorer(load_embeddings(rest))
    if kind == "remote":
        return RemoteScorer(open_client(_remote_target(rest)))
    raise UsageError(
        f"unknown scorer spec {spec!r} (token-overlap, embedding:PATH, remote:TARGET)")


def _write_metadata(out_dir: Path, args_dict: dict, attack=None) -> None:
    meta = {
        "version": __version__,
        "python": platform.python_version(),
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
        "arguments": {k: v for k, v in args_dict.items() if k != "func"},
    }
    if attack is not None:
        meta["attack_params"] = repr(attack)
    with open(out_dir / "run_meta.json", "w", encoding="utf-8") as handle:
        json.dump(meta, handle, indent=2, ensure_ascii=False)
        handle.write("\n")


def _cmd_train_victim(args) -> int:
    dataset = load_dataset(args.corpus)
    victim = LinearVictim(epochs=args.epochs, learning_rate=args.learning_rate,
                          seed=args.seed)
    victim.fit(dataset.instances)
    victim.save(args.out)
    print(f"trained on {len(dataset)} instances; "
          f"training accuracy {victim.train_accuracy_:.3f}; saved to {args.out}")
    return 0


def _check_method(spec: str) -> None:
    names = [n.strip() for n in spec.split("+") if n.strip()]
    unknown = [n for n in names if n not in catalog_names()]
    if not names or unknown:
        raise UsageError(
            f"unknown method {'+'.join(unknown) or spec!r}; "
            f"available methods: {', '.join(catalog_names())} "
            "(join with '+' for a cascade)")


def _cmd_attack(args) -> int:
    _check_method(args.method)
    dataset = load_dataset(args.dataset)
    victim = _build_victim(args.victim)
    table = load_embeddings(args.embeddings) if args.embeddings else None
    provider = _build_provider(args.provider) if args.provider else None
    try:
        attack = make_attack(args.method, provider=provider, table=table,
                             query_budget=args.budget, seed=args.seed)
    except ValidationError as exc:
        raise UsageError(str(exc)) from exc
    scorer = _build_scorer(args.scorer)
    outcomes, row = run_attack_set(dataset, victim, attack, scorer=scorer,
                                   parallelism=args.parallelism, seed=args.seed)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    write_outcomes(outcomes, out_dir / "outcomes.ndjson")
    for fmt, suffix in (("markdown", "md"), ("csv", "csv"), ("json", "json")):
        (out_dir / f"report.{suffix}").write_text(render_report([row], fmt),
                                                  encoding="utf-8")
    _write_metadata(out_dir, vars(args), attack)
    print(render_report([row], "markdown"), end="")
    print(f"outputs in {out_dir}")
    return 0


def _cmd_score(args) -> int:
    victim = _build_victim(args.victim)
    scorer = _build_scorer(args.scorer)
    pairs = []
    with open(args.pairs, "r", encoding="utf-8") as handle:
        for line in handle:
            if not line.strip():
                continue
            row = json.loads(line)
            original, adversarial = row["original"], row["adversarial"]
            if isinstance(original, list):
                original = "\t".join(original)
            if isinstance(adversarial, list):
                adversarial = "\t".join(adversarial)
            pairs.append((original, adversarial))
    _, report_row = score_pairs(pairs, victim, scorer=scorer,
                                task=Path(args.pairs).stem)
    print(render_report([report_row], args.format), end="")
    return 0


def _cmd_report(args) -> int:
    rows = read_outcome_rows(args.outcomes)
    row = aggregate_outcome_rows(rows, task=args.task, victim=args.victim,
                                 method=rows[0].get("method", "unknown"))
    document = render_report([row], args.format)
    if args.out:
        Path(args.out).write_text(document, encoding="utf-8")
    print(document, end="")
    return 0


def _cmd_gen_fixtures(args) -> int:
    paths = generate_fixtures(args.out_dir, train_count=args.train_count,
                              attack_count=args.attack_count, seed=args.seed)
    for name, path in paths.items():
        print(f"{name}: {path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="credattack",
                     description="Adversarial robustness evaluation for "
                                 "binary credibility classifiers")
    sub = parser.add_subparsers(dest="command", required=True)

    train = sub.add_parser("train-victim", help="fit the built-in victim")
    train.add_argument("--corpus", required=True)
    train.add_argument("--out", required=True)
    train.add_argument("--epochs", type=int, default=50)
    train.add_argument("--learning-rate", type=float, default=0.5)
    train.add_argument("--seed", type=int, default=0)
    train.set_defaults(func=_cmd_train_victim)

    attack = sub.add_parser("attack", help="attack a dataset")
    attack.add_argument("--dataset", required=True)
    attack.add_argument("--victim", required=True,
                        help="builtin:PATH or remote:TARGET")
    attack.add_argument("--method", required=True,
                        help="catalog name, '+'-joined for cascades")
    attack.add_argument("--scorer", default="token-overlap")
    attack.add_argument("--provider", default=None,
                        help="embedding:PATH, static:PATH, or remote:TARGET")
    attack.add_argument("--embeddings", default=None,
                        help="word-vector file for embedding-based methods")
    attack.add_argument("--budget", type=int, default=10_000)
    attack.add_argument("--seed", type=int, default=0)
    attack.add_argument("--parallelism", type=int, default=1)
    attack.add_argument("--out-dir", required=True)
    attack.set_defaults(func=_cmd_attack)

    score = sub.add_parser("score", help="score original/adversarial pairs")
    score.add_argument("--pairs", required=True,
                       help="NDJSON with original and adversarial fields")
    score.add_argument("--victim", required=True)
    score.add_argument("--scorer", default="token-overlap")
    score.add_argument("--format", default="markdown",
                       choices=("markdown", "csv", "json"))
    score.set_defaults(func=_cmd_score)

    report = sub.add_parser("report", help="render a report from outcomes")
    report.add_argument("--outcomes", required=True)
    report.add_argument("--format", default="markdown",
                        choices=("markdown", "csv", "json"))
    report.add_argument("--task", default="task")
    report.add_argument("--victim", default="victim")
    report.add_argument("--out", default=None)
    report.set_defaults(func=_cmd_report)

    fixtures = sub.add_parser("gen-fixtures", help="emit synthetic test data")
    fixtures.add_argument("--out-dir", required=True)
    fixtures.add_argument("--train-count", type=int, default=200)
    fixtures.add_argument("--attack-count", type=int, default=50)
    fixtures.add_argument("--seed", type=int, default=0)
    fixtures.set_defaults(func=_cmd_gen_fixtures)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (CredAttackError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
