import json

import pytest

from credattack.cli import main


def run_cli(*args) -> int:
    return main(list(args))


@pytest.fixture(scope="module")
def workspace(tmp_path_factory):
    """gen-fixtures + train-victim once for the whole module."""
    root = tmp_path_factory.mktemp("cli")
    fixtures = root / "fixtures"
    assert run_cli("gen-fixtures", "--out-dir", str(fixtures),
                   "--train-count", "120", "--attack-count", "12") == 0
    model = root / "victim.lv"
    assert run_cli("train-victim", "--corpus", str(fixtures / "train.tsv"),
                   "--out", str(model), "--epochs", "40", "--seed", "1") == 0
    return root, fixtures, model


def test_gen_fixtures_outputs_exist(workspace):
    _, fixtures, _ = workspace
    for name in ("train.tsv", "attack.tsv", "embeddings.txt", "synonyms.tsv"):
        assert (fixtures / name).exists()


def test_attack_writes_outputs(workspace, tmp_path):
    root, fixtures, model = workspace
    out = tmp_path / "run"
    code = run_cli("attack", "--dataset", str(fixtures / "attack.tsv"),
                   "--victim", f"builtin:{model}",
                   "--method", "bam2+genetic",
                   "--embeddings", str(fixtures / "embeddings.txt"),
                   "--seed", "7", "--out-dir", str(out))
    assert code == 0
    assert (out / "outcomes.ndjson").exists()
    assert (out / "report.md").exists()
    assert (out / "report.csv").exists()
    assert (out / "report.json").exists()
    meta = json.loads((out / "run_meta.json").read_text())
    assert meta["arguments"]["seed"] == 7
    report = json.loads((out / "report.json").read_text())
    assert report[0]["method"] == "bam2+genetic"
    assert 0.0 <= report[0]["bodega"] <= 1.0


def test_identical_invocations_are_byte_identical(workspace, tmp_path):
    root, fixtures, model = workspace
    runs = []
    for name in ("a", "b"):
        out = tmp_path / name
        assert run_cli("attack", "--dataset", str(fixtures / "attack.tsv"),
                       "--victim", f"builtin:{model}",
                       "--method", "deepwordbug",
                       "--seed", "11", "--out-dir", str(out)) == 0
        runs.append((out / "outcomes.ndjson").read_bytes())
    assert runs[0] == runs[1]


def test_parallelism_flag_preserves_report(workspace, tmp_path):
    root, fixtures, model = workspace
    reports = []
    for parallelism, name in (("1", "p1"), ("8", "p8")):
        out = tmp_path / name
        assert run_cli("attack", "--dataset", str(fixtures / "attack.tsv"),
                       "--victim", f"builtin:{model}",
                       "--method", "gswse+textfooler",
                       "--embeddings", str(fixtures / "embeddings.txt"),
                       "--seed", "3", "--parallelism", parallelism,
                       "--out-dir", str(out)) == 0
        reports.append((out / "report.json").read_bytes())
        reports.append((out / "outcomes.ndjson").read_bytes())
    assert reports[0] == reports[2]
    assert reports[1] == reports[3]


def test_report_subcommand_round_trips(workspace, tmp_path, capsys):
    root, fixtures, model = workspace
    out = tmp_path / "run"
    assert run_cli("attack", "--dataset", str(fixtures / "attack.tsv"),
                   "--victim", f"builtin:{model}", "--method", "deepwordbug",
                   "--seed", "2", "--out-dir", str(out)) == 0
    capsys.readouterr()
    assert run_cli("report", "--outcomes", str(out / "outcomes.ndjson"),
                   "--format", "csv") == 0
    printed = capsys.readouterr().out
    assert printed.startswith("Task,Victim,Method")


def test_score_subcommand_identity_pairs(workspace, tmp_path, capsys):
    root, fixtures, model = workspace
    pairs = tmp_path / "pairs.ndjson"
    rows = [{"original": "fine0 report today", "adversarial": "fine0 report today"},
            {"original": ["claim fine1", "story fine2"],
             "adversarial": ["claim fine1", "story fine2"]}]
    pairs.write_text("\n".join(json.dumps(r) for r in rows) + "\n",
                     encoding="utf-8")
    assert run_cli("score", "--pairs", str(pairs),
                   "--victim", f"builtin:{model}", "--format", "json") == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload[0]["success"] == 0.0
    assert payload[0]["bodega"] == 0.0


def test_unknown_method_is_usage_error(workspace, capsys):
    root, fixtures, model = workspace
    code = run_cli("attack", "--dataset", str(fixtures / "attack.tsv"),
                   "--victim", f"builtin:{model}", "--method", "nosuch",
                   "--out-dir", str(root / "x"))
    assert code == 1
    err = capsys.readouterr().err
    assert "bam2" in err and "genetic" in err and "clare" in err


def test_missing_resource_is_usage_error(workspace, capsys):
    root, fixtures, model = workspace
    code = run_cli("attack", "--dataset", str(fixtures / "attack.tsv"),
                   "--victim", f"builtin:{model}", "--method", "gswse",
                   "--out-dir", str(root / "x"))
    assert code == 1


def test_runtime_error_exit_code(tmp_path):
    code = run_cli("train-victim", "--corpus", str(tmp_path / "missing.tsv"),
                   "--out", str(tmp_path / "model.lv"))
    assert code == 2


def test_bad_flag_is_usage_error(capsys):
    assert run_cli("attack", "--no-such-flag") == 1
