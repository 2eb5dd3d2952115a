"""Conformance of the reference model server (server/) over real HTTP.

Spawns the compiled Node server with a victim model trained by this
engine, then drives it through the engine's own remote client stack.
Skipped when node or the compiled server is unavailable.
"""

import json
import shutil
import subprocess
from pathlib import Path

import pytest
import requests

from credattack.fixtures import write_synonyms
from credattack.protocol import HttpClient
from credattack.providers import RemoteProvider
from credattack.scoring import RemoteScorer, TokenOverlapScorer
from credattack.types import Label, TextInstance
from credattack.victims import LinearVictim, RemoteVictim

SERVER_DIR = Path(__file__).resolve().parent.parent / "server"


def _ensure_built() -> Path:
    entry = SERVER_DIR / "dist" / "cli.js"
    if entry.exists():
        return entry
    if not shutil.which("npm"):
        pytest.skip("npm unavailable; reference server not built")
    build = subprocess.run(["npm", "run", "build"], cwd=SERVER_DIR,
                           capture_output=True, text=True)
    if build.returncode != 0 or not entry.exists():
        pytest.skip(f"reference server build failed: {build.stderr[-400:]}")
    return entry


@pytest.fixture(scope="module")
def server(tmp_path_factory):
    if not shutil.which("node"):
        pytest.skip("node unavailable")
    entry = _ensure_built()
    work = tmp_path_factory.mktemp("server")

    corpus = [TextInstance(str(i), (text,), label) for i, (text, label) in enumerate([
        ("good fine story", Label.CREDIBLE),
        ("fine good news today", Label.CREDIBLE),
        ("bad awful story", Label.NON_CREDIBLE),
        ("awful bad news today", Label.NON_CREDIBLE),
    ])]
    victim = LinearVictim(epochs=30, seed=2).fit(corpus)
    model_path = work / "victim.lv"
    victim.save(model_path)
    synonyms_path = work / "synonyms.tsv"
    write_synonyms(synonyms_path)

    config_path = work / "config.json"
    config_path.write_text(json.dumps({
        "victim_model": str(model_path),
        "infill_model": str(synonyms_path),
        "scorer_model": "token-overlap",
        "deterministic": True,
        "port": 0,
    }), encoding="utf-8")

    proc = subprocess.Popen(
        ["node", str(entry), "serve", "--config", str(config_path)],
        cwd=SERVER_DIR, stdout=subprocess.PIPE, stderr=subprocess.PIPE)
    try:
        line = proc.stdout.readline().decode("utf-8")
        if not line:
            raise RuntimeError(proc.stderr.read().decode("utf-8"))
        startup = json.loads(line)
        yield startup["listening"], victim
    finally:
        proc.terminate()
        proc.wait(timeout=10)


def test_classify_conformance_and_parity(server):
    endpoint, local_victim = server
    remote = RemoteVictim(HttpClient(endpoint))
    texts = ["good fine story", "bad awful story", "something new here",
             "BAD news", "Stay safe."]
    remote_scores = remote.classify(texts)
    local_scores = local_victim.classify(texts)
    for r, l in zip(remote_scores, local_scores):
        assert r.p_credible + r.p_noncredible == pytest.approx(1.0, abs=1e-9)
        assert r.p_noncredible == pytest.approx(l.p_noncredible, abs=1e-9)
    assert remote.query_count == len(texts)
    print("PASS: [SECONDARY] classify conformance incl. probability-sum validation")


def test_substitutes_conformance(server):
    endpoint, _ = server
    provider = RemoteProvider(HttpClient(endpoint))
    found = provider.candidates(["the", "fine0", "story"], 1, 5)
    assert found, "synonym table should cover the fixture markers"
    assert all(0.0 <= c.score <= 1.0 for c in found)
    assert all(c.token != "fine0" for c in found)
    infills = provider.candidates(["a", "[MASK]", "b"], 1, 3)
    assert len(infills) <= 3
    print("PASS: [SECONDARY] substitutes conformance incl. score bounds")


def test_semantic_conformance(server):
    endpoint, _ = server
    scorer = RemoteScorer(HttpClient(endpoint))
    assert scorer.score("same text", "same text") == 1.0
    value = scorer.score("a b c", "a b d")
    assert value == pytest.approx(TokenOverlapScorer().score("a b c", "a b d"),
                                  abs=1e-9)
    print("PASS: [SECONDARY] semantic conformance")


def test_deterministic_mode_identical_responses(server):
    endpoint, _ = server
    body = json.dumps({"version": "1", "kind": "classify", "id": "77",
                       "payload": {"texts": ["bad news", "fine story"]}})
    first = requests.post(f"{endpoint}/v1/classify", data=body, timeout=10)
    second = requests.post(f"{endpoint}/v1/classify", data=body, timeout=10)
    assert first.content == second.content
    print("PASS: [SECONDARY] deterministic mode returns identical responses")


def test_malformed_requests_rejected(server):
    endpoint, _ = server
    raw = requests.post(f"{endpoint}/v1/classify", data="not an envelope",
                        timeout=10)
    assert raw.status_code == 400
    # The engine validates payloads before sending, so an invalid
    # mask_position has to be posted raw to reach the server's own check.
    bad = json.dumps({"version": "1", "kind": "substitutes", "id": "5",
                      "payload": {"tokens": ["a"], "mask_position": 7, "k": 2}})
    reply = requests.post(f"{endpoint}/v1/substitutes", data=bad, timeout=10)
    assert reply.status_code == 200
    assert reply.json()["payload"]["error"] == "invalid_payload"
    print("PASS: [SECONDARY] malformed requests rejected")


def test_victim_attackable_end_to_end(server):
    """The engine can actually attack the served victim."""
    from credattack.attacks import make_attack
    from credattack.providers import StaticSynonymProvider

    endpoint, _ = server
    victim = RemoteVictim(HttpClient(endpoint))
    provider = StaticSynonymProvider({"good": ["bad"], "fine": ["awful"]})
    attack = make_attack("bam", provider=provider, seed=3)
    outcome = attack.run(victim, TextInstance("0", ("good fine story",),
                                              Label.CREDIBLE))
    assert outcome.success
    assert outcome.queries_used <= attack.query_budget
    print("PASS: [SECONDARY] remote victim attackable end to end")
