"""Shared test doubles and fixtures."""

from __future__ import annotations

import math

import pytest

from credattack.providers import CandidateSubstitute, SubstituteProvider
from credattack.tokenizer import simple_tokens
from credattack.types import Label, TextInstance
from credattack.victims import Victim, VictimScores


class FunctionVictim(Victim):
    """Deterministic victim: p(non-credible) is a pure function of the text."""

    name = "mock"

    def __init__(self, fn, batch_limit=64):
        super().__init__(batch_limit=batch_limit, max_tokens=None)
        self.fn = fn

    def _classify_batch(self, texts):
        return [VictimScores(1.0 - p, p) for p in map(self.fn, texts)]


def keyword_victim(weights: dict[str, float], bias: float = -1.0) -> FunctionVictim:
    """Logistic victim over token counts with hand-picked weights."""

    def fn(text: str) -> float:
        z = bias + sum(weights.get(t, 0.0) for t in simple_tokens(text))
        return 1.0 / (1.0 + math.exp(-z))

    return FunctionVictim(fn)


class RecordingProvider(SubstituteProvider):
    """Wraps a provider and records every (position, k) request."""

    name = "recording"

    def __init__(self, inner: SubstituteProvider):
        self.inner = inner
        self.calls: list[tuple[int, int]] = []

    def candidates(self, tokens, position, k):
        self.calls.append((position, k))
        return self.inner.candidates(tokens, position, k)


class MappingProvider(SubstituteProvider):
    """Candidates from a literal mapping token -> [(token, score), ...]."""

    name = "mapping"

    def __init__(self, mapping, default=()):
        self.mapping = dict(mapping)
        self.default = list(default)

    def candidates(self, tokens, position, k):
        entries = self.mapping.get(tokens[position], self.default)
        return [CandidateSubstitute(t, s) for t, s in entries[:k]
                if t != tokens[position]]


def instance(text: str, label: Label = Label.CREDIBLE,
             second: str | None = None, id: str = "0") -> TextInstance:
    parts = (text,) if second is None else (text, second)
    return TextInstance(id, parts, label)


@pytest.fixture
def simple_instance():
    return instance("the athlete posted good news today")
