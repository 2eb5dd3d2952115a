"""The evaluation metric: confusion x semantic x character, averaged per run.

The per-instance score is the product of three components in [0, 1]:

* confusion — 1 if the perturbation flipped the victim's decision, else 0;
* semantic — similarity of meaning between original and adversarial text;
* character — 1 minus the normalized Levenshtein distance.

A learned semantic metric is deliberately not embedded. The default scorer
is a dependency-free token-overlap F1; a word-embedding cosine proxy and a
remote scorer (for a server wrapping a learned metric) plug into the same
interface.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import EmptyRun, ValidationError
from .tokenizer import simple_tokens
from .types import Label, check_unit_interval

_SENTENCE_SPLIT = re.compile(r"(?<=[.!?])\s+")


def levenshtein(a: str, b: str) -> int:
    """Minimal number of character edits transforming ``a`` into ``b``.

    Counted over Unicode scalar values with the classic two-row dynamic
    program; insertions, deletions and substitutions all cost 1.
    """
    if a == b:
        return 0
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return len(a)
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        current = [i]
        for j, cb in enumerate(b, start=1):
            current.append(min(
                previous[j] + 1,
                current[j - 1] + 1,
                previous[j - 1] + (ca != cb),
            ))
        previous = current
    return previous[-1]


def char_score(a: str, b: str) -> float:
    """1 - lev(a, b) / max(|a|, |b|); both-empty is defined as 1.0."""
    longest = max(len(a), len(b))
    if longest == 0:
        return 1.0
    return 1.0 - levenshtein(a, b) / longest


def con_score(original_pred: Label, adversarial_pred: Label) -> int:
    """1 if the victim's decision flipped, else 0."""
    return int(Label(original_pred) != Label(adversarial_pred))


class SemanticScorer:
    """Interface for semantic similarity scorers.

    Implementations must be safe for concurrent calls and must score any
    non-empty text against itself as 1.0, clamping the output to [0, 1].
    """

    name = "semantic"

    def score(self, a: str, b: str) -> float:
        raise NotImplementedError


class TokenOverlapScorer(SemanticScorer):
    """Token-level F1 between two texts, case-folded, over multiset overlap."""

    name = "token-overlap"

    def score(self, a: str, b: str) -> float:
        tokens_a = [t.casefold() for t in simple_tokens(a)]
        tokens_b = [t.casefold() for t in simple_tokens(b)]
        if not tokens_a or not tokens_b:
            return 1.0 if tokens_a == tokens_b else 0.0
        counts = {}
        for t in tokens_a:
            counts[t] = counts.get(t, 0) + 1
        overlap = 0
        for t in tokens_b:
            if counts.get(t, 0) > 0:
                counts[t] -= 1
                overlap += 1
        if overlap == 0:
            return 0.0
        precision = overlap / len(tokens_b)
        recall = overlap / len(tokens_a)
        return 2 * precision * recall / (precision + recall)


class EmbeddingCosineScorer(SemanticScorer):
    """Clamped cosine similarity of mean word vectors.

    Out-of-vocabulary tokens contribute nothing; a text with no known
    tokens scores 0 against anything except an identical text.
    """

    name = "embedding-cosine"

    def __init__(self, table):
        self.table = table

    def _mean_vector(self, text: str):
        vectors = [self.table.vector(t) for t in simple_tokens(text)]
        vectors = [v for v in vectors if v is not None]
        if not vectors:
            return None
        return np.mean(vectors, axis=0)

    def score(self, a: str, b: str) -> float:
        if a == b:
            return 1.0
        va, vb = self._mean_vector(a), self._mean_vector(b)
        if va is None or vb is None:
            return 0.0
        denom = float(np.linalg.norm(va) * np.linalg.norm(vb))
        if denom == 0.0:
            return 0.0
        return float(np.clip(np.dot(va, vb) / denom, 0.0, 1.0))


def split_sentences(text: str) -> list[str]:
    """Split on sentence-final punctuation followed by whitespace."""
    return [s for s in _SENTENCE_SPLIT.split(text) if s.strip()]


class RemoteScorer(SemanticScorer):
    """Semantic scoring delegated over the wire protocol.

    Long texts are split into sentences, sentence pairs are scored
    index-wise, and the mean is taken over the longer side's sentence
    count; unpaired sentences contribute 0. Transport failures abort the
    run (ScorerUnavailable), never silently fall back to a proxy.
    """

    name = "remote"

    def __init__(self, client):
        self.client = client

    def score(self, a: str, b: str) -> float:
        if a == b:
            return 1.0
        sents_a, sents_b = split_sentences(a), split_sentences(b)
        if len(sents_a) <= 1 and len(sents_b) <= 1:
            return self.client.semantic(a, b)
        paired = min(len(sents_a), len(sents_b))
        total = sum(self.client.semantic(sents_a[i], sents_b[i]) for i in range(paired))
        return total / max(len(sents_a), len(sents_b))


@dataclass(frozen=True)
class ScoreBreakdown:
    """Per-instance score components; the product is checked at construction."""

    con: int
    sem: float
    char: float
    bodega: float

    def __post_init__(self):
        if self.con not in (0, 1):
            raise ValidationError(f"confusion component must be 0 or 1, got {self.con}")
        check_unit_interval(self.sem, "semantic component")
        check_unit_interval(self.char, "character component")
        if abs(self.bodega - self.con * self.sem * self.char) > 1e-12:
            raise ValidationError("score is not the product of its components")


def bodega_instance(con: int, sem: float, char: float) -> ScoreBreakdown:
    """Combine components into the per-instance score (their product)."""
    return ScoreBreakdown(con=con, sem=sem, char=char, bodega=con * sem * char)


@dataclass(frozen=True)
class ReportRow:
    """Aggregate over one attack set: means of every component and of queries."""

    task: str
    victim: str
    method: str
    bodega: float
    success: float
    semantic: float
    character: float
    queries: float
    instances: int


def aggregate_scores(
    breakdowns: Sequence[ScoreBreakdown],
    query_counts: Sequence[int],
    *,
    task: str = "",
    victim: str = "",
    method: str = "",
) -> ReportRow:
    """Mean of per-instance scores (failures included), not product of means."""
    if not breakdowns:
        raise EmptyRun("cannot aggregate an empty outcome list")
    if len(breakdowns) != len(query_counts):
        raise ValidationError("one query count per breakdown is required")
    n = len(breakdowns)
    return ReportRow(
        task=task,
        victim=victim,
        method=method,
        bodega=sum(s.bodega for s in breakdowns) / n,
        success=sum(s.con for s in breakdowns) / n,
        semantic=sum(s.sem for s in breakdowns) / n,
        character=sum(s.char for s in breakdowns) / n,
        queries=sum(query_counts) / n,
        instances=n,
    )
