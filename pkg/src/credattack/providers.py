"""Substitute-candidate providers and the token filter.

A provider proposes replacement tokens for one position of a tokenized
text. Three kinds exist: nearest neighbors in a word-embedding table, a
static synonym table (also the test double for masked-LM infilling), and
a remote masked-LM reached over the wire protocol. All providers score
candidates in [0, 1] so attacks can threshold uniformly, and none ever
proposes the token already at the queried position.
"""

from __future__ import annotations

import logging
import string
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import FormatError, ValidationError
from .stopwords import STOPWORD_SET
from .types import check_unit_interval

logger = logging.getLogger(__name__)

# Placeholder token attacks put in a slot they want infilled (insert/merge).
MASK_TOKEN = "[MASK]"

SUBWORD_MARKER = "##"

_PUNCT_DIGIT_TOKENS = tuple(". , ; : ! ? ' \" ( ) -".split()) + tuple(string.digits)


@dataclass(frozen=True)
class CandidateSubstitute:
    """A proposed replacement token with a provider-specific score in [0, 1]."""

    token: str
    score: float

    def __post_init__(self):
        if not self.token:
            raise ValidationError("candidate token must be non-empty")
        check_unit_interval(self.score, "candidate score")


class SubstituteProvider:
    """Interface: candidates for the token at ``position`` of ``tokens``."""

    name = "provider"

    def candidates(self, tokens: Sequence[str], position: int,
                   k: int) -> list[CandidateSubstitute]:
        raise NotImplementedError


class EmbeddingTable:
    """Word vectors with L2-normalized rows, loaded from text format."""

    def __init__(self, tokens: Sequence[str], matrix: np.ndarray):
        if matrix.ndim != 2 or len(tokens) != matrix.shape[0]:
            raise ValidationError("one vector per token is required")
        norms = np.linalg.norm(matrix, axis=1, keepdims=True)
        norms[norms == 0.0] = 1.0
        self.tokens = list(tokens)
        self.matrix = matrix / norms
        self.index = {t: i for i, t in enumerate(self.tokens)}
        self.dimension = matrix.shape[1]
        self.normalized = True

    def __contains__(self, token: str) -> bool:
        return self._lookup(token) is not None

    def _lookup(self, token: str) -> Optional[int]:
        i = self.index.get(token)
        if i is None:
            i = self.index.get(token.casefold())
        return i

    def vector(self, token: str) -> Optional[np.ndarray]:
        i = self._lookup(token)
        return None if i is None else self.matrix[i]

    def neighbors(self, token: str, k: int) -> list[CandidateSubstitute]:
        """k nearest neighbors by cosine, descending, the token itself excluded.

        Ties are broken lexicographically so the ordering is deterministic.
        Out-of-vocabulary tokens yield an empty list.
        """
        if k < 1:
            raise ValidationError(f"k must be >= 1, got {k}")
        i = self._lookup(token)
        if i is None:
            return []
        sims = self.matrix @ self.matrix[i]
        order = sorted(
            (j for j in range(len(self.tokens)) if j != i),
            key=lambda j: (-sims[j], self.tokens[j]),
        )
        return [
            CandidateSubstitute(self.tokens[j], float(np.clip(sims[j], 0.0, 1.0)))
            for j in order[:k]
        ]


def load_embeddings(path) -> EmbeddingTable:
    """Load a text word-vector file: token then D decimals per line.

    Vectors are L2-normalized on load. A duplicate token keeps its first
    vector, with a warning; inconsistent dimensions are a FormatError.
    """
    tokens: list[str] = []
    rows: list[list[float]] = []
    seen: set[str] = set()
    dimension = None
    with open(path, "r", encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            fields = line.split()
            if not fields:
                continue
            token, values = fields[0], fields[1:]
            if dimension is None:
                dimension = len(values)
                if dimension == 0:
                    raise FormatError("a vector row needs at least one value", row=lineno)
            if len(values) != dimension:
                raise FormatError(
                    f"expected {dimension} values, got {len(values)}", row=lineno)
            if token in seen:
                logger.warning("duplicate embedding token %r at line %d ignored",
                               token, lineno)
                continue
            try:
                rows.append([float(v) for v in values])
            except ValueError as exc:
                raise FormatError(str(exc), row=lineno) from exc
            tokens.append(token)
            seen.add(token)
    if not tokens:
        raise FormatError(f"no vectors found in {path}")
    return EmbeddingTable(tokens, np.asarray(rows, dtype=np.float64))


class EmbeddingProvider(SubstituteProvider):
    """Nearest-neighbor substitutes from a word-embedding table."""

    name = "embedding"

    def __init__(self, table: EmbeddingTable):
        self.table = table

    def candidates(self, tokens, position, k):
        return self.table.neighbors(tokens[position], k)


class StaticSynonymProvider(SubstituteProvider):
    """Substitutes from a synonym table file: ``token<TAB>syn1,syn2,...``.

    Scores descend linearly from 1.0 over the returned candidates, so the
    file order is the preference order. Doubles as the masked-infill
    provider in tests: give the table a MASK_TOKEN row.
    """

    name = "static"

    def __init__(self, table: dict[str, list[str]]):
        self.table = dict(table)

    @classmethod
    def from_file(cls, path) -> "StaticSynonymProvider":
        table: dict[str, list[str]] = {}
        with open(path, "r", encoding="utf-8") as handle:
            for lineno, line in enumerate(handle, start=1):
                line = line.rstrip("\n")
                if not line.strip():
                    continue
                if "\t" not in line:
                    raise FormatError("expected token<TAB>synonyms", row=lineno)
                token, synonyms = line.split("\t", 1)
                table[token] = [s for s in synonyms.split(",") if s]
        return cls(table)

    def candidates(self, tokens, position, k):
        if k < 1:
            raise ValidationError(f"k must be >= 1, got {k}")
        token = tokens[position]
        synonyms = self.table.get(token)
        if synonyms is None:
            synonyms = self.table.get(token.casefold(), [])
        chosen = [s for s in synonyms if s != token][:k]
        m = len(chosen)
        return [CandidateSubstitute(s, (m - i) / m) for i, s in enumerate(chosen)]


class RemoteProvider(SubstituteProvider):
    """Masked-LM substitutes fetched over the wire protocol."""

    name = "remote"

    def __init__(self, client):
        self.client = client

    def candidates(self, tokens, position, k):
        if k < 1:
            raise ValidationError(f"k must be >= 1, got {k}")
        if not 0 <= position < len(tokens):
            raise ValidationError(f"mask position {position} out of bounds")
        found = self.client.substitutes(list(tokens), position, k)
        original = tokens[position]
        return [c for c in found if c.token != original]


def punct_digit_candidates() -> list[CandidateSubstitute]:
    """Common punctuation and the ten digits, as last-resort substitutes."""
    return [CandidateSubstitute(t, 0.0) for t in _PUNCT_DIGIT_TOKENS]


def _is_punct_or_digits(token: str) -> bool:
    return all(c in string.punctuation or c.isdigit() for c in token)


@dataclass(frozen=True)
class TokenFilter:
    """Removes unusable candidates: stopwords, subword fragments, punctuation.

    The stopword check is case-folded. Applying the filter twice gives the
    same result as applying it once.
    """

    stopwords: frozenset[str] = STOPWORD_SET
    exclude_subwords: bool = True
    allow_punct_digits: bool = False

    def admits(self, token: str) -> bool:
        if token.casefold() in self.stopwords:
            return False
        if self.exclude_subwords and token.startswith(SUBWORD_MARKER):
            return False
        if not self.allow_punct_digits and _is_punct_or_digits(token):
            return False
        return True

    def apply(self, candidates: Iterable[CandidateSubstitute]) -> list[CandidateSubstitute]:
        return [c for c in candidates if self.admits(c.token)]
