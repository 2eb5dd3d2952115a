"""Word-importance rankings.

Two schemes decide which positions to edit first:

* DIR — mask each word with the literal ``[UNK]`` token and rank by the
  drop in the probability of the originally predicted class.
* NIR — try every substitute candidate in each slot and rank by the
  largest probability gap achieved toward the opposite class. A position
  with no candidates gets -inf and sorts last.

Both orderings break ties by ascending position index, so rankings are
deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from ..providers import SubstituteProvider, TokenFilter
from ..tokenizer import detokenize
from ..types import TokenizedText
from ..victims import VictimScores, predicted_label
from .base import BudgetedVictim, prob_opposite

UNK_TOKEN = "[UNK]"
DEFAULT_RANKING_CANDIDATES = 36


@dataclass(frozen=True)
class ImportanceRanking:
    """Positions ordered most-important-first with their gap scores."""

    positions: tuple[int, ...]
    gaps: tuple[float, ...]
    scheme: str

    def __iter__(self):
        return iter(self.positions)


def _ordered(gaps: list[float], scheme: str) -> ImportanceRanking:
    order = sorted(range(len(gaps)), key=lambda i: (-gaps[i], i))
    return ImportanceRanking(tuple(order), tuple(gaps[i] for i in order), scheme)


def rank_importance_unk(victim: BudgetedVictim, tokens: TokenizedText,
                        original: Optional[VictimScores] = None) -> ImportanceRanking:
    """DIR: importance of a word is how much masking it hurts the prediction.

    Issues one query per token, plus one for the original text when
    ``original`` is not supplied.
    """
    if original is None:
        original = victim.classify([detokenize(tokens)])[0]
    pred = predicted_label(original)
    masked = [detokenize(tokens.replace(i, UNK_TOKEN)) for i in range(len(tokens))]
    drops = [original.prob(pred) - scored.prob(pred)
             for scored in victim.classify(masked)]
    return _ordered(drops, "DIR")


def rank_importance_maxgap(victim: BudgetedVictim, provider: SubstituteProvider,
                           tokens: TokenizedText,
                           k: int = DEFAULT_RANKING_CANDIDATES,
                           token_filter: Optional[TokenFilter] = None,
                           original: Optional[VictimScores] = None) -> ImportanceRanking:
    """NIR: importance is the best gap any substitute achieves in that slot."""
    if original is None:
        original = victim.classify([detokenize(tokens)])[0]
    pred = predicted_label(original)
    baseline = prob_opposite(original, pred)
    gaps: list[float] = []
    for position in range(len(tokens)):
        candidates = provider.candidates(tokens.tokens, position, k)
        if token_filter is not None:
            candidates = token_filter.apply(candidates)
        if not candidates:
            gaps.append(-math.inf)
            continue
        variants = [detokenize(tokens.replace(position, c.token)) for c in candidates]
        best = max(prob_opposite(s, pred) for s in victim.classify(variants))
        gaps.append(best - baseline)
    return _ordered(gaps, "NIR")


def rank_importance_delete(victim: BudgetedVictim, tokens: TokenizedText,
                           original: Optional[VictimScores] = None) -> ImportanceRanking:
    """DIR variant that deletes the word instead of masking it."""
    if original is None:
        original = victim.classify([detokenize(tokens)])[0]
    if len(tokens) == 1:
        return ImportanceRanking((0,), (0.0,), "DIR")
    pred = predicted_label(original)
    deleted = []
    for i in range(len(tokens)):
        remaining = tokens.tokens[:i] + tokens.tokens[i + 1 :]
        boundary = tokens.part_boundary
        if boundary is not None:
            if i < boundary:
                boundary -= 1
            if not 0 < boundary < len(remaining):
                boundary = None
        deleted.append(detokenize(TokenizedText(remaining, boundary, tokens.source)))
    drops = [original.prob(pred) - scored.prob(pred)
             for scored in victim.classify(deleted)]
    return _ordered(drops, "DIR")
