"""Greedy search with word swaps from an embedding neighborhood.

Every round evaluates a single-word swap at every still-unmodified,
non-stopword position, applies the one with the largest positive gain
toward the opposite class, and freezes that position forever. The search
ends on a decision flip or when no swap improves the gap.
"""

from __future__ import annotations

from ..providers import EmbeddingTable
from ..stopwords import STOPWORD_SET
from ..tokenizer import detokenize
from ..types import Edit, EditKind
from ..victims import predicted_label
from .base import (DEFAULT_QUERY_BUDGET, Attack, SearchResult, flips,
                   prob_opposite)

DEFAULT_NEIGHBORS = 20


class GswseAttack(Attack):
    """Greedy embedding-synonym swaps with no-repeat and stopword constraints."""

    method_name = "gswse"

    def __init__(self, table: EmbeddingTable, substitute_k: int = DEFAULT_NEIGHBORS,
                 stopwords: frozenset[str] = STOPWORD_SET,
                 query_budget: int = DEFAULT_QUERY_BUDGET, seed: int = 0):
        self.table = table
        self.substitute_k = substitute_k
        self.stopwords = stopwords
        self.query_budget = query_budget
        self.seed = seed

    def _search(self, victim, tokens, original, rng):
        pred = predicted_label(original)
        current = tokens
        current_gap = prob_opposite(original, pred)
        open_positions = {i for i, token in enumerate(tokens.tokens)
                          if token.casefold() not in self.stopwords}
        edits: list[Edit] = []
        while open_positions:
            moves = []
            for position in sorted(open_positions):
                for candidate in self.table.neighbors(current.tokens[position],
                                                      self.substitute_k):
                    moves.append((position, candidate.token))
            if not moves:
                break
            variants = [current.replace(p, t) for p, t in moves]
            scored = victim.classify([detokenize(v) for v in variants])
            best = max(range(len(moves)),
                       key=lambda j: prob_opposite(scored[j], pred))
            best_gap = prob_opposite(scored[best], pred)
            if best_gap <= current_gap:
                break
            position, token = moves[best]
            edits.append(Edit(EditKind.REPLACE, position,
                              current.tokens[position], token, len(edits)))
            current = variants[best]
            current_gap = best_gap
            open_positions.discard(position)
            if flips(scored[best], pred):
                return SearchResult(current, edits, True, scored[best])
        return SearchResult(current, edits, False)
