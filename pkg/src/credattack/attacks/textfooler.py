"""Importance-ordered synonym swaps with a part-of-speech compatibility check.

Importance is the delete-token variant of DIR: how much removing a word
drops the predicted-class probability. Candidates come from embedding
neighborhoods, gated by a minimum similarity and, unless disabled, a
coarse suffix-based part-of-speech tagger (noun / verb / adjective /
other; "other" is compatible with everything).
"""

from __future__ import annotations

from ..providers import EmbeddingTable
from ..tokenizer import detokenize
from ..types import Edit, EditKind
from ..victims import predicted_label
from .base import (DEFAULT_QUERY_BUDGET, Attack, SearchResult, flips,
                   prob_opposite)
from .importance import rank_importance_delete

DEFAULT_NEIGHBORS = 50
DEFAULT_MIN_SCORE = 0.5

# Longest suffix wins; tokens shorter than suffix + 2 stay untagged.
_SUFFIX_CLASSES = sorted(
    [
        ("tion", "noun"), ("sion", "noun"), ("ment", "noun"), ("ness", "noun"),
        ("ance", "noun"), ("ence", "noun"), ("ship", "noun"), ("hood", "noun"),
        ("ity", "noun"), ("ism", "noun"), ("ist", "noun"), ("er", "noun"),
        ("or", "noun"),
        ("ing", "verb"), ("ed", "verb"), ("ify", "verb"), ("ize", "verb"),
        ("ise", "verb"),
        ("ous", "adjective"), ("ful", "adjective"), ("ive", "adjective"),
        ("able", "adjective"), ("ible", "adjective"), ("less", "adjective"),
        ("ish", "adjective"),
    ],
    key=lambda pair: -len(pair[0]),
)


def heuristic_pos(token: str) -> str:
    """Best-effort word class from the suffix alone."""
    lowered = token.casefold()
    for suffix, word_class in _SUFFIX_CLASSES:
        if lowered.endswith(suffix) and len(lowered) >= len(suffix) + 2:
            return word_class
    return "other"


def pos_compatible(a: str, b: str) -> bool:
    tag_a, tag_b = heuristic_pos(a), heuristic_pos(b)
    return tag_a == "other" or tag_b == "other" or tag_a == tag_b


class TextFoolerAttack(Attack):
    """Greedy swap in deletion-importance order with POS-gated candidates."""

    method_name = "textfooler"

    def __init__(self, table: EmbeddingTable, substitute_k: int = DEFAULT_NEIGHBORS,
                 min_candidate_score: float = DEFAULT_MIN_SCORE,
                 pos_check: bool = True,
                 query_budget: int = DEFAULT_QUERY_BUDGET, seed: int = 0):
        self.table = table
        self.substitute_k = substitute_k
        self.min_candidate_score = min_candidate_score
        self.pos_check = pos_check
        self.query_budget = query_budget
        self.seed = seed

    def _search(self, victim, tokens, original, rng):
        pred = predicted_label(original)
        ranking = rank_importance_delete(victim, tokens, original=original)
        current = tokens
        edits: list[Edit] = []
        for position in ranking.positions:
            token = current.tokens[position]
            candidates = [c for c in self.table.neighbors(token, self.substitute_k)
                          if c.score >= self.min_candidate_score]
            if self.pos_check:
                candidates = [c for c in candidates
                              if pos_compatible(token, c.token)]
            if not candidates:
                continue
            variants = [current.replace(position, c.token) for c in candidates]
            scored = victim.classify([detokenize(v) for v in variants])
            chosen = None
            for j, s in enumerate(scored):
                if flips(s, pred):
                    chosen = j
                    break
            if chosen is None:
                chosen = max(range(len(scored)),
                             key=lambda j: prob_opposite(scored[j], pred))
            edits.append(Edit(EditKind.REPLACE, position, token,
                              candidates[chosen].token))
            current = variants[chosen]
            if flips(scored[chosen], pred):
                return SearchResult(current, edits, True, scored[chosen])
        return SearchResult(current, edits, False)
