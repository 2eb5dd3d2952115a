"""Character-level attack: make important words unrecognizable.

Tokens are visited in DIR order; each gets one randomized character edit
per kind (adjacent swap, substitution, deletion, insertion), and the
variant with the best gap is kept. Edits never empty a token, and at
most ``max_edited_tokens`` tokens are touched.
"""

from __future__ import annotations

import string

from ..tokenizer import detokenize
from ..types import Edit, EditKind
from ..victims import predicted_label
from .base import (DEFAULT_QUERY_BUDGET, Attack, SearchResult, flips,
                   prob_opposite)
from .importance import rank_importance_unk

DEFAULT_MAX_EDITED = 30
_ALPHABET = string.ascii_lowercase


def char_edit_variants(token: str, rng) -> list[str]:
    """One randomized variant per edit kind, originals and duplicates dropped."""
    variants = []
    if len(token) >= 2:
        i = rng.randrange(len(token) - 1)
        variants.append(token[:i] + token[i + 1] + token[i] + token[i + 2:])
    i = rng.randrange(len(token))
    variants.append(token[:i] + rng.choice(_ALPHABET) + token[i + 1:])
    if len(token) >= 2:
        i = rng.randrange(len(token))
        variants.append(token[:i] + token[i + 1:])
    i = rng.randrange(len(token) + 1)
    variants.append(token[:i] + rng.choice(_ALPHABET) + token[i:])
    unique = []
    for v in variants:
        if v != token and v not in unique:
            unique.append(v)
    return unique


class DeepWordBugAttack(Attack):
    """Greedy character perturbation of the most important words."""

    method_name = "deepwordbug"

    def __init__(self, max_edited_tokens: int = DEFAULT_MAX_EDITED,
                 query_budget: int = DEFAULT_QUERY_BUDGET, seed: int = 0):
        self.max_edited_tokens = max_edited_tokens
        self.query_budget = query_budget
        self.seed = seed

    def _search(self, victim, tokens, original, rng):
        pred = predicted_label(original)
        ranking = rank_importance_unk(victim, tokens, original=original)
        current = tokens
        edits: list[Edit] = []
        for position in ranking.positions[: self.max_edited_tokens]:
            token = current.tokens[position]
            variants = char_edit_variants(token, rng)
            if not variants:
                continue
            texts = [current.replace(position, v) for v in variants]
            scored = victim.classify([detokenize(t) for t in texts])
            best = max(range(len(scored)),
                       key=lambda j: prob_opposite(scored[j], pred))
            edits.append(Edit(EditKind.CHAR_EDIT, position, token, variants[best]))
            current = texts[best]
            if flips(scored[best], pred):
                return SearchResult(current, edits, True, scored[best])
        return SearchResult(current, edits, False)
