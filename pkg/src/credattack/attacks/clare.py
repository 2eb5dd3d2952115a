"""Contextual mask-then-infill perturbations: replace, insert, merge.

Each round proposes, for every position, replacing the token, inserting
a new token after it, and merging it with its right neighbor, with
infill candidates coming from a masked-LM provider (or a static table in
tests). Applied proposals are scored by victim gap times the provider's
candidate score; the best one is kept. Unlike pure word swaps, inserts
and merges change the token count, so positions may be revisited.
"""

from __future__ import annotations

from ..providers import MASK_TOKEN, SubstituteProvider
from ..tokenizer import detokenize
from ..types import Edit, EditKind, TokenizedText
from ..victims import predicted_label
from .base import (DEFAULT_QUERY_BUDGET, Attack, SearchResult, flips,
                   prob_opposite)

DEFAULT_CANDIDATES = 36
DEFAULT_ROUNDS = 10


class ClareAttack(Attack):
    """Replace / insert / merge search over masked-LM infills."""

    method_name = "clare"

    def __init__(self, provider: SubstituteProvider,
                 substitute_k: int = DEFAULT_CANDIDATES,
                 max_iterations: int = DEFAULT_ROUNDS,
                 query_budget: int = DEFAULT_QUERY_BUDGET, seed: int = 0):
        self.provider = provider
        self.substitute_k = substitute_k
        self.max_iterations = max_iterations
        self.query_budget = query_budget
        self.seed = seed

    def _proposals(self, current: TokenizedText,
                   iteration: int) -> list[tuple[TokenizedText, Edit, float]]:
        proposals = []
        n = len(current)
        for i in range(n):
            token = current.tokens[i]
            for c in self.provider.candidates(current.tokens, i, self.substitute_k):
                proposals.append((current.replace(i, c.token),
                                  Edit(EditKind.REPLACE, i, token, c.token,
                                       iteration),
                                  c.score))
            masked_insert = current.insert_after(i, MASK_TOKEN)
            for c in self.provider.candidates(masked_insert.tokens, i + 1,
                                              self.substitute_k):
                proposals.append((current.insert_after(i, c.token),
                                  Edit(EditKind.INSERT, i + 1, "", c.token,
                                       iteration),
                                  c.score))
            boundary = current.part_boundary
            if i + 1 < n and (boundary is None or i + 1 != boundary):
                masked_merge = current.merge(i, MASK_TOKEN)
                bigram = f"{token} {current.tokens[i + 1]}"
                for c in self.provider.candidates(masked_merge.tokens, i,
                                                  self.substitute_k):
                    proposals.append((current.merge(i, c.token),
                                      Edit(EditKind.MERGE, i, bigram, c.token,
                                           iteration),
                                      c.score))
        return proposals

    def _search(self, victim, tokens, original, rng):
        pred = predicted_label(original)
        current = tokens
        current_gap = prob_opposite(original, pred)
        edits: list[Edit] = []
        for iteration in range(self.max_iterations):
            proposals = self._proposals(current, iteration)
            if not proposals:
                break
            scored = victim.classify([detokenize(p) for p, _, _ in proposals])
            gains = [prob_opposite(s, pred) - current_gap for s in scored]
            ranked = sorted(range(len(proposals)),
                            key=lambda j: gains[j] * proposals[j][2],
                            reverse=True)
            flipping = [j for j in ranked if flips(scored[j], pred)]
            if flipping:
                j = flipping[0]
                new_tokens, edit, _ = proposals[j]
                edits.append(edit)
                return SearchResult(new_tokens, edits, True, scored[j])
            positive = [j for j in ranked if gains[j] > 0]
            if not positive:
                break
            j = positive[0]
            new_tokens, edit, _ = proposals[j]
            edits.append(edit)
            current = new_tokens
            current_gap = prob_opposite(scored[j], pred)
        return SearchResult(current, edits, False)
