"""Masked-substitute attacks driven by importance rankings.

``BamAttack`` is the single-pass greedy attack: rank words by DIR, then
walk the ranking, swapping each word for the substitute that pushes the
victim hardest toward the opposite class, stopping at the first decision
flip. The default configuration uses 72 substitutes with a 0.2 score
threshold; the ``ba`` preset (36, 0.3) is the unmodified baseline.

``Bam2Attack`` escalates over up to six restarts: iteration 0 replaces
the single most important word (NIR ranking, candidate filter on), and
every later iteration restarts from the original text, replaces one more
word than the last, drops the filter, widens the substitute pool
(n(i) = i * 36 from iteration 2 on), and at the final iteration adds
punctuation and digits as last-resort substitutes.
"""

from __future__ import annotations

from typing import Optional

from ..providers import SubstituteProvider, TokenFilter, punct_digit_candidates
from ..tokenizer import detokenize
from ..types import Edit, EditKind
from ..victims import predicted_label
from .base import (DEFAULT_QUERY_BUDGET, Attack, BudgetedVictim, SearchResult,
                   flips, prob_opposite)
from .importance import rank_importance_maxgap, rank_importance_unk

BA_PRESET = {"substitute_k": 36, "pred_threshold": 0.3, "method_label": "ba"}


class BamAttack(Attack):
    """Greedy DIR-ordered word substitution with early stop on flip."""

    method_name = "bam"

    def __init__(self, provider: SubstituteProvider, substitute_k: int = 72,
                 pred_threshold: float = 0.2,
                 token_filter: Optional[TokenFilter] = TokenFilter(),
                 query_budget: int = DEFAULT_QUERY_BUDGET, seed: int = 0,
                 method_label: Optional[str] = None):
        self.provider = provider
        self.substitute_k = substitute_k
        self.pred_threshold = pred_threshold
        self.token_filter = token_filter
        self.query_budget = query_budget
        self.seed = seed
        self.method_label = method_label

    def _search(self, victim, tokens, original, rng):
        pred = predicted_label(original)
        ranking = rank_importance_unk(victim, tokens, original=original)
        current = tokens
        edits: list[Edit] = []
        for position in ranking.positions:
            candidates = self.provider.candidates(current.tokens, position,
                                                  self.substitute_k)
            if self.token_filter is not None:
                candidates = self.token_filter.apply(candidates)
            candidates = [c for c in candidates if c.score >= self.pred_threshold]
            if not candidates:
                continue
            variants = [current.replace(position, c.token) for c in candidates]
            scored = victim.classify([detokenize(v) for v in variants])
            best = max(range(len(scored)),
                       key=lambda j: prob_opposite(scored[j], pred))
            edits.append(Edit(EditKind.REPLACE, position,
                              current.tokens[position], candidates[best].token))
            current = variants[best]
            if flips(scored[best], pred):
                return SearchResult(current, edits, True, scored[best])
        return SearchResult(current, edits, False)


class Bam2Attack(Attack):
    """Iterated escalation: more words, more substitutes, fewer filters.

    The plan below is introspectable; ``iteration_substitute_budgets``
    exposes the widening candidate pools (36, 36, 72, 108, 144, 180).
    An optional seventh iteration (7 words, 216 substitutes) is off by
    default.
    """

    method_name = "bam2"

    def __init__(self, provider: SubstituteProvider,
                 token_filter: Optional[TokenFilter] = TokenFilter(),
                 ranking_candidates: int = 36, extra_iteration: bool = False,
                 query_budget: int = DEFAULT_QUERY_BUDGET, seed: int = 0):
        self.provider = provider
        self.token_filter = token_filter
        self.ranking_candidates = ranking_candidates
        self.extra_iteration = extra_iteration
        self.query_budget = query_budget
        self.seed = seed

    def iteration_plan(self) -> list[tuple[int, int, bool, bool]]:
        """(words to replace, substitute pool, filter on, add punct+digits)."""
        plan = [
            (1, 36, True, False),
            (2, 36, False, False),
            (3, 2 * 36, False, False),
            (4, 3 * 36, False, False),
            (5, 4 * 36, False, False),
            (6, 5 * 36, False, True),
        ]
        if self.extra_iteration:
            plan.append((7, 6 * 36, False, True))
        return plan

    @property
    def iteration_substitute_budgets(self) -> tuple[int, ...]:
        return tuple(k for _, k, _, _ in self.iteration_plan())

    def _search(self, victim: BudgetedVictim, tokens, original, rng):
        pred = predicted_label(original)
        ranking = rank_importance_maxgap(
            victim, self.provider, tokens, k=self.ranking_candidates,
            token_filter=self.token_filter, original=original)
        for iteration, (words, k, filtered, with_punct) in enumerate(self.iteration_plan()):
            current = tokens
            edits: list[Edit] = []
            for position in ranking.positions[: min(words, len(tokens))]:
                candidates = self.provider.candidates(current.tokens, position, k)
                if filtered and self.token_filter is not None:
                    candidates = self.token_filter.apply(candidates)
                if with_punct:
                    candidates = candidates + punct_digit_candidates()
                candidates = [c for c in candidates
                              if c.token != current.tokens[position]]
                if not candidates:
                    continue
                variants = [current.replace(position, c.token) for c in candidates]
                scored = victim.classify([detokenize(v) for v in variants])
                best = max(range(len(scored)),
                           key=lambda j: prob_opposite(scored[j], pred))
                edits.append(Edit(EditKind.REPLACE, position,
                                  current.tokens[position],
                                  candidates[best].token, iteration))
                current = variants[best]
                if flips(scored[best], pred):
                    return SearchResult(current, edits, True, scored[best])
        return SearchResult(tokens, [], False)
