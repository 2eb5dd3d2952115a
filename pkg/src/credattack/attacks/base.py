"""Shared attack machinery: query budgets, outcomes, and the base class.

An attack never touches victim internals; it sees classify() through a
per-run budget tracker. When a batch would cross the budget, the tracker
forwards only the texts that fit (so the recorded query count equals the
budget exactly and matches the victim's own counter) and then raises
BudgetExceeded, which the attack reports as a failed outcome.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from sklearn.base import BaseEstimator

from ..errors import BudgetExceeded
from ..rng import make_rng
from ..scoring import (ScoreBreakdown, SemanticScorer, TokenOverlapScorer,
                       bodega_instance, char_score)
from ..tokenizer import detokenize, tokenize_instance
from ..types import Edit, EditTrace, Label, TextInstance, TokenizedText
from ..victims import Victim, VictimScores, predicted_label

DEFAULT_QUERY_BUDGET = 10_000


class BudgetedVictim:
    """Budget-enforcing view of a victim for one attack run."""

    def __init__(self, victim: Victim, budget: int):
        self.victim = victim
        self.budget = budget
        self.used = 0

    @property
    def remaining(self) -> int:
        return self.budget - self.used

    def classify(self, texts: Sequence[str]) -> list[VictimScores]:
        texts = list(texts)
        if len(texts) <= self.remaining:
            self.used += len(texts)
            return self.victim.classify(texts)
        # Spend the rest of the budget so accounting stays exact, then stop.
        if self.remaining > 0:
            head = texts[: self.remaining]
            self.used += len(head)
            self.victim.classify(head)
        raise BudgetExceeded(f"query budget of {self.budget} exhausted")


@dataclass(frozen=True)
class AttackOutcome:
    """Everything a run records about one attacked instance."""

    instance: TextInstance
    original_text: str
    adversarial_text: str
    edit_trace: EditTrace
    success: bool
    scores: ScoreBreakdown
    queries_used: int
    method_used: str


@dataclass
class SearchResult:
    """What a concrete attack's search returns to the base class."""

    tokens: TokenizedText
    edits: list[Edit]
    success: bool
    final_scores: Optional[VictimScores] = None


class Attack(BaseEstimator):
    """Base class for all attacks.

    scikit-learn parameter conventions: constructor arguments are stored
    verbatim and introspectable through ``get_params``; cloning an attack
    gives an independent instance for a parallel worker. Subclasses
    implement ``_search`` and must obtain every victim opinion through the
    given budget tracker.

    Failure semantics are uniform: a failed attack reports the original
    text unchanged, an empty trace, and a zero confusion score.
    """

    method_name: str = "attack"

    def _get_seed(self, seed: Optional[int]) -> int:
        return self.seed if seed is None else seed  # type: ignore[attr-defined]

    @property
    def name(self) -> str:
        return getattr(self, "method_label", None) or self.method_name

    def run(self, victim: Victim, instance: TextInstance, *,
            scorer: Optional[SemanticScorer] = None,
            seed: Optional[int] = None) -> AttackOutcome:
        """Attack one instance and score the result."""
        scorer = scorer if scorer is not None else TokenOverlapScorer()
        tracker = BudgetedVictim(victim, self.query_budget)  # type: ignore[attr-defined]
        tokens = tokenize_instance(instance)
        original_text = detokenize(tokens)
        rng = make_rng(self._get_seed(seed))
        try:
            original = tracker.classify([original_text])[0]
            result = self._search(tracker, tokens, original, rng)
        except BudgetExceeded:
            result = None
        return self._finish(instance, original_text, result, tracker.used, scorer)

    def _finish(self, instance: TextInstance, original_text: str,
                result: Optional[SearchResult], queries_used: int,
                scorer: SemanticScorer) -> AttackOutcome:
        if result is None or not result.success:
            breakdown = bodega_instance(0, 1.0, 1.0)
            return AttackOutcome(instance, original_text, original_text, (),
                                 False, breakdown, queries_used, self.name)
        adversarial_text = detokenize(result.tokens)
        breakdown = bodega_instance(
            1,
            scorer.score(original_text, adversarial_text),
            char_score(original_text, adversarial_text),
        )
        return AttackOutcome(instance, original_text, adversarial_text,
                             tuple(result.edits), True, breakdown,
                             queries_used, self.name)

    def _search(self, victim: BudgetedVictim, tokens: TokenizedText,
                original: VictimScores, rng) -> SearchResult:
        raise NotImplementedError


def prob_opposite(scores: VictimScores, original_pred: Label) -> float:
    """Probability mass on the class opposite the original prediction."""
    return scores.prob(original_pred.opposite)


def flips(scores: VictimScores, original_pred: Label) -> bool:
    return predicted_label(scores) != original_pred
