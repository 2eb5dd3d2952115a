"""Attack cascades: run the next stage only when the previous one failed.

Every stage starts from the original instance, not from the failed
stage's edits. The returned outcome is the first successful stage's,
with queries accumulated across all attempted stages; if nothing
succeeds, the last stage's failure is returned the same way.
"""

from __future__ import annotations

import dataclasses
from typing import Optional, Sequence

from ..errors import ValidationError
from .base import Attack, AttackOutcome


class Cascade(Attack):
    """Ordered fallback chain over configured attacks."""

    method_name = "cascade"

    def __init__(self, stages: Sequence[Attack],
                 method_label: Optional[str] = None, seed: int = 0):
        if not stages:
            raise ValidationError("a cascade needs at least one stage")
        self.stages = list(stages)
        self.method_label = method_label
        self.seed = seed

    @property
    def name(self) -> str:
        return self.method_label or "+".join(stage.name for stage in self.stages)

    def run(self, victim, instance, *, scorer=None, seed=None) -> AttackOutcome:
        total_queries = 0
        outcome = None
        for stage in self.stages:
            outcome = stage.run(victim, instance, scorer=scorer,
                                seed=self._get_seed(seed))
            total_queries += outcome.queries_used
            if outcome.success:
                break
        return dataclasses.replace(outcome, queries_used=total_queries)
