"""The attack catalog and its assembly helper."""

from __future__ import annotations

from typing import Optional

from ..errors import ValidationError
from ..providers import EmbeddingProvider, EmbeddingTable, SubstituteProvider
from .base import (DEFAULT_QUERY_BUDGET, Attack, AttackOutcome, BudgetedVictim,
                   SearchResult, flips, prob_opposite)
from .bert_style import BA_PRESET, Bam2Attack, BamAttack
from .cascade import Cascade
from .clare import ClareAttack
from .deepwordbug import DeepWordBugAttack
from .genetic import GeneticAttack
from .gswse import GswseAttack
from .importance import (ImportanceRanking, rank_importance_delete,
                         rank_importance_maxgap, rank_importance_unk)
from .textfooler import TextFoolerAttack

# name -> (class, resource needed, preset constructor arguments)
CATALOG: dict[str, tuple[type, Optional[str], dict]] = {
    "ba": (BamAttack, "provider", dict(BA_PRESET)),
    "bam": (BamAttack, "provider", {}),
    "bam2": (Bam2Attack, "provider", {}),
    "genetic": (GeneticAttack, "provider", {}),
    "gswse": (GswseAttack, "table", {}),
    "textfooler": (TextFoolerAttack, "table", {}),
    "deepwordbug": (DeepWordBugAttack, None, {}),
    "clare": (ClareAttack, "provider", {}),
}


def catalog_names() -> list[str]:
    return sorted(CATALOG)


def make_attack(spec: str, *, provider: Optional[SubstituteProvider] = None,
                table: Optional[EmbeddingTable] = None,
                query_budget: int = DEFAULT_QUERY_BUDGET,
                seed: int = 0) -> Attack:
    """Build an attack (or a ``+``-joined cascade) from its catalog name.

    Attacks that take a generic substitute provider fall back to wrapping
    the embedding table when no provider is given.
    """
    names = [name.strip() for name in spec.split("+") if name.strip()]
    if not names:
        raise ValidationError(
            f"no attack named in {spec!r}; known methods: {', '.join(catalog_names())}")
    stages = []
    for name in names:
        entry = CATALOG.get(name)
        if entry is None:
            raise ValidationError(
                f"unknown method {name!r}; known methods: {', '.join(catalog_names())}")
        cls, resource, preset = entry
        kwargs = dict(preset)
        kwargs.update(query_budget=query_budget, seed=seed)
        if resource == "provider":
            chosen = provider
            if chosen is None and table is not None:
                chosen = EmbeddingProvider(table)
            if chosen is None:
                raise ValidationError(f"method {name!r} needs a substitute provider")
            stages.append(cls(chosen, **kwargs))
        elif resource == "table":
            if table is None:
                raise ValidationError(f"method {name!r} needs a word-embedding table")
            stages.append(cls(table, **kwargs))
        else:
            stages.append(cls(**kwargs))
    if len(stages) == 1:
        return stages[0]
    return Cascade(stages, method_label=spec, seed=seed)


__all__ = [
    "Attack", "AttackOutcome", "BudgetedVictim", "SearchResult",
    "BamAttack", "Bam2Attack", "GeneticAttack", "GswseAttack",
    "TextFoolerAttack", "DeepWordBugAttack", "ClareAttack", "Cascade",
    "ImportanceRanking", "rank_importance_unk", "rank_importance_maxgap",
    "rank_importance_delete", "make_attack", "catalog_names", "CATALOG",
    "DEFAULT_QUERY_BUDGET", "flips", "prob_opposite",
]
