"""Black-box adversarial text generation for binary credibility classifiers.

The engine perturbs text instances to flip a victim classifier's
decision while preserving meaning, and scores every attempt with the
product of confusion, semantic, and character similarity components.
"""

__version__ = "0.1.0"

from .attacks import (Attack, AttackOutcome, Bam2Attack, BamAttack, Cascade,
                      ClareAttack, DeepWordBugAttack, GeneticAttack,
                      GswseAttack, TextFoolerAttack, catalog_names,
                      make_attack, rank_importance_maxgap, rank_importance_unk)
from .harness import (TaskDataset, load_dataset, render_report, run_attack_set,
                      score_pairs, write_outcomes)
from .providers import (CandidateSubstitute, EmbeddingProvider, EmbeddingTable,
                        RemoteProvider, StaticSynonymProvider, TokenFilter,
                        load_embeddings, punct_digit_candidates)
from .scoring import (EmbeddingCosineScorer, RemoteScorer, ScoreBreakdown,
                      SemanticScorer, TokenOverlapScorer, aggregate_scores,
                      bodega_instance, char_score, con_score, levenshtein)
from .tokenizer import detokenize, tokenize, tokenize_instance
from .types import Edit, EditKind, Label, TextInstance, TokenizedText
from .victims import (LinearVictim, RemoteVictim, Victim, VictimScores,
                      predicted_label)

__all__ = [
    "__version__",
    "Attack", "AttackOutcome", "BamAttack", "Bam2Attack", "GeneticAttack",
    "GswseAttack", "TextFoolerAttack", "DeepWordBugAttack", "ClareAttack",
    "Cascade", "make_attack", "catalog_names",
    "rank_importance_unk", "rank_importance_maxgap",
    "TaskDataset", "load_dataset", "run_attack_set", "score_pairs",
    "render_report", "write_outcomes",
    "CandidateSubstitute", "EmbeddingTable", "EmbeddingProvider",
    "StaticSynonymProvider", "RemoteProvider", "TokenFilter",
    "load_embeddings", "punct_digit_candidates",
    "ScoreBreakdown", "SemanticScorer", "TokenOverlapScorer",
    "EmbeddingCosineScorer", "RemoteScorer", "levenshtein", "char_score",
    "con_score", "bodega_instance", "aggregate_scores",
    "tokenize", "tokenize_instance", "detokenize",
    "Label", "TextInstance", "TokenizedText", "Edit", "EditKind",
    "Victim", "LinearVictim", "RemoteVictim", "VictimScores",
    "predicted_label",
]
