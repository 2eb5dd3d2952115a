"""Victim classifiers: the black-box surface every attack works against.

Attacks see exactly one thing: ``classify(texts) -> [VictimScores]``. The
query counter increments by the number of texts per call and is never
reset mid-run. The built-in victim is a bag-of-words logistic regression
trained by deterministic gradient descent, a desk-scale stand-in for the
transformer victims that attach through the remote protocol.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from sklearn.base import BaseEstimator

from .errors import DegenerateCorpus, FormatError, TextTooLong, ValidationError
from .rng import make_rng
from .tokenizer import simple_tokens
from .types import Label, TextInstance, check_probability_pair

MODEL_HEADER = "linear-victim v1"
DEFAULT_BATCH_LIMIT = 64
DEFAULT_MAX_TOKENS = 512


@dataclass(frozen=True)
class VictimScores:
    """Probability pair over {credible, non-credible}."""

    p_credible: float
    p_noncredible: float

    def __post_init__(self):
        check_probability_pair(self.p_credible, self.p_noncredible)

    def prob(self, label: Label) -> float:
        return self.p_credible if Label(label) is Label.CREDIBLE else self.p_noncredible


def predicted_label(scores: VictimScores) -> Label:
    """Argmax class; an exact tie goes to CREDIBLE."""
    if scores.p_noncredible > scores.p_credible:
        return Label.NON_CREDIBLE
    return Label.CREDIBLE


class Victim:
    """Base class: batching, length checks, and atomic query accounting."""

    name = "victim"

    def __init__(self, batch_limit: int = DEFAULT_BATCH_LIMIT,
                 max_tokens: Optional[int] = DEFAULT_MAX_TOKENS):
        if batch_limit < 1:
            raise ValidationError(f"batch limit must be positive, got {batch_limit}")
        self.batch_limit = batch_limit
        self.max_tokens = max_tokens
        self._queries = 0
        self._lock = threading.Lock()

    @property
    def query_count(self) -> int:
        return self._queries

    def _count(self, n: int) -> None:
        with self._lock:
            self._queries += n

    def classify(self, texts: Sequence[str]) -> list[VictimScores]:
        """Score each text; order-preserving; counts len(texts) queries."""
        texts = list(texts)
        if not texts:
            return []
        self._check_lengths(texts)
        results: list[VictimScores] = []
        for start in range(0, len(texts), self.batch_limit):
            batch = texts[start : start + self.batch_limit]
            scored = self._classify_batch(batch)
            self._count(len(batch))
            results.extend(scored)
        return results

    def _check_lengths(self, texts: Sequence[str]) -> None:
        """Length guard; the built-in victim truncates instead (see subclass)."""

    def _classify_batch(self, texts: Sequence[str]) -> list[VictimScores]:
        raise NotImplementedError


def _sigmoid(z: float) -> float:
    if z >= 0:
        return 1.0 / (1.0 + math.exp(-z))
    e = math.exp(z)
    return e / (1.0 + e)


class LinearVictim(Victim, BaseEstimator):
    """Bag-of-words logistic regression victim.

    scikit-learn conventions apply: constructor arguments are stored
    verbatim, fitted state lives in trailing-underscore attributes, and
    ``fit`` returns self. Texts longer than ``max_tokens`` are truncated
    during feature extraction. Prediction is pure: the same text always
    gets the same scores, across calls and threads.
    """

    name = "builtin"

    def __init__(self, epochs: int = 50, learning_rate: float = 0.5,
                 seed: int = 0, batch_limit: int = DEFAULT_BATCH_LIMIT,
                 max_tokens: int = DEFAULT_MAX_TOKENS):
        Victim.__init__(self, batch_limit=batch_limit, max_tokens=max_tokens)
        self.epochs = epochs
        self.learning_rate = learning_rate
        self.seed = seed

    def _features(self, text: str) -> dict[int, float]:
        counts: dict[int, float] = {}
        for token in simple_tokens(text)[: self.max_tokens]:
            index = self.vocabulary_.get(token.casefold())
            if index is not None:
                counts[index] = counts.get(index, 0.0) + 1.0
        return counts

    def fit(self, X: Sequence[TextInstance], y=None) -> "LinearVictim":
        """Train on labeled instances (or on texts plus a label vector).

        Raises:
            DegenerateCorpus: if only one label is present.
        """
        if y is None:
            texts = [inst.serialized() for inst in X]
            labels = [int(inst.label) for inst in X]
        else:
            texts = [x.serialized() if isinstance(x, TextInstance) else x for x in X]
            labels = [int(label) for label in y]
        if len(set(labels)) < 2:
            raise DegenerateCorpus("training corpus must contain both labels")

        seen = {token.casefold()
                for text in texts for token in simple_tokens(text)[: self.max_tokens]}
        self.vocabulary_ = {token: i for i, token in enumerate(sorted(seen))}

        weights = np.zeros(len(self.vocabulary_), dtype=np.float64)
        bias = 0.0
        order = list(range(len(texts)))
        rng = make_rng(self.seed)
        features = [self._features(text) for text in texts]
        for _ in range(self.epochs):
            rng.shuffle(order)
            for i in order:
                z = bias + sum(weights[j] * v for j, v in features[i].items())
                error = _sigmoid(z) - labels[i]
                step = self.learning_rate * error
                for j, v in features[i].items():
                    weights[j] -= step * v
                bias -= step
        self.weights_ = weights
        self.bias_ = bias
        correct = sum(
            int(self._prob_from_features(features[i]) > 0.5) == labels[i]
            for i in range(len(texts))
        )
        self.train_accuracy_ = correct / len(texts)
        return self

    def _prob_from_features(self, features: dict[int, float]) -> float:
        z = self.bias_ + sum(self.weights_[j] * v for j, v in features.items())
        return _sigmoid(z)

    def predict_proba(self, texts: Sequence[str]) -> np.ndarray:
        """(n, 2) array of [p_credible, p_noncredible]; does not count queries."""
        rows = []
        for text in texts:
            p = self._prob_from_features(self._features(text))
            rows.append((1.0 - p, p))
        return np.asarray(rows, dtype=np.float64)

    def predict(self, texts: Sequence[str]) -> list[Label]:
        return [predicted_label(s) for s in
                (VictimScores(pc, pn) for pc, pn in self.predict_proba(texts))]

    def _classify_batch(self, texts):
        return [VictimScores(pc, pn) for pc, pn in self.predict_proba(texts)]

    def save(self, path) -> None:
        """Write the documented text model format (see docs/model-format.md)."""
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(MODEL_HEADER + "\n")
            handle.write(f"vocab {len(self.vocabulary_)}\n")
            for token, index in sorted(self.vocabulary_.items(), key=lambda kv: kv[1]):
                handle.write(f"{token}\t{index}\n")
            handle.write(f"bias {float(self.bias_)!r}\n")
            handle.write("weights\n")
            for w in self.weights_:
                handle.write(f"{float(w)!r}\n")

    @classmethod
    def load(cls, path) -> "LinearVictim":
        """Read a saved model; the round trip preserves every prediction."""
        with open(path, "r", encoding="utf-8") as handle:
            lines = [line.rstrip("\n") for line in handle]
        if not lines or lines[0] != MODEL_HEADER:
            raise FormatError(f"expected header {MODEL_HEADER!r}")
        try:
            count = int(lines[1].split()[1])
            vocabulary: dict[str, int] = {}
            for line in lines[2 : 2 + count]:
                token, index = line.split("\t")
                vocabulary[token] = int(index)
            bias = float(lines[2 + count].split(" ", 1)[1])
            if lines[3 + count] != "weights":
                raise FormatError("missing weights section")
            weights = np.array([float(v) for v in lines[4 + count : 4 + count + count]],
                               dtype=np.float64)
        except (IndexError, ValueError) as exc:
            raise FormatError(f"malformed model file: {exc}") from exc
        if len(weights) != count:
            raise FormatError("weight count does not match vocabulary size")
        model = cls()
        model.vocabulary_ = vocabulary
        model.weights_ = weights
        model.bias_ = bias
        return model


class RemoteVictim(Victim):
    """A victim served behind the wire protocol.

    Texts beyond ``max_tokens`` (when set) are rejected before transport;
    remote probabilities are renormalized after schema validation so the
    local invariant (sum exactly 1) holds.
    """

    name = "remote"

    def __init__(self, client, batch_limit: int = DEFAULT_BATCH_LIMIT,
                 max_tokens: Optional[int] = None):
        super().__init__(batch_limit=batch_limit, max_tokens=max_tokens)
        self.client = client

    def _check_lengths(self, texts):
        if self.max_tokens is None:
            return
        for text in texts:
            if len(simple_tokens(text)) > self.max_tokens:
                raise TextTooLong(
                    f"text of {len(simple_tokens(text))} tokens exceeds "
                    f"the {self.max_tokens}-token limit")

    def _classify_batch(self, texts):
        texts = list(texts)
        pairs = self.client.classify(texts, on_retry=lambda: self._count(len(texts)))
        scores = []
        for p_credible, p_noncredible in pairs:
            total = p_credible + p_noncredible
            scores.append(VictimScores(p_credible / total, p_noncredible / total))
        return scores
