"""Synthetic data for tests, demos, and the desk-scale end-to-end run.

The generated world is linearly separable on purpose: credible texts
lean on ``fine*`` marker words, non-credible texts on ``grim*`` markers,
and the embedding table places each ``fine<i>`` next to ``grim<i>`` (and
vice versa), the way counter-fitted vectors put exchangeable words
close. One or two marker swaps therefore cross the decision boundary of
a trained bag-of-words victim.
"""

from __future__ import annotations

from pathlib import Path

from .rng import make_rng
from .types import Label, TextInstance

MARKER_PAIRS = 12
FILLER_WORDS = ("report", "about", "the", "local", "story", "channel",
                "people", "today", "news", "city")


def marker_words() -> tuple[list[str], list[str]]:
    credible = [f"fine{i}" for i in range(MARKER_PAIRS)]
    noncredible = [f"grim{i}" for i in range(MARKER_PAIRS)]
    return credible, noncredible


def synthetic_corpus(count: int, seed: int = 0,
                     two_part_share: float = 0.0) -> list[TextInstance]:
    """Labeled instances whose label matches their majority marker kind."""
    rng = make_rng(seed)
    credible, noncredible = marker_words()
    instances = []
    for i in range(count):
        label = Label(i % 2)
        majority, minority = (credible, noncredible) if label is Label.CREDIBLE \
            else (noncredible, credible)
        strong = rng.randrange(2, 4)
        weak = strong - rng.randrange(1, 3)
        words = [rng.choice(majority) for _ in range(strong)]
        words += [rng.choice(minority) for _ in range(max(weak, 0))]
        words += [rng.choice(FILLER_WORDS) for _ in range(rng.randrange(2, 5))]
        rng.shuffle(words)
        if rng.random() < two_part_share and len(words) >= 4:
            cut = len(words) // 2
            parts = (" ".join(words[:cut]), " ".join(words[cut:]))
        else:
            parts = (" ".join(words),)
        instances.append(TextInstance(str(i), parts, label))
    return instances


def write_corpus_tsv(instances, path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write("label\ttext1\ttext2\n")
        for instance in instances:
            second = instance.parts[1] if len(instance.parts) == 2 else ""
            handle.write(f"{int(instance.label)}\t{instance.parts[0]}\t{second}\n")


def embedding_rows(dimension: int = 8, seed: int = 7) -> list[tuple[str, list[float]]]:
    """Vectors where each fine/grim pair is mutually nearest, fillers apart."""
    rng = make_rng(seed)
    credible, noncredible = marker_words()
    rows = []
    for i, (fine, grim) in enumerate(zip(credible, noncredible)):
        base = [rng.uniform(-1.0, 1.0) for _ in range(dimension)]
        nudge = [v + rng.uniform(-0.02, 0.02) for v in base]
        rows.append((fine, base))
        rows.append((grim, nudge))
    for word in FILLER_WORDS:
        rows.append((word, [rng.uniform(-1.0, 1.0) for _ in range(dimension)]))
    return rows


def write_embeddings(path, dimension: int = 8, seed: int = 7) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for token, values in embedding_rows(dimension, seed):
            handle.write(token + " " + " ".join(f"{v:.6f}" for v in values) + "\n")


def write_synonyms(path) -> None:
    """Static synonym table pairing each marker with its opposite."""
    credible, noncredible = marker_words()
    with open(path, "w", encoding="utf-8") as handle:
        for fine, grim in zip(credible, noncredible):
            handle.write(f"{fine}\t{grim}\n")
            handle.write(f"{grim}\t{fine}\n")
        handle.write("[MASK]\t" + ",".join(noncredible[:4] + credible[:4]) + "\n")


def generate_fixtures(out_dir, *, train_count: int = 200, attack_count: int = 50,
                      seed: int = 0) -> dict[str, Path]:
    """Write the full fixture set and return the paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {
        "train": out / "train.tsv",
        "attack": out / "attack.tsv",
        "embeddings": out / "embeddings.txt",
        "synonyms": out / "synonyms.tsv",
    }
    write_corpus_tsv(synthetic_corpus(train_count, seed=seed), paths["train"])
    write_corpus_tsv(synthetic_corpus(attack_count, seed=seed + 1,
                                      two_part_share=0.3), paths["attack"])
    write_embeddings(paths["embeddings"])
    write_synonyms(paths["synonyms"])
    return paths
