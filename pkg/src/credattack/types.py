"""Core domain types shared by every other module.

All types here are immutable after construction and safe to share across
concurrent attack workers.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

from .errors import ValidationError

# Two-part instances (claim + evidence) serialize to a single string with
# this separator. It survives the TSV dataset format, is treated as
# whitespace by the tokenizer, and is never itself an editable token.
PART_SEPARATOR = "\t"


class Label(enum.IntEnum):
    """Binary credibility label with a fixed 0/1 integer encoding."""

    CREDIBLE = 0
    NON_CREDIBLE = 1

    @property
    def opposite(self) -> "Label":
        return Label.CREDIBLE if self is Label.NON_CREDIBLE else Label.NON_CREDIBLE


@dataclass(frozen=True)
class TextInstance:
    """One labeled example: one or two text parts plus its label.

    Two instances with identical parts and label compare equal; the id is
    bookkeeping only and does not participate in equality or hashing.
    """

    id: str
    parts: tuple[str, ...]
    label: Label

    def __post_init__(self):
        if not isinstance(self.parts, tuple):
            object.__setattr__(self, "parts", tuple(self.parts))
        if not 1 <= len(self.parts) <= 2:
            raise ValidationError(f"instance must have 1 or 2 parts, got {len(self.parts)}")
        if any(not p.strip() for p in self.parts):
            raise ValidationError("instance parts must be non-empty after trimming")
        object.__setattr__(self, "label", Label(self.label))

    def __eq__(self, other):
        if not isinstance(other, TextInstance):
            return NotImplemented
        return self.parts == other.parts and self.label == other.label

    def __hash__(self):
        return hash((self.parts, self.label))

    def serialized(self) -> str:
        """Full text as a single string, parts joined by the part separator."""
        return PART_SEPARATOR.join(self.parts)


class EditKind(enum.Enum):
    REPLACE = "replace"
    INSERT = "insert"
    MERGE = "merge"
    CHAR_EDIT = "char_edit"


@dataclass(frozen=True)
class Edit:
    """One recorded perturbation applied during an attack.

    ``position`` is the token index at the time the edit was applied;
    ``iteration`` is the attack-specific round that produced it.
    """

    kind: EditKind
    position: int
    before: str
    after: str
    iteration: int = 0


EditTrace = tuple[Edit, ...]


@dataclass(frozen=True)
class TokenizedText:
    """A tokenized instance: tokens plus the index where part 2 begins.

    ``part_boundary`` is None for single-part texts. The structural editing
    helpers return new objects and keep the boundary consistent, so attack
    code never adjusts it by hand.
    """

    tokens: tuple[str, ...]
    part_boundary: Optional[int] = None
    source: Optional[TextInstance] = field(default=None, compare=False)

    def __post_init__(self):
        if not isinstance(self.tokens, tuple):
            object.__setattr__(self, "tokens", tuple(self.tokens))
        if len(self.tokens) < 1:
            raise ValidationError("tokenized text must contain at least one token")
        if self.part_boundary is not None and not 0 < self.part_boundary < len(self.tokens):
            raise ValidationError(f"part boundary {self.part_boundary} out of range")

    def __len__(self) -> int:
        return len(self.tokens)

    def replace(self, position: int, token: str) -> "TokenizedText":
        """New text with the token at ``position`` swapped for ``token``."""
        tokens = list(self.tokens)
        tokens[position] = token
        return TokenizedText(tuple(tokens), self.part_boundary, self.source)

    def insert_after(self, position: int, token: str) -> "TokenizedText":
        """New text with ``token`` inserted right after ``position``.

        An insertion after the last token of part 1 stays in part 1.
        """
        tokens = list(self.tokens)
        tokens.insert(position + 1, token)
        boundary = self.part_boundary
        if boundary is not None and position < boundary:
            boundary += 1
        return TokenizedText(tuple(tokens), boundary, self.source)

    def merge(self, position: int, token: str) -> "TokenizedText":
        """New text with tokens at ``position`` and ``position + 1`` fused into ``token``.

        Merging across the part boundary is not allowed: the separator must
        survive every edit.
        """
        if position + 1 >= len(self.tokens):
            raise ValidationError("merge needs two tokens")
        if self.part_boundary is not None and position + 1 == self.part_boundary:
            raise ValidationError("cannot merge across the part boundary")
        tokens = list(self.tokens)
        tokens[position : position + 2] = [token]
        boundary = self.part_boundary
        if boundary is not None and position < boundary:
            boundary -= 1
        return TokenizedText(tuple(tokens), boundary, self.source)

    def part_of(self, position: int) -> int:
        """0-based part index the token at ``position`` belongs to."""
        if self.part_boundary is None or position < self.part_boundary:
            return 0
        return 1


def check_probability_pair(p_a: float, p_b: float, tolerance: float = 1e-9) -> None:
    """Validate that two values form a probability distribution."""
    if p_a < 0 or p_b < 0:
        raise ValidationError(f"probabilities must be non-negative, got ({p_a}, {p_b})")
    if abs(p_a + p_b - 1.0) > tolerance:
        raise ValidationError(f"probabilities must sum to 1, got {p_a + p_b}")


def check_unit_interval(value: float, name: str) -> None:
    """Validate that ``value`` lies in [0, 1]."""
    if not 0.0 <= value <= 1.0:
        raise ValidationError(f"{name} must be in [0, 1], got {value}")
