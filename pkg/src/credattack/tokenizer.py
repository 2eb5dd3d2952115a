"""Word-level tokenization with punctuation detachment.

The tokenizer splits on whitespace and then peels leading and trailing
punctuation off into their own tokens, preserving the original casing.
Word-internal punctuation (``don't``, ``state-of-the-art``) stays put.
``detokenize`` is the inverse up to whitespace normalization: punctuation
that conventionally hugs the preceding word is re-attached without a space.
"""

from __future__ import annotations

import string
from typing import Sequence

from .errors import EmptyText
from .types import PART_SEPARATOR, TextInstance, TokenizedText

_PUNCT = set(string.punctuation)
# No space before these when detokenizing; no space after an opener.
_CLOSERS = set(".,;:!?)]}")
_OPENERS = set("([{")


def _split_token(raw: str) -> list[str]:
    """Split one whitespace-delimited chunk into word + punctuation tokens."""
    left = []
    right = []
    core = raw
    while core and core[0] in _PUNCT:
        left.append(core[0])
        core = core[1:]
    while core and core[-1] in _PUNCT:
        right.append(core[-1])
        core = core[:-1]
    right.reverse()
    return [t for t in (*left, core, *right) if t]


def tokenize(text: str) -> TokenizedText:
    """Tokenize a single string.

    Raises:
        EmptyText: if the input is empty after trimming.
    """
    tokens = []
    for chunk in text.split():
        tokens.extend(_split_token(chunk))
    if not tokens:
        raise EmptyText("cannot tokenize empty text")
    return TokenizedText(tuple(tokens))


def tokenize_instance(instance: TextInstance) -> TokenizedText:
    """Tokenize an instance, recording where part 2 begins."""
    first = tokenize(instance.parts[0])
    if len(instance.parts) == 1:
        return TokenizedText(first.tokens, None, instance)
    second = tokenize(instance.parts[1])
    return TokenizedText(first.tokens + second.tokens, len(first.tokens), instance)


def _join(tokens: Sequence[str]) -> str:
    out = []
    for token in tokens:
        if out and token in _CLOSERS:
            out[-1] += token
        elif out and out[-1] and out[-1][-1] in _OPENERS:
            out[-1] += token
        else:
            out.append(token)
    return " ".join(out)


def detokenize(text: TokenizedText) -> str:
    """Render tokens back into a string; two-part texts rejoin on the separator."""
    if text.part_boundary is None:
        return _join(text.tokens)
    head = _join(text.tokens[: text.part_boundary])
    tail = _join(text.tokens[text.part_boundary :])
    return head + PART_SEPARATOR + tail


def simple_tokens(text: str) -> list[str]:
    """Tokenize tolerantly: an empty or all-whitespace text gives []."""
    tokens = []
    for chunk in text.split():
        tokens.extend(_split_token(chunk))
    return tokens
