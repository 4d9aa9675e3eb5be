"""Deterministic measurement-tampering transforms.

Four content-preserving text attacks that flatten the natural variation a
same-source critic keys on. Sentence boundaries are terminal punctuation
followed by whitespace; no linguistic segmentation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

TRANSFORM_KINDS = ("case_flip", "format_standardize", "pattern_inject", "constant_pad")

DEFAULT_MARKER = "[CTX]"
DEFAULT_PAD = "XYZXYZXYZXYZXYZX"
PAD_SEPARATOR = "\n\n"

_MARKDOWN_CHARS = re.compile(r"[*_`#>]")
_SENTENCE_GAP = re.compile(r"([.!?]+) (?=\S)")
_SENTENCE_BOUNDARY = re.compile(r"([.!?]+\s+)(?=\S)")


def case_flip(text: str) -> str:
    """Invert the case of every cased character; an involution."""
    out = []
    for ch in text:
        if ch.isupper():
            flipped = ch.lower()
        elif ch.islower():
            flipped = ch.upper()
        else:
            out.append(ch)
            continue
        # Skip characters whose case flip does not round-trip (e.g. sharp s),
        # otherwise applying the transform twice would not restore the input.
        if len(flipped) == 1 and (
            flipped.upper() == ch or flipped.lower() == ch
        ):
            out.append(flipped)
        else:
            out.append(ch)
    return "".join(out)


def format_standardize(text: str) -> str:
    """Markdown markers stripped, whitespace collapsed, one sentence per line."""
    text = _MARKDOWN_CHARS.sub("", text)
    text = " ".join(text.split())
    return _SENTENCE_GAP.sub(r"\1\n", text)


def pattern_inject(text: str, marker: str = DEFAULT_MARKER) -> str:
    """Insert a context marker at the start, end, and each sentence boundary.

    Only insertions are made, so the original text survives as a subsequence.
    """
    if not marker:
        raise ValueError("marker must be non-empty")
    body = _SENTENCE_BOUNDARY.sub(lambda m: m.group(1) + marker + " ", text)
    return f"{marker} {body} {marker}"


def constant_pad(text: str, pad: str = DEFAULT_PAD) -> str:
    """Append a constant pad; the original text is a prefix of the output."""
    if not pad:
        raise ValueError("pad must be non-empty")
    return text + PAD_SEPARATOR + pad


@dataclass(frozen=True)
class TransformSpec:
    kind: str
    marker: str = DEFAULT_MARKER
    pad: str = DEFAULT_PAD

    def __post_init__(self):
        if self.kind not in TRANSFORM_KINDS:
            raise ValueError(
                f"unknown transform {self.kind!r}; valid: {', '.join(TRANSFORM_KINDS)}"
            )
        if self.kind == "pattern_inject" and not self.marker:
            raise ValueError("pattern_inject needs a non-empty marker")
        if self.kind == "constant_pad" and not self.pad:
            raise ValueError("constant_pad needs a non-empty pad")


def apply_transform(spec: TransformSpec, text: str) -> str:
    if spec.kind == "case_flip":
        return case_flip(text)
    if spec.kind == "format_standardize":
        return format_standardize(text)
    if spec.kind == "pattern_inject":
        return pattern_inject(text, spec.marker)
    return constant_pad(text, spec.pad)
