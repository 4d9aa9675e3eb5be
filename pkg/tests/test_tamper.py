import re
from collections import Counter

import numpy as np
import pytest

from infomech import (
    TransformSpec,
    apply_transform,
    case_flip,
    constant_pad,
    format_standardize,
    pattern_inject,
)

_TRANSFORMS = {
    "case_flip": case_flip,
    "format_standardize": format_standardize,
    "pattern_inject": pattern_inject,
    "constant_pad": constant_pad,
}


def random_corpus(size: int, seed: int = 13) -> list[str]:
    rng = np.random.default_rng(seed)
    alphabet = list("abcdefgXYZ0189 .!?,*_`#>\n\t-éßİ世")
    texts = []
    for _ in range(size):
        n = int(rng.integers(0, 120))
        texts.append("".join(rng.choice(alphabet, size=n)))
    return texts


def is_subsequence(needle: str, haystack: str) -> bool:
    it = iter(haystack)
    return all(ch in it for ch in needle)


def alnum_multiset(text: str) -> Counter:
    return Counter(ch.lower() for ch in text if ch.isalnum())


class TestCaseFlip:
    def test_example(self):
        assert case_flip("AbC1!") == "aBc1!"

    def test_involution_on_corpus(self):
        for text in random_corpus(300):
            assert case_flip(case_flip(text)) == text

    def test_all_upper_becomes_all_lower(self):
        assert case_flip("HELLO WORLD") == "hello world"


class TestFormatStandardize:
    def test_whitespace_collapse(self):
        assert format_standardize("a  b\n\nc") == "a b c"

    def test_idempotent_on_corpus(self):
        for text in random_corpus(300, seed=29):
            once = format_standardize(text)
            assert format_standardize(once) == once

    def test_markdown_stripped(self):
        assert format_standardize("**bold**") == "bold"

    def test_sentence_per_line(self):
        assert format_standardize("Hi there. Bye now.") == "Hi there.\nBye now."


class TestPatternInject:
    def test_single_sentence_wrapped(self):
        assert pattern_inject("hello world", "[CTX]") == "[CTX] hello world [CTX]"

    def test_marker_before_each_sentence_boundary(self):
        out = pattern_inject("One. Two.", "[CTX]")
        assert out == "[CTX] One. [CTX] Two. [CTX]"

    def test_original_is_subsequence_on_corpus(self):
        for text in random_corpus(300, seed=31):
            assert is_subsequence(text, pattern_inject(text, "[CTX]"))

    def test_empty_marker_rejected(self):
        with pytest.raises(ValueError, match="marker"):
            pattern_inject("text", "")


class TestConstantPad:
    def test_length_grows_by_separator_plus_pad(self):
        out = constant_pad("abc", "XYZXYZ")
        assert len(out) == len("abc") + len("\n\n") + 6

    def test_original_is_prefix(self):
        for text in random_corpus(100, seed=37):
            assert constant_pad(text, "PADPAD").startswith(text)

    def test_distinct_texts_stay_distinct(self):
        assert constant_pad("first", "PAD") != constant_pad("second", "PAD")

    def test_empty_pad_rejected(self):
        with pytest.raises(ValueError, match="pad"):
            constant_pad("text", "")


class TestSharedContracts:
    def test_determinism_byte_exact(self):
        corpus = random_corpus(50, seed=41)
        for text in corpus:
            for name, fn in _TRANSFORMS.items():
                assert fn(text) == fn(text), name

    def test_content_preservation_multiset(self):
        # The input's alphanumerics (case-insensitive) survive every transform.
        for text in random_corpus(200, seed=43):
            original = alnum_multiset(text)
            for name, fn in _TRANSFORMS.items():
                out = alnum_multiset(fn(text))
                assert all(out[ch] >= k for ch, k in original.items()), name


class TestTransformSpec:
    def test_unknown_kind_rejected(self):
        with pytest.raises(ValueError, match="unknown transform"):
            TransformSpec(kind="paraphrase")

    def test_dispatch(self):
        assert apply_transform(TransformSpec("case_flip"), "Ab") == "aB"
        assert apply_transform(TransformSpec("constant_pad", pad="PP"), "x").startswith("x")
        assert "[CTX]" in apply_transform(TransformSpec("pattern_inject"), "x")
        assert apply_transform(TransformSpec("format_standardize"), "a  b") == "a b"

    def test_empty_params_rejected(self):
        with pytest.raises(ValueError):
            TransformSpec("pattern_inject", marker="")
        with pytest.raises(ValueError):
            TransformSpec("constant_pad", pad="")
