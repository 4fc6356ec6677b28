from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ajudge.nlmatch import (AlignConfig, alignment_score, levenshtein, nl_equivalent,
                            normalize_text)


def test_normalize_spelled_numbers():
    assert normalize_text("one hundred") == "100"


def test_normalize_articles_and_punctuation():
    assert normalize_text("The Eagles.") == "eagles"
    assert normalize_text("Russians") == normalize_text("russians ")


def test_normalize_idempotent_examples():
    for s in ["The Eagles.", "one hundred", "Ａ ﬁle", "positive", "答案是B。"]:
        once = normalize_text(s)
        assert normalize_text(once) == once


def test_alignment_identical_is_one():
    assert alignment_score("positive", "positive") == 1.0


def test_alignment_disjoint_is_zero():
    # fully disjoint token sets with maximal edit distance
    assert alignment_score("aaaa", "zzzz") == 0.0


def test_alignment_hand_computed_blend():
    # tokens {sexual, assault} vs {sexual, assault, rates}: F1 = 4/5
    # normalized strings differ by the 6-char suffix " rates": edit = 1 - 6/20
    a, b = "sexual assault", "sexual assault rates"
    expected = 0.5 * 0.8 + 0.5 * (1 - 6 / 20)
    assert alignment_score(a, b) == pytest.approx(expected)


def test_levenshtein_basics():
    assert levenshtein("", "") == 0
    assert levenshtein("abc", "abc") == 0
    assert levenshtein("abc", "abd") == 1
    assert levenshtein("kitten", "sitting") == 3


def test_nl_equivalent_fixture_cases():
    assert not nl_equivalent("2009", "2001")
    assert nl_equivalent("positive", "positive")
    assert nl_equivalent("Russians", "the Russians")


def test_nl_exact_equality_ignores_tau():
    strict = AlignConfig(tau=1.0)
    assert nl_equivalent("The Eagles", "eagles", strict)


def test_monotone_threshold():
    a, b = "sexual assault", "sexual assault rates"
    score = alignment_score(a, b)
    assert nl_equivalent(a, b, AlignConfig(tau=round(score - 0.01, 3)))
    assert not nl_equivalent(a, b, AlignConfig(tau=round(score + 0.01, 3)))


def test_chinese_character_tokens():
    assert alignment_score("答案是积极", "答案是积极") == 1.0
    assert nl_equivalent("积极", "积极")


def test_empty_inputs():
    assert alignment_score("", "") == 1.0
    assert alignment_score("the", "a") == 1.0  # both normalize to empty


@settings(max_examples=300, deadline=None)
@given(st.text(max_size=30), st.text(max_size=30))
def test_symmetry_and_bounds(a, b):
    s1 = alignment_score(a, b)
    s2 = alignment_score(b, a)
    assert s1 == s2
    assert 0.0 <= s1 <= 1.0


@settings(max_examples=200, deadline=None)
@given(st.text(max_size=40))
def test_normalize_idempotent(s):
    once = normalize_text(s)
    assert normalize_text(once) == once
