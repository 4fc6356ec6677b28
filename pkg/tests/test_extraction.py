from __future__ import annotations

import random

import pytest

from ajudge.catalogs import (delimiter_strings, marker_phrases, rephrase_templates,
                             wrapper_templates)
from ajudge.extraction import (DEFAULT_EXTRACTION, CandidateAnswer, MarkerKind,
                               decompose, extract_candidates, extract_final,
                               score_candidate)
from ajudge.records import QuestionType

MC = QuestionType.MULTIPLE_CHOICE
MATH = QuestionType.MATH
SA = QuestionType.SHORT_ANSWER
CLF = QuestionType.CLASSIFICATION


def test_catalog_sizes_pinned():
    assert len(rephrase_templates()) == 20
    assert len(wrapper_templates()) == 18
    assert len(delimiter_strings()) == 5


def test_explicit_phrase_candidate():
    cands = extract_candidates("Some reasoning first. The answer is 2001.")
    phrase = [c for c in cands if c.marker is MarkerKind.EXPLICIT_PHRASE]
    assert len(phrase) == 1
    assert phrase[0].span == "2001"


def test_empty_response_no_candidates():
    assert extract_candidates("") == []
    assert extract_candidates("   \n  ") == []


def test_marker_inventory_hand_count():
    # constructed response: one phrase marker, one boxed marker, a fallback line
    response = "The answer is 5 for the first part.\nLater we revise: \\boxed{7}\nDone with it all"
    cands = extract_candidates(response)
    offsets = [c.offset for c in cands]
    assert offsets == sorted(offsets)
    kinds = {c.marker for c in cands}
    assert MarkerKind.EXPLICIT_PHRASE in kinds
    assert MarkerKind.BOXED_WRAPPER in kinds
    assert MarkerKind.FINAL_LINE_FALLBACK in kinds
    boxed = [c for c in cands if c.marker is MarkerKind.BOXED_WRAPPER]
    assert boxed[0].span == "7"


def test_every_wrapper_template_recognized():
    for template in wrapper_templates():
        response = "Some text. The result: " + template.replace("{ANS}", "B42x")
        spans = [c.span for c in extract_candidates(response)]
        assert any("B42x" == s for s in spans), template


def test_every_rephrase_template_recognized():
    for template in rephrase_templates():
        response = "Reasoning goes here.\n" + template.replace("{ANS}", "B") + "."
        cands = [c for c in extract_candidates(response)
                 if c.marker is MarkerKind.EXPLICIT_PHRASE]
        assert any(c.span == "B" for c in cands), template


def test_every_delimiter_recognized():
    for delim in delimiter_strings():
        response = "Reasoning.\nThe answer is" + delim + "B7"
        cands = [c for c in extract_candidates(response)
                 if c.marker is MarkerKind.EXPLICIT_PHRASE]
        assert any(c.span == "B7" for c in cands), repr(delim)


def test_dedup_identical_offsets():
    cands = extract_candidates("The answer is (III) thematic map.")
    offsets = [c.offset for c in cands]
    assert len(offsets) == len(set(offsets))


def test_score_formula_instantiation():
    # phrase candidate at the very end, math-parseable, math question -> 3+2+2
    response = "x" * 96 + "7777"
    cand = CandidateAnswer("7777", MarkerKind.EXPLICIT_PHRASE, 96)
    assert score_candidate(cand, "", MATH, 100) == pytest.approx(3 + 2 * 0.96 + 2)
    cand_end = CandidateAnswer("7777", MarkerKind.EXPLICIT_PHRASE, 100)
    assert score_candidate(cand_end, "", MATH, 100) == pytest.approx(7.0)


def test_score_fallback_at_origin():
    cand = CandidateAnswer("whatever words", MarkerKind.FINAL_LINE_FALLBACK, 0)
    assert score_candidate(cand, "", SA, 50) == pytest.approx(1.0)


def test_score_monotone_in_offset_1000_placements():
    rng = random.Random(77)
    for _ in range(1000):
        length = rng.randrange(10, 5000)
        o1 = rng.randrange(0, length)
        o2 = rng.randrange(0, length)
        if o1 == o2:
            continue
        early, late = sorted((o1, o2))
        c_early = CandidateAnswer("5", MarkerKind.EXPLICIT_PHRASE, early)
        c_late = CandidateAnswer("5", MarkerKind.EXPLICIT_PHRASE, late)
        assert (score_candidate(c_late, "", MATH, length)
                > score_candidate(c_early, "", MATH, length))


def test_extract_final_later_revision():
    response = "They have 10 dogs total... Wait, recomputing the legs gives less. The answer is 5."
    final = extract_final("", MATH, response)
    assert final is not None and final.math_part == "5"


def test_extract_final_single_candidate():
    final = extract_final("", SA, "Paris")
    assert final is not None and final.raw == "Paris"


def test_extract_final_boxed_early_phrase_late():
    response = "First try: \\boxed{B} seems right. After more thought, the answer is C."
    final = extract_final("", MC, response)
    assert final is not None and final.sym_part == "C"


def test_extract_final_absent_on_empty():
    assert extract_final("", MATH, "") is None
    assert extract_final("", MATH, "  \n ") is None


def test_extract_final_deterministic():
    response = "The answer is 42. Or maybe \\boxed{41}. Final answer: 40."
    results = {repr(extract_final("", MATH, response)) for _ in range(10)}
    assert len(results) == 1


def _random_response(rng: random.Random, qtype: QuestionType) -> str:
    filler = ["Consider the problem.", "We compute step by step.", "Note the constraint.",
              "This simplifies nicely.", "Checking the edge case."]
    parts = [rng.choice(filler) for _ in range(rng.randrange(1, 5))]
    token = str(rng.randrange(100, 999)) if qtype is MATH else rng.choice("ABCD")
    style = rng.randrange(3)
    if style == 0:
        parts.insert(rng.randrange(len(parts) + 1), f"The answer is {token}.")
    elif style == 1:
        parts.insert(rng.randrange(len(parts) + 1), f"So we get \\boxed{{{token}}}.")
    return " ".join(parts)


def test_later_override_property():
    # appending a fresh, type-compatible answer always wins
    rng = random.Random(13)
    for _ in range(300):
        qtype = rng.choice([MATH, MC, SA])
        response = _random_response(rng, qtype)
        if not extract_candidates(response):
            continue
        fresh = "987654" if qtype is MATH else "Q"
        appended = response + f" The answer is {fresh}."
        final = extract_final("", qtype, appended)
        assert final is not None
        assert final.raw == fresh, (response, qtype)


def test_argmax_consistency():
    rng = random.Random(17)
    for _ in range(200):
        response = _random_response(rng, MATH) + " The answer is 7."
        cands = extract_candidates(response)
        length = len(response)
        final = extract_final("", MATH, response)
        best = max(score_candidate(c, "", MATH, length) for c in cands)
        winners = [c for c in cands
                   if score_candidate(c, "", MATH, length) == pytest.approx(best)]
        latest = max(winners, key=lambda c: c.offset)
        assert final is not None and final.raw == latest.span


def test_decompose_examples():
    d = decompose("(III) thematic map", MC)
    assert (d.sym_part, d.nl_part) == ("III", "thematic map")
    d = decompose("5", MATH)
    assert d.math_part == "5"
    d = decompose("2700 feet", MATH)
    assert d.math_part == "2700 feet" and d.nl_part is None
    d = decompose("The Eagles", SA)
    assert d.nl_part == "The Eagles" and d.math_part is None


def test_decompose_always_has_a_part():
    for span in ["x", "?!", "hello world", "42", "(a)", "\\boxed{5}"]:
        for qtype in (MC, MATH, SA, CLF):
            d = decompose(span, qtype)
            assert d.math_part or d.nl_part or d.sym_part, (span, qtype)


def test_chinese_marker():
    cands = extract_candidates("经过计算，答案是B。")
    assert any(c.span == "B" for c in cands)
