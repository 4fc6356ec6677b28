from __future__ import annotations

import pytest

from ajudge.extraction import decompose
from ajudge.judging import DEFAULT_CONFIG, judge, judge_equivalence, judge_record
from ajudge.records import QuestionType, Verdict

MC = QuestionType.MULTIPLE_CHOICE
MATH = QuestionType.MATH
SA = QuestionType.SHORT_ANSWER
CLF = QuestionType.CLASSIFICATION

PLANET_Q = "Which planet is largest? A. Mars B. Venus C. Earth D. Jupiter"


def test_fixture_records_reproduce_human_verdicts(var_fixture):
    for record in var_fixture:
        judgment = judge_record(record)
        assert judgment.verdict is record.human_judgment_result, record.dataset


def test_mc_label_and_content_example():
    final = decompose("(III) thematic map", MC)
    q = ("If you wanted to find the global distribution of coal, you would use a  "
         "Answer Choices:  (I) reference map.  (II) topographic map.  "
         "(III) thematic map.  (IV) location map.")
    judgment = judge_equivalence(final, "III", MC, q)
    assert judgment.verdict is Verdict.CORRECT


def test_mc_content_precedence_incorrect():
    # label matches the reference but the content names a different option
    judgment = judge(PLANET_Q, MC, "The answer is B. Jupiter", "B")
    assert judgment.verdict is Verdict.INCORRECT


def test_mc_content_precedence_correct():
    # wrong label, but the content is the reference option's content
    judgment = judge(PLANET_Q, MC, "The answer is B. Jupiter", "D")
    assert judgment.verdict is Verdict.CORRECT


def test_mc_content_only_answer():
    judgment = judge(PLANET_Q, MC, "The answer is Jupiter.", "D")
    assert judgment.verdict is Verdict.CORRECT


def test_mc_label_only_wrong():
    judgment = judge(PLANET_Q, MC, "The answer is A.", "D")
    assert judgment.verdict is Verdict.INCORRECT


def test_mc_without_parseable_options():
    judgment = judge("Pick the best option.", MC, "The answer is B.", "B")
    assert judgment.verdict is Verdict.CORRECT
    judgment = judge("Pick the best option.", MC, "The answer is C.", "B")
    assert judgment.verdict is Verdict.INCORRECT


def test_math_mismatch():
    judgment = judge("", MATH, "The answer is 10.", "5")
    assert judgment.verdict is Verdict.INCORRECT


def test_math_equivalent_latex_response():
    judgment = judge("", MATH, "The answer is $2.7 \\times 10^{3}$.", "2700")
    assert judgment.verdict is Verdict.CORRECT


def test_math_unit_with_question_context():
    q = ("A volcano erupts and spews ash into the sky... If the ashes erupted three "
         "hundred feet into the sky, what was the radius of the ash cloud in feet?")
    judgment = judge(q, MATH, "The answer is 2700 feet.", "2700")
    assert judgment.verdict is Verdict.CORRECT


def test_classification_exact_required():
    assert judge("", CLF, "The answer is positive.", "positive").correct
    assert not judge("", CLF, "The answer is very positive.", "positive").correct
    assert not judge("", CLF, "The answer is negative.", "positive").correct


def test_short_answer_strict_on_dates():
    assert not judge("", SA, "The answer is 2001.", "2009").correct
    assert judge("", SA, "The answer is 2009.", "2009").correct


def test_short_answer_article_drift():
    assert judge("", SA, "The answer is the Russians.", "Russians").correct


def test_no_extractable_answer():
    judgment = judge("", MATH, "", "5")
    assert judgment.verdict is Verdict.INCORRECT
    assert "no-extractable-answer" in judgment.trace


def test_irrelevant_fallback_marked_incorrect():
    # only a fallback candidate, incompatible with the question type
    judgment = judge("", MATH, "I cannot solve this problem sorry", "5")
    assert judgment.verdict is Verdict.INCORRECT


@pytest.mark.parametrize("qtype,answer", [
    (MATH, "144"),
    (MATH, "\\frac{\\pi}{2} - 2\\alpha"),
    (SA, "Paris"),
    (CLF, "positive"),
    (MC, "B"),
])
def test_reflexivity_through_all_layers(qtype, answer):
    response = f"The answer is {answer}."
    assert judge("", qtype, response, answer).correct, (qtype, answer)


def test_verdict_iff_components(var_fixture):
    for record in var_fixture:
        judgment = judge_record(record)
        present = [v for v in judgment.component_results.values() if v is not None]
        expected = bool(present) and all(present)
        assert judgment.correct == expected


def test_judgment_deterministic(var_fixture):
    for record in var_fixture:
        first = judge_record(record)
        for _ in range(3):
            again = judge_record(record)
            assert again == first


def test_wrapped_mc_answer():
    judgment = judge(PLANET_Q, MC, "The answer is \\boxed{D}.", "D")
    assert judgment.correct
    judgment = judge(PLANET_Q, MC, "The answer is **D**.", "D")
    assert judgment.correct


def test_roman_label_response_vs_letter_reference():
    q = "Pick one:  (1) alpha  (2) beta  (3) gamma  (4) delta"
    assert judge(q, MC, "The answer is (3) gamma.", "3").correct
    assert not judge(q, MC, "The answer is (2) beta.", "3").correct
