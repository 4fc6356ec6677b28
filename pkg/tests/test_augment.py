from __future__ import annotations

import pytest

from ajudge.augment import (AugmentPlan, augment_corpus, derive_seed,
                            equivalent_math_forms, inject_option_noise,
                            transform_answer_sentence)
from ajudge.catalogs import delimiter_strings, rephrase_templates, wrapper_templates
from ajudge.errors import (IndexOutOfRange, InsufficientForms, NoMarkerFound,
                           NoOptionsDetected, NotMathAnswer, TooFewDistractors)
from ajudge.judging import judge_record
from ajudge.mathnorm import math_equivalent
from ajudge.options import transform_option_indices
from ajudge.records import LabeledRecord, QuestionType, Verdict

MAMMAL_Q = "Which is a mammal? A. Snake B. Whale C. Trout D. Gecko"


def test_option_index_to_roman():
    question, ref = transform_option_indices(MAMMAL_Q, "C", "roman")
    assert "(I)" in question and "(IV)" in question
    assert "A." not in question
    assert ref == "III"


def test_option_index_to_arabic():
    question, ref = transform_option_indices(MAMMAL_Q, "A", "arabic")
    assert "1." in question and "4." in question
    assert ref == "1"


def test_option_index_round_trip_positions():
    # roman -> arabic keeps the correct option's position for all 26 positions
    labels = [chr(ord("A") + i) for i in range(26)]
    question = "Choose:  " + "  ".join(f"({lab}) item{i+1}" for i, lab in enumerate(labels))
    for pos, lab in enumerate(labels, start=1):
        q_roman, ref_roman = transform_option_indices(question, lab, "roman")
        q_back, ref_back = transform_option_indices(q_roman, ref_roman, "arabic")
        assert ref_back == str(pos)


def test_option_index_no_options():
    with pytest.raises(NoOptionsDetected):
        transform_option_indices("No options here at all.", "A", "roman")


def test_noise_removal_relabels():
    question, ref = inject_option_noise(MAMMAL_Q, "B", add=0, remove=1, seed=3)
    # one distractor gone, answer preserved and relabeled contiguously
    assert "Whale" in question
    labels = [c for c in "ABC" if f"{c}." in question]
    assert len(labels) == 3
    assert "D." not in question
    assert ref in ("A", "B", "C")


def test_noise_addition_keeps_answer_text():
    question, ref = inject_option_noise(MAMMAL_Q, "B", add=2, remove=0, seed=3)
    assert "Whale" in question
    assert "F." in question  # six options now
    assert ref == "B"


def test_noise_never_removes_answer():
    for seed in range(20):
        question, ref = inject_option_noise(MAMMAL_Q, "B", add=0, remove=2, seed=seed)
        assert "Whale" in question


def test_noise_too_few_distractors():
    with pytest.raises(TooFewDistractors):
        inject_option_noise(MAMMAL_Q, "B", add=0, remove=3, seed=0)


def test_noise_deterministic():
    a = inject_option_noise(MAMMAL_Q, "B", add=2, remove=1, seed=9)
    b = inject_option_noise(MAMMAL_Q, "B", add=2, remove=1, seed=9)
    assert a == b


def test_math_forms_2700():
    forms = equivalent_math_forms("2700", 5)
    assert forms == ["2.7×10^3", "2700.0", "2.7 \\times 10^3",
                     "$2.7 \\times 10^{3}$", "Two thousand seven hundred"]


def test_math_forms_symbolic():
    forms = equivalent_math_forms("\\frac{\\pi}{2} - 2\\alpha", 4)
    assert forms == ["\\pi/2 - 2\\alpha", "pi/2 - 2alpha",
                     "pi/2 - 2 * alpha", "0.5 * pi - 2 * alpha"]


def test_math_forms_self_check():
    for answer in ["2700", "5", "1/4", "0.125", "12", "\\frac{\\pi}{2} - 2\\alpha"]:
        try:
            forms = equivalent_math_forms(answer, 3)
        except InsufficientForms:
            continue
        for form in forms:
            assert math_equivalent(answer, form), (answer, form)


def test_math_forms_errors():
    with pytest.raises(NotMathAnswer):
        equivalent_math_forms("the Eagles", 3)
    with pytest.raises(InsufficientForms):
        equivalent_math_forms("x + y", 5)  # few rewrites apply to plain symbols


def test_sentence_transform_examples():
    assert transform_answer_sentence("The answer is B", "rephrase", 0) == \
        "The most appropriate answer is B"
    assert transform_answer_sentence("The answer is B", "wrap", 0) == \
        "The answer is \\boxed{B}"
    assert transform_answer_sentence("The answer is B", "delimit", 0) == \
        "The answer is: B"


def test_sentence_transform_errors():
    with pytest.raises(NoMarkerFound):
        transform_answer_sentence("No marker here", "rephrase", 0)
    with pytest.raises(IndexOutOfRange):
        transform_answer_sentence("The answer is B", "rephrase", 20)
    with pytest.raises(IndexOutOfRange):
        transform_answer_sentence("The answer is B", "delimit", 5)


def _record(**kwargs) -> LabeledRecord:
    base = dict(dataset="unit", question="What is 2+2? ",
                question_type=QuestionType.MATH, correct_answer="4",
                llm_output="The answer is 4.",
                human_judgment_result=Verdict.CORRECT)
    base.update(kwargs)
    return LabeledRecord(**base)


def test_augment_corpus_empty():
    plan = AugmentPlan(ops=("rephrase",), rng_seed=1)
    assert augment_corpus([], plan) == []


def test_augment_corpus_suffix_and_label_carry():
    plan = AugmentPlan(ops=("rephrase", "wrap"), rng_seed=1, variants_per_record=2)
    out = augment_corpus([_record()], plan)
    assert out
    for rec in out:
        assert rec.dataset.endswith("_enh")
        assert rec.human_judgment_result is Verdict.CORRECT


def test_augment_corpus_deterministic():
    records = [_record(), _record(question="and 3+3? ", correct_answer="6",
                                  llm_output="The answer is 6.")]
    plan = AugmentPlan(ops=("rephrase", "wrap", "delimit"), rng_seed=42,
                       variants_per_record=3)
    first = augment_corpus(records, plan)
    second = augment_corpus(records, plan)
    assert first == second


def test_augment_corpus_skips_failures():
    # a math-forms op on a non-math corpus produces no variants but no crash
    rec = _record(question_type=QuestionType.SHORT_ANSWER, correct_answer="Paris",
                  llm_output="The answer is Paris.")
    plan = AugmentPlan(ops=("mathforms",), rng_seed=1)
    assert augment_corpus([rec], plan) == []


def test_single_transform_label_preservation():
    records = [
        _record(),
        _record(dataset="mc", question=MAMMAL_Q,
                question_type=QuestionType.MULTIPLE_CHOICE, correct_answer="B",
                llm_output="The answer is B. Whale"),
        _record(dataset="clf", question="Sentiment: positive or negative",
                question_type=QuestionType.CLASSIFICATION, correct_answer="positive",
                llm_output="The answer is positive."),
    ]
    for record in records:
        assert judge_record(record).verdict is Verdict.CORRECT
    for index in range(len(rephrase_templates())):
        for record in records:
            out = transform_answer_sentence(record.llm_output, "rephrase", index)
            mutated = _record(**{**record.__dict__, "llm_output": out})
            assert judge_record(mutated).verdict is Verdict.CORRECT, (index, out)
    for index in range(len(wrapper_templates())):
        for record in records:
            out = transform_answer_sentence(record.llm_output, "wrap", index)
            mutated = _record(**{**record.__dict__, "llm_output": out})
            assert judge_record(mutated).verdict is Verdict.CORRECT, (index, out)
    for index in range(len(delimiter_strings())):
        for record in records:
            out = transform_answer_sentence(record.llm_output, "delimit", index)
            mutated = _record(**{**record.__dict__, "llm_output": out})
            assert judge_record(mutated).verdict is Verdict.CORRECT, (index, out)


def test_derive_seed_stable():
    assert derive_seed(1, 0) == derive_seed(1, 0)
    assert derive_seed(1, 0) != derive_seed(1, 1)
    assert derive_seed(1, 0) != derive_seed(2, 0)


def test_plan_validation():
    with pytest.raises(ValueError):
        AugmentPlan(ops=("unknown-op",))
    with pytest.raises(ValueError):
        AugmentPlan(ops=("rephrase",), forms_per_answer=6)
    with pytest.raises(ValueError):
        AugmentPlan(ops=("rephrase",), noise_add=-1)
