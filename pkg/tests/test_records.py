from __future__ import annotations

import json
from pathlib import Path

import pytest

from ajudge.errors import BadVerdictString, IoFailure, MalformedRecord, MissingField
from ajudge.records import (LabeledRecord, QuestionType, Verdict, load_corpus,
                            parse_record, serialize_record, write_corpus)


def test_parse_simpleqa_style_line():
    line = json.dumps({
        "dataset": "SimpleQA",
        "question": "In which year?",
        "question_type": "short answer",
        "correct_answer": "2009",
        "llm_output": "The answer is 2001.",
        "human_judgment_result": "Incorrect",
    })
    rec = parse_record(line)
    assert rec.question_type is QuestionType.SHORT_ANSWER
    assert rec.correct_answer == "2009"
    assert rec.llm_output.endswith("The answer is 2001.")
    assert rec.human_judgment_result is Verdict.INCORRECT


def test_missing_field_named():
    line = json.dumps({
        "dataset": "d", "question": "q", "question_type": "math", "llm_output": "r",
    })
    with pytest.raises(MissingField) as err:
        parse_record(line)
    assert err.value.field == "correct_answer"


@pytest.mark.parametrize("field", ["question", "llm_output", "correct_answer"])
def test_blank_required_field_rejected(field):
    obj = {"dataset": "d", "question": "q", "question_type": "math",
           "correct_answer": "1", "llm_output": "r"}
    obj[field] = "   "
    with pytest.raises(MissingField):
        parse_record(json.dumps(obj))


def test_malformed_json_reports_position():
    with pytest.raises(MalformedRecord) as err:
        parse_record('{"dataset": "d", ')
    assert err.value.line is not None


@pytest.mark.parametrize("bad", ["correct", "INCORRECT", "Wrong", "", "Correct "])
def test_verdict_domain_closed(bad):
    obj = {"dataset": "d", "question": "q", "question_type": "math",
           "correct_answer": "1", "llm_output": "r", "human_judgment_result": bad}
    with pytest.raises(BadVerdictString):
        parse_record(json.dumps(obj))


def test_question_type_case_insensitive():
    obj = {"dataset": "d", "question": "q", "question_type": "Multiple  Choice",
           "correct_answer": "A", "llm_output": "A"}
    assert parse_record(json.dumps(obj)).question_type is QuestionType.MULTIPLE_CHOICE
    obj["question_type"] = "essay"
    with pytest.raises(MalformedRecord):
        parse_record(json.dumps(obj))


def test_unknown_fields_preserved_round_trip():
    obj = {"dataset": "d", "question": "q", "question_type": "math",
           "correct_answer": "1", "llm_output": "r", "source_url": "http://x",
           "difficulty": 3}
    rec = parse_record(json.dumps(obj))
    assert rec.extras == {"source_url": "http://x", "difficulty": 3}
    again = parse_record(serialize_record(rec))
    assert again == rec


def test_verdict_serializes_exact_strings():
    rec = LabeledRecord("d", "q", QuestionType.MATH, "1", "r",
                        human_judgment_result=Verdict.CORRECT)
    assert '"human_judgment_result": "Correct"' in serialize_record(rec)


def test_load_corpus_fixture_order(var_fixture):
    assert [r.dataset for r in var_fixture] == ["SimpleQA", "MMLU-Redux_enh",
                                                "Amazon", "GSM8K"]


def test_load_corpus_empty_and_blank_lines(tmp_path):
    empty = tmp_path / "empty.jsonl"
    empty.write_text("", encoding="utf-8")
    assert load_corpus(empty) == []

    spaced = tmp_path / "spaced.jsonl"
    line = json.dumps({"dataset": "d", "question": "q", "question_type": "math",
                       "correct_answer": "1", "llm_output": "r"})
    spaced.write_text(f"\n{line}\n\n{line}\n\n", encoding="utf-8")
    assert len(load_corpus(spaced)) == 2


def test_load_corpus_aborts_with_line_number(tmp_path):
    line = json.dumps({"dataset": "d", "question": "q", "question_type": "math",
                       "correct_answer": "1", "llm_output": "r"})
    bad = tmp_path / "bad.jsonl"
    bad.write_text(f"{line}\nnot json\n", encoding="utf-8")
    with pytest.raises(MalformedRecord) as err:
        load_corpus(bad)
    assert err.value.line == 2


def test_load_corpus_missing_file():
    with pytest.raises(IoFailure):
        load_corpus("/nonexistent/path.jsonl")


def test_write_then_load_round_trip(tmp_path, var_fixture):
    out = tmp_path / "out.jsonl"
    write_corpus(var_fixture, out)
    assert load_corpus(out) == var_fixture
    assert out.read_text(encoding="utf-8").endswith("\n")


def test_non_ascii_round_trip(tmp_path):
    rec = LabeledRecord("CMMLU", "下列哪个是哺乳动物？ A. 蛇 B. 鲸鱼", QuestionType.MULTIPLE_CHOICE,
                        "B", "答案是B。")
    out = tmp_path / "zh.jsonl"
    write_corpus([rec], out)
    text = out.read_text(encoding="utf-8")
    assert "鲸鱼" in text  # not ASCII-escaped
    assert load_corpus(out) == [rec]


def test_round_trip_byte_equivalent_on_100_records(tmp_path, desk_corpus):
    # fixture is stored in canonical key order, so the round trip is byte-exact
    assert len(desk_corpus) == 100
    src = Path(__file__).parent / "data" / "desk_corpus.jsonl"
    out = tmp_path / "rt.jsonl"
    write_corpus(desk_corpus, out)
    assert out.read_bytes() == src.read_bytes()
