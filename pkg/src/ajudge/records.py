"""Record schema and line-delimited corpus I/O."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import BadVerdictString, IoFailure, MalformedRecord, MissingField


class QuestionType(enum.Enum):
    MULTIPLE_CHOICE = "multiple choice"
    MATH = "math"
    SHORT_ANSWER = "short answer"
    CLASSIFICATION = "classification"

    @classmethod
    def from_string(cls, s: str) -> "QuestionType":
        key = " ".join(s.strip().lower().split())
        for member in cls:
            if member.value == key:
                return member
        raise MalformedRecord(f"unknown question_type: {s!r}")

    def __str__(self) -> str:
        return self.value


class Verdict(enum.Enum):
    CORRECT = "Correct"
    INCORRECT = "Incorrect"

    @classmethod
    def from_string(cls, s: str) -> "Verdict":
        # the serialized domain is closed: exactly these two strings
        for member in cls:
            if member.value == s:
                return member
        raise BadVerdictString(s)

    def __str__(self) -> str:
        return self.value


_REQUIRED_FIELDS = ("dataset", "question", "question_type", "correct_answer", "llm_output")
_NONEMPTY_FIELDS = ("question", "llm_output", "correct_answer")
_KNOWN_FIELDS = _REQUIRED_FIELDS + ("human_judgment_result", "generator")


@dataclass
class LabeledRecord:
    dataset: str
    question: str
    question_type: QuestionType
    correct_answer: str
    llm_output: str
    human_judgment_result: Verdict | None = None
    generator: str | None = None
    extras: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out: dict = {
            "dataset": self.dataset,
            "question": self.question,
            "question_type": self.question_type.value,
            "correct_answer": self.correct_answer,
            "llm_output": self.llm_output,
        }
        if self.human_judgment_result is not None:
            out["human_judgment_result"] = self.human_judgment_result.value
        if self.generator is not None:
            out["generator"] = self.generator
        out.update(self.extras)
        return out


def record_from_dict(obj: dict) -> LabeledRecord:
    for name in _REQUIRED_FIELDS:
        if name not in obj:
            raise MissingField(name)
    for name in _NONEMPTY_FIELDS:
        if not str(obj[name]).strip():
            raise MissingField(name)
    verdict = None
    if obj.get("human_judgment_result") is not None:
        verdict = Verdict.from_string(obj["human_judgment_result"])
    extras = {k: v for k, v in obj.items() if k not in _KNOWN_FIELDS}
    return LabeledRecord(
        dataset=str(obj["dataset"]),
        question=str(obj["question"]),
        question_type=QuestionType.from_string(str(obj["question_type"])),
        correct_answer=str(obj["correct_answer"]),
        llm_output=str(obj["llm_output"]),
        human_judgment_result=verdict,
        generator=obj.get("generator"),
        extras=extras,
    )


def parse_record(line: str) -> LabeledRecord:
    """Parse one line-delimited JSON object into a LabeledRecord."""
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise MalformedRecord(exc.msg, line=exc.lineno, column=exc.colno) from exc
    if not isinstance(obj, dict):
        raise MalformedRecord("record line is not an object")
    return record_from_dict(obj)


def serialize_record(record: LabeledRecord) -> str:
    return json.dumps(record.to_dict(), ensure_ascii=False)


def load_corpus(path: str | Path) -> list[LabeledRecord]:
    """Read a corpus file; blank lines are skipped, order is preserved."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoFailure(str(exc)) from exc
    records = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            records.append(parse_record(line))
        except MalformedRecord as exc:
            raise MalformedRecord(str(exc), line=lineno) from exc
    return records


def write_corpus(records: list[LabeledRecord], path: str | Path) -> None:
    """Write one JSON object per line, UTF-8, with a trailing newline."""
    body = "".join(serialize_record(r) + "\n" for r in records)
    try:
        Path(path).write_text(body, encoding="utf-8")
    except OSError as exc:
        raise IoFailure(str(exc)) from exc
