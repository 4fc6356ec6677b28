"""Run the judge over a labeled corpus and report F1/accuracy by group."""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .errors import MissingLabel
from .judging import DEFAULT_CONFIG, JudgeConfig, Judgment, judge_record
from .records import LabeledRecord, QuestionType, Verdict

_TYPE_ORDER = [t.value for t in (QuestionType.MULTIPLE_CHOICE, QuestionType.MATH,
                                 QuestionType.SHORT_ANSWER, QuestionType.CLASSIFICATION)]


@dataclass
class Confusion:
    tp: int = 0
    fp: int = 0
    fn: int = 0
    tn: int = 0

    def add(self, predicted: Verdict, human: Verdict) -> None:
        # "Correct" is the positive class
        if predicted is Verdict.CORRECT:
            if human is Verdict.CORRECT:
                self.tp += 1
            else:
                self.fp += 1
        elif human is Verdict.CORRECT:
            self.fn += 1
        else:
            self.tn += 1

    def merge(self, other: "Confusion") -> None:
        self.tp += other.tp
        self.fp += other.fp
        self.fn += other.fn
        self.tn += other.tn

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn


def f1(c: Confusion) -> float:
    denom = 2 * c.tp + c.fp + c.fn
    return 2 * c.tp / denom if denom else 0.0


def accuracy(c: Confusion) -> float:
    return (c.tp + c.tn) / c.total if c.total else 0.0


@dataclass
class RecordResult:
    index: int
    dataset: str
    question_type: str
    predicted: Verdict
    human: Verdict
    trace: tuple[str, ...]


@dataclass
class EvalReport:
    overall: Confusion = field(default_factory=Confusion)
    by_question_type: dict[str, Confusion] = field(default_factory=dict)
    by_dataset: dict[str, Confusion] = field(default_factory=dict)
    per_record: list[RecordResult] = field(default_factory=list)


def aggregate(results: list[RecordResult]) -> EvalReport:
    report = EvalReport(per_record=list(results))
    for r in results:
        report.overall.add(r.predicted, r.human)
        report.by_question_type.setdefault(r.question_type, Confusion()).add(r.predicted, r.human)
        report.by_dataset.setdefault(r.dataset, Confusion()).add(r.predicted, r.human)
    return report


def _judge_one(args: tuple[LabeledRecord, JudgeConfig]) -> Judgment:
    record, cfg = args
    return judge_record(record, cfg)


def evaluate(records: list[LabeledRecord], cfg: JudgeConfig = DEFAULT_CONFIG,
             workers: int = 1) -> EvalReport:
    """Judge every labeled record; grouping is micro-averaged (pooled counts)."""
    for index, record in enumerate(records):
        if record.human_judgment_result is None:
            raise MissingLabel(index)
    if workers > 1 and len(records) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            judgments = list(pool.map(_judge_one, [(r, cfg) for r in records],
                                      chunksize=max(1, len(records) // (workers * 4))))
    else:
        judgments = [judge_record(r, cfg) for r in records]
    results = [
        RecordResult(index=i, dataset=r.dataset, question_type=r.question_type.value,
                     predicted=j.verdict, human=r.human_judgment_result, trace=j.trace)
        for i, (r, j) in enumerate(zip(records, judgments))
    ]
    return aggregate(results)


# ---------------------------------------------------------------------------
# rendering


def _pct(x: float) -> str:
    return f"{100.0 * x:.2f}%"


def _group_rows(report: EvalReport) -> list[tuple[str, Confusion]]:
    rows = [(name, report.by_question_type[name]) for name in _TYPE_ORDER
            if name in report.by_question_type]
    extra = sorted(set(report.by_question_type) - set(_TYPE_ORDER))
    rows += [(name, report.by_question_type[name]) for name in extra]
    rows.append(("Overall", report.overall))
    return rows


def render_report(report: EvalReport, fmt: str = "text-table") -> str:
    if fmt == "json":
        def conf(c: Confusion) -> dict:
            return {"tp": c.tp, "fp": c.fp, "fn": c.fn, "tn": c.tn,
                    "f1": f1(c), "accuracy": accuracy(c)}
        payload = {
            "overall": conf(report.overall),
            "by_question_type": {k: conf(v) for k, v in sorted(report.by_question_type.items())},
            "by_dataset": {k: conf(v) for k, v in sorted(report.by_dataset.items())},
            "per_record": [
                {"index": r.index, "dataset": r.dataset, "question_type": r.question_type,
                 "predicted": r.predicted.value, "human": r.human.value,
                 "trace": list(r.trace)}
                for r in report.per_record
            ],
        }
        return json.dumps(payload, ensure_ascii=False, indent=2)

    rows = _group_rows(report)
    if fmt == "markdown":
        lines = ["| Group | F1 | Acc. | TP | FP | FN | TN | N |",
                 "|---|---|---|---|---|---|---|---|"]
        for name, c in rows:
            lines.append(f"| {name} | {_pct(f1(c))} | {_pct(accuracy(c))} "
                         f"| {c.tp} | {c.fp} | {c.fn} | {c.tn} | {c.total} |")
        if report.by_dataset:
            lines.append("")
            lines.append("| Dataset | F1 | Acc. | N |")
            lines.append("|---|---|---|---|")
            for name in sorted(report.by_dataset):
                c = report.by_dataset[name]
                lines.append(f"| {name} | {_pct(f1(c))} | {_pct(accuracy(c))} | {c.total} |")
        return "\n".join(lines)

    if fmt != "text-table":
        raise ValueError(f"unknown report format: {fmt}")
    width = max(len(name) for name, _ in rows) + 2
    lines = [f"{'Group':<{width}}{'F1':>9}{'Acc.':>9}{'TP':>6}{'FP':>6}{'FN':>6}{'TN':>6}{'N':>6}"]
    for name, c in rows:
        lines.append(f"{name:<{width}}{_pct(f1(c)):>9}{_pct(accuracy(c)):>9}"
                     f"{c.tp:>6}{c.fp:>6}{c.fn:>6}{c.tn:>6}{c.total:>6}")
    if report.by_dataset:
        lines.append("")
        dwidth = max(len(n) for n in report.by_dataset) + 2
        lines.append(f"{'Dataset':<{dwidth}}{'F1':>9}{'Acc.':>9}{'N':>6}")
        for name in sorted(report.by_dataset):
            c = report.by_dataset[name]
            lines.append(f"{name:<{dwidth}}{_pct(f1(c)):>9}{_pct(accuracy(c)):>9}{c.total:>6}")
    return "\n".join(lines)
