"""Command-line interface: verify | batch | augment | evaluate.

Exit codes: 0 success (or verdict Correct), 1 verdict Incorrect (verify only),
2 usage error, 3 I/O or corpus parse failure, 4 missing human label.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import __version__
from .augment import AugmentPlan, augment_corpus
from .config import build_judge_config, load_config_file
from .errors import JudgeError, MissingLabel
from .evalharness import evaluate, render_report
from .judging import judge, judge_record
from .records import (LabeledRecord, QuestionType, load_corpus, serialize_record,
                      write_corpus)

log = logging.getLogger("ajudge")

_CONFIG_FLAGS = ("seed", "abs_tol", "rel_tol", "sample_count", "tau", "mix_weight")


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="key=value config file (flags win)")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--abs-tol", dest="abs_tol", type=float)
    parser.add_argument("--rel-tol", dest="rel_tol", type=float)
    parser.add_argument("--sample-count", dest="sample_count", type=int)
    parser.add_argument("--tau", type=float)
    parser.add_argument("--mix-weight", dest="mix_weight", type=float)


def _judge_config(args: argparse.Namespace):
    settings: dict = {}
    if getattr(args, "config", None):
        settings.update(load_config_file(args.config))
    for key in _CONFIG_FLAGS:
        value = getattr(args, key, None)
        if value is not None:
            settings[key] = value
    return build_judge_config(settings)


def cmd_verify(args: argparse.Namespace) -> int:
    cfg = _judge_config(args)
    qtype = QuestionType.from_string(args.type)
    judgment = judge(args.question, qtype, args.output, args.answer, cfg)
    if args.json:
        payload = {
            "verdict": judgment.verdict.value,
            "extracted": judgment.extracted.raw if judgment.extracted else None,
            "trace": list(judgment.trace),
        }
        print(json.dumps(payload, ensure_ascii=False))
    else:
        print(judgment.verdict.value)
        if args.trace:
            for line in judgment.trace:
                print(f"  {line}")
    return 0 if judgment.correct else 1


def cmd_batch(args: argparse.Namespace) -> int:
    cfg = _judge_config(args)
    try:
        records = load_corpus(args.input)
    except JudgeError as exc:
        log.error("cannot read corpus: %s", exc)
        return 3
    judgments = _judge_all(records, cfg, args.parallel)
    lines = []
    for record, judgment in zip(records, judgments):
        obj = record.to_dict()
        obj["predicted_judgment_result"] = judgment.verdict.value
        obj["predicted_extracted_answer"] = (judgment.extracted.raw
                                             if judgment.extracted else None)
        obj["judge_trace"] = list(judgment.trace)
        lines.append(json.dumps(obj, ensure_ascii=False))
    body = "".join(line + "\n" for line in lines)
    if args.out == "-":
        sys.stdout.write(body)
    else:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(body)
        except OSError as exc:
            log.error("cannot write output: %s", exc)
            return 3
    log.info("judged %d records", len(records))
    return 0


def _judge_all(records, cfg, workers: int):
    if workers > 1 and len(records) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_judge_one_star, [(r, cfg) for r in records],
                                 chunksize=max(1, len(records) // (workers * 4))))
    return [judge_record(r, cfg) for r in records]


def _judge_one_star(pair):
    record, cfg = pair
    return judge_record(record, cfg)


def cmd_augment(args: argparse.Namespace) -> int:
    ops = tuple(op.strip() for op in args.ops.split(",") if op.strip())
    try:
        plan = AugmentPlan(ops=ops, rng_seed=args.seed or 0,
                           variants_per_record=args.variants,
                           noise_add=args.noise_add, noise_remove=args.noise_remove,
                           forms_per_answer=args.forms_per_answer)
    except ValueError as exc:
        log.error("invalid plan: %s", exc)
        return 2
    try:
        records = load_corpus(args.input)
    except JudgeError as exc:
        log.error("cannot read corpus: %s", exc)
        return 3
    augmented = augment_corpus(records, plan)
    try:
        write_corpus(augmented, args.out)
    except JudgeError as exc:
        log.error("cannot write output: %s", exc)
        return 3
    counts: dict[str, int] = {}
    for record in augmented:
        op = str(record.extras.get("augment_op", "?")).split("[")[0]
        counts[op] = counts.get(op, 0) + 1
    summary = " ".join(f"{op}={n}" for op, n in sorted(counts.items()))
    print(f"augmented {len(records)} records -> {len(augmented)} variants: {summary or 'none'}",
          file=sys.stderr)
    return 0


def cmd_evaluate(args: argparse.Namespace) -> int:
    cfg = _judge_config(args)
    try:
        records = load_corpus(args.input)
    except JudgeError as exc:
        log.error("cannot read corpus: %s", exc)
        return 3
    try:
        report = evaluate(records, cfg, workers=args.parallel)
    except MissingLabel as exc:
        log.error("%s", exc)
        return 4
    rendered = render_report(report, args.format)
    if args.report and args.report != "-":
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(rendered + "\n")
    else:
        print(rendered)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ajudge",
        description="Deterministic answer verification over line-delimited JSON corpora.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log INFO to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="judge a single question/response/answer triple")
    p.add_argument("--question", required=True)
    p.add_argument("--type", required=True,
                   help="multiple choice | math | short answer | classification")
    p.add_argument("--output", required=True, help="the model response to judge")
    p.add_argument("--answer", required=True, help="the reference answer")
    p.add_argument("--trace", action="store_true", help="print rule trace")
    p.add_argument("--json", action="store_true", help="print a JSON judgment object")
    _add_config_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("batch", help="judge a corpus file, annotating each record")
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True, help="output path, or - for stdout")
    p.add_argument("--parallel", type=int, default=1)
    _add_config_flags(p)
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("augment", help="generate label-preserving corpus variants")
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--ops", required=True,
                   help="comma list: rephrase,wrap,delimit,mathforms,"
                        "optindex-arabic,optindex-roman,optnoise")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--variants", type=int, default=3)
    p.add_argument("--noise-add", dest="noise_add", type=int, default=1)
    p.add_argument("--noise-remove", dest="noise_remove", type=int, default=0)
    p.add_argument("--forms-per-answer", dest="forms_per_answer", type=int, default=4)
    p.set_defaults(func=cmd_augment)

    p = sub.add_parser("evaluate", help="score the judge against human labels")
    p.add_argument("--input", required=True)
    p.add_argument("--report", help="write the report here instead of stdout")
    p.add_argument("--format", choices=("text-table", "json", "markdown"),
                   default="text-table")
    p.add_argument("--parallel", type=int, default=1)
    _add_config_flags(p)
    p.set_defaults(func=cmd_evaluate)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(stream=sys.stderr,
                        level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except JudgeError as exc:
        log.error("%s", exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
