"""Verdict composition: extract the final answer, then judge equivalence.

Dispatch is question-type aware: multiple choice resolves answers to option
positions (content outranks an inconsistent label), classification demands a
normalized exact match, and math / short answer run the per-part equivalence
checks jointly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .extraction import (DEFAULT_EXTRACTION, ExtractionConfig, FinalAnswer, MarkerKind,
                         decompose, extract_final, winning_candidate)
from .mathnorm import DEFAULT_EQUIVALENCE, EquivalenceConfig, math_equivalent
from .nlmatch import DEFAULT_ALIGN, AlignConfig, alignment_score, nl_equivalent, normalize_text
from .options import OptionList, parse_options, position_under
from .records import LabeledRecord, QuestionType, Verdict
from .symnorm import canonical_label, fold_symbol, strip_label_decoration, sym_equivalent


@dataclass(frozen=True)
class JudgeConfig:
    equivalence: EquivalenceConfig = DEFAULT_EQUIVALENCE
    align: AlignConfig = DEFAULT_ALIGN
    extraction: ExtractionConfig = DEFAULT_EXTRACTION
    symbol_extension: Mapping[str, str] | None = None


DEFAULT_CONFIG = JudgeConfig()


@dataclass(frozen=True)
class Judgment:
    verdict: Verdict
    extracted: FinalAnswer | None
    component_results: dict[str, bool | None] = field(default_factory=dict)
    trace: tuple[str, ...] = ()

    @property
    def correct(self) -> bool:
        return self.verdict is Verdict.CORRECT


def _components_verdict(components: dict[str, bool | None]) -> Verdict:
    present = [v for v in components.values() if v is not None]
    if not present:
        return Verdict.INCORRECT
    return Verdict.CORRECT if all(present) else Verdict.INCORRECT


def _resolve_position(label: str | None, content: str | None, options: OptionList | None,
                      cfg: JudgeConfig, trace: list[str],
                      side: str) -> tuple[int | None, int | None]:
    """Map a (label, content) pair onto option positions where possible."""
    label_pos = None
    if label is not None:
        bare, _ = strip_label_decoration(label)
        # the question's own labeling scheme disambiguates I/V/X and friends
        if options is not None:
            label_pos = position_under(bare, options.scheme)
        if label_pos is None:
            folded = canonical_label(label)
            if folded is not None:
                label_pos = ord(folded) - ord("A") + 1
    content_pos = None
    if content and options is not None:
        best_score = 0.0
        for item in options.items:
            if not item.content:
                continue
            if normalize_text(item.content) == normalize_text(content):
                content_pos = item.position
                best_score = 1.0
                break
            score = alignment_score(item.content, content, cfg.align)
            if score >= cfg.align.tau and score > best_score:
                best_score = score
                content_pos = item.position
    if label_pos is not None and content_pos is not None and label_pos != content_pos:
        trace.append(f"mc:{side}-content-overrides-label")
    return label_pos, content_pos


def _judge_multiple_choice(final: FinalAnswer, ref: FinalAnswer, question: str,
                           cfg: JudgeConfig, trace: list[str]) -> Judgment:
    options = parse_options(question)
    if options is not None:
        trace.append(f"mc:options({options.scheme},{len(options.items)})")
    fin_label, fin_content = _resolve_position(final.sym_part, final.nl_part, options,
                                               cfg, trace, "final")
    ref_label, ref_content = _resolve_position(ref.sym_part, ref.nl_part, options,
                                               cfg, trace, "ref")
    # content takes precedence over an inconsistent label
    fin_pos = fin_content if fin_content is not None else fin_label
    ref_pos = ref_content if ref_content is not None else ref_label

    components: dict[str, bool | None] = {"math": None, "nl": None, "sym": None}
    if fin_pos is not None and ref_pos is not None:
        ok = fin_pos == ref_pos
        key = "nl" if fin_content is not None else "sym"
        components[key] = ok
        trace.append(f"mc:position {fin_pos} vs {ref_pos}")
        return Judgment(_components_verdict(components), final, components, tuple(trace))

    # options unavailable: fall back to direct component comparison
    if final.sym_part is not None and ref.sym_part is not None:
        components["sym"] = sym_equivalent(ref.sym_part, final.sym_part,
                                           QuestionType.MULTIPLE_CHOICE,
                                           cfg.symbol_extension)
        trace.append("mc:label-compare")
    if final.nl_part is not None and ref.nl_part is not None:
        components["nl"] = nl_equivalent(ref.nl_part, final.nl_part, cfg.align)
        trace.append("mc:content-compare")
        if components["sym"] is not None and components["sym"] != components["nl"]:
            trace.append("mc:content-precedence")
            components["sym"] = None
    if all(v is None for v in components.values()):
        trace.append("no-comparable-components")
    return Judgment(_components_verdict(components), final, components, tuple(trace))


def _judge_classification(final: FinalAnswer, reference: str, cfg: JudgeConfig,
                          trace: list[str]) -> Judgment:
    surface = final.nl_part if final.nl_part is not None else final.raw
    folded_ref = normalize_text(fold_symbol(reference, QuestionType.CLASSIFICATION,
                                            cfg.symbol_extension))
    folded_fin = normalize_text(fold_symbol(surface, QuestionType.CLASSIFICATION,
                                            cfg.symbol_extension))
    ok = bool(folded_ref) and folded_ref == folded_fin
    trace.append("clf:exact-match" if ok else "clf:mismatch")
    return Judgment(Verdict.CORRECT if ok else Verdict.INCORRECT, final,
                    {"math": None, "nl": ok, "sym": None}, tuple(trace))


def judge_equivalence(final: FinalAnswer, reference: str, qtype: QuestionType,
                      question: str, cfg: JudgeConfig = DEFAULT_CONFIG) -> Judgment:
    """Compare a decomposed final answer against the reference answer."""
    trace: list[str] = []
    ref = decompose(reference.strip(), qtype, cfg.extraction)

    if qtype is QuestionType.MULTIPLE_CHOICE:
        return _judge_multiple_choice(final, ref, question, cfg, trace)
    if qtype is QuestionType.CLASSIFICATION:
        return _judge_classification(final, reference, cfg, trace)

    components: dict[str, bool | None] = {"math": None, "nl": None, "sym": None}
    if final.math_part is not None and ref.math_part is not None:
        components["math"] = math_equivalent(ref.math_part, final.math_part,
                                             cfg.equivalence, question)
        trace.append(f"math:{'equal' if components['math'] else 'unequal'}")
    if final.nl_part is not None and ref.nl_part is not None:
        components["nl"] = nl_equivalent(ref.nl_part, final.nl_part, cfg.align)
        trace.append(f"nl:{'equal' if components['nl'] else 'unequal'}")
    if final.sym_part is not None and ref.sym_part is not None and components["math"] is None:
        components["sym"] = sym_equivalent(ref.sym_part, final.sym_part, qtype,
                                           cfg.symbol_extension)
        trace.append(f"sym:{'equal' if components['sym'] else 'unequal'}")
    if all(v is None for v in components.values()):
        # last resort: a math-bearing response may still match the reference text
        if final.math_part is not None and ref.nl_part is not None:
            components["nl"] = nl_equivalent(ref.nl_part, final.math_part, cfg.align)
            trace.append("nl:math-vs-text")
        else:
            trace.append("no-comparable-components")
    return Judgment(_components_verdict(components), final, components, tuple(trace))


def judge(question: str, qtype: QuestionType, response: str, reference: str,
          cfg: JudgeConfig = DEFAULT_CONFIG) -> Judgment:
    """The full pipeline: extract the final answer, then judge it."""
    final = extract_final(question, qtype, response, cfg.extraction)
    if final is None:
        return Judgment(Verdict.INCORRECT, None, {}, ("no-extractable-answer",))
    judgment = judge_equivalence(final, reference, qtype, question, cfg)
    candidate = winning_candidate(question, qtype, response, cfg.extraction)
    if (candidate is not None and candidate.marker is MarkerKind.FINAL_LINE_FALLBACK
            and judgment.verdict is Verdict.INCORRECT):
        judgment = Judgment(judgment.verdict, judgment.extracted,
                            judgment.component_results,
                            judgment.trace + ("fallback-only-candidate",))
    return judgment


def judge_record(record: LabeledRecord, cfg: JudgeConfig = DEFAULT_CONFIG) -> Judgment:
    return judge(record.question, record.question_type, record.llm_output,
                 record.correct_answer, cfg)
