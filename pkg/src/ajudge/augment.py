"""Label-preserving corpus augmentation: harder surfaces, same verdicts."""

from __future__ import annotations

import hashlib
import logging
import random
import re
from dataclasses import dataclass, replace
from decimal import Decimal
from fractions import Fraction

from . import catalogs
from .errors import (IndexOutOfRange, InsufficientForms, JudgeError, NoMarkerFound,
                     NoOptionsDetected, NotMathAnswer, TooFewDistractors)
from .extraction import DEFAULT_EXTRACTION, MarkerKind, extract_candidates
from .mathnorm import (Num, ParseFailure, Quantity, canonicalize, math_equivalent,
                       parse_expression, repair_syntax)
from .numwords import int_to_words
from .options import parse_options, render_label, render_token, transform_option_indices
from .records import LabeledRecord, QuestionType

log = logging.getLogger(__name__)

SENTENCE_OPS = ("rephrase", "wrap", "delimit")
KNOWN_OPS = SENTENCE_OPS + ("mathforms", "optindex-arabic", "optindex-roman", "optnoise")


@dataclass(frozen=True)
class AugmentPlan:
    ops: tuple[str, ...]
    rng_seed: int = 0
    variants_per_record: int = 3
    noise_add: int = 1
    noise_remove: int = 0
    forms_per_answer: int = 4

    def __post_init__(self):
        for op in self.ops:
            if op not in KNOWN_OPS:
                raise ValueError(f"unknown augmentation op: {op}")
        if not 3 <= self.forms_per_answer <= 5:
            raise ValueError("forms_per_answer must be in 3..5")
        if self.noise_add < 0 or self.noise_remove < 0:
            raise ValueError("noise counts must be >= 0")
        if self.variants_per_record < 0:
            raise ValueError("variants_per_record must be >= 0")


def derive_seed(seed: int, index: int) -> int:
    digest = hashlib.sha256(f"{seed}:{index}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


# ---------------------------------------------------------------------------
# option transforms (question + reference rewritten together)


def inject_option_noise(question: str, reference: str, add: int, remove: int,
                        seed: int) -> tuple[str, str]:
    """Add neutral distractors and/or drop non-answer options, relabeling contiguously."""
    options = parse_options(question)
    if options is None:
        raise NoOptionsDetected("no option labels found in question")
    rng = random.Random(seed)
    ref_pos = None
    ref_token = reference.strip()
    from .symnorm import canonical_label  # local import avoids a cycle at module load

    folded = canonical_label(ref_token)
    if folded is not None:
        ref_pos = ord(folded) - ord("A") + 1
    distractor_positions = [i.position for i in options.items if i.position != ref_pos]
    if remove >= len(distractor_positions) + (0 if ref_pos is not None else 1):
        raise TooFewDistractors(f"cannot remove {remove} of {len(distractor_positions)} distractors")
    removed = set(rng.sample(sorted(distractor_positions), remove)) if remove else set()
    pool = [d for d in catalogs.distractor_pool()]
    if add > len(pool):
        raise TooFewDistractors(f"distractor pool has only {len(pool)} entries")
    added = rng.sample(pool, add) if add else []

    kept = [item.content for item in options.items if item.position not in removed]
    contents = kept + added
    new_ref = reference
    if ref_pos is not None:
        surviving = [item.position for item in options.items if item.position not in removed]
        new_ref = render_token(surviving.index(ref_pos) + 1, options.scheme)

    first = options.items[0]
    last = options.items[-1]
    separator = "  "
    if len(options.items) >= 2:
        gap_start = options.items[0].content_end
        gap = question[gap_start:options.items[1].label_start]
        if gap.strip() == "" and gap:
            separator = gap
    body = separator.join(
        f"{render_label(pos + 1, options.scheme, options.decoration)} {text}".strip()
        for pos, text in enumerate(contents)
    )
    rebuilt = question[:first.label_start] + body + question[last.content_end:]
    return rebuilt, new_ref


# ---------------------------------------------------------------------------
# equivalent math forms


def _decimal_digits(value: Fraction) -> str | None:
    """Exact decimal rendering when the denominator is 2^a * 5^b, else None."""
    den = value.denominator
    for p in (2, 5):
        while den % p == 0:
            den //= p
    if den != 1:
        return None
    return str(Decimal(value.numerator) / Decimal(value.denominator))


def _scientific(value: Fraction) -> tuple[str, int] | None:
    if value == 0:
        return None
    magnitude = abs(value)
    exponent = 0
    while magnitude >= 10:
        magnitude /= 10
        exponent += 1
    while magnitude < 1:
        magnitude *= 10
        exponent -= 1
    mantissa = _decimal_digits(magnitude if value > 0 else -magnitude)
    if mantissa is None or len(mantissa.split(".")[-1]) > 6 or exponent == 0:
        return None
    return mantissa, exponent


_FRAC_SIMPLE_RE = re.compile(r"\\frac\{([^{}]+)\}\{([^{}]+)\}")
_GREEK_CMD_RE = re.compile(r"\\(alpha|beta|gamma|delta|epsilon|zeta|eta|theta|iota|kappa|"
                           r"lambda|mu|nu|xi|omicron|pi|rho|sigma|tau|upsilon|phi|chi|psi|"
                           r"omega)\b")
_IMPLICIT_MULT_RE = re.compile(r"(\d)\s*([a-zA-Z])")
_LEADING_HALF_RE = re.compile(r"\b([a-zA-Z]+)\s*/\s*2\b")


def _symbolic_rewrites(src: str) -> list[str]:
    forms = []
    current = src.strip()
    step = _FRAC_SIMPLE_RE.sub(lambda m: f"{m.group(1)}/{m.group(2)}", current)
    if step != current:
        forms.append(step)
        current = step
    step = _GREEK_CMD_RE.sub(lambda m: m.group(1), current)
    if step != current:
        forms.append(step)
        current = step
    step = _IMPLICIT_MULT_RE.sub(lambda m: f"{m.group(1)} * {m.group(2)}", current)
    if step != current:
        forms.append(step)
        current = step
    step = _LEADING_HALF_RE.sub(lambda m: f"0.5 * {m.group(1)}", current)
    if step != current:
        forms.append(step)
    return forms


def equivalent_math_forms(answer: str, n: int) -> list[str]:
    """n distinct surfaces, each verified math-equivalent to the original."""
    if not 3 <= n <= 5:
        raise ValueError("n must be in 3..5")
    try:
        expr = canonicalize(parse_expression(repair_syntax(answer)))
    except ParseFailure as exc:
        raise NotMathAnswer(f"not a math answer: {answer!r}") from exc

    candidates: list[str] = []
    core = expr.magnitude if isinstance(expr, Quantity) else expr
    unit = f" {expr.unit}" if isinstance(expr, Quantity) else ""
    if isinstance(core, Num):
        value = core.value
        sci = _scientific(value)
        if sci is not None:
            mantissa, exponent = sci
            candidates.append(f"{mantissa}×10^{exponent}{unit}")
        decimal_text = _decimal_digits(value)
        if decimal_text is not None:
            if value.denominator == 1:
                candidates.append(f"{decimal_text}.0{unit}")
            else:
                candidates.append(f"{decimal_text}{unit}")
        if sci is not None:
            mantissa, exponent = sci
            candidates.append(f"{mantissa} \\times 10^{exponent}{unit}")
            candidates.append(f"${mantissa} \\times 10^{{{exponent}}}${unit}")
        if value.denominator == 1 and 0 <= value.numerator < 10**6:
            words = int_to_words(value.numerator)
            candidates.append((words[0].upper() + words[1:]) + unit)
        if value.denominator != 1:
            candidates.append(f"\\frac{{{value.numerator}}}{{{value.denominator}}}{unit}")
    else:
        candidates.extend(_symbolic_rewrites(answer))
        if not answer.strip().startswith("$"):
            candidates.append(f"${answer.strip()}$")

    out: list[str] = []
    seen = {answer.strip()}
    for form in candidates:
        form = form.strip()
        if form in seen:
            continue
        seen.add(form)
        if math_equivalent(answer, form):
            out.append(form)
        if len(out) == n:
            break
    if len(out) < n:
        raise InsufficientForms(f"only {len(out)} distinct forms for {answer!r}")
    return out


# ---------------------------------------------------------------------------
# answer sentence transforms


def _locate_marker(sentence: str):
    """Last explicit-phrase candidate and the phrase start before it."""
    candidates = [c for c in extract_candidates(sentence, DEFAULT_EXTRACTION)
                  if c.marker is MarkerKind.EXPLICIT_PHRASE]
    if not candidates:
        raise NoMarkerFound(f"no answer marker in {sentence!r}")
    target = candidates[-1]
    phrases = catalogs.marker_phrases()
    phrase_start = None
    lowered = sentence.lower()
    for phrase in phrases:
        idx = lowered.rfind(phrase, 0, target.offset)
        if idx != -1 and (phrase_start is None or idx + len(phrase) > phrase_start[1]):
            if idx + len(phrase) <= target.offset:
                phrase_start = (idx, idx + len(phrase))
    if phrase_start is None:
        raise NoMarkerFound(f"no answer marker in {sentence!r}")
    span_end = target.offset + len(target.span)
    return phrase_start[0], phrase_start[1], target.offset, span_end, target.span


def transform_answer_sentence(sentence: str, op: str, index: int) -> str:
    """Apply one catalog transform (rephrase / wrap / delimit) by index."""
    if op not in SENTENCE_OPS:
        raise ValueError(f"unknown sentence op: {op}")
    catalog = {"rephrase": catalogs.rephrase_templates(),
               "wrap": catalogs.wrapper_templates(),
               "delimit": catalogs.delimiter_strings()}[op]
    if not 0 <= index < len(catalog):
        raise IndexOutOfRange(f"{op} index {index} outside 0..{len(catalog) - 1}")
    phrase_start, phrase_end, span_start, span_end, span = _locate_marker(sentence)
    if op == "rephrase":
        replacement = catalog[index].replace(catalogs.ANSWER_SLOT, span)
        return sentence[:phrase_start] + replacement + sentence[span_end:]
    if op == "wrap":
        wrapped = catalog[index].replace(catalogs.ANSWER_SLOT, span)
        return sentence[:span_start] + wrapped + sentence[span_end:]
    return sentence[:phrase_end] + catalog[index] + sentence[span_start:]


# ---------------------------------------------------------------------------
# corpus-level driver


def _variants_for(record: LabeledRecord, plan: AugmentPlan, rng: random.Random,
                  seed: int) -> list[tuple[str, LabeledRecord]]:
    out: list[tuple[str, LabeledRecord]] = []
    for op in plan.ops:
        try:
            if op in SENTENCE_OPS:
                sizes = {"rephrase": len(catalogs.rephrase_templates()),
                         "wrap": len(catalogs.wrapper_templates()),
                         "delimit": len(catalogs.delimiter_strings())}
                index = rng.randrange(sizes[op])
                output = transform_answer_sentence(record.llm_output, op, index)
                out.append((f"{op}[{index}]", replace(record, llm_output=output)))
            elif op == "mathforms":
                if record.question_type is not QuestionType.MATH:
                    continue
                for form in equivalent_math_forms(record.correct_answer,
                                                  plan.forms_per_answer):
                    out.append((f"mathforms", replace(record, correct_answer=form)))
            elif op in ("optindex-arabic", "optindex-roman"):
                if record.question_type is not QuestionType.MULTIPLE_CHOICE:
                    continue
                scheme = op.split("-")[1]
                question, reference = transform_option_indices(
                    record.question, record.correct_answer, scheme)
                out.append((op, replace(record, question=question,
                                        correct_answer=reference)))
            elif op == "optnoise":
                if record.question_type is not QuestionType.MULTIPLE_CHOICE:
                    continue
                question, reference = inject_option_noise(
                    record.question, record.correct_answer,
                    plan.noise_add, plan.noise_remove, seed)
                out.append((op, replace(record, question=question,
                                        correct_answer=reference)))
        except JudgeError as exc:
            log.warning("skipping %s on record: %s", op, exc)
    return out


def augment_corpus(records: list[LabeledRecord], plan: AugmentPlan) -> list[LabeledRecord]:
    """Up to variants_per_record transformed copies per record, labels untouched."""
    out: list[LabeledRecord] = []
    for index, record in enumerate(records):
        seed = derive_seed(plan.rng_seed, index)
        rng = random.Random(seed)
        variants = _variants_for(record, plan, rng, seed)
        for op_tag, variant in variants[:plan.variants_per_record]:
            dataset = variant.dataset
            if not dataset.endswith("_enh"):
                dataset = dataset + "_enh"
            extras = dict(variant.extras)
            extras["augment_op"] = op_tag
            out.append(replace(variant, dataset=dataset, extras=extras))
    return out
