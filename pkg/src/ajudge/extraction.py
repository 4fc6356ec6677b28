"""Candidate answer extraction and final-answer selection.

A response may state several answers along the way; every marked span becomes
a candidate, candidates are scored by marker strength, position, and type
compatibility, and the best (latest on ties) wins.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field

from . import catalogs
from .errors import ParseFailure
from .mathnorm import parse_expression, repair_syntax
from .numwords import replace_number_words
from .nlmatch import normalize_text
from .records import QuestionType
from .symnorm import canonical_label, strip_label_decoration

_TRAILING_PUNCT = ".。!?,，；;:"


class MarkerKind(enum.Enum):
    BOXED_WRAPPER = "boxed"
    EXPLICIT_PHRASE = "phrase"
    OPTION_PATTERN = "option"
    FINAL_LINE_FALLBACK = "final-line"


@dataclass(frozen=True)
class CandidateAnswer:
    span: str
    marker: MarkerKind
    offset: int
    parse_hint: QuestionType | None = None


@dataclass(frozen=True)
class FinalAnswer:
    raw: str
    math_part: str | None = None
    nl_part: str | None = None
    sym_part: str | None = None


@dataclass(frozen=True)
class ExtractionConfig:
    weight_boxed: float = 3.0
    weight_phrase: float = 3.0
    weight_option: float = 2.0
    weight_fallback: float = 1.0
    weight_position: float = 2.0
    weight_compat: float = 2.0
    phrases: tuple[str, ...] = field(default_factory=catalogs.marker_phrases)
    wrappers: tuple[str, ...] = field(default_factory=catalogs.wrapper_templates)

    def marker_weight(self, kind: MarkerKind) -> float:
        return {
            MarkerKind.BOXED_WRAPPER: self.weight_boxed,
            MarkerKind.EXPLICIT_PHRASE: self.weight_phrase,
            MarkerKind.OPTION_PATTERN: self.weight_option,
            MarkerKind.FINAL_LINE_FALLBACK: self.weight_fallback,
        }[kind]


DEFAULT_EXTRACTION = ExtractionConfig()

# connective tissue allowed between a marker phrase and the answer itself;
# a dash attached directly to the answer ("-5") is a sign, not a delimiter
_CONNECTIVE_RE = re.compile(r"^(?:\s*(?:is|was|are|were|would be|should be)\b)?"
                            r"(?:[\s:=→>]|[-–—](?=\s))*")
_SENTENCE_END_RE = re.compile(r"[!?\n。！？]|\.(?=[\s\"')\]]|$)")

# latex wrapper commands are scanned with balanced-brace walking
_LATEX_WRAPPERS = ("\\boxed{", "\\fbox{", "\\framebox{", "\\textbf{",
                   "\\mathbf{", "\\underline{")
_PAIRED_WRAPPERS = (
    (re.compile(r"\*\*([^\n*]+?)\*\*"), 1),
    (re.compile(r"__([^\n_]+?)__"), 1),
    (re.compile(r"```([^\n`]+?)```"), 1),
    (re.compile(r"`([^\n`]+?)`"), 1),
    (re.compile(r"\[([^\n\[\]]+?)\]"), 1),
    (re.compile(r"【([^\n】]+?)】"), 1),
    (re.compile(r"<answer>([^\n<]*?)</answer>"), 1),
    (re.compile(r"<b>([^\n<]+?)</b>"), 1),
    (re.compile(r"\|\|([^\n|]+?)\|\|"), 1),
)

_OPTION_PAREN_RE = re.compile(r"\(\s*([A-Za-z]|\d{1,2}|[IVXivx]{2,6})\s*\)")
_OPTION_LINESTART_RE = re.compile(r"^[ \t]*([A-Za-z]|\d{1,2}|[IVX]{2,6})[.)](?=\s)", re.MULTILINE)
_OPTION_LONELY_RE = re.compile(r"^[ \t]*([A-Za-z])[ \t]*$", re.MULTILINE)


def _clean_span(span: str) -> str:
    span = span.strip()
    while span and span[-1] in _TRAILING_PUNCT:
        span = span[:-1].rstrip()
    return span


def _unwrap_span(span: str, wrappers: tuple[str, ...]) -> str:
    """Peel full-span wrapper decorations ("\\boxed{B}" -> "B") repeatedly."""
    span = span.strip()
    changed = True
    while changed and span:
        changed = False
        for template in wrappers:
            prefix, _, suffix = template.partition(catalogs.ANSWER_SLOT)
            if len(span) > len(prefix) + len(suffix) and span.startswith(prefix) and (
                    not suffix or span.endswith(suffix)):
                span = span[len(prefix):len(span) - len(suffix)].strip()
                changed = True
                break
        m = re.fullmatch(r"\\text\s*\{([^{}]*)\}", span)
        if m:
            span = m.group(1).strip()
            changed = True
    return span


def _phrase_regex(phrases: tuple[str, ...]) -> re.Pattern:
    alternation = "|".join(re.escape(p) for p in phrases)
    return re.compile(f"(?:{alternation})", re.IGNORECASE)


def _balanced_brace_content(text: str, start: int) -> tuple[str, int] | None:
    depth = 1
    i = start
    while i < len(text):
        if text[i] == "{":
            depth += 1
        elif text[i] == "}":
            depth -= 1
            if depth == 0:
                return text[start:i], i
        i += 1
    return None


def extract_candidates(response: str,
                       cfg: ExtractionConfig = DEFAULT_EXTRACTION) -> list[CandidateAnswer]:
    """All answer-bearing spans, ascending by offset, deduplicated per offset."""
    found: dict[int, CandidateAnswer] = {}

    def add(candidate: CandidateAnswer):
        if not candidate.span:
            return
        existing = found.get(candidate.offset)
        if existing is None or (cfg.marker_weight(candidate.marker),
                                len(candidate.span)) > (cfg.marker_weight(existing.marker),
                                                        len(existing.span)):
            found[candidate.offset] = candidate

    # explicit answer phrases
    for m in _phrase_regex(cfg.phrases).finditer(response):
        tail = response[m.end():]
        lead = _CONNECTIVE_RE.match(tail)
        start = m.end() + (lead.end() if lead else 0)
        rest = response[start:]
        end_match = _SENTENCE_END_RE.search(rest)
        end = end_match.start() if end_match else len(rest)
        # a dot after a bare option letter is decoration ("B. Jupiter"), not a stop
        if end_match and rest[end] == "." and re.fullmatch(
                r"\(?([A-Za-z]|[IVXivx]{1,6})\)?", rest[:end].strip()):
            nxt = _SENTENCE_END_RE.search(rest, end_match.end())
            end = nxt.start() if nxt else len(rest)
        span = _clean_span(rest[:end][:300])
        if span:
            add(CandidateAnswer(span, MarkerKind.EXPLICIT_PHRASE, start))

    # latex wrappers with balanced braces
    for opener in _LATEX_WRAPPERS:
        idx = response.find(opener)
        while idx != -1:
            inner = _balanced_brace_content(response, idx + len(opener))
            if inner is not None:
                content, _ = inner
                span = _clean_span(_unwrap_span(content, cfg.wrappers))
                if span:
                    add(CandidateAnswer(span, MarkerKind.BOXED_WRAPPER, idx + len(opener)))
            idx = response.find(opener, idx + 1)

    # paired markers (bold, backticks, brackets...)
    for pattern, group in _PAIRED_WRAPPERS:
        for m in pattern.finditer(response):
            span = _clean_span(_unwrap_span(m.group(group), cfg.wrappers))
            if span:
                add(CandidateAnswer(span, MarkerKind.BOXED_WRAPPER, m.start(group)))

    # option-label patterns
    for pattern in (_OPTION_PAREN_RE, _OPTION_LINESTART_RE, _OPTION_LONELY_RE):
        for m in pattern.finditer(response):
            add(CandidateAnswer(_clean_span(m.group(0)), MarkerKind.OPTION_PATTERN,
                                m.start(), parse_hint=QuestionType.MULTIPLE_CHOICE))

    # last non-empty line is always a fallback candidate
    stripped = response.rstrip()
    if stripped:
        line_start = stripped.rfind("\n") + 1
        while not stripped[line_start:].strip():  # pragma: no cover - rstrip guards this
            line_start = stripped.rfind("\n", 0, line_start - 1) + 1
        offset = line_start + len(stripped[line_start:]) - len(stripped[line_start:].lstrip())
        span = _clean_span(stripped[line_start:])
        if span:
            add(CandidateAnswer(span, MarkerKind.FINAL_LINE_FALLBACK, offset))

    return [found[k] for k in sorted(found)]


# ---------------------------------------------------------------------------
# decomposition into math / natural-language / symbolic parts

_LEADING_LABEL_RE = re.compile(
    r"^\s*(\(\s*(?:[A-Za-z]|\d{1,2}|[IVXivx]{1,6})\s*\)|(?:[A-Za-z]|\d{1,2}|[IVXivx]{1,6})[.):])\s*(.*)$",
    re.DOTALL,
)
_BARE_LABEL_RE = re.compile(r"^\s*([A-Za-z]|\d{1,2}|[IVXivx]{1,6})\s*$")
_EMBEDDED_NUMBER_RE = re.compile(
    r"-?\d[\d,]*(?:\.\d+)?(?:\s*%|\s*(?:[eE][+-]?\d+))?(?:\s+[a-zA-Z]+)?"
)
_MATHY_RE = re.compile(r"[\d\\^_*/+=×·÷π]|\b(?:pi|alpha|beta|gamma|theta|sqrt|frac)\b")


def _try_parse(span: str) -> bool:
    try:
        parse_expression(repair_syntax(span))
        return True
    except ParseFailure:
        return False


def _looks_mathy(span: str) -> bool:
    return bool(_MATHY_RE.search(span)) or (len(span) <= 3 and bool(span.strip()))


def _embedded_math(span: str) -> str | None:
    """Rightmost number-with-optional-unit inside mixed text, if any parses."""
    candidates = list(_EMBEDDED_NUMBER_RE.finditer(replace_number_words(span)))
    for m in reversed(candidates):
        text = m.group(0).strip()
        # trailing word must be a unit or percent to belong to the number
        parts = text.split()
        if len(parts) == 2 and not _try_parse(text):
            text = parts[0]
        if _try_parse(text):
            return text
    return None


def _is_symbol_token(span: str) -> bool:
    token = span.strip()
    if not token or " " in token:
        return False
    if _BARE_LABEL_RE.match(token):
        return True
    return len(token) <= 3 and all(not c.isspace() for c in token)


def decompose(answer_span: str, qtype: QuestionType,
              cfg: ExtractionConfig = DEFAULT_EXTRACTION) -> FinalAnswer:
    """Split an answer span into math / natural-language / symbolic parts."""
    raw = answer_span.strip()
    span = _unwrap_span(raw, cfg.wrappers)
    span = _clean_span(span) or raw

    if qtype is QuestionType.MULTIPLE_CHOICE:
        m = _LEADING_LABEL_RE.match(span)
        if m and canonical_label(m.group(1)) is not None:
            label, _ = strip_label_decoration(m.group(1))
            rest = m.group(2).strip()
            return FinalAnswer(raw, sym_part=label, nl_part=rest or None)
        if _BARE_LABEL_RE.match(span) and canonical_label(span) is not None:
            return FinalAnswer(raw, sym_part=strip_label_decoration(span)[0])
        return FinalAnswer(raw, nl_part=span)

    math_part = None
    nl_part = None
    sym_part = span if _is_symbol_token(span) else None
    if _looks_mathy(span) and _try_parse(span):
        math_part = span
    else:
        embedded = _embedded_math(span)
        if embedded is not None:
            math_part = embedded
        if normalize_text(span):
            nl_part = span
    if qtype is QuestionType.CLASSIFICATION and nl_part is None:
        nl_part = span
    if math_part is None and nl_part is None and sym_part is None:
        nl_part = span or raw
    return FinalAnswer(raw, math_part=math_part, nl_part=nl_part, sym_part=sym_part)


# ---------------------------------------------------------------------------
# scoring and selection


def _candidate_set_from_question(question: str) -> frozenset[str]:
    """Best-effort surface set for classification questions ("positive or negative")."""
    tail = question
    if ":" in question:
        tail = question.rsplit(":", 1)[1]
    m = re.search(r"([\w][\w\s'\-]{0,40}?)\s+or\s+([\w][\w\s'\-]{0,40})", tail)
    if not m:
        return frozenset()
    surfaces: set[str] = set()
    left = m.group(1).strip()
    # the left side may carry leading prose; keep its final few words
    surfaces.add(" ".join(left.split()[-3:]))
    for piece in re.split(r",| or ", m.group(0)):
        piece = piece.strip(" .?!,:;\"'")
        if piece and len(piece.split()) <= 3:
            surfaces.add(piece)
    return frozenset(normalize_text(s) for s in surfaces if s)


def _compatible(span: str, question: str, qtype: QuestionType,
                cfg: ExtractionConfig) -> bool:
    span = _unwrap_span(span, cfg.wrappers)
    if qtype is QuestionType.MULTIPLE_CHOICE:
        m = _LEADING_LABEL_RE.match(span)
        if m and canonical_label(m.group(1)) is not None:
            return True
        return _BARE_LABEL_RE.match(span) is not None and canonical_label(span) is not None
    if qtype is QuestionType.MATH:
        return (_looks_mathy(span) and _try_parse(span)) or _embedded_math(span) is not None
    if qtype is QuestionType.CLASSIFICATION:
        surfaces = _candidate_set_from_question(question)
        return bool(surfaces) and normalize_text(span) in surfaces
    return False


def score_candidate(candidate: CandidateAnswer, question: str, qtype: QuestionType,
                    response_length: int,
                    cfg: ExtractionConfig = DEFAULT_EXTRACTION) -> float:
    """marker weight + positional bonus + type-compatibility bonus."""
    score = cfg.marker_weight(candidate.marker)
    if response_length > 0:
        score += cfg.weight_position * (candidate.offset / response_length)
    if _compatible(candidate.span, question, qtype, cfg):
        score += cfg.weight_compat
    return score


def extract_final(question: str, qtype: QuestionType, response: str,
                  cfg: ExtractionConfig = DEFAULT_EXTRACTION) -> FinalAnswer | None:
    """Highest-scoring candidate (ties go to the latest one), decomposed."""
    candidates = extract_candidates(response, cfg)
    if not candidates:
        return None
    length = len(response)
    best = max(candidates,
               key=lambda c: (score_candidate(c, question, qtype, length, cfg), c.offset))
    return decompose(best.span, qtype, cfg)


def winning_candidate(question: str, qtype: QuestionType, response: str,
                      cfg: ExtractionConfig = DEFAULT_EXTRACTION) -> CandidateAnswer | None:
    """The candidate extract_final would pick, for callers that need the marker."""
    candidates = extract_candidates(response, cfg)
    if not candidates:
        return None
    length = len(response)
    return max(candidates,
               key=lambda c: (score_candidate(c, question, qtype, length, cfg), c.offset))
