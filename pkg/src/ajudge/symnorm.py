"""Symbol normalization: Unicode folding, font folding, and domain mappings."""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

from .errors import AmbiguousLabel, IoFailure
from .records import QuestionType

_ZERO_WIDTH = "​‌‍⁠﻿"
_ZW_RE = re.compile("[" + _ZERO_WIDTH + "]")
_WS_RE = re.compile(r"\s+")


def fold_unicode(s: str) -> str:
    """Compatibility-fold text: NFKC, drop zero-width chars, collapse whitespace."""
    s = unicodedata.normalize("NFKC", s)
    s = _ZW_RE.sub("", s)
    return _WS_RE.sub(" ", s).strip()


def _build_font_table() -> dict[int, str]:
    # Mathematical Alphanumeric Symbols plus Letterlike Symbols; NFKC already
    # knows the plain equivalents, we just restrict it to those blocks.
    table: dict[int, str] = {}
    for start, stop in ((0x1D400, 0x1D800), (0x2100, 0x2150)):
        for cp in range(start, stop):
            folded = unicodedata.normalize("NFKC", chr(cp))
            if folded != chr(cp) and all(ord(c) < 0x300 for c in folded):
                table[cp] = folded
    return table


_FONT_TABLE = _build_font_table()


def fold_font(s: str) -> str:
    """Map styled letters/digits (bold, italic, script, double-struck...) to plain ASCII."""
    return s.translate(_FONT_TABLE)


GREEK_NAMES = {
    "alpha": "α", "beta": "β", "gamma": "γ", "delta": "δ", "epsilon": "ε",
    "zeta": "ζ", "eta": "η", "theta": "θ", "iota": "ι", "kappa": "κ",
    "lambda": "λ", "mu": "μ", "nu": "ν", "xi": "ξ", "omicron": "ο",
    "pi": "π", "rho": "ρ", "sigma": "σ", "tau": "τ", "upsilon": "υ",
    "phi": "φ", "chi": "χ", "psi": "ψ", "omega": "ω",
}
_GREEK_RE = re.compile(r"\b(" + "|".join(GREEK_NAMES) + r")\b", re.IGNORECASE)

_ROMAN_VALUES = {"I": 1, "V": 5, "X": 10, "L": 50, "C": 100, "D": 500, "M": 1000}
_ROMAN_RE = re.compile(
    r"M{0,3}(CM|CD|D?C{0,3})(XC|XL|L?X{0,3})(IX|IV|V?I{0,3})", re.IGNORECASE
)
_AMBIGUOUS_SINGLES = frozenset("IVXLCDM")

_LABEL_DECOR_RE = re.compile(r"^\(\s*([A-Za-z0-9]{1,6})\s*\)$|^([A-Za-z0-9]{1,6})\s*([.):])$")


def roman_to_int(s: str) -> int | None:
    """Strict subtractive-form roman numeral to int (1..3999), else None."""
    if not s:
        return None
    m = _ROMAN_RE.fullmatch(s.upper())
    if not m or not m.group(0):
        return None
    total = 0
    prev = 0
    for ch in reversed(s.upper()):
        v = _ROMAN_VALUES[ch]
        total += v if v >= prev else -v
        prev = max(prev, v)
    return total


def int_to_roman(n: int) -> str:
    if not 1 <= n <= 3999:
        raise ValueError(f"roman numeral out of range: {n}")
    out = []
    for value, sym in ((1000, "M"), (900, "CM"), (500, "D"), (400, "CD"),
                       (100, "C"), (90, "XC"), (50, "L"), (40, "XL"),
                       (10, "X"), (9, "IX"), (5, "V"), (4, "IV"), (1, "I")):
        while n >= value:
            out.append(sym)
            n -= value
    return "".join(out)


def strip_label_decoration(s: str) -> tuple[str, bool]:
    """Remove surrounding parentheses or a trailing period/paren from a label token."""
    s = s.strip()
    m = _LABEL_DECOR_RE.match(s)
    if m:
        return (m.group(1) or m.group(2)), True
    return s, False


def label_to_position(token: str) -> int | None:
    """Map an undecorated option label to its 1-based position, else None.

    Single letters read as letters (even I/V/X); multi-character roman
    numerals and arabic numbers read positionally.
    """
    token = token.strip()
    if not token:
        return None
    upper = token.upper()
    if len(token) == 1 and len(upper) == 1 and upper.isascii() and upper.isalpha():
        return ord(upper) - ord("A") + 1
    if token.isdigit():
        pos = int(token)
        return pos if 1 <= pos <= 26 else None
    value = roman_to_int(token)
    if value is not None and 1 <= value <= 26:
        return value
    return None


def resolve_label_token(token: str, *, delimiter_adjacent: bool = True) -> int:
    """Like label_to_position but refuses bare ambiguous letters in prose."""
    bare, decorated = strip_label_decoration(token)
    if (not decorated and not delimiter_adjacent
            and len(bare) == 1 and bare.upper() in _AMBIGUOUS_SINGLES):
        raise AmbiguousLabel(f"bare {bare!r} is ambiguous outside a label position")
    pos = label_to_position(bare)
    if pos is None:
        raise AmbiguousLabel(f"not an option label: {token!r}")
    return pos


def canonical_label(s: str) -> str | None:
    """Fold any label surface ("(III)", "b.", "3") to its uppercase letter."""
    bare, _ = strip_label_decoration(s)
    pos = label_to_position(bare)
    if pos is None:
        return None
    return chr(ord("A") + pos - 1)


def fold_greek_names(s: str) -> str:
    return _GREEK_RE.sub(lambda m: GREEK_NAMES[m.group(1).lower()], s)


def map_domain(s: str, qtype: QuestionType, extra: Mapping[str, str] | None = None) -> str:
    """Apply domain mappings: Greek names to glyphs; option labels to letters (MC only)."""
    if qtype is QuestionType.MULTIPLE_CHOICE:
        label = canonical_label(s.strip())
        if label is not None:
            return label
    out = fold_greek_names(s)
    if extra:
        for src, dst in extra.items():
            if re.fullmatch(r"\w+", src):
                out = re.sub(rf"(?<!\w){re.escape(src)}(?!\w)", dst, out)
            else:
                out = out.replace(src, dst)
    return out


def fold_symbol(s: str, qtype: QuestionType, extra: Mapping[str, str] | None = None) -> str:
    """Full pipeline: unicode fold, font fold, then domain mapping."""
    return map_domain(fold_font(fold_unicode(s)), qtype, extra)


@dataclass(frozen=True)
class SymbolForm:
    canonical: str
    applied_steps: tuple[str, ...]  # subset of ("uni", "font", "dom"), in order


def fold_symbol_form(s: str, qtype: QuestionType,
                     extra: Mapping[str, str] | None = None) -> SymbolForm:
    """Like fold_symbol, but records which folding stages changed the text."""
    steps = []
    after_uni = fold_unicode(s)
    if after_uni != s:
        steps.append("uni")
    after_font = fold_font(after_uni)
    if after_font != after_uni:
        steps.append("font")
    canonical = map_domain(after_font, qtype, extra)
    if canonical != after_font:
        steps.append("dom")
    return SymbolForm(canonical, tuple(steps))


def sym_equivalent(a: str, b: str, qtype: QuestionType,
                   extra: Mapping[str, str] | None = None) -> bool:
    """Character-exact equality after the full symbol folding pipeline."""
    return fold_symbol(a, qtype, extra).strip() == fold_symbol(b, qtype, extra).strip()


def load_extension_table(path: str | Path) -> dict[str, str]:
    """Read a user extension table: one `from<TAB>to` pair per line."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoFailure(str(exc)) from exc
    table: dict[str, str] = {}
    for line in text.splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        src, _, dst = line.partition("\t")
        if src:
            table[src] = dst
    return table
