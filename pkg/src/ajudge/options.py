"""Detect and rewrite the option list inside a multiple-choice question."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import NoOptionsDetected
from .symnorm import int_to_roman, roman_to_int

_LABEL_TOKEN_RE = re.compile(
    r"\(\s*([A-Za-z0-9]{1,6})\s*\)"          # (A) (III) (2)
    r"|(?:(?<=\s)|^)([A-Za-z0-9]{1,6})([.)])(?=\s)",  # A.  B)  1.
    re.MULTILINE,
)

_SCHEMES = ("letter", "roman", "arabic")


def position_under(token: str, scheme: str) -> int | None:
    """Position of a bare label token read under a specific labeling scheme."""
    return _position_under(token, scheme)


def _position_under(token: str, scheme: str) -> int | None:
    if scheme == "letter":
        if len(token) == 1 and token.isalpha() and token.isascii():
            return ord(token.upper()) - ord("A") + 1
        return None
    if scheme == "arabic":
        if token.isdigit():
            pos = int(token)
            return pos if 1 <= pos <= 26 else None
        return None
    value = roman_to_int(token)
    return value if value is not None and 1 <= value <= 26 else None


def render_token(position: int, scheme: str) -> str:
    if scheme == "letter":
        return chr(ord("A") + position - 1)
    if scheme == "arabic":
        return str(position)
    return int_to_roman(position)


def render_label(position: int, scheme: str, decoration: str) -> str:
    token = render_token(position, scheme)
    if decoration == "paren":
        return f"({token})"
    if decoration == "dot":
        return f"{token}."
    return f"{token})"


@dataclass(frozen=True)
class OptionItem:
    position: int
    token: str
    content: str
    label_start: int
    label_end: int
    content_end: int


@dataclass(frozen=True)
class OptionList:
    scheme: str
    decoration: str
    items: tuple[OptionItem, ...]

    def content_of(self, position: int) -> str | None:
        for item in self.items:
            if item.position == position:
                return item.content
        return None


def parse_options(question: str) -> OptionList | None:
    """Find a consecutive option sequence (1, 2, 3...) in any labeling scheme."""
    matches = list(_LABEL_TOKEN_RE.finditer(question))
    if len(matches) < 2:
        return None
    best: tuple[str, str, list] | None = None
    for scheme in _SCHEMES:
        picked = []
        expected = 1
        decoration = None
        for m in matches:
            token = m.group(1) or m.group(2)
            decor = "paren" if m.group(1) else ("dot" if m.group(3) == "." else "rparen")
            if _position_under(token, scheme) == expected:
                if decoration is None:
                    decoration = decor
                elif decor != decoration:
                    continue
                picked.append((m, token))
                expected += 1
        if len(picked) >= 2 and (best is None or len(picked) > len(best[2])):
            best = (scheme, decoration or "paren", picked)
    if best is None:
        return None
    scheme, decoration, picked = best
    items = []
    for idx, (m, token) in enumerate(picked):
        if idx + 1 < len(picked):
            content_end = picked[idx + 1][0].start()
        else:
            # the final option's content stops at the next prompt-like break
            tail = question[m.end():]
            cut = re.search(r"[\n?]", tail)
            content_end = m.end() + (cut.start() + 1 if cut else len(tail))
        content = question[m.end():content_end].strip().strip(";,?")
        content = content.rstrip()
        if content.endswith("."):
            content = content[:-1].rstrip()
        items.append(OptionItem(idx + 1, token, content, m.start(), m.end(), content_end))
    return OptionList(scheme, decoration, tuple(items))


def transform_option_indices(question: str, reference: str,
                             scheme: str) -> tuple[str, str]:
    """Rewrite option labels (and the reference label) into another scheme."""
    if scheme not in _SCHEMES:
        raise ValueError(f"unknown label scheme: {scheme}")
    options = parse_options(question)
    if options is None:
        raise NoOptionsDetected("no option labels found in question")
    # roman labels are always parenthesized; bare "I." reads like a sentence
    decoration = "paren" if scheme == "roman" else options.decoration
    out = question
    for item in reversed(options.items):
        new_label = render_label(item.position, scheme, decoration)
        out = out[:item.label_start] + new_label + out[item.label_end:]
    ref_token = reference.strip()
    new_ref = ref_token
    ref_pos = _position_under(_strip_ref(ref_token), options.scheme)
    if ref_pos is not None and any(i.position == ref_pos for i in options.items):
        new_ref = render_token(ref_pos, scheme)
    return out, new_ref


def _strip_ref(token: str) -> str:
    token = token.strip()
    m = re.fullmatch(r"\(\s*([A-Za-z0-9]{1,6})\s*\)|([A-Za-z0-9]{1,6})[.):]?", token)
    if m:
        return m.group(1) or m.group(2)
    return token
