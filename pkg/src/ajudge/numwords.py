"""English cardinal number words, both directions (words -> int, int -> words)."""

from __future__ import annotations

import re

_UNITS = {
    "zero": 0, "one": 1, "two": 2, "three": 3, "four": 4, "five": 5,
    "six": 6, "seven": 7, "eight": 8, "nine": 9, "ten": 10,
    "eleven": 11, "twelve": 12, "thirteen": 13, "fourteen": 14, "fifteen": 15,
    "sixteen": 16, "seventeen": 17, "eighteen": 18, "nineteen": 19,
}
_TENS = {
    "twenty": 20, "thirty": 30, "forty": 40, "fifty": 50,
    "sixty": 60, "seventy": 70, "eighty": 80, "ninety": 90,
}
_SCALES = {
    "hundred": 100,
    "thousand": 10**3,
    "million": 10**6,
    "billion": 10**9,
    "trillion": 10**12,
}

NUMBER_WORDS = frozenset(_UNITS) | frozenset(_TENS) | frozenset(_SCALES)

_WORD_RE = re.compile(r"[A-Za-z]+|[^A-Za-z]+")


def parse_number_words(tokens: list[str]) -> int | None:
    """Parse a token run like ["two", "thousand", "seven", "hundred"] to 2700.

    Tokens must already be lowercased.  "and" is allowed only directly after a
    scale word ("one hundred and five").  Word order is validated so that runs
    like "one two" are rejected rather than summed.
    """
    if not tokens:
        return None
    if tokens == ["zero"]:
        return 0
    total = 0
    current = 0
    last = "start"  # start | unit | teen | tens | hundred | scale | and
    last_scale = None
    saw_number = False
    for tok in tokens:
        if tok == "and":
            if last not in ("hundred", "scale"):
                return None
            last = "and"
            continue
        if tok in _UNITS:
            value = _UNITS[tok]
            if value == 0:
                return None  # "zero" only stands alone
            kind = "teen" if value >= 10 else "unit"
            if kind == "unit" and last not in ("start", "tens", "hundred", "scale", "and"):
                return None
            if kind == "teen" and last not in ("start", "hundred", "scale", "and"):
                return None
            current += value
            saw_number = True
            last = kind
        elif tok in _TENS:
            if last not in ("start", "hundred", "scale", "and"):
                return None
            current += _TENS[tok]
            saw_number = True
            last = "tens"
        elif tok == "hundred":
            if last not in ("start", "unit", "teen"):
                return None
            current = (current or 1) * 100
            saw_number = True
            last = "hundred"
        elif tok in _SCALES:
            scale = _SCALES[tok]
            if last_scale is not None and scale >= last_scale:
                return None
            total += (current or 1) * scale
            current = 0
            saw_number = True
            last = "scale"
            last_scale = scale
        else:
            return None
    if not saw_number or last == "and":
        return None
    return total + current


def words_to_value(text: str) -> int | None:
    """Parse a whole string of number words ("Twenty-one") to its value."""
    tokens = [t for t in re.split(r"[\s\-]+", text.strip().lower()) if t]
    return parse_number_words(tokens)


def replace_number_words(text: str) -> str:
    """Rewrite cardinal-word runs inside text with digit strings.

    The longest valid run wins; on failure the run backs off word by word so
    "five and six" still becomes "5 and 6".
    """
    parts = _WORD_RE.findall(text)
    out: list[str] = []
    i = 0
    while i < len(parts):
        word = parts[i]
        if word.lower() in NUMBER_WORDS:
            # collect the maximal candidate run: number words joined by
            # separators, with "and" allowed between them
            words: list[tuple[int, str]] = [(i, word.lower())]
            j = i + 1
            while j < len(parts):
                nxt = parts[j]
                if nxt.lower() in NUMBER_WORDS or nxt.lower() == "and":
                    words.append((j, nxt.lower()))
                    j += 1
                elif re.fullmatch(r"[\s\-]+", nxt) and j + 1 < len(parts) and \
                        parts[j + 1].lower() in NUMBER_WORDS | {"and"}:
                    j += 1
                else:
                    break
            converted = False
            for k in range(len(words), 0, -1):
                value = parse_number_words([w for _, w in words[:k]])
                if value is not None:
                    out.append(str(value))
                    i = words[k - 1][0] + 1
                    converted = True
                    break
            if converted:
                continue
        out.append(word)
        i += 1
    return "".join(out)


def int_to_words(n: int) -> str:
    """Render an integer as lowercase English words ("two thousand seven hundred")."""
    if n < 0:
        return "negative " + int_to_words(-n)
    if n == 0:
        return "zero"
    units_rev = {v: k for k, v in _UNITS.items()}
    tens_rev = {v: k for k, v in _TENS.items()}

    def under_thousand(k: int) -> list[str]:
        words: list[str] = []
        if k >= 100:
            words += [units_rev[k // 100], "hundred"]
            k %= 100
        if k >= 20:
            words.append(tens_rev[k - k % 10])
            k %= 10
        if k:
            words.append(units_rev[k])
        return words

    chunks: list[str] = []
    for scale_word, scale in (("trillion", 10**12), ("billion", 10**9),
                              ("million", 10**6), ("thousand", 10**3)):
        if n >= scale:
            chunks += under_thousand(n // scale) + [scale_word]
            n %= scale
    chunks += under_thousand(n)
    return " ".join(chunks)
