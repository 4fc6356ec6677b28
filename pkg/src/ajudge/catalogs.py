"""Catalog data files: rephrase templates, wrappers, delimiters, distractors.

Each catalog ships as a versioned text file with one entry per line and
`{ANS}` as the answer placeholder; tests pin the sizes and contents.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

ANSWER_SLOT = "{ANS}"


def _read_lines(filename: str) -> tuple[str, ...]:
    text = resources.files("ajudge.data").joinpath(filename).read_text(encoding="utf-8")
    return tuple(line for line in text.splitlines() if line and not line.startswith("#"))


@lru_cache(maxsize=None)
def rephrase_templates() -> tuple[str, ...]:
    return _read_lines("rephrase_templates.txt")


@lru_cache(maxsize=None)
def wrapper_templates() -> tuple[str, ...]:
    return _read_lines("wrappers.txt")


@lru_cache(maxsize=None)
def delimiter_strings() -> tuple[str, ...]:
    return tuple(json.loads(line) for line in _read_lines("delimiters.txt"))


@lru_cache(maxsize=None)
def distractor_pool() -> tuple[str, ...]:
    return _read_lines("distractors.txt")


BASE_PHRASES = ("the answer is", "final answer", "answer:", "答案是")


@lru_cache(maxsize=None)
def marker_phrases() -> tuple[str, ...]:
    """Explicit answer phrases: base catalog plus every rephrase template prefix."""
    phrases = set(BASE_PHRASES)
    for template in rephrase_templates():
        prefix = template.split(ANSWER_SLOT)[0].strip().lower()
        if prefix:
            phrases.add(prefix)
    # longest first so regex alternation prefers the most specific match
    return tuple(sorted(phrases, key=len, reverse=True))
