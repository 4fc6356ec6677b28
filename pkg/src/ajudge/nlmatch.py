"""Natural-language answer matching: lexical alignment score with a threshold."""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass

from . import numwords
from .symnorm import fold_font, fold_unicode

DEFAULT_STOPWORDS = frozenset({"a", "an", "the", "of", "in", "on", "at", "is", "was"})
_ARTICLE_RE = re.compile(r"\b(?:a|an|the)\b")
_PUNCT_RE = re.compile(r"[^\w\s]", re.UNICODE)
_CJK_RE = re.compile(r"[㐀-鿿豈-﫿]")


@dataclass(frozen=True)
class AlignConfig:
    tau: float = 0.85
    mix_weight: float = 0.5
    stopwords: frozenset[str] = DEFAULT_STOPWORDS

    def __post_init__(self):
        if not 0.0 <= self.tau <= 1.0:
            raise ValueError("tau must be in [0, 1]")
        if not 0.0 <= self.mix_weight <= 1.0:
            raise ValueError("mix_weight must be in [0, 1]")


DEFAULT_ALIGN = AlignConfig()


def normalize_text(s: str) -> str:
    """Fold, lowercase, strip punctuation and articles, spell out cardinals as digits."""
    s = fold_font(fold_unicode(s)).lower()
    s = _PUNCT_RE.sub(" ", s)
    s = numwords.replace_number_words(s)
    s = _ARTICLE_RE.sub(" ", s)
    return " ".join(s.split())


def _tokens(s: str) -> list[str]:
    out: list[str] = []
    for word in s.split():
        if _CJK_RE.search(word):
            # Chinese has no spaces; compare character by character
            out.extend(word)
        else:
            out.append(word)
    return out


def levenshtein(a: str, b: str) -> int:
    if len(a) < len(b):
        a, b = b, a
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        current = [i]
        for j, cb in enumerate(b, start=1):
            current.append(min(previous[j] + 1,
                               current[j - 1] + 1,
                               previous[j - 1] + (ca != cb)))
        previous = current
    return previous[-1]


def alignment_score(a: str, b: str, cfg: AlignConfig = DEFAULT_ALIGN) -> float:
    """Blend of token-multiset F1 and normalized edit similarity, in [0, 1]."""
    na, nb = normalize_text(a), normalize_text(b)
    if not na and not nb:
        return 1.0
    ta = Counter(t for t in _tokens(na) if t not in cfg.stopwords)
    tb = Counter(t for t in _tokens(nb) if t not in cfg.stopwords)
    if not ta and not tb:
        token_f1 = 1.0
    else:
        overlap = sum((ta & tb).values())
        token_f1 = 2.0 * overlap / (sum(ta.values()) + sum(tb.values()))
    longest = max(len(na), len(nb))
    edit_sim = 1.0 if longest == 0 else 1.0 - levenshtein(na, nb) / longest
    return cfg.mix_weight * token_f1 + (1.0 - cfg.mix_weight) * edit_sim


def nl_equivalent(a_ref: str, a_final: str, cfg: AlignConfig = DEFAULT_ALIGN) -> bool:
    """True on normalized exact equality, or when the alignment score clears tau."""
    if normalize_text(a_ref) == normalize_text(a_final):
        return True
    return alignment_score(a_ref, a_final, cfg) >= cfg.tau
