"""Key=value config file handling and JudgeConfig assembly."""

from __future__ import annotations

from pathlib import Path

from .errors import IoFailure
from .extraction import ExtractionConfig
from .judging import JudgeConfig
from .mathnorm import EquivalenceConfig
from .nlmatch import AlignConfig
from .symnorm import load_extension_table

_FLOAT_KEYS = {"abs_tol", "rel_tol", "sample_lo", "sample_hi", "tau", "mix_weight",
               "weight_boxed", "weight_phrase", "weight_option", "weight_fallback",
               "weight_position", "weight_compat"}
_INT_KEYS = {"seed", "sample_count"}
_PATH_KEYS = {"stopwords_file", "extension_table", "phrases_file", "wrappers_file"}


def load_config_file(path: str | Path) -> dict:
    """Parse `key=value` lines; '#' starts a comment, blank lines are skipped."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoFailure(str(exc)) from exc
    out: dict = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"bad config line {lineno}: {line!r}")
        key, _, value = line.partition("=")
        out[key.strip()] = value.strip()
    return out


def _read_lines_file(path: str) -> tuple[str, ...]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoFailure(str(exc)) from exc
    return tuple(l.strip() for l in text.splitlines() if l.strip() and not l.startswith("#"))


def build_judge_config(settings: dict) -> JudgeConfig:
    """Assemble a JudgeConfig from string-valued settings (file plus flag overrides)."""
    values: dict = {}
    for key, raw in settings.items():
        if raw is None:
            continue
        if key in _FLOAT_KEYS:
            values[key] = float(raw)
        elif key in _INT_KEYS:
            values[key] = int(raw)
        elif key in _PATH_KEYS:
            values[key] = str(raw)

    eq_kwargs = {}
    for src, dst in (("abs_tol", "abs_tol"), ("rel_tol", "rel_tol"),
                     ("sample_count", "sample_count"), ("sample_lo", "sample_lo"),
                     ("sample_hi", "sample_hi"), ("seed", "rng_seed")):
        if src in values:
            eq_kwargs[dst] = values[src]
    align_kwargs = {}
    if "tau" in values:
        align_kwargs["tau"] = values["tau"]
    if "mix_weight" in values:
        align_kwargs["mix_weight"] = values["mix_weight"]
    if "stopwords_file" in values:
        align_kwargs["stopwords"] = frozenset(_read_lines_file(values["stopwords_file"]))
    extraction_kwargs = {}
    for key in ("weight_boxed", "weight_phrase", "weight_option", "weight_fallback",
                "weight_position", "weight_compat"):
        if key in values:
            extraction_kwargs[key] = values[key]
    if "phrases_file" in values:
        base = ExtractionConfig().phrases
        extraction_kwargs["phrases"] = tuple(
            sorted(set(base) | {p.lower() for p in _read_lines_file(values["phrases_file"])},
                   key=len, reverse=True))
    if "wrappers_file" in values:
        base = ExtractionConfig().wrappers
        extraction_kwargs["wrappers"] = base + _read_lines_file(values["wrappers_file"])

    extension = None
    if "extension_table" in values:
        extension = load_extension_table(values["extension_table"])

    return JudgeConfig(
        equivalence=EquivalenceConfig(**eq_kwargs),
        align=AlignConfig(**align_kwargs),
        extraction=ExtractionConfig(**extraction_kwargs),
        symbol_extension=extension,
    )
