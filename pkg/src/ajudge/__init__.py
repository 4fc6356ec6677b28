"""Deterministic answer verification for LLM responses.

Extracts the final answer from a long response, judges equivalence against a
reference answer across four question types, and ships the surrounding
tooling: corpus I/O, label-preserving augmentation, and an F1/accuracy
evaluation harness.
"""

__version__ = "0.1.0"

from .augment import AugmentPlan, augment_corpus, equivalent_math_forms, transform_answer_sentence
from .evalharness import Confusion, EvalReport, accuracy, evaluate, f1, render_report
from .extraction import (CandidateAnswer, ExtractionConfig, FinalAnswer, MarkerKind,
                         decompose, extract_candidates, extract_final, score_candidate)
from .judging import DEFAULT_CONFIG, JudgeConfig, Judgment, judge, judge_equivalence, judge_record
from .mathnorm import (EquivalenceConfig, canonicalize, math_equivalent, normalize_units,
                       parse_expression, repair_syntax)
from .nlmatch import AlignConfig, alignment_score, nl_equivalent, normalize_text
from .options import parse_options, transform_option_indices
from .augment import inject_option_noise
from .records import (LabeledRecord, QuestionType, Verdict, load_corpus, parse_record,
                      serialize_record, write_corpus)
from .symnorm import fold_font, fold_unicode, map_domain, sym_equivalent

__all__ = [
    "__version__",
    "AlignConfig", "AugmentPlan", "CandidateAnswer", "Confusion", "DEFAULT_CONFIG",
    "EquivalenceConfig", "EvalReport", "ExtractionConfig", "FinalAnswer", "JudgeConfig",
    "Judgment", "LabeledRecord", "MarkerKind", "QuestionType", "Verdict",
    "accuracy", "alignment_score", "augment_corpus", "canonicalize", "decompose",
    "equivalent_math_forms", "evaluate", "extract_candidates", "extract_final", "f1",
    "fold_font", "fold_unicode", "inject_option_noise", "judge", "judge_equivalence",
    "judge_record", "load_corpus", "map_domain", "math_equivalent", "nl_equivalent",
    "normalize_text", "normalize_units", "parse_expression", "parse_options",
    "parse_record", "render_report", "repair_syntax", "score_candidate",
    "serialize_record", "sym_equivalent", "transform_answer_sentence",
    "transform_option_indices", "write_corpus",
]
