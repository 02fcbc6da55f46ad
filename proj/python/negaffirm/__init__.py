"""Negation cue detection, affirmative-interpretation augmentation, and evaluation."""

from ._negaffirm import (
    CueLexicon,
    CueMatch,
    NegaffirmError,
    Token,
    accuracy,
    contains_negation,
    detect_cues,
    extract_edited_sentence,
    group_consistency,
    load_lexicon,
    load_lexicon_text,
    macro_f1,
    mcnemar,
    pearson,
    select_affirmative,
    spearman,
    split_sentences,
    tokenize,
)

__all__ = [
    "CueLexicon",
    "CueMatch",
    "NegaffirmError",
    "Token",
    "accuracy",
    "contains_negation",
    "detect_cues",
    "extract_edited_sentence",
    "group_consistency",
    "load_lexicon",
    "load_lexicon_text",
    "macro_f1",
    "mcnemar",
    "pearson",
    "select_affirmative",
    "spearman",
    "split_sentences",
    "tokenize",
]
