"""CFG definitions, random-walk derivation, instantiation, and dataset assembly."""

from .cfg import (
    BUILTIN_GRAMMARS,
    FOL,
    GRAMMAR_FORMALISM,
    KSAT3,
    PROP,
    REGEX,
    GrammarSpec,
    infer_formalism,
    load_grammar,
    recognize,
    tokenize_for,
)
from .dataset import (
    ALL_METRICS,
    DFA_METRICS,
    PRE_INSTANTIATION_METRICS,
    DatasetManifest,
    DatasetRecord,
    generate_dataset,
    leaf_metric_value,
    expression_metric_value,
)
from .derive import DerivationNode, EmptyFrontier, GenerationConfig, grow_tree
from .vocab import (
    ENGLISH,
    SYNTHETIC,
    RealizedVocabulary,
    VocabularyConfig,
    VocabularyExhausted,
    instantiate,
    realize_vocabulary,
)

__all__ = [
    "ALL_METRICS", "BUILTIN_GRAMMARS", "DFA_METRICS", "DatasetManifest",
    "DatasetRecord", "DerivationNode", "EmptyFrontier", "ENGLISH", "FOL",
    "GRAMMAR_FORMALISM", "GenerationConfig", "GrammarSpec", "KSAT3",
    "PRE_INSTANTIATION_METRICS", "PROP", "REGEX", "RealizedVocabulary",
    "SYNTHETIC", "VocabularyConfig", "VocabularyExhausted",
    "expression_metric_value", "generate_dataset", "grow_tree", "infer_formalism", "instantiate",
    "leaf_metric_value", "load_grammar", "realize_vocabulary", "recognize",
    "tokenize_for",
]
