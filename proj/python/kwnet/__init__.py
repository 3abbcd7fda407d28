"""Keyword extraction on word co-occurrence networks enriched with embeddings."""

from ._kwnet import (
    MEASURES,
    ConfigError,
    ConvergenceError,
    DataError,
    Error,
    ParseError,
    StaticEmbeddingTable,
    UndefinedSimilarity,
    WordGraph,
    accuracy,
    bert_similarity,
    default_stopwords,
    format_gain,
    porter_stem,
    preprocess,
    render_table,
    segment_sentences,
    similarity,
    stem,
    sweep,
)

__all__ = [
    "MEASURES",
    "ConfigError",
    "ConvergenceError",
    "DataError",
    "Error",
    "ParseError",
    "StaticEmbeddingTable",
    "UndefinedSimilarity",
    "WordGraph",
    "accuracy",
    "bert_similarity",
    "default_stopwords",
    "format_gain",
    "porter_stem",
    "preprocess",
    "render_table",
    "segment_sentences",
    "similarity",
    "stem",
    "sweep",
]
