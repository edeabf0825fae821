"""Linear-time LexRank centrality scoring.

The heavy lifting lives in the compiled extension; this package re-exports it.
"""

from fastlexrank._core import (
    DataError,
    ResourceLimitError,
    builtin_stopwords,
    compare,
    fast_scores,
    kendall_tau,
    normalize_rows,
    pearson,
    power_scores,
    sigma_scores,
    synth_embeddings,
    tfidf_matrix,
    tokenize,
    top_k_indices,
)

__all__ = [
    "DataError",
    "ResourceLimitError",
    "builtin_stopwords",
    "compare",
    "fast_scores",
    "kendall_tau",
    "normalize_rows",
    "pearson",
    "power_scores",
    "sigma_scores",
    "synth_embeddings",
    "tfidf_matrix",
    "tokenize",
    "top_k_indices",
]

__version__ = "0.1.0"
