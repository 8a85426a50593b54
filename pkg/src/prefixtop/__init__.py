"""prefixtop: ranked prefix autocomplete with O(k log n) queries."""

from .core import (
    MAX_WEIGHT,
    Index,
    PhraseEntry,
    QueryStats,
    RangeCandidate,
    Suggestion,
    TopKStream,
    build_index,
    prefix_bounds,
    range_max,
    top_k,
)
from .ingest import CorpusStats, IngestError, load_file, load_tsv
from .oracle import naive_top_k
from .transform import (
    DEFAULT_STOPWORDS,
    FuzzyIndex,
    TransformConfig,
    build_fuzzy_index,
    build_stage_indexes,
    collapse_runs,
    fuzzy_key,
    fuzzy_top_k,
    load_stopwords,
    multi_stage_top_k,
    remove_stopwords,
    soundex_digits,
    strip_to_consonants,
)

__version__ = "0.1.0"

__all__ = [
    "MAX_WEIGHT",
    "Index",
    "PhraseEntry",
    "QueryStats",
    "RangeCandidate",
    "Suggestion",
    "TopKStream",
    "build_index",
    "prefix_bounds",
    "range_max",
    "top_k",
    "naive_top_k",
    "CorpusStats",
    "IngestError",
    "load_file",
    "load_tsv",
    "DEFAULT_STOPWORDS",
    "FuzzyIndex",
    "TransformConfig",
    "build_fuzzy_index",
    "build_stage_indexes",
    "collapse_runs",
    "fuzzy_key",
    "fuzzy_top_k",
    "load_stopwords",
    "multi_stage_top_k",
    "remove_stopwords",
    "soundex_digits",
    "strip_to_consonants",
    "__version__",
]
