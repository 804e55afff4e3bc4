"""Graph-based document retrieval: fact-pattern matching ranked by GraphRank."""

from ._graphrank import (
    GraphRankError,
    Index,
    InputError,
    UntranslatableError,
    build_index,
    evaluate,
    jaccard_similarity,
    synthesize,
    tokenize,
)

__all__ = [
    "GraphRankError",
    "Index",
    "InputError",
    "UntranslatableError",
    "build_index",
    "evaluate",
    "jaccard_similarity",
    "synthesize",
    "tokenize",
]
