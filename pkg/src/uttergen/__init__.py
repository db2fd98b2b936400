"""uttergen: overgenerate-and-select utterance paraphrasing for KB articles."""

from .core import (
    Article,
    Candidate,
    FilterMode,
    GenerationConfig,
    Origin,
    Provenance,
    ScoredCandidate,
    SelectionConfig,
    SourceSentence,
    Technique,
)

__version__ = "0.1.0"

__all__ = [
    "Article",
    "Candidate",
    "FilterMode",
    "GenerationConfig",
    "Origin",
    "Provenance",
    "ScoredCandidate",
    "SelectionConfig",
    "SourceSentence",
    "Technique",
    "__version__",
]
