"""Model backends: shared interfaces, reference implementations, remote clients."""

from .base import (
    BackendError,
    BackendSuite,
    Chunker,
    Detector,
    Embedding,
    Encoder,
    FluencyScorer,
    Phrase,
    PhraseLabel,
    Translator,
    cosine,
)
from .reference import (
    HashedBowEncoder,
    JaccardDetector,
    RuleChunker,
    TableTranslator,
    UnigramFluencyScorer,
    load_frequency_table,
    load_translation_table,
    reference_suite,
)
from .remote import (
    RemoteChunker,
    RemoteConfig,
    RemoteDetector,
    RemoteEncoder,
    RemoteFluencyScorer,
    RemoteTranslator,
    remote_suite,
)

__all__ = [
    "BackendError",
    "BackendSuite",
    "Chunker",
    "Detector",
    "Embedding",
    "Encoder",
    "FluencyScorer",
    "HashedBowEncoder",
    "JaccardDetector",
    "Phrase",
    "PhraseLabel",
    "RemoteChunker",
    "RemoteConfig",
    "RemoteDetector",
    "RemoteEncoder",
    "RemoteFluencyScorer",
    "RemoteTranslator",
    "RuleChunker",
    "TableTranslator",
    "Translator",
    "UnigramFluencyScorer",
    "cosine",
    "load_frequency_table",
    "load_translation_table",
    "reference_suite",
    "remote_suite",
]
