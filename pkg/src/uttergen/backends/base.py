"""Model backend interfaces and the vector primitives they share."""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

__all__ = [
    "BackendError",
    "BackendSuite",
    "Chunker",
    "Detector",
    "Embedding",
    "Encoder",
    "FluencyScorer",
    "Phrase",
    "PhraseLabel",
    "Translator",
    "cosine",
]


class BackendError(RuntimeError):
    """A model backend failed or returned something outside its contract."""


@dataclass(frozen=True)
class Embedding:
    """A fixed-dimension sentence vector."""

    values: tuple[float, ...]

    def __post_init__(self) -> None:
        if not self.values:
            raise ValueError("embedding dimension must be positive")
        for value in self.values:
            if not math.isfinite(value):
                raise ValueError("embedding values must be finite")

    @property
    def dimension(self) -> int:
        return len(self.values)


def cosine(a: Embedding, b: Embedding) -> float:
    """Cosine similarity, 0.0 when either vector has zero norm.

    Sums use ``math.fsum`` so results do not depend on platform reduction
    order. Raises ValueError on dimension mismatch.
    """
    if a.dimension != b.dimension:
        raise ValueError(f"embedding dimension mismatch: {a.dimension} vs {b.dimension}")
    dot = math.fsum(x * y for x, y in zip(a.values, b.values))
    norm_a = math.sqrt(math.fsum(x * x for x in a.values))
    norm_b = math.sqrt(math.fsum(y * y for y in b.values))
    if norm_a == 0.0 or norm_b == 0.0:
        return 0.0
    value = dot / (norm_a * norm_b)
    return max(-1.0, min(1.0, value))


class PhraseLabel(Enum):
    NP = "NP"
    VP = "VP"


@dataclass(frozen=True)
class Phrase:
    """A labelled token span, end-exclusive."""

    start: int
    end: int
    label: PhraseLabel

    def __post_init__(self) -> None:
        if not 0 <= self.start < self.end:
            raise ValueError(f"invalid phrase span [{self.start}, {self.end})")


class Encoder(ABC):
    """Maps texts to fixed-dimension sentence embeddings."""

    @abstractmethod
    def embed(self, texts: Sequence[str]) -> list[Embedding]:
        """Embed a batch of texts; output order matches input order."""


class Translator(ABC):
    """Produces up to n translations of a text between two languages."""

    @abstractmethod
    def translate(self, text: str, source_lang: str, target_lang: str, n: int) -> list[str]:
        """Return up to ``n`` distinct translations in deterministic order."""


class Detector(ABC):
    """Estimates the probability that two texts are paraphrases."""

    @abstractmethod
    def probability(self, text_a: str, text_b: str) -> float:
        """Paraphrase probability in [0, 1]."""

    def probability_batch(self, pairs: Sequence[tuple[str, str]]) -> list[float]:
        return [self.probability(a, b) for a, b in pairs]


class FluencyScorer(ABC):
    """Scores how unlikely a text is under a language model (lower is better)."""

    @abstractmethod
    def loss(self, text: str) -> float:
        """Non-negative cross-entropy style loss."""

    def loss_batch(self, texts: Sequence[str]) -> list[float]:
        return [self.loss(t) for t in texts]


class Chunker(ABC):
    """Finds noun-phrase and verb-phrase spans over a token sequence."""

    @abstractmethod
    def phrases(self, tokens: Sequence[str]) -> list[Phrase]:
        """Return labelled spans; within a label, spans never overlap."""


@dataclass(frozen=True)
class BackendSuite:
    """The five model backends a pipeline run needs, as one bundle."""

    encoder: Encoder
    translator: Translator
    detector: Detector
    fluency_scorer: FluencyScorer
    chunker: Chunker

    def __post_init__(self) -> None:
        for name in ("encoder", "translator", "detector", "fluency_scorer", "chunker"):
            if getattr(self, name) is None:
                raise ValueError(f"backend suite is missing {name}")
