"""Shared domain types, tokenization, sentence splitting, and run configuration."""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

__all__ = [
    "ABBREVIATIONS",
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
    "cased_tokens",
    "detokenize",
    "fold_text",
    "load_articles",
    "read_articles",
    "split_sentences",
    "tokenize",
]


class Origin(Enum):
    """Where a source sentence came from within an article."""

    TITLE = "TITLE"
    DESCRIPTION = "DESCRIPTION"


class Technique(Enum):
    """Generation technique that produced a candidate utterance."""

    BT = "BT"
    NP_VP_BT = "NP_VP_BT"
    WORDNET = "WORDNET"
    PPDB = "PPDB"
    EXTERNAL = "EXTERNAL"


class FilterMode(Enum):
    """How the candidate pool is filtered before deduplication."""

    ENCODER = "ENCODER"
    DETECTOR = "DETECTOR"


def _scan(text: str) -> list[str]:
    # Single pass: alphanumeric runs (with embedded apostrophes) are words,
    # every other non-space character is a one-character token.
    tokens: list[str] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isalnum():
            j = i + 1
            while j < n:
                if text[j].isalnum():
                    j += 1
                elif text[j] == "'" and j + 1 < n and text[j + 1].isalnum():
                    j += 2
                else:
                    break
            tokens.append(text[i:j])
            i = j
        else:
            tokens.append(ch)
            i += 1
    return tokens


def tokenize(text: str) -> list[str]:
    """Lowercase ``text`` and split it into word and punctuation tokens.

    Words are maximal alphanumeric runs; an apostrophe is kept inside a word
    when flanked by alphanumerics on both sides ("don't"). Every other
    non-space character becomes its own single-character token. Tokens are
    never empty; empty or all-space input yields ``[]``.
    """
    return _scan(text.lower())


def cased_tokens(text: str) -> list[str]:
    """Tokenize without case folding, used to rebuild edited sentences.

    Token boundaries match :func:`tokenize` position for position, so a span
    located on lowercased tokens can be spliced back into the cased list.
    """
    return _scan(text)


_ATTACH_LEFT = frozenset(".,!?;:%)]}'-")
_ATTACH_RIGHT = frozenset("([{'-")


def detokenize(tokens: Sequence[str]) -> str:
    """Join tokens with spaces, attaching punctuation to its neighbour."""
    parts: list[str] = []
    for tok in tokens:
        if parts and tok not in _ATTACH_LEFT and parts[-1] not in _ATTACH_RIGHT:
            parts.append(" ")
        parts.append(tok)
    return "".join(parts)


def fold_text(text: str) -> str:
    """Canonical form used for duplicate checks: lowercased tokens, single spaces."""
    return " ".join(tokenize(text))


ABBREVIATIONS = frozenset(
    {"mr", "mrs", "ms", "dr", "prof", "sr", "jr", "st", "e.g", "i.e", "etc", "vs", "vol", "fig", "inc"}
)

_TERMINATORS = frozenset(".?!")


def _abbreviation_before(text: str, dot: int) -> bool:
    j = dot - 1
    while j >= 0 and (text[j].isalnum() or text[j] in ".'"):
        j -= 1
    word = text[j + 1 : dot].lower().lstrip(".'")
    return word in ABBREVIATIONS


def split_sentences(text: str) -> list[str]:
    """Split text into sentences on '.', '?' or '!' followed by whitespace or end.

    A dot preceded by a known abbreviation ("Dr.", "e.g.", ...) does not end a
    sentence. Returned sentences are trimmed and non-empty; joining them with
    single spaces reconstructs the input up to whitespace.
    """
    sentences: list[str] = []
    start = 0
    n = len(text)
    for i, ch in enumerate(text):
        if ch not in _TERMINATORS:
            continue
        if i + 1 < n and not text[i + 1].isspace():
            continue
        if ch == "." and _abbreviation_before(text, i):
            continue
        piece = text[start : i + 1].strip()
        if piece:
            sentences.append(piece)
        start = i + 1
    tail = text[start:].strip()
    if tail:
        sentences.append(tail)
    return sentences


@dataclass(frozen=True)
class Article:
    """One knowledge-base article: an id, a title sentence, and a description."""

    id: str
    title: str
    description: str = ""

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("article id must be non-empty")
        if not self.title.strip():
            raise ValueError(f"article {self.id!r}: title must be non-empty")


@dataclass(frozen=True)
class SourceSentence:
    """A sentence taken from an article, the unit the pipeline paraphrases."""

    article_id: str
    text: str
    origin: Origin
    index: int

    def __post_init__(self) -> None:
        if not self.text:
            raise ValueError("source sentence text must be non-empty")
        if self.index < 0:
            raise ValueError("source sentence index must be >= 0")
        if self.origin is Origin.TITLE and self.index != 0:
            raise ValueError("title sentences always have index 0")


@dataclass(frozen=True)
class Provenance:
    """Which token span was replaced and what replaced it."""

    start: int
    end: int
    replacement: str

    def __post_init__(self) -> None:
        if not 0 <= self.start < self.end:
            raise ValueError(f"invalid provenance span [{self.start}, {self.end})")


@dataclass(frozen=True)
class Candidate:
    """A generated paraphrase of a source sentence, before scoring."""

    text: str
    source: SourceSentence
    technique: Technique
    provenance: Provenance | None = None

    def __post_init__(self) -> None:
        if fold_text(self.text) == fold_text(self.source.text):
            raise ValueError(f"candidate text equals its source: {self.text!r}")


@dataclass(frozen=True)
class ScoredCandidate:
    """A candidate annotated with similarity, fluency loss, and tie-break score."""

    candidate: Candidate
    encoder_similarity: float
    fluency_loss: float = 0.0
    tiebreak: float = 0.0

    def __post_init__(self) -> None:
        if not -1.0 <= self.encoder_similarity <= 1.0:
            raise ValueError(f"encoder similarity out of range: {self.encoder_similarity}")
        if self.fluency_loss < 0.0:
            raise ValueError(f"fluency loss must be >= 0: {self.fluency_loss}")
        if not 0.0 <= self.tiebreak <= 1.0:
            raise ValueError(f"tie-break score out of range: {self.tiebreak}")


@dataclass(frozen=True)
class GenerationConfig:
    """Knobs for the generation stage."""

    pivot_language: str = "de"
    forward_beam: int = 5
    backward_beam: int = 5
    max_variants_per_technique: int = 25

    def __post_init__(self) -> None:
        if not self.pivot_language:
            raise ValueError("pivot_language must be non-empty")
        for name in ("forward_beam", "backward_beam", "max_variants_per_technique"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be a positive integer")


@dataclass(frozen=True)
class SelectionConfig:
    """Knobs for filtering, deduplication, and the final cap."""

    low_threshold: float = 0.5
    dup_threshold: float = 0.95
    k: int = 20
    filter_mode: FilterMode = FilterMode.ENCODER
    detector_threshold: float = 0.5
    allow_zero_novelty: bool = False

    def __post_init__(self) -> None:
        if not 0.0 <= self.low_threshold < self.dup_threshold <= 1.0:
            raise ValueError(
                "thresholds must satisfy 0 <= low_threshold < dup_threshold <= 1, got "
                f"{self.low_threshold} and {self.dup_threshold}"
            )
        if self.k < 1:
            raise ValueError("k must be a positive integer")


def load_articles(lines: Iterable[str]) -> list[Article]:
    """Parse JSON Lines article records, enforcing unique non-empty ids.

    Each line is an object with keys ``id`` and ``title`` and an optional
    ``description``. Blank lines are skipped. Raises ValueError with the
    offending line number on malformed input.
    """
    articles: list[Article] = []
    seen: set[str] = set()
    for lineno, line in enumerate(lines, 1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ValueError(f"line {lineno}: invalid JSON: {exc}") from exc
        if not isinstance(record, dict):
            raise ValueError(f"line {lineno}: expected a JSON object")
        for key in ("id", "title"):
            if key not in record:
                raise ValueError(f"line {lineno}: missing key {key!r}")
        try:
            article = Article(
                id=str(record["id"]),
                title=str(record["title"]),
                description=str(record.get("description") or ""),
            )
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from exc
        if article.id in seen:
            raise ValueError(f"line {lineno}: duplicate article id {article.id!r}")
        seen.add(article.id)
        articles.append(article)
    return articles


def read_articles(path: str) -> list[Article]:
    """Read a JSON Lines article file, see :func:`load_articles`."""
    with open(path, encoding="utf-8") as handle:
        return load_articles(handle)
