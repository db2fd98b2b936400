"""Lexical resources: stopword/closed-class lists, synonym tables, phrase tables."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from importlib.resources import files
from typing import Iterable, Mapping, NamedTuple, Sequence

from .core import tokenize

__all__ = [
    "ClosedClassLexicon",
    "LexiconFormatError",
    "LexiconSuite",
    "PhraseMatch",
    "PpdbTable",
    "REQUIRED_CLOSED_CLASS",
    "SynonymLexicon",
    "content_words",
    "load_ppdb",
    "load_synonyms",
    "load_wordlist",
    "match_phrases",
    "packaged_path",
]

logger = logging.getLogger(__name__)

# Minimum closed-class vocabulary every lexicon must carry: forms of "be" and
# "have" plus the most common prepositions and conjunctions.
REQUIRED_CLOSED_CLASS = frozenset(
    {
        "be", "is", "am", "are", "was", "were", "been", "being",
        "have", "has", "had", "having",
        "and", "or", "but",
        "of", "in", "on", "at", "to", "for", "with",
    }
)


class LexiconFormatError(ValueError):
    """A lexicon file failed to parse; carries the 1-based line number."""

    def __init__(self, path: str, line: int, message: str) -> None:
        super().__init__(f"{path}:{line}: {message}")
        self.path = path
        self.line = line


def packaged_path(name: str) -> str:
    """Filesystem path of a data file shipped inside the package."""
    return str(files("uttergen").joinpath("data", name))


def load_wordlist(path: str) -> frozenset[str]:
    """Load a one-word-per-line file; '#' starts a comment, blanks are skipped."""
    words: set[str] = set()
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            word = line.split("#", 1)[0].strip().lower()
            if word:
                words.add(word)
    return frozenset(words)


@dataclass(frozen=True)
class ClosedClassLexicon:
    """Stopwords plus closed-class words, with a minimum content-word length."""

    stopwords: frozenset[str]
    closed_class: frozenset[str]
    min_word_length: int = 3

    def __post_init__(self) -> None:
        if self.min_word_length < 1:
            raise ValueError("min_word_length must be a positive integer")
        missing = REQUIRED_CLOSED_CLASS - self.closed_class
        if missing:
            raise ValueError(f"closed_class is missing required words: {sorted(missing)}")

    @classmethod
    def load(cls, stopwords_path: str, closed_class_path: str, min_word_length: int = 3) -> "ClosedClassLexicon":
        return cls(
            stopwords=load_wordlist(stopwords_path),
            closed_class=load_wordlist(closed_class_path),
            min_word_length=min_word_length,
        )

    @classmethod
    def default(cls) -> "ClosedClassLexicon":
        return cls.load(packaged_path("stopwords.txt"), packaged_path("closed_class.txt"))

    def is_content(self, token: str) -> bool:
        return (
            token not in self.stopwords
            and token not in self.closed_class
            and len(token) >= self.min_word_length
        )


def content_words(tokens: Sequence[str], lex: ClosedClassLexicon) -> set[str]:
    """The set of lowercased tokens that carry content.

    A token counts as content when it is neither a stopword nor a
    closed-class word and is at least ``lex.min_word_length`` characters long.
    """
    return {tok for tok in tokens if lex.is_content(tok)}


@dataclass(frozen=True)
class SynonymLexicon:
    """Single-word synonym table: lowercase lemma to its distinct synonyms."""

    entries: Mapping[str, frozenset[str]]

    def __post_init__(self) -> None:
        for lemma, syns in self.entries.items():
            if lemma != lemma.lower():
                raise ValueError(f"synonym lemma not lowercase: {lemma!r}")
            if lemma in syns:
                raise ValueError(f"synonym entry maps {lemma!r} to itself")

    def synonyms(self, word: str) -> frozenset[str]:
        return self.entries.get(word, frozenset())


def load_synonyms(path: str) -> SynonymLexicon:
    """Parse a synonym table of tab-separated ``lemma<TAB>pos<TAB>syn1|syn2`` lines.

    Lines starting with '#' and blank lines are ignored. Lemmas and synonyms
    are lowercased, self-synonyms are dropped, and repeated lemmas take the
    union of their synonym sets. A line with fewer than 3 fields raises
    :class:`LexiconFormatError` with its line number.
    """
    entries: dict[str, set[str]] = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, 1):
            line = raw.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) < 3:
                raise LexiconFormatError(path, lineno, f"expected 3 tab-separated fields, got {len(fields)}")
            lemma = fields[0].strip().lower()
            if not lemma:
                raise LexiconFormatError(path, lineno, "empty lemma")
            syns = {s.strip().lower() for s in fields[2].split("|")}
            syns.discard("")
            syns.discard(lemma)
            if syns:
                entries.setdefault(lemma, set()).update(syns)
    return SynonymLexicon({lemma: frozenset(syns) for lemma, syns in entries.items()})


class PhraseMatch(NamedTuple):
    """One phrase-table hit: token span, replacement tokens, and its score."""

    start: int
    end: int
    paraphrase: tuple[str, ...]
    score: float


@dataclass(frozen=True)
class PpdbTable:
    """Phrase paraphrase table keyed by tokenized source phrase.

    ``entries`` maps a phrase (token tuple) to its paraphrases, each a
    ``(tokens, score)`` pair, sorted by score descending. ``skipped_rows``
    counts input rows dropped for a missing score feature and is excluded
    from equality.
    """

    entries: Mapping[tuple[str, ...], tuple[tuple[tuple[str, ...], float], ...]]
    max_phrase_length: int
    skipped_rows: int = field(default=0, compare=False)

    def __post_init__(self) -> None:
        if self.max_phrase_length < 1:
            raise ValueError("max_phrase_length must be a positive integer")
        for phrase, paraphrases in self.entries.items():
            if not 1 <= len(phrase) <= self.max_phrase_length:
                raise ValueError(f"phrase length out of range: {phrase!r}")
            scores = [score for _, score in paraphrases]
            if scores != sorted(scores, reverse=True):
                raise ValueError(f"paraphrases for {phrase!r} are not sorted by score")

    def to_lines(self) -> list[str]:
        """Serialize back to the six-field row format, one row per paraphrase."""
        lines = []
        for phrase in sorted(self.entries):
            for paraphrase, score in self.entries[phrase]:
                lines.append(
                    "[X] ||| {} ||| {} ||| PPDB2.0Score={!r} ||| 0-0 ||| Equivalence".format(
                        " ".join(phrase), " ".join(paraphrase), score
                    )
                )
        return lines


_PPDB_DELIMITER = " ||| "
_PPDB_SCORE_KEY = "PPDB2.0Score"


def load_ppdb(path: str, min_score: float = 3.0) -> PpdbTable:
    """Parse a six-field phrase table and keep high-scoring equivalents.

    Rows have the form ``LHS ||| phrase ||| paraphrase ||| features |||
    alignment ||| entailment``. A row is kept when its entailment field is
    ``Equivalence`` and its ``PPDB2.0Score`` feature (space-separated
    ``key=value`` list) is at least ``min_score``. Rows without the score
    feature are skipped and counted. Identical phrase/paraphrase pairs keep
    the maximum score. A line with fewer than six fields raises
    :class:`LexiconFormatError` with its line number.
    """
    best: dict[tuple[tuple[str, ...], tuple[str, ...]], float] = {}
    skipped = 0
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, 1):
            line = raw.rstrip("\n")
            fields = line.split(_PPDB_DELIMITER)
            if len(fields) < 6:
                raise LexiconFormatError(path, lineno, f"expected 6 '|||'-separated fields, got {len(fields)}")
            entailment = fields[5].strip()
            if entailment != "Equivalence":
                continue
            score = _extract_score(fields[3], path, lineno)
            if score is None:
                skipped += 1
                continue
            if score < min_score:
                continue
            phrase = tuple(tokenize(fields[1]))
            paraphrase = tuple(tokenize(fields[2]))
            if not phrase or not paraphrase:
                skipped += 1
                continue
            key = (phrase, paraphrase)
            if key not in best or score > best[key]:
                best[key] = score
    if skipped:
        logger.warning("%s: skipped %d phrase rows without a usable %s", path, skipped, _PPDB_SCORE_KEY)
    grouped: dict[tuple[str, ...], list[tuple[tuple[str, ...], float]]] = {}
    for (phrase, paraphrase), score in best.items():
        grouped.setdefault(phrase, []).append((paraphrase, score))
    entries = {
        phrase: tuple(sorted(plist, key=lambda item: (-item[1], item[0])))
        for phrase, plist in grouped.items()
    }
    max_len = max((len(phrase) for phrase in entries), default=1)
    return PpdbTable(entries=entries, max_phrase_length=max_len, skipped_rows=skipped)


def _extract_score(features: str, path: str, lineno: int) -> float | None:
    for item in features.split():
        if "=" not in item:
            continue
        key, _, value = item.partition("=")
        if key == _PPDB_SCORE_KEY:
            try:
                return float(value)
            except ValueError as exc:
                raise LexiconFormatError(path, lineno, f"bad {_PPDB_SCORE_KEY} value {value!r}") from exc
    return None


def match_phrases(tokens: Sequence[str], table: PpdbTable) -> list[PhraseMatch]:
    """Find phrase-table matches over a token sequence, leftmost-longest.

    Every start position is probed; at each start only the longest matching
    phrase is reported, with one :class:`PhraseMatch` per table paraphrase in
    score-descending order. Spans lie within the token sequence and at most
    one span starts at any position.
    """
    matches: list[PhraseMatch] = []
    n = len(tokens)
    for start in range(n):
        longest = min(table.max_phrase_length, n - start)
        for length in range(longest, 0, -1):
            phrase = tuple(tokens[start : start + length])
            paraphrases = table.entries.get(phrase)
            if paraphrases:
                for paraphrase, score in paraphrases:
                    matches.append(PhraseMatch(start, start + length, paraphrase, score))
                break
    return matches


@dataclass(frozen=True)
class LexiconSuite:
    """The lexical resources one pipeline run needs."""

    closed_class: ClosedClassLexicon
    synonyms: SynonymLexicon
    ppdb: PpdbTable

    @classmethod
    def packaged(cls) -> "LexiconSuite":
        return cls(
            closed_class=ClosedClassLexicon.default(),
            synonyms=load_synonyms(packaged_path("synonyms.tsv")),
            ppdb=load_ppdb(packaged_path("ppdb.txt")),
        )
