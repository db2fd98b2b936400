"""Deterministic reference backends built on packaged word lists and tables."""

from __future__ import annotations

import hashlib
import math
from typing import Mapping, Sequence

from ..core import detokenize, tokenize
from ..lexicon import ClosedClassLexicon, content_words, load_wordlist, packaged_path
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
)

__all__ = [
    "HashedBowEncoder",
    "JaccardDetector",
    "RuleChunker",
    "TableTranslator",
    "UnigramFluencyScorer",
    "load_frequency_table",
    "load_translation_table",
    "reference_suite",
]

DEFAULT_ENCODER_DIM = 256
DEFAULT_ENCODER_SEED = "uttergen-encoder-v1"


class HashedBowEncoder(Encoder):
    """Hashed bag-of-content-words encoder.

    Each content token (multiplicity preserved) is hashed with a keyed stable
    64-bit hash onto one of ``dim`` buckets; the bucket-count vector is
    L2-normalized. A text without content tokens maps to the zero vector.
    Identical text always yields an identical vector, on every platform.
    """

    def __init__(
        self,
        dim: int = DEFAULT_ENCODER_DIM,
        seed: str = DEFAULT_ENCODER_SEED,
        lexicon: ClosedClassLexicon | None = None,
    ) -> None:
        if dim < 1:
            raise ValueError("encoder dimension must be positive")
        self.dim = dim
        self._key = seed.encode("utf-8")[:64]
        self._lexicon = lexicon or ClosedClassLexicon.default()

    def _bucket(self, token: str) -> int:
        digest = hashlib.blake2b(token.encode("utf-8"), digest_size=8, key=self._key).digest()
        return int.from_bytes(digest, "big") % self.dim

    def embed(self, texts: Sequence[str]) -> list[Embedding]:
        out = []
        for text in texts:
            counts = [0.0] * self.dim
            for token in tokenize(text):
                if self._lexicon.is_content(token):
                    counts[self._bucket(token)] += 1.0
            norm = math.sqrt(math.fsum(c * c for c in counts))
            if norm > 0.0:
                counts = [c / norm for c in counts]
            out.append(Embedding(tuple(counts)))
        return out


def load_translation_table(path: str) -> dict[str, tuple[str, ...]]:
    """Load a ``word<TAB>alt1|alt2`` substitution table; '#' starts a comment."""
    table: dict[str, tuple[str, ...]] = {}
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            line = line.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            word, _, alts = line.partition("\t")
            alternatives = tuple(a.strip().lower() for a in alts.split("|") if a.strip())
            if word.strip() and alternatives:
                table[word.strip().lower()] = alternatives
    return table


class TableTranslator(Translator):
    """Word-substitution translator driven by per-language-pair tables.

    Variant ``i`` replaces every table word with its ``i``-th alternative
    (entries with fewer alternatives keep their last one), so ambiguous
    entries fan out into distinct outputs while unknown words pass through
    unchanged. Up to ``n`` distinct outputs are returned in variant order.
    """

    def __init__(self, tables: Mapping[tuple[str, str], Mapping[str, Sequence[str]]]) -> None:
        self._tables = {pair: dict(table) for pair, table in tables.items()}

    @classmethod
    def default(cls) -> "TableTranslator":
        return cls(
            {
                ("en", "de"): load_translation_table(packaged_path("translations_en_de.tsv")),
                ("de", "en"): load_translation_table(packaged_path("translations_de_en.tsv")),
            }
        )

    def translate(self, text: str, source_lang: str, target_lang: str, n: int) -> list[str]:
        if n < 1:
            raise ValueError("n must be a positive integer")
        table = self._tables.get((source_lang, target_lang))
        if table is None:
            raise BackendError(f"no translation table for language pair {source_lang}->{target_lang}")
        tokens = tokenize(text)
        fanout = max((len(table[tok]) for tok in tokens if tok in table), default=1)
        outputs: list[str] = []
        seen: set[str] = set()
        for variant in range(fanout):
            replaced = [
                table[tok][min(variant, len(table[tok]) - 1)] if tok in table else tok
                for tok in tokens
            ]
            candidate = detokenize(replaced)
            if candidate not in seen:
                seen.add(candidate)
                outputs.append(candidate)
            if len(outputs) >= n:
                break
        return outputs


class JaccardDetector(Detector):
    """Paraphrase probability as Jaccard overlap of content-word sets."""

    def __init__(self, lexicon: ClosedClassLexicon | None = None) -> None:
        self._lexicon = lexicon or ClosedClassLexicon.default()

    def probability(self, text_a: str, text_b: str) -> float:
        words_a = content_words(tokenize(text_a), self._lexicon)
        words_b = content_words(tokenize(text_b), self._lexicon)
        if not words_a and not words_b:
            return 1.0
        union = words_a | words_b
        return len(words_a & words_b) / len(union)


def load_frequency_table(path: str) -> dict[str, int]:
    """Load a ``word<TAB>count`` unigram frequency file."""
    counts: dict[str, int] = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, 1):
            line = line.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            word, _, count = line.partition("\t")
            try:
                counts[word.strip().lower()] = int(count)
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: bad frequency count {count!r}") from exc
    return counts


class UnigramFluencyScorer(FluencyScorer):
    """Mean negative log unigram probability with add-one smoothing, in nats.

    Probabilities come from a fixed frequency table; one extra vocabulary
    slot absorbs unseen words. Empty text scores 0.0.
    """

    def __init__(self, frequencies: Mapping[str, int] | None = None) -> None:
        if frequencies is None:
            frequencies = load_frequency_table(packaged_path("word_frequencies.txt"))
        self._counts = dict(frequencies)
        total = sum(self._counts.values())
        vocab = len(self._counts) + 1
        self._denominator = float(total + vocab)

    def loss(self, text: str) -> float:
        tokens = tokenize(text)
        if not tokens:
            return 0.0
        log_probs = [
            math.log((self._counts.get(tok, 0) + 1) / self._denominator) for tok in tokens
        ]
        return -math.fsum(log_probs) / len(tokens)


class RuleChunker(Chunker):
    """Rule-based shallow chunker over lowercased tokens.

    Noun phrases are maximal runs of content-bearing tokens (not stopwords,
    closed-class words, listed verbs, or punctuation), extended left by one
    determiner when directly preceded by one. A verb phrase is a listed verb
    together with the noun phrase starting right after it. Within each label
    spans never overlap; the scan is deterministic left to right. Noun
    phrases are reported first, then verb phrases, each left to right.
    """

    def __init__(
        self,
        verbs: frozenset[str] | None = None,
        determiners: frozenset[str] | None = None,
        lexicon: ClosedClassLexicon | None = None,
    ) -> None:
        self._verbs = verbs if verbs is not None else load_wordlist(packaged_path("verbs.txt"))
        self._determiners = (
            determiners if determiners is not None else load_wordlist(packaged_path("determiners.txt"))
        )
        self._lexicon = lexicon or ClosedClassLexicon.default()

    def _np_eligible(self, token: str) -> bool:
        if not any(ch.isalnum() for ch in token):
            return False
        if token in self._verbs:
            return False
        return token not in self._lexicon.stopwords and token not in self._lexicon.closed_class

    def phrases(self, tokens: Sequence[str]) -> list[Phrase]:
        noun_phrases: list[Phrase] = []
        i, n = 0, len(tokens)
        while i < n:
            if self._np_eligible(tokens[i]):
                j = i + 1
                while j < n and self._np_eligible(tokens[j]):
                    j += 1
                start = i
                if i > 0 and tokens[i - 1] in self._determiners:
                    start = i - 1
                noun_phrases.append(Phrase(start, j, PhraseLabel.NP))
                i = j
            else:
                i += 1
        np_by_start = {phrase.start: phrase for phrase in noun_phrases}
        verb_phrases = [
            Phrase(i, np_by_start[i + 1].end, PhraseLabel.VP)
            for i, token in enumerate(tokens)
            if token in self._verbs and i + 1 in np_by_start
        ]
        return noun_phrases + verb_phrases


def reference_suite(lexicon: ClosedClassLexicon | None = None) -> BackendSuite:
    """A full suite of reference backends on the packaged resources."""
    lexicon = lexicon or ClosedClassLexicon.default()
    return BackendSuite(
        encoder=HashedBowEncoder(lexicon=lexicon),
        translator=TableTranslator.default(),
        detector=JaccardDetector(lexicon=lexicon),
        fluency_scorer=UnigramFluencyScorer(),
        chunker=RuleChunker(lexicon=lexicon),
    )
