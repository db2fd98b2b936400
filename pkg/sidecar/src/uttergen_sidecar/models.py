"""Built-in deterministic model family.

Every model here is a pure function of its inputs: no sampling, no state
mutated across calls, so repeated requests return identical results and
handlers can run concurrently without locks. The implementations are
intentionally small stand-ins with the same interface shape as real
checkpoints; swapping in heavier models is a registry entry, not a code
change elsewhere.
"""

from __future__ import annotations

import hashlib
import itertools
import math
import re
from typing import Sequence

__all__ = [
    "BagHashEncoder",
    "CharFrequencyFluency",
    "OverlapDetector",
    "RuleBasedChunker",
    "MiniTableTranslator",
    "UnknownLanguagePair",
]

_WORD_RE = re.compile(r"[a-z0-9']+")


def _words(text: str) -> list[str]:
    return _WORD_RE.findall(text.lower())


class BagHashEncoder:
    """Hashed bag-of-words sentence vectors, L2-normalized.

    Buckets come from SHA-256 of each word, so vectors are identical across
    processes and platforms. A text with no word characters maps to the
    zero vector.
    """

    def __init__(self, dim: int = 384) -> None:
        if dim < 1:
            raise ValueError("encoder dimension must be positive")
        self.dim = dim

    def _bucket(self, word: str) -> int:
        digest = hashlib.sha256(word.encode("utf-8")).digest()
        return int.from_bytes(digest[:8], "big") % self.dim

    def embed(self, texts: Sequence[str]) -> list[list[float]]:
        out = []
        for text in texts:
            counts = [0.0] * self.dim
            for word in _words(text):
                counts[self._bucket(word)] += 1.0
            norm = math.sqrt(math.fsum(v * v for v in counts))
            if norm > 0.0:
                counts = [v / norm for v in counts]
            out.append(counts)
        return out


class UnknownLanguagePair(ValueError):
    """Requested a language pair no loaded table covers."""


# Word-level tables with alternatives; variant k walks the cartesian product
# of per-word choices in a fixed order, so beams are stable across calls.
_EN_DE = {
    "pay": ["bezahlen", "begleichen"],
    "settle": ["begleichen"],
    "your": ["deine", "ihre"],
    "my": ["meine"],
    "the": ["die"],
    "a": ["eine"],
    "bill": ["rechnung"],
    "invoice": ["rechnung", "faktura"],
    "order": ["bestellung"],
    "package": ["paket"],
    "password": ["passwort", "kennwort"],
    "online": ["online"],
    "now": ["jetzt"],
    "how": ["wie"],
    "do": ["kann"],
    "i": ["ich"],
    "reset": ["zuruecksetzen"],
    "track": ["verfolgen"],
    "cancel": ["stornieren"],
}
_DE_EN = {
    "bezahlen": ["pay"],
    "begleichen": ["settle", "pay"],
    "deine": ["your"],
    "ihre": ["your"],
    "meine": ["my"],
    "die": ["the"],
    "eine": ["a"],
    "rechnung": ["bill", "invoice"],
    "faktura": ["invoice"],
    "bestellung": ["order"],
    "paket": ["package"],
    "passwort": ["password"],
    "kennwort": ["password"],
    "online": ["online"],
    "jetzt": ["now"],
    "wie": ["how"],
    "kann": ["can"],
    "ich": ["i"],
    "zuruecksetzen": ["reset"],
    "verfolgen": ["track", "follow"],
    "stornieren": ["cancel"],
}
_SUFFIX_CHARS = ".,!?;:"


class MiniTableTranslator:
    """Word-substitution translation with a deterministic beam fan-out."""

    def __init__(self) -> None:
        self._tables = {("en", "de"): _EN_DE, ("de", "en"): _DE_EN}

    def translate(self, text: str, source: str, target: str, n: int) -> list[str]:
        if n < 1:
            raise ValueError("n must be a positive integer")
        table = self._tables.get((source, target))
        if table is None:
            raise UnknownLanguagePair(
                f"no model for language pair {source}->{target}"
            )
        choice_lists: list[list[str]] = []
        for raw in text.split():
            word = raw.lower()
            suffix = ""
            while word and word[-1] in _SUFFIX_CHARS:
                suffix = word[-1] + suffix
                word = word[:-1]
            options = table.get(word, [word]) if word else [""]
            choice_lists.append([option + suffix for option in options])
        if not choice_lists:
            return []
        seen: dict[str, None] = {}
        for combo in itertools.product(*choice_lists):
            seen.setdefault(" ".join(combo), None)
            if len(seen) >= n:
                break
        return list(seen)[:n]


class OverlapDetector:
    """Dice coefficient over word sets as a paraphrase probability."""

    def probability_batch(self, pairs: Sequence[tuple[str, str]]) -> list[float]:
        out = []
        for a, b in pairs:
            set_a, set_b = set(_words(a)), set(_words(b))
            if not set_a and not set_b:
                out.append(1.0)
                continue
            out.append(2.0 * len(set_a & set_b) / (len(set_a) + len(set_b)))
        return out


# Per-mille letter frequencies in running English text; everything else
# shares a small floor so losses stay finite and non-negative.
_LETTER_FREQ = {
    "e": 127, "t": 91, "a": 82, "o": 75, "i": 70, "n": 67, "s": 63,
    "h": 61, "r": 60, "d": 43, "l": 40, "c": 28, "u": 28, "m": 24,
    "w": 24, "f": 22, "g": 20, "y": 20, "p": 19, "b": 15, "v": 10,
    "k": 8, "j": 2, "x": 2, "q": 1, "z": 1, " ": 180,
}
_FREQ_TOTAL = sum(_LETTER_FREQ.values())
_FREQ_FLOOR = 0.5


class CharFrequencyFluency:
    """Mean per-character surprisal under a fixed letter-frequency model."""

    def loss_batch(self, texts: Sequence[str]) -> list[float]:
        out = []
        for text in texts:
            chars = text.lower()
            if not chars:
                out.append(0.0)
                continue
            total = 0.0
            for ch in chars:
                count = _LETTER_FREQ.get(ch, _FREQ_FLOOR)
                total += -math.log(count / (_FREQ_TOTAL + _FREQ_FLOOR))
            out.append(total / len(chars))
        return out


_DETERMINERS = {
    "the", "a", "an", "your", "my", "his", "her", "their", "our",
    "this", "that", "these", "those", "its",
}
_VERBS = {
    "pay", "check", "cancel", "reset", "track", "open", "choose", "call",
    "update", "activate", "request", "confirm", "refund", "restart",
    "change", "increase", "see", "settle", "follow", "close", "pick",
    "review", "submit", "verify",
}
_MAX_NP_TOKENS = 4


class RuleBasedChunker:
    """Shallow determiner/verb rules producing non-overlapping NP/VP spans.

    An NP is a determiner plus the following run of plain words (neither
    verbs nor determiners), capped in length; a VP is a verb immediately
    followed by an NP. One left-to-right pass per label keeps spans of the
    same label disjoint.
    """

    def phrases(self, tokens: Sequence[str]) -> list[dict]:
        lowered = [t.lower() for t in tokens]
        noun_phrases: list[tuple[int, int]] = []
        i = 0
        while i < len(lowered):
            if lowered[i] in _DETERMINERS:
                j = i + 1
                while (
                    j < len(lowered)
                    and j - i < _MAX_NP_TOKENS
                    and _WORD_RE.fullmatch(lowered[j])
                    and lowered[j] not in _VERBS
                    and lowered[j] not in _DETERMINERS
                ):
                    j += 1
                if j > i + 1:
                    noun_phrases.append((i, j))
                    i = j
                    continue
            i += 1
        verb_phrases = [
            (i, end)
            for i, word in enumerate(lowered)
            if word in _VERBS
            for start, end in noun_phrases
            if start == i + 1
        ]
        spans = [
            {"start": start, "end": end, "label": "NP"} for start, end in noun_phrases
        ]
        spans.extend(
            {"start": start, "end": end, "label": "VP"} for start, end in verb_phrases
        )
        return spans
