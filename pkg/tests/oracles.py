"""Independent brute-force reimplementations used to cross-check the package.

Everything here is written from the documented behaviour alone, with
deliberately different code structure (string-keyed n-gram dicts, repeated
argmax scans, plain ``sum`` arithmetic) so that a shared bug with the main
implementation is unlikely.
"""

from __future__ import annotations

import math
from typing import Callable, Sequence


def cosine_oracle(a: Sequence[float], b: Sequence[float]) -> float:
    if len(a) != len(b):
        raise ValueError("length mismatch")
    dot = 0.0
    na = 0.0
    nb = 0.0
    for x, y in zip(a, b):
        dot += x * y
        na += x * x
        nb += y * y
    if na == 0.0 or nb == 0.0:
        return 0.0
    value = dot / (math.sqrt(na) * math.sqrt(nb))
    return max(-1.0, min(1.0, value))


# ---------------------------------------------------------------------------
# BLEU


def _ngram_strings(tokens: Sequence[str], n: int) -> dict[str, int]:
    counts: dict[str, int] = {}
    for i in range(len(tokens) - n + 1):
        key = "\x00".join(tokens[i : i + n])
        counts[key] = counts.get(key, 0) + 1
    return counts


def bleu_oracle(
    candidate_tokens: Sequence[str],
    reference_token_lists: Sequence[Sequence[str]],
    max_n: int = 4,
) -> float:
    """Sentence BLEU recomputed with dict bookkeeping and explicit loops."""
    if not reference_token_lists:
        raise ValueError("no references")
    if not candidate_tokens:
        return 0.0

    matches = []
    totals = []
    for n in range(1, max_n + 1):
        cand = _ngram_strings(candidate_tokens, n)
        clipped = 0
        for key, count in cand.items():
            best = 0
            for ref in reference_token_lists:
                ref_count = _ngram_strings(ref, n).get(key, 0)
                if ref_count > best:
                    best = ref_count
            clipped += min(count, best)
        matches.append(clipped)
        totals.append(max(len(candidate_tokens) - n + 1, 0))

    if matches[0] == 0:
        return 0.0
    needs_smoothing = False
    for m in matches[1:]:
        if m == 0:
            needs_smoothing = True
    log_sum = math.log(matches[0] / totals[0])
    for m, t in zip(matches[1:], totals[1:]):
        if needs_smoothing:
            log_sum += math.log((m + 1) / (t + 1))
        else:
            log_sum += math.log(m / t)

    c = len(candidate_tokens)
    best_r = None
    for ref in reference_token_lists:
        r = len(ref)
        if best_r is None or (abs(r - c), r) < (abs(best_r - c), best_r):
            best_r = r
    if c > best_r:
        bp = 1.0
    else:
        bp = math.exp(1.0 - best_r / c)
    return bp * math.exp(log_sum / max_n)


# ---------------------------------------------------------------------------
# Selection-stage oracles. Pool items are plain tuples so the oracle shares
# no dataclass code with the package:
#   (text, similarity, tiebreak, vector)


def filter_band_oracle(
    sims: Sequence[float], low: float, high: float
) -> list[int]:
    kept = []
    for i, s in enumerate(sims):
        if s >= low and s <= high:
            kept.append(i)
    return kept


def tiebreak_oracle(sims: Sequence[float], losses: Sequence[float]) -> list[float]:
    def norm(values: Sequence[float]) -> list[float]:
        lo = min(values)
        hi = max(values)
        if hi == lo:
            return [0.5] * len(values)
        return [(v - lo) / (hi - lo) for v in values]

    ns = norm(sims)
    nf = [1.0 - v for v in norm(losses)]
    return [(a + b) / 2.0 for a, b in zip(ns, nf)]


def dedup_embedding_oracle(
    items: Sequence[tuple[str, float, float, Sequence[float]]],
    dup_threshold: float,
) -> list[int]:
    """Repeated-argmax replay of the embedding dedup scan.

    Returns indices into ``items`` in selection order.
    """
    remaining = list(range(len(items)))
    selected: list[int] = []
    kept_vectors: list[Sequence[float]] = []
    while remaining:
        best = None
        for i in remaining:
            text, sim, tiebreak, _ = items[i]
            key = (-sim, -tiebreak, text)
            if best is None or key < best_key:
                best = i
                best_key = key
        remaining.remove(best)
        text, sim, tiebreak, vector = items[best]
        if sim >= dup_threshold:
            continue
        near_duplicate = False
        for kept in kept_vectors:
            if cosine_oracle(vector, kept) > dup_threshold:
                near_duplicate = True
        if not near_duplicate:
            selected.append(best)
            kept_vectors.append(vector)
    return selected


def dedup_words_oracle(
    items: Sequence[tuple[str, float, float]],
    input_words: frozenset[str],
    k: int,
    allow_zero_novelty: bool,
    words_of: Callable[[str], frozenset[str]],
) -> list[int]:
    """Step replay of the greedy word-novelty selection.

    ``items`` are (text, similarity, tiebreak); ``words_of`` maps a text to
    its content-word set. Returns indices into ``items`` in selection order.
    """
    covered = set(input_words)
    remaining = list(range(len(items)))
    selected: list[int] = []
    while remaining and len(selected) < k:
        best = None
        for i in remaining:
            text, _, tiebreak = items[i]
            novelty = len(words_of(text) - covered)
            key = (-novelty, -tiebreak, text)
            if best is None or key < best_key:
                best = i
                best_key = key
        best_novelty = -best_key[0]
        if best_novelty == 0 and not allow_zero_novelty:
            break
        remaining.remove(best)
        selected.append(best)
        covered |= words_of(items[best][0])
    return selected
