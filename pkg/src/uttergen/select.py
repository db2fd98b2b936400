"""Candidate selection: filtering, tie-break scoring, and two deduplication passes."""

from __future__ import annotations

from dataclasses import replace
from typing import Sequence

from .backends import BackendSuite, Detector, Embedding, Encoder, FluencyScorer, cosine
from .core import (
    Candidate,
    FilterMode,
    ScoredCandidate,
    SelectionConfig,
    SourceSentence,
    fold_text,
    tokenize,
)
from .lexicon import ClosedClassLexicon, LexiconSuite, content_words

__all__ = [
    "dedup_embedding",
    "dedup_words",
    "filter_detector",
    "filter_encoder",
    "select_candidates",
    "tiebreak_scores",
]


def _similarities(
    texts: Sequence[str], source: SourceSentence, encoder: Encoder
) -> list[float]:
    embeddings = encoder.embed([source.text, *texts])
    source_embedding = embeddings[0]
    return [cosine(embedding, source_embedding) for embedding in embeddings[1:]]


def filter_encoder(
    pool: Sequence[Candidate],
    source: SourceSentence,
    encoder: Encoder,
    cfg: SelectionConfig,
) -> list[ScoredCandidate]:
    """Keep candidates whose similarity to the input lies in the kept band.

    A candidate survives when ``low_threshold <= sim <= dup_threshold``:
    below the band it no longer means the same thing, above it it is a
    near-copy. Survivors come back in input order, annotated with their
    encoder similarity.
    """
    if not pool:
        return []
    sims = _similarities([c.text for c in pool], source, encoder)
    return [
        ScoredCandidate(candidate=candidate, encoder_similarity=sim)
        for candidate, sim in zip(pool, sims)
        if cfg.low_threshold <= sim <= cfg.dup_threshold
    ]


def filter_detector(
    pool: Sequence[Candidate],
    source: SourceSentence,
    detector: Detector,
    encoder: Encoder,
    cfg: SelectionConfig,
) -> list[ScoredCandidate]:
    """Keep candidates the paraphrase detector accepts.

    A candidate survives when its paraphrase probability is at least
    ``detector_threshold`` and its encoder similarity to the input does not
    exceed ``dup_threshold`` (the near-copy guard stays active in this mode).
    Survivors come back in input order, annotated with encoder similarity.
    """
    if not pool:
        return []
    probabilities = detector.probability_batch([(source.text, c.text) for c in pool])
    sims = _similarities([c.text for c in pool], source, encoder)
    return [
        ScoredCandidate(candidate=candidate, encoder_similarity=sim)
        for candidate, prob, sim in zip(pool, probabilities, sims)
        if prob >= cfg.detector_threshold and sim <= cfg.dup_threshold
    ]


def _min_max_normalize(values: Sequence[float]) -> list[float]:
    low, high = min(values), max(values)
    if high == low:
        return [0.5] * len(values)
    return [(v - low) / (high - low) for v in values]


def tiebreak_scores(
    pool: Sequence[Candidate | ScoredCandidate],
    source: SourceSentence,
    encoder: Encoder,
    fluency_scorer: FluencyScorer,
) -> list[ScoredCandidate]:
    """Attach fluency losses and the combined tie-break score to a pool.

    The tie-break score is the arithmetic mean of two values min-max
    normalized over the pool: encoder similarity, and fluency goodness
    (one minus the normalized loss). A constant column normalizes to 0.5
    everywhere. Items already annotated with encoder similarity keep it;
    bare candidates are embedded here. Output order matches input order.
    """
    if not pool:
        raise ValueError("tie-break scoring needs a non-empty pool")
    scored: list[ScoredCandidate] = []
    bare_positions = [i for i, item in enumerate(pool) if not isinstance(item, ScoredCandidate)]
    if bare_positions:
        sims = _similarities([pool[i].text for i in bare_positions], source, encoder)
        by_position = dict(zip(bare_positions, sims))
    else:
        by_position = {}
    for i, item in enumerate(pool):
        if isinstance(item, ScoredCandidate):
            scored.append(item)
        else:
            scored.append(ScoredCandidate(candidate=item, encoder_similarity=by_position[i]))
    losses = fluency_scorer.loss_batch([sc.candidate.text for sc in scored])
    norm_sims = _min_max_normalize([sc.encoder_similarity for sc in scored])
    norm_goodness = [1.0 - v for v in _min_max_normalize(losses)]
    return [
        replace(sc, fluency_loss=loss, tiebreak=(ns + ng) / 2.0)
        for sc, loss, ns, ng in zip(scored, losses, norm_sims, norm_goodness)
    ]


def _ranked(pool: Sequence[ScoredCandidate]) -> list[ScoredCandidate]:
    return sorted(
        pool,
        key=lambda sc: (-sc.encoder_similarity, -sc.tiebreak, fold_text(sc.candidate.text)),
    )


def dedup_embedding(
    pool: Sequence[ScoredCandidate],
    source: SourceSentence,
    encoder: Encoder,
    cfg: SelectionConfig,
) -> list[ScoredCandidate]:
    """Greedy near-duplicate removal in embedding space.

    Candidates are visited by encoder similarity descending (ties: tie-break
    score descending, then case-folded text ascending). A candidate is
    selected iff its cosine to every already-selected candidate is at most
    ``dup_threshold`` and its own similarity to the input is strictly below
    ``dup_threshold``. Returns the selected candidates in selection order;
    no selected pair exceeds ``dup_threshold``.
    """
    if not pool:
        return []
    ordered = _ranked(pool)
    embeddings = encoder.embed([sc.candidate.text for sc in ordered])
    selected: list[ScoredCandidate] = []
    selected_embeddings: list[Embedding] = []
    for sc, embedding in zip(ordered, embeddings):
        if sc.encoder_similarity >= cfg.dup_threshold:
            continue
        if all(cosine(embedding, kept) <= cfg.dup_threshold for kept in selected_embeddings):
            selected.append(sc)
            selected_embeddings.append(embedding)
    return selected


def dedup_words(
    pool: Sequence[ScoredCandidate],
    source: SourceSentence,
    lex: ClosedClassLexicon,
    cfg: SelectionConfig,
) -> list[ScoredCandidate]:
    """Greedy selection by content-word novelty.

    Starting from the input's content words, repeatedly pick the candidate
    contributing the most content words not seen yet (ties: higher tie-break
    score, then case-folded text ascending) and absorb its words. Stops at
    ``k`` selections, or at zero novelty unless ``allow_zero_novelty`` is
    set, in which case zero-novelty candidates fill up to ``k`` in tie-break
    order.
    """
    wordset = content_words(tokenize(source.text), lex)
    remaining = list(pool)
    selected: list[ScoredCandidate] = []
    while remaining and len(selected) < cfg.k:
        best_index = -1
        best_key: tuple[int, float, str] | None = None
        for i, sc in enumerate(remaining):
            novelty = len(content_words(tokenize(sc.candidate.text), lex) - wordset)
            key = (-novelty, -sc.tiebreak, fold_text(sc.candidate.text))
            if best_key is None or key < best_key:
                best_key = key
                best_index = i
        novelty = -best_key[0]
        if novelty == 0 and not cfg.allow_zero_novelty:
            break
        chosen = remaining.pop(best_index)
        selected.append(chosen)
        wordset |= content_words(tokenize(chosen.candidate.text), lex)
    return selected


def select_candidates(
    pool: Sequence[Candidate],
    source: SourceSentence,
    backends: BackendSuite,
    lexicons: LexiconSuite,
    cfg: SelectionConfig,
    stats: dict[str, int] | None = None,
) -> list[ScoredCandidate]:
    """Filter, score, and deduplicate a candidate pool down to at most k.

    Composition: the configured filter, then tie-break scoring, then
    embedding-space deduplication, then word-novelty deduplication. Empty
    results are valid at every stage. When ``stats`` is given it receives
    the intermediate stage sizes.
    """
    if stats is not None:
        stats["pool"] = len(pool)
        stats["filtered"] = 0
        stats["after_embedding_dedup"] = 0
    if not pool:
        return []
    if cfg.filter_mode is FilterMode.ENCODER:
        filtered = filter_encoder(pool, source, backends.encoder, cfg)
    else:
        filtered = filter_detector(pool, source, backends.detector, backends.encoder, cfg)
    if stats is not None:
        stats["filtered"] = len(filtered)
    if not filtered:
        return []
    scored = tiebreak_scores(filtered, source, backends.encoder, backends.fluency_scorer)
    deduped = dedup_embedding(scored, source, backends.encoder, cfg)
    if stats is not None:
        stats["after_embedding_dedup"] = len(deduped)
    return dedup_words(deduped, source, lexicons.closed_class, cfg)[: cfg.k]
