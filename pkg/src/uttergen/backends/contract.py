"""Behavioral contract checks every backend suite must satisfy.

These checks are implementation-agnostic: they assert determinism, shapes,
value ranges, and error behavior, not specific model outputs, so the same
suite of checks runs against reference backends, a mocked remote service,
or a live model server.
"""

from __future__ import annotations

from typing import Sequence

from .base import BackendError, BackendSuite, PhraseLabel, cosine

__all__ = ["run_contract_checks", "DEFAULT_CHECK_TEXTS"]

DEFAULT_CHECK_TEXTS = (
    "Pay your bill online.",
    "How do I reset my password?",
    "Track the package.",
    "",
)


def run_contract_checks(
    suite: BackendSuite,
    texts: Sequence[str] = DEFAULT_CHECK_TEXTS,
    language_pair: tuple[str, str] = ("en", "de"),
) -> None:
    """Raise AssertionError on the first contract violation found."""
    _check_encoder(suite, texts)
    _check_translator(suite, texts, language_pair)
    _check_detector(suite, texts)
    _check_fluency(suite, texts)
    _check_chunker(suite)


def _check_encoder(suite: BackendSuite, texts: Sequence[str]) -> None:
    first = suite.encoder.embed(list(texts))
    second = suite.encoder.embed(list(texts))
    assert len(first) == len(texts), "encoder must return one embedding per text"
    assert first == second, "encoder must be deterministic across calls"
    dimensions = {e.dimension for e in first}
    assert len(dimensions) == 1, f"encoder dimension must be constant, saw {dimensions}"
    for text, emb in zip(texts, first):
        self_sim = cosine(emb, emb)
        if any(v != 0.0 for v in emb.values):
            assert abs(self_sim - 1.0) <= 1e-6, f"cosine(x, x) must be 1 for {text!r}, got {self_sim}"
        else:
            assert self_sim == 0.0, "zero vector must have zero self-similarity"
    for a in first:
        for b in first:
            assert -1.0 <= cosine(a, b) <= 1.0, "cosine must stay within [-1, 1]"


def _check_translator(
    suite: BackendSuite, texts: Sequence[str], language_pair: tuple[str, str]
) -> None:
    source, target = language_pair
    for text in texts:
        if not text:
            continue
        for n in (1, 3):
            first = suite.translator.translate(text, source, target, n)
            second = suite.translator.translate(text, source, target, n)
            assert first == second, "translator must be deterministic across calls"
            assert len(first) <= n, f"translator returned more than n={n} outputs"
            assert len(set(first)) == len(first), "translator outputs must be distinct"
            assert all(isinstance(t, str) for t in first)
    try:
        suite.translator.translate("hello", "zz", "qq", 1)
    except BackendError as exc:
        message = str(exc)
        assert "zz" in message and "qq" in message, "unknown-pair error must name the pair"
    else:
        raise AssertionError("translator must reject an unknown language pair")


def _check_detector(suite: BackendSuite, texts: Sequence[str]) -> None:
    for text in texts:
        if not text:
            continue
        identical = suite.detector.probability(text, text)
        assert 0.0 <= identical <= 1.0, "detector probability must lie in [0, 1]"
        assert identical >= 0.99, f"identical pair must score >= 0.99, got {identical}"
    pairs = [(a, b) for a in texts for b in texts if a and b]
    if pairs:
        batched = suite.detector.probability_batch(pairs)
        assert len(batched) == len(pairs), "detector batch must return one probability per pair"
        singles = [suite.detector.probability(a, b) for a, b in pairs]
        assert batched == singles, "batch and single detector calls must agree"
        assert all(0.0 <= p <= 1.0 for p in batched)


def _check_fluency(suite: BackendSuite, texts: Sequence[str]) -> None:
    losses = suite.fluency_scorer.loss_batch(list(texts))
    assert len(losses) == len(texts), "fluency batch must return one loss per text"
    assert all(loss >= 0.0 for loss in losses), "fluency losses must be non-negative"
    singles = [suite.fluency_scorer.loss(t) for t in texts]
    assert losses == singles, "batch and single fluency calls must agree"
    assert suite.fluency_scorer.loss(texts[0]) == losses[0], "fluency must be deterministic"


def _check_chunker(suite: BackendSuite) -> None:
    tokens = ["pay", "the", "bill", "and", "check", "the", "amount", "."]
    first = suite.chunker.phrases(tokens)
    second = suite.chunker.phrases(tokens)
    assert first == second, "chunker must be deterministic across calls"
    for phrase in first:
        assert 0 <= phrase.start < phrase.end <= len(tokens), "phrase spans must be in bounds"
        assert phrase.label in (PhraseLabel.NP, PhraseLabel.VP)
    for label in (PhraseLabel.NP, PhraseLabel.VP):
        spans = sorted((p.start, p.end) for p in first if p.label is label)
        for (s1, e1), (s2, e2) in zip(spans, spans[1:]):
            assert e1 <= s2, f"{label.value} spans must not overlap"
    assert suite.chunker.phrases([]) == [], "empty token list must yield no phrases"
