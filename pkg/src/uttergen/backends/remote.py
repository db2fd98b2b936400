"""HTTP clients for model backends served behind the JSON wire protocol."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Any, Sequence

import requests

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
from ..core import detokenize

__all__ = [
    "RemoteChunker",
    "RemoteConfig",
    "RemoteDetector",
    "RemoteEncoder",
    "RemoteFluencyScorer",
    "RemoteTranslator",
    "remote_suite",
]


@dataclass(frozen=True)
class RemoteConfig:
    """Connection settings for one remote backend service."""

    base_url: str
    timeout: float = 10.0
    retries: int = 3
    backoff: float = 0.25

    def __post_init__(self) -> None:
        if not self.base_url:
            raise ValueError("base_url must be non-empty")
        if self.retries < 0:
            raise ValueError("retries must be >= 0")


class _RemoteClient:
    """POSTs JSON payloads with retry on transient failures.

    All wire requests are pure model inference, hence idempotent: connection
    errors and 5xx responses are retried with exponential backoff up to the
    configured count, then reported as a backend-unavailable error. Non-200
    responses carrying an ``error`` body are surfaced verbatim; 4xx responses
    never retry.
    """

    def __init__(self, config: RemoteConfig) -> None:
        self._config = config
        self._root = config.base_url.rstrip("/")

    def post(self, path: str, payload: dict[str, Any]) -> dict[str, Any]:
        url = self._root + path
        last_error = ""
        for attempt in range(self._config.retries + 1):
            if attempt:
                time.sleep(self._config.backoff * (2 ** (attempt - 1)))
            try:
                response = requests.post(url, json=payload, timeout=self._config.timeout)
            except requests.RequestException as exc:
                last_error = str(exc)
                continue
            if response.status_code == 200:
                try:
                    body = response.json()
                except ValueError as exc:
                    raise BackendError(f"{url}: response is not JSON: {exc}") from exc
                if not isinstance(body, dict):
                    raise BackendError(f"{url}: expected a JSON object response")
                return body
            message = _error_message(response)
            if 400 <= response.status_code < 500:
                raise BackendError(f"{url}: {message}")
            last_error = message
        raise BackendError(
            f"backend unavailable after {self._config.retries + 1} attempts: {url}: {last_error}"
        )


def _error_message(response: requests.Response) -> str:
    try:
        body = response.json()
        if isinstance(body, dict) and isinstance(body.get("error"), str):
            return body["error"]
    except ValueError:
        pass
    return f"HTTP {response.status_code}"


class RemoteEncoder(Encoder):
    def __init__(self, config: RemoteConfig) -> None:
        self._client = _RemoteClient(config)

    def embed(self, texts: Sequence[str]) -> list[Embedding]:
        if not texts:
            return []
        body = self._client.post("/v1/embed", {"texts": list(texts)})
        vectors = body.get("vectors")
        dimension = body.get("dimension")
        if not isinstance(vectors, list) or len(vectors) != len(texts):
            raise BackendError("embed response must carry one vector per input text")
        if not isinstance(dimension, int) or dimension < 1:
            raise BackendError("embed response must carry a positive dimension")
        out = []
        for row in vectors:
            if not isinstance(row, list) or len(row) != dimension:
                raise BackendError("embed response vector does not match declared dimension")
            out.append(Embedding(tuple(float(v) for v in row)))
        return out


class RemoteTranslator(Translator):
    def __init__(self, config: RemoteConfig) -> None:
        self._client = _RemoteClient(config)

    def translate(self, text: str, source_lang: str, target_lang: str, n: int) -> list[str]:
        if n < 1:
            raise ValueError("n must be a positive integer")
        body = self._client.post(
            "/v1/translate",
            {"texts": [text], "source": source_lang, "target": target_lang, "n": n},
        )
        translations = body.get("translations")
        if not isinstance(translations, list) or len(translations) != 1:
            raise BackendError("translate response must carry one list per input text")
        row = translations[0]
        if not isinstance(row, list) or not all(isinstance(t, str) for t in row):
            raise BackendError("translate response rows must be lists of strings")
        return row[:n]


class RemoteDetector(Detector):
    def __init__(self, config: RemoteConfig) -> None:
        self._client = _RemoteClient(config)

    def probability(self, text_a: str, text_b: str) -> float:
        return self.probability_batch([(text_a, text_b)])[0]

    def probability_batch(self, pairs: Sequence[tuple[str, str]]) -> list[float]:
        if not pairs:
            return []
        body = self._client.post("/v1/detect", {"pairs": [[a, b] for a, b in pairs]})
        probabilities = body.get("probabilities")
        if not isinstance(probabilities, list) or len(probabilities) != len(pairs):
            raise BackendError("detect response must carry one probability per pair")
        out = []
        for value in probabilities:
            prob = float(value)
            if not 0.0 <= prob <= 1.0:
                raise BackendError(f"detector probability out of range: {prob}")
            out.append(prob)
        return out


class RemoteFluencyScorer(FluencyScorer):
    def __init__(self, config: RemoteConfig) -> None:
        self._client = _RemoteClient(config)

    def loss(self, text: str) -> float:
        return self.loss_batch([text])[0]

    def loss_batch(self, texts: Sequence[str]) -> list[float]:
        if not texts:
            return []
        body = self._client.post("/v1/fluency", {"texts": list(texts)})
        losses = body.get("losses")
        if not isinstance(losses, list) or len(losses) != len(texts):
            raise BackendError("fluency response must carry one loss per text")
        out = []
        for value in losses:
            loss = float(value)
            if loss < 0.0:
                raise BackendError(f"fluency loss must be >= 0: {loss}")
            out.append(loss)
        return out


class RemoteChunker(Chunker):
    def __init__(self, config: RemoteConfig) -> None:
        self._client = _RemoteClient(config)

    def phrases(self, tokens: Sequence[str]) -> list[Phrase]:
        if not tokens:
            return []
        body = self._client.post("/v1/chunk", {"text": detokenize(tokens), "tokens": list(tokens)})
        raw = body.get("phrases")
        if not isinstance(raw, list):
            raise BackendError("chunk response must carry a phrases list")
        phrases = []
        for item in raw:
            if not isinstance(item, dict):
                raise BackendError("chunk response phrases must be objects")
            try:
                start, end = int(item["start"]), int(item["end"])
                label = PhraseLabel(item["label"])
            except (KeyError, ValueError) as exc:
                raise BackendError(f"malformed phrase in chunk response: {item!r}") from exc
            if not 0 <= start < end <= len(tokens):
                raise BackendError(f"phrase span out of bounds: [{start}, {end})")
            phrases.append(Phrase(start, end, label))
        return phrases


def remote_suite(config: RemoteConfig) -> BackendSuite:
    """A full backend suite pointed at one wire-protocol service."""
    return BackendSuite(
        encoder=RemoteEncoder(config),
        translator=RemoteTranslator(config),
        detector=RemoteDetector(config),
        fluency_scorer=RemoteFluencyScorer(config),
        chunker=RemoteChunker(config),
    )
