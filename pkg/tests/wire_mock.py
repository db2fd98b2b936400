"""In-process HTTP stand-in for a model service speaking the /v1/* protocol.

Routes are backed by the reference backends. Every successful exchange is
recorded so tests can validate the traffic against the protocol schema, and
fault injection knobs simulate transient failures, client errors, and
responses that break the protocol.
"""

from __future__ import annotations

import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from typing import Any, Callable

from uttergen.backends import BackendError, BackendSuite, reference_suite

MODEL_NAMES = {
    "encoder": "hashed-bow",
    "translator": "table",
    "detector": "jaccard",
    "fluency": "unigram",
    "chunker": "rule",
}


class WireMock:
    def __init__(self, suite: BackendSuite | None = None) -> None:
        self.suite = suite or reference_suite()
        self.lock = threading.Lock()
        self.request_counts: dict[str, int] = {}
        # fail_next / reject_next: path -> how many upcoming requests get a
        # 500 / 400 before normal service resumes.
        self.fail_next: dict[str, int] = {}
        self.reject_next: dict[str, int] = {}
        self.mangle: dict[str, Callable[[dict], dict]] = {}
        self.interactions: list[tuple[str, Any, Any]] = []
        self._server = ThreadingHTTPServer(("127.0.0.1", 0), _Handler)
        self._server.mock = self  # type: ignore[attr-defined]
        self._thread = threading.Thread(target=self._server.serve_forever, daemon=True)

    @property
    def base_url(self) -> str:
        host, port = self._server.server_address[:2]
        return f"http://{host}:{port}"

    def start(self) -> "WireMock":
        self._thread.start()
        return self

    def stop(self) -> None:
        self._server.shutdown()
        self._server.server_close()
        self._thread.join(timeout=5)


class _Handler(BaseHTTPRequestHandler):
    def log_message(self, fmt: str, *args: Any) -> None:
        pass

    @property
    def mock(self) -> WireMock:
        return self.server.mock  # type: ignore[attr-defined]

    def _send(self, status: int, body: dict) -> None:
        data = json.dumps(body).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)

    def _consume_fault(self) -> bool:
        mock = self.mock
        with mock.lock:
            mock.request_counts[self.path] = mock.request_counts.get(self.path, 0) + 1
            if mock.fail_next.get(self.path, 0) > 0:
                mock.fail_next[self.path] -= 1
                self._send(500, {"error": "induced transient failure"})
                return True
            if mock.reject_next.get(self.path, 0) > 0:
                mock.reject_next[self.path] -= 1
                self._send(400, {"error": "induced client error"})
                return True
        return False

    def do_GET(self) -> None:
        if self._consume_fault():
            return
        if self.path != "/v1/health":
            self._send(404, {"error": f"unknown path {self.path}"})
            return
        suite = self.mock.suite
        body = {"models": dict(MODEL_NAMES), "dimension": suite.encoder.dim}
        self._send(200, body)
        self.mock.interactions.append((self.path, None, body))

    def do_POST(self) -> None:
        if self._consume_fault():
            return
        length = int(self.headers.get("Content-Length", 0))
        try:
            payload = json.loads(self.rfile.read(length)) if length else {}
        except ValueError as exc:
            self._send(400, {"error": f"request body is not JSON: {exc}"})
            return
        try:
            body = self._dispatch(payload)
        except BackendError as exc:
            self._send(400, {"error": str(exc)})
            return
        except KeyError as exc:
            self._send(400, {"error": f"missing request key: {exc}"})
            return
        except Exception as exc:
            self._send(500, {"error": f"{type(exc).__name__}: {exc}"})
            return
        mangler = self.mock.mangle.get(self.path)
        if mangler is not None:
            body = mangler(body)
        self._send(200, body)
        self.mock.interactions.append((self.path, payload, body))

    def _dispatch(self, payload: dict) -> dict:
        suite = self.mock.suite
        if self.path == "/v1/embed":
            vectors = suite.encoder.embed(payload["texts"])
            return {
                "dimension": suite.encoder.dim,
                "vectors": [list(v.values) for v in vectors],
            }
        if self.path == "/v1/translate":
            rows = [
                suite.translator.translate(
                    text, payload["source"], payload["target"], payload["n"]
                )
                for text in payload["texts"]
            ]
            return {"translations": rows}
        if self.path == "/v1/detect":
            pairs = [(a, b) for a, b in payload["pairs"]]
            return {"probabilities": suite.detector.probability_batch(pairs)}
        if self.path == "/v1/fluency":
            return {"losses": suite.fluency_scorer.loss_batch(payload["texts"])}
        if self.path == "/v1/chunk":
            phrases = suite.chunker.phrases(payload["tokens"])
            return {
                "phrases": [
                    {"start": p.start, "end": p.end, "label": p.label.value}
                    for p in phrases
                ]
            }
        raise BackendError(f"unknown path {self.path}")
