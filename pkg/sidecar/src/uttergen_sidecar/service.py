"""FastAPI application exposing the models behind the /v1/* wire protocol.

Handlers are synchronous and the models stateless, so the framework's
thread pool serves concurrent requests without shared-state hazards. Every
non-200 response body is {"error": "..."}: bad inputs map to 400, anything
unexpected to 500.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, ConfigDict, Field

from .config import ModelBundle, SidecarConfig, build_models
from .models import UnknownLanguagePair

__all__ = ["create_app"]


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class EmbedRequest(_Strict):
    texts: list[str]


class TranslateRequest(_Strict):
    texts: list[str]
    source: str = Field(min_length=1)
    target: str = Field(min_length=1)
    n: int = Field(ge=1)


class DetectRequest(_Strict):
    pairs: list[tuple[str, str]]


class FluencyRequest(_Strict):
    texts: list[str]


class ChunkRequest(_Strict):
    text: str
    tokens: list[str]


def create_app(config: SidecarConfig | None = None) -> FastAPI:
    """Build the service; raises ModelLoadError if a model cannot load."""
    bundle: ModelBundle = build_models(config or SidecarConfig())
    app = FastAPI(title="uttergen-sidecar", docs_url=None, redoc_url=None)
    app.state.bundle = bundle

    @app.exception_handler(RequestValidationError)
    async def _bad_request(request: Request, exc: RequestValidationError) -> JSONResponse:
        return JSONResponse(status_code=400, content={"error": str(exc.errors())})

    @app.exception_handler(UnknownLanguagePair)
    async def _unknown_pair(request: Request, exc: UnknownLanguagePair) -> JSONResponse:
        return JSONResponse(status_code=400, content={"error": str(exc)})

    @app.exception_handler(Exception)
    async def _server_error(request: Request, exc: Exception) -> JSONResponse:
        return JSONResponse(
            status_code=500, content={"error": f"{type(exc).__name__}: {exc}"}
        )

    @app.post("/v1/embed")
    def embed(body: EmbedRequest) -> dict:
        models: ModelBundle = app.state.bundle
        return {
            "dimension": models.encoder.dim,
            "vectors": models.encoder.embed(body.texts),
        }

    @app.post("/v1/translate")
    def translate(body: TranslateRequest) -> dict:
        models: ModelBundle = app.state.bundle
        return {
            "translations": [
                models.translator.translate(text, body.source, body.target, body.n)
                for text in body.texts
            ]
        }

    @app.post("/v1/detect")
    def detect(body: DetectRequest) -> dict:
        models: ModelBundle = app.state.bundle
        return {"probabilities": models.detector.probability_batch(body.pairs)}

    @app.post("/v1/fluency")
    def fluency(body: FluencyRequest) -> dict:
        models: ModelBundle = app.state.bundle
        return {"losses": models.fluency.loss_batch(body.texts)}

    @app.post("/v1/chunk")
    def chunk(body: ChunkRequest) -> dict:
        models: ModelBundle = app.state.bundle
        return {"phrases": models.chunker.phrases(body.tokens)}

    @app.get("/v1/health")
    def health() -> dict:
        models: ModelBundle = app.state.bundle
        return {"models": dict(models.names), "dimension": models.encoder.dim}

    return app
