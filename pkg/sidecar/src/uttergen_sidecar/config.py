"""Service configuration: model identifiers, device, and bind address."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Callable, Mapping

from .models import (
    BagHashEncoder,
    CharFrequencyFluency,
    MiniTableTranslator,
    OverlapDetector,
    RuleBasedChunker,
)

__all__ = [
    "DEFAULT_MODELS",
    "ModelBundle",
    "ModelLoadError",
    "SidecarConfig",
    "build_models",
    "load_config",
]

DEFAULT_MODELS = {
    "encoder": "builtin-bow-v1",
    "translator": "builtin-table-v1",
    "detector": "builtin-overlap-v1",
    "fluency": "builtin-charfreq-v1",
    "chunker": "builtin-rules-v1",
}

SUPPORTED_DEVICES = ("cpu",)


class ModelLoadError(RuntimeError):
    """A configured model cannot be constructed."""


@dataclass(frozen=True)
class SidecarConfig:
    models: Mapping[str, str] = field(default_factory=lambda: dict(DEFAULT_MODELS))
    device: str = "cpu"
    host: str = "127.0.0.1"
    port: int = 8099
    encoder_dim: int = 384


@dataclass(frozen=True)
class ModelBundle:
    """Constructed models plus the identifiers they were loaded from."""

    encoder: BagHashEncoder
    translator: MiniTableTranslator
    detector: OverlapDetector
    fluency: CharFrequencyFluency
    chunker: RuleBasedChunker
    names: Mapping[str, str]


_REGISTRY: dict[str, dict[str, Callable[[SidecarConfig], Any]]] = {
    "encoder": {"builtin-bow-v1": lambda cfg: BagHashEncoder(dim=cfg.encoder_dim)},
    "translator": {"builtin-table-v1": lambda cfg: MiniTableTranslator()},
    "detector": {"builtin-overlap-v1": lambda cfg: OverlapDetector()},
    "fluency": {"builtin-charfreq-v1": lambda cfg: CharFrequencyFluency()},
    "chunker": {"builtin-rules-v1": lambda cfg: RuleBasedChunker()},
}


def build_models(config: SidecarConfig) -> ModelBundle:
    """Construct every configured model, or raise :class:`ModelLoadError`."""
    if config.device not in SUPPORTED_DEVICES:
        raise ModelLoadError(
            f"unsupported device {config.device!r}; available: {list(SUPPORTED_DEVICES)}"
        )
    built: dict[str, Any] = {}
    names: dict[str, str] = {}
    for role in DEFAULT_MODELS:
        name = config.models.get(role, DEFAULT_MODELS[role])
        registry = _REGISTRY[role]
        if name not in registry:
            raise ModelLoadError(
                f"unknown {role} model {name!r}; available: {sorted(registry)}"
            )
        try:
            built[role] = registry[name](config)
        except Exception as exc:
            raise ModelLoadError(f"cannot load {role} model {name!r}: {exc}") from exc
        names[role] = name
    return ModelBundle(
        encoder=built["encoder"],
        translator=built["translator"],
        detector=built["detector"],
        fluency=built["fluency"],
        chunker=built["chunker"],
        names=names,
    )


def load_config(path: str | None = None) -> SidecarConfig:
    """Read a JSON config file; with no path, return the defaults."""
    if path is None:
        return SidecarConfig()
    with open(path, encoding="utf-8") as handle:
        raw = json.load(handle)
    if not isinstance(raw, dict):
        raise ValueError("config top level must be a JSON object")
    models = dict(DEFAULT_MODELS)
    models.update(raw.get("models", {}))
    unknown_roles = set(models) - set(DEFAULT_MODELS)
    if unknown_roles:
        raise ValueError(f"unknown model roles in config: {sorted(unknown_roles)}")
    return SidecarConfig(
        models=models,
        device=str(raw.get("device", "cpu")),
        host=str(raw.get("host", "127.0.0.1")),
        port=int(raw.get("port", 8099)),
        encoder_dim=int(raw.get("encoder_dim", 384)),
    )
