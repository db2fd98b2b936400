"""Run configuration: JSON config file parsing and backend construction."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Mapping

from .backends import (
    BackendSuite,
    HashedBowEncoder,
    JaccardDetector,
    RemoteChunker,
    RemoteConfig,
    RemoteDetector,
    RemoteEncoder,
    RemoteFluencyScorer,
    RemoteTranslator,
    RuleChunker,
    TableTranslator,
    UnigramFluencyScorer,
    load_frequency_table,
    load_translation_table,
)
from .backends.reference import DEFAULT_ENCODER_DIM, DEFAULT_ENCODER_SEED
from .core import FilterMode, GenerationConfig, SelectionConfig
from .lexicon import (
    ClosedClassLexicon,
    LexiconSuite,
    load_ppdb,
    load_synonyms,
    load_wordlist,
    packaged_path,
)

__all__ = ["ConfigError", "PipelineSettings", "load_settings", "read_settings", "default_config"]

REQUIRED_SECTIONS = ("generation", "selection", "backends", "lexicons")
BACKEND_NAMES = ("encoder", "translator", "detector", "fluency", "chunker")


class ConfigError(ValueError):
    """The config file is missing a key or carries an invalid value."""

    def __init__(self, key: str, message: str) -> None:
        super().__init__(f"config key {key!r}: {message}")
        self.key = key


@dataclass(frozen=True)
class PipelineSettings:
    """Everything one pipeline run needs, parsed and constructed."""

    generation: GenerationConfig
    selection: SelectionConfig
    backends: BackendSuite
    lexicons: LexiconSuite
    workers: int | None = None
    summary_sentences: int = 3


def default_config() -> dict[str, Any]:
    """The full self-describing config with default values for every key."""
    return {
        "generation": {
            "pivot_language": "de",
            "forward_beam": 5,
            "backward_beam": 5,
            "max_variants_per_technique": 25,
        },
        "selection": {
            "low_threshold": 0.5,
            "dup_threshold": 0.95,
            "k": 20,
            "filter_mode": "encoder",
            "detector_threshold": 0.5,
            "allow_zero_novelty": False,
        },
        "backends": {name: {"kind": "reference"} for name in BACKEND_NAMES},
        "lexicons": {
            "stopwords": None,
            "closed_class": None,
            "synonyms": None,
            "ppdb": None,
            "ppdb_min_score": 3.0,
        },
        "pipeline": {"workers": None, "summary_sentences": 3},
    }


def _require(section: Mapping[str, Any], section_name: str, key: str) -> Any:
    if key not in section:
        raise ConfigError(f"{section_name}.{key}", "missing")
    return section[key]


def load_settings(raw: Mapping[str, Any]) -> PipelineSettings:
    """Build pipeline settings from a parsed config mapping.

    The four sections ``generation``, ``selection``, ``backends``, and
    ``lexicons`` are required, as is every generation and selection key;
    backend and lexicon entries fall back to reference implementations on
    packaged data. Raises :class:`ConfigError` naming the missing or bad key.
    """
    for section in REQUIRED_SECTIONS:
        if section not in raw:
            raise ConfigError(section, "missing")
        if not isinstance(raw[section], dict):
            raise ConfigError(section, "must be an object")

    gen_section = raw["generation"]
    try:
        generation = GenerationConfig(
            pivot_language=str(_require(gen_section, "generation", "pivot_language")),
            forward_beam=int(_require(gen_section, "generation", "forward_beam")),
            backward_beam=int(_require(gen_section, "generation", "backward_beam")),
            max_variants_per_technique=int(
                _require(gen_section, "generation", "max_variants_per_technique")
            ),
        )
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError("generation", str(exc)) from exc

    sel_section = raw["selection"]
    mode_raw = str(_require(sel_section, "selection", "filter_mode")).upper()
    try:
        mode = FilterMode(mode_raw)
    except ValueError as exc:
        raise ConfigError("selection.filter_mode", f"must be 'encoder' or 'detector', got {mode_raw!r}") from exc
    try:
        selection = SelectionConfig(
            low_threshold=float(_require(sel_section, "selection", "low_threshold")),
            dup_threshold=float(_require(sel_section, "selection", "dup_threshold")),
            k=int(_require(sel_section, "selection", "k")),
            filter_mode=mode,
            detector_threshold=float(_require(sel_section, "selection", "detector_threshold")),
            allow_zero_novelty=bool(_require(sel_section, "selection", "allow_zero_novelty")),
        )
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError("selection", str(exc)) from exc

    lex_section = raw["lexicons"]
    stopwords_path = lex_section.get("stopwords") or packaged_path("stopwords.txt")
    closed_class_path = lex_section.get("closed_class") or packaged_path("closed_class.txt")
    try:
        closed_class = ClosedClassLexicon.load(stopwords_path, closed_class_path)
        lexicons = LexiconSuite(
            closed_class=closed_class,
            synonyms=load_synonyms(lex_section.get("synonyms") or packaged_path("synonyms.tsv")),
            ppdb=load_ppdb(
                lex_section.get("ppdb") or packaged_path("ppdb.txt"),
                min_score=float(lex_section.get("ppdb_min_score", 3.0)),
            ),
        )
    except OSError as exc:
        raise ConfigError("lexicons", f"cannot read lexicon file: {exc}") from exc

    backends = _build_backends(raw["backends"], closed_class)

    pipeline_section = raw.get("pipeline", {})
    if not isinstance(pipeline_section, dict):
        raise ConfigError("pipeline", "must be an object")
    workers = pipeline_section.get("workers")
    if workers is not None:
        workers = int(workers)
        if workers < 1:
            raise ConfigError("pipeline.workers", "must be a positive integer")
    summary_sentences = int(pipeline_section.get("summary_sentences", 3))
    if summary_sentences < 1:
        raise ConfigError("pipeline.summary_sentences", "must be a positive integer")

    return PipelineSettings(
        generation=generation,
        selection=selection,
        backends=backends,
        lexicons=lexicons,
        workers=workers,
        summary_sentences=summary_sentences,
    )


def _build_backends(section: Mapping[str, Any], closed_class: ClosedClassLexicon) -> BackendSuite:
    built: dict[str, Any] = {}
    for name in BACKEND_NAMES:
        spec = section.get(name, {"kind": "reference"})
        if not isinstance(spec, dict):
            raise ConfigError(f"backends.{name}", "must be an object")
        kind = spec.get("kind", "reference")
        if kind == "reference":
            built[name] = _build_reference(name, spec, closed_class)
        elif kind == "remote":
            built[name] = _build_remote(name, spec)
        else:
            raise ConfigError(f"backends.{name}.kind", f"must be 'reference' or 'remote', got {kind!r}")
    return BackendSuite(
        encoder=built["encoder"],
        translator=built["translator"],
        detector=built["detector"],
        fluency_scorer=built["fluency"],
        chunker=built["chunker"],
    )


def _build_reference(name: str, spec: Mapping[str, Any], closed_class: ClosedClassLexicon) -> Any:
    try:
        if name == "encoder":
            return HashedBowEncoder(
                dim=int(spec.get("dim", DEFAULT_ENCODER_DIM)),
                seed=str(spec.get("seed", DEFAULT_ENCODER_SEED)),
                lexicon=closed_class,
            )
        if name == "translator":
            tables_spec = spec.get("tables")
            if tables_spec is None:
                return TableTranslator.default()
            tables = {}
            for pair, path in tables_spec.items():
                source, _, target = pair.partition("-")
                if not source or not target:
                    raise ConfigError(
                        f"backends.translator.tables.{pair}", "key must look like 'en-de'"
                    )
                tables[(source, target)] = load_translation_table(path)
            return TableTranslator(tables)
        if name == "detector":
            return JaccardDetector(lexicon=closed_class)
        if name == "fluency":
            frequencies_path = spec.get("frequencies")
            frequencies = load_frequency_table(frequencies_path) if frequencies_path else None
            return UnigramFluencyScorer(frequencies=frequencies)
        if name == "chunker":
            verbs = load_wordlist(spec["verbs"]) if spec.get("verbs") else None
            determiners = load_wordlist(spec["determiners"]) if spec.get("determiners") else None
            return RuleChunker(verbs=verbs, determiners=determiners, lexicon=closed_class)
    except OSError as exc:
        raise ConfigError(f"backends.{name}", f"cannot read resource file: {exc}") from exc
    raise ConfigError(f"backends.{name}", "unknown backend name")


def _build_remote(name: str, spec: Mapping[str, Any]) -> Any:
    if "base_url" not in spec:
        raise ConfigError(f"backends.{name}.base_url", "missing")
    config = RemoteConfig(
        base_url=str(spec["base_url"]),
        timeout=float(spec.get("timeout", 10.0)),
        retries=int(spec.get("retries", 3)),
        backoff=float(spec.get("backoff", 0.25)),
    )
    classes = {
        "encoder": RemoteEncoder,
        "translator": RemoteTranslator,
        "detector": RemoteDetector,
        "fluency": RemoteFluencyScorer,
        "chunker": RemoteChunker,
    }
    return classes[name](config)


def read_settings(path: str) -> PipelineSettings:
    """Read and parse a JSON config file, see :func:`load_settings`."""
    try:
        with open(path, encoding="utf-8") as handle:
            raw = json.load(handle)
    except OSError as exc:
        raise ConfigError("config", f"cannot read config file {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError("config", f"invalid JSON in {path!r}: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config", "top level must be a JSON object")
    return load_settings(raw)
