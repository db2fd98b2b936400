"""Evaluation: sentence BLEU, corpus BLEU over grouped outputs, usefulness metrics."""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass
from typing import Mapping, Sequence

from .core import tokenize

__all__ = [
    "AnnotationRecord",
    "bleu",
    "corpus_bleu",
    "load_annotations",
    "load_outputs",
    "load_references",
    "usefulness_metrics",
]


def _ngram_counts(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def _closest_reference_length(candidate_length: int, reference_lengths: Sequence[int]) -> int:
    # Ties prefer the shorter reference.
    return min(reference_lengths, key=lambda ref_len: (abs(ref_len - candidate_length), ref_len))


def bleu(candidate: str, references: Sequence[str], max_n: int = 4) -> float:
    """Sentence-level BLEU with uniform n-gram weights up to ``max_n``.

    Modified n-gram precision clips counts against the best reference; the
    brevity penalty uses the reference length closest to the candidate's.
    When any match count for n >= 2 is zero, add-one smoothing is applied to
    all n >= 2 precisions. A candidate identical to a reference scores 1.0
    exactly; an empty candidate scores 0.0; empty references are an error.
    """
    if not references:
        raise ValueError("bleu needs at least one reference")
    if max_n < 1:
        raise ValueError("max_n must be a positive integer")
    candidate_tokens = tokenize(candidate)
    if not candidate_tokens:
        return 0.0
    reference_token_lists = [tokenize(ref) for ref in references]

    matches: list[int] = []
    totals: list[int] = []
    for n in range(1, max_n + 1):
        candidate_counts = _ngram_counts(candidate_tokens, n)
        best_reference_counts: Counter = Counter()
        for reference_tokens in reference_token_lists:
            for ngram, count in _ngram_counts(reference_tokens, n).items():
                if count > best_reference_counts[ngram]:
                    best_reference_counts[ngram] = count
        clipped = sum(
            min(count, best_reference_counts[ngram]) for ngram, count in candidate_counts.items()
        )
        matches.append(clipped)
        totals.append(sum(candidate_counts.values()))

    if matches[0] == 0:
        return 0.0
    smooth = any(m == 0 for m in matches[1:])
    log_precisions = [math.log(matches[0] / totals[0])]
    for m, t in zip(matches[1:], totals[1:]):
        if smooth:
            log_precisions.append(math.log((m + 1) / (t + 1)))
        else:
            log_precisions.append(math.log(m / t))

    candidate_length = len(candidate_tokens)
    reference_length = _closest_reference_length(
        candidate_length, [len(ref) for ref in reference_token_lists]
    )
    if candidate_length > reference_length:
        brevity_penalty = 1.0
    else:
        brevity_penalty = math.exp(1.0 - reference_length / candidate_length)
    return brevity_penalty * math.exp(math.fsum(log_precisions) / max_n)


def corpus_bleu(
    outputs: Mapping[str, Sequence[str]], references: Mapping[str, Sequence[str]]
) -> float:
    """Mean over inputs of the mean sentence BLEU of each input's paraphrases.

    Inputs with zero paraphrases contribute 0. Every output id must have
    references; missing ids raise ValueError listing them.
    """
    missing = sorted(set(outputs) - set(references))
    if missing:
        raise ValueError(f"no references for ids: {missing}")
    if not outputs:
        return 0.0
    per_input: list[float] = []
    for input_id in outputs:
        paraphrases = outputs[input_id]
        if not paraphrases:
            per_input.append(0.0)
            continue
        scores = [bleu(p, references[input_id]) for p in paraphrases]
        per_input.append(math.fsum(scores) / len(scores))
    return math.fsum(per_input) / len(per_input)


@dataclass(frozen=True)
class AnnotationRecord:
    """One human judgment: is this paraphrase useful for that input?"""

    input_id: str
    paraphrase: str
    label: int

    def __post_init__(self) -> None:
        if not self.input_id:
            raise ValueError("annotation input_id must be non-empty")
        if self.label not in (0, 1):
            raise ValueError(f"annotation label must be 0 or 1, got {self.label!r}")


def usefulness_metrics(annotations: Sequence[AnnotationRecord]) -> tuple[float, float]:
    """Average per-input fraction and count of paraphrases labelled useful.

    Annotations are grouped by input id; the first value averages each
    input's fraction of label-1 paraphrases, the second averages each
    input's label-1 count. Duplicate (input_id, paraphrase) pairs raise
    ValueError, as does an empty annotation list.
    """
    if not annotations:
        raise ValueError("usefulness metrics need at least one annotation")
    seen: set[tuple[str, str]] = set()
    groups: dict[str, list[int]] = {}
    for record in annotations:
        key = (record.input_id, record.paraphrase)
        if key in seen:
            raise ValueError(f"duplicate annotation for {key!r}")
        seen.add(key)
        groups.setdefault(record.input_id, []).append(record.label)
    fractions = [sum(labels) / len(labels) for labels in groups.values()]
    counts = [float(sum(labels)) for labels in groups.values()]
    avg_fraction = math.fsum(fractions) / len(groups)
    avg_number = math.fsum(counts) / len(groups)
    return avg_fraction, avg_number


def load_annotations(path: str) -> list[AnnotationRecord]:
    """Read JSON Lines annotations with keys input_id, paraphrase, label."""
    records: list[AnnotationRecord] = []
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, 1):
            if not line.strip():
                continue
            try:
                raw = json.loads(line)
                records.append(
                    AnnotationRecord(
                        input_id=str(raw["input_id"]),
                        paraphrase=str(raw["paraphrase"]),
                        label=int(raw["label"]),
                    )
                )
            except (ValueError, KeyError, TypeError) as exc:
                raise ValueError(f"{path}:{lineno}: bad annotation record: {exc}") from exc
    return records


def load_references(path: str) -> dict[str, list[str]]:
    """Read JSON Lines references with keys input_id, references (list)."""
    references: dict[str, list[str]] = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, 1):
            if not line.strip():
                continue
            try:
                raw = json.loads(line)
                references[str(raw["input_id"])] = [str(r) for r in raw["references"]]
            except (ValueError, KeyError, TypeError) as exc:
                raise ValueError(f"{path}:{lineno}: bad reference record: {exc}") from exc
    return references


def load_outputs(path: str) -> dict[str, list[str]]:
    """Read JSON Lines paraphrase outputs grouped by input id.

    Each record carries one paraphrase under ``utterance`` (or
    ``paraphrase``), keyed by ``input_id`` (or ``article_id``, so pipeline
    output files work directly). Ids seen with no valid text key raise.
    """
    outputs: dict[str, list[str]] = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, 1):
            if not line.strip():
                continue
            try:
                raw = json.loads(line)
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: invalid JSON: {exc}") from exc
            input_id = raw.get("input_id", raw.get("article_id"))
            text = raw.get("utterance", raw.get("paraphrase"))
            if input_id is None or text is None:
                raise ValueError(
                    f"{path}:{lineno}: record needs input_id/article_id and utterance/paraphrase"
                )
            outputs.setdefault(str(input_id), []).append(str(text))
    return outputs
