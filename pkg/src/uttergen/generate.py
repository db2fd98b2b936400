"""Candidate generation: four paraphrase techniques over one source sentence."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .backends import BackendError, BackendSuite, Chunker, Translator
from .core import (
    Candidate,
    GenerationConfig,
    Provenance,
    SourceSentence,
    Technique,
    cased_tokens,
    detokenize,
    fold_text,
    tokenize,
)
from .lexicon import ClosedClassLexicon, LexiconSuite, PpdbTable, SynonymLexicon, match_phrases

__all__ = [
    "GenerationReport",
    "backtranslate_full",
    "backtranslate_phrases",
    "generate_pool",
    "ppdb_paraphrases",
    "wordnet_paraphrases",
]

ALL_TECHNIQUES = (Technique.BT, Technique.NP_VP_BT, Technique.WORDNET, Technique.PPDB)

# Matches starting at the same table span keep only this many top-scoring paraphrases.
PPDB_PARAPHRASES_PER_MATCH = 3


@dataclass
class GenerationReport:
    """Per-sentence record of what each technique produced and what failed."""

    counts: dict[Technique, int] = field(default_factory=dict)
    failures: list[tuple[Technique, str]] = field(default_factory=list)

    def record(self, technique: Technique, candidates: Sequence[Candidate]) -> None:
        self.counts[technique] = len(candidates)

    def record_failure(self, technique: Technique, message: str) -> None:
        self.failures.append((technique, message))

    def failed_techniques(self) -> set[Technique]:
        return {technique for technique, _ in self.failures}


def _round_trips(text: str, translator: Translator, cfg: GenerationConfig) -> list[str]:
    # Forward beam into the pivot language, backward beam out of it; output
    # order is (forward index, backward index).
    forward = translator.translate(text, "en", cfg.pivot_language, cfg.forward_beam)
    out: list[str] = []
    for pivot_text in forward:
        out.extend(translator.translate(pivot_text, cfg.pivot_language, "en", cfg.backward_beam))
    return out


def backtranslate_full(
    sentence: SourceSentence,
    translator: Translator,
    cfg: GenerationConfig,
    report: GenerationReport | None = None,
) -> list[Candidate]:
    """Round-trip the whole sentence through the pivot language.

    Produces at most forward_beam * backward_beam texts, drops any equal to
    the input after case folding, deduplicates keeping first occurrence, and
    caps the result at ``cfg.max_variants_per_technique``. A translator
    failure yields an empty list and a recorded per-technique failure.
    """
    try:
        texts = _round_trips(sentence.text, translator, cfg)
    except BackendError as exc:
        if report is not None:
            report.record_failure(Technique.BT, str(exc))
        return []
    source_fold = fold_text(sentence.text)
    seen: set[str] = set()
    candidates: list[Candidate] = []
    for text in texts:
        folded = fold_text(text)
        if folded == source_fold or folded in seen:
            continue
        seen.add(folded)
        candidates.append(Candidate(text=text, source=sentence, technique=Technique.BT))
        if len(candidates) >= cfg.max_variants_per_technique:
            break
    return candidates


def backtranslate_phrases(
    sentence: SourceSentence,
    chunker: Chunker,
    translator: Translator,
    cfg: GenerationConfig,
    report: GenerationReport | None = None,
) -> list[Candidate]:
    """Round-trip each NP and VP span, splicing results back into the sentence.

    Phrases come from the chunker over lowercased tokens; untouched tokens
    keep their original casing. Splices equal to the input are dropped, the
    technique output is deduplicated keeping first occurrence and capped at
    ``cfg.max_variants_per_technique``. A translator failure on one phrase
    skips that phrase and records a failure; remaining phrases continue.
    """
    cased = cased_tokens(sentence.text)
    lowered = [tok.lower() for tok in cased]
    try:
        phrases = chunker.phrases(lowered)
    except BackendError as exc:
        if report is not None:
            report.record_failure(Technique.NP_VP_BT, str(exc))
        return []
    source_fold = fold_text(sentence.text)
    seen: set[str] = set()
    candidates: list[Candidate] = []
    for phrase in phrases:
        phrase_text = detokenize(lowered[phrase.start : phrase.end])
        try:
            round_trips = _round_trips(phrase_text, translator, cfg)
        except BackendError as exc:
            if report is not None:
                report.record_failure(
                    Technique.NP_VP_BT,
                    f"span [{phrase.start}, {phrase.end}): {exc}",
                )
            continue
        replaced: set[str] = set()
        for text in round_trips:
            replacement_fold = fold_text(text)
            if replacement_fold in replaced:
                continue
            replaced.add(replacement_fold)
            spliced = detokenize(
                cased[: phrase.start] + tokenize(text) + cased[phrase.end :]
            )
            folded = fold_text(spliced)
            if folded == source_fold or folded in seen:
                continue
            seen.add(folded)
            candidates.append(
                Candidate(
                    text=spliced,
                    source=sentence,
                    technique=Technique.NP_VP_BT,
                    provenance=Provenance(phrase.start, phrase.end, text),
                )
            )
    return candidates[: cfg.max_variants_per_technique]


def wordnet_paraphrases(
    sentence: SourceSentence,
    synonyms: SynonymLexicon,
    lex: ClosedClassLexicon,
) -> list[Candidate]:
    """Substitute one synonym at a time into each eligible content token.

    Tokens that are stopwords, closed-class words, or shorter than the
    lexicon minimum are skipped. Candidates are ordered by token position,
    then synonym lexicographically; untouched tokens keep their casing.
    """
    cased = cased_tokens(sentence.text)
    lowered = [tok.lower() for tok in cased]
    source_fold = fold_text(sentence.text)
    seen: set[str] = set()
    candidates: list[Candidate] = []
    for position, token in enumerate(lowered):
        if not lex.is_content(token):
            continue
        for synonym in sorted(synonyms.synonyms(token)):
            text = detokenize(cased[:position] + [synonym] + cased[position + 1 :])
            folded = fold_text(text)
            if folded == source_fold or folded in seen:
                continue
            seen.add(folded)
            candidates.append(
                Candidate(
                    text=text,
                    source=sentence,
                    technique=Technique.WORDNET,
                    provenance=Provenance(position, position + 1, synonym),
                )
            )
    return candidates


def ppdb_paraphrases(
    sentence: SourceSentence,
    table: PpdbTable,
    lex: ClosedClassLexicon | None = None,
) -> list[Candidate]:
    """Replace phrase-table matches, one span at a time.

    Matches are found leftmost-longest per start position; each match
    contributes at most ``PPDB_PARAPHRASES_PER_MATCH`` candidates, highest
    score first. Candidates are ordered by span start, then score descending.
    """
    del lex  # accepted for signature parity with the other generators
    cased = cased_tokens(sentence.text)
    lowered = [tok.lower() for tok in cased]
    source_fold = fold_text(sentence.text)
    seen: set[str] = set()
    per_span: dict[tuple[int, int], int] = {}
    candidates: list[Candidate] = []
    for match in match_phrases(lowered, table):
        span = (match.start, match.end)
        if per_span.get(span, 0) >= PPDB_PARAPHRASES_PER_MATCH:
            continue
        per_span[span] = per_span.get(span, 0) + 1
        text = detokenize(cased[: match.start] + list(match.paraphrase) + cased[match.end :])
        folded = fold_text(text)
        if folded == source_fold or folded in seen:
            continue
        seen.add(folded)
        candidates.append(
            Candidate(
                text=text,
                source=sentence,
                technique=Technique.PPDB,
                provenance=Provenance(match.start, match.end, detokenize(match.paraphrase)),
            )
        )
    return candidates


def generate_pool(
    sentence: SourceSentence,
    backends: BackendSuite,
    lexicons: LexiconSuite,
    cfg: GenerationConfig,
    report: GenerationReport | None = None,
) -> list[Candidate]:
    """Run all four techniques and concatenate their candidates.

    Output order is BT, NP_VP_BT, WORDNET, PPDB with exact case-folded
    duplicates removed, first occurrence kept, so the pool always contains
    every text any single technique produced. Per-technique failures degrade
    gracefully; only all four techniques failing raises a backend error.
    """
    report = report if report is not None else GenerationReport()
    failures_before = len(report.failures)
    produced = [
        backtranslate_full(sentence, backends.translator, cfg, report),
        backtranslate_phrases(sentence, backends.chunker, backends.translator, cfg, report),
        wordnet_paraphrases(sentence, lexicons.synonyms, lexicons.closed_class),
        ppdb_paraphrases(sentence, lexicons.ppdb, lexicons.closed_class),
    ]
    for technique, candidates in zip(ALL_TECHNIQUES, produced):
        report.record(technique, candidates)
    failed_now = {technique for technique, _ in report.failures[failures_before:]}
    if failed_now >= set(ALL_TECHNIQUES):
        raise BackendError(
            f"all paraphrase techniques failed for sentence {sentence.text!r}"
        )
    seen: set[str] = set()
    pool: list[Candidate] = []
    for candidates in produced:
        for candidate in candidates:
            folded = fold_text(candidate.text)
            if folded in seen:
                continue
            seen.add(folded)
            pool.append(candidate)
    return pool
