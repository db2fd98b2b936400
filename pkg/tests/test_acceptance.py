"""Acceptance suite: one test per top-level behavioural guarantee.

Each test prints a single [PASS]/[FAIL] line on the terminal, bypassing
output capture, so a full run yields a one-line verdict per criterion.
"""

from __future__ import annotations

import json
import math
import random
import time
from contextlib import contextmanager

import pytest

from uttergen.backends import cosine
from uttergen.cli import main
from uttergen.config import default_config
from uttergen.core import (
    Origin,
    ScoredCandidate,
    SelectionConfig,
    SourceSentence,
    fold_text,
    split_sentences,
    tokenize,
)
from uttergen.evaluate import AnnotationRecord, bleu, usefulness_metrics
from uttergen.generate import (
    GenerationConfig,
    backtranslate_full,
    backtranslate_phrases,
    generate_pool,
    ppdb_paraphrases,
    wordnet_paraphrases,
)
from uttergen.lexicon import LexiconFormatError, content_words, load_ppdb
from uttergen.select import dedup_embedding, dedup_words, filter_encoder

from bleu_cases import CASES
from fixture_paths import data_path
from oracles import (
    bleu_oracle,
    cosine_oracle,
    dedup_embedding_oracle,
    dedup_words_oracle,
    filter_band_oracle,
)
from stubs import VectorEncoder
from test_lexicon import PPDB_25_ENTRIES

SOURCE = SourceSentence(article_id="a1", text="zzz yyy xxx", origin=Origin.TITLE, index=0)

# Nonsense lowercase vocabulary: case folding cannot change these texts, so
# the package's fold-based tie-breaks coincide with the oracles' raw-text
# tie-breaks, and none of the words collide with the packaged lexicons.
VOCAB = [
    "zorple", "quimbat", "fenwick", "dashpot", "greeble", "wumpus",
    "tralix", "bulgro", "snerd", "plonk", "vexil", "crandle",
]


@pytest.fixture
def announce(capsys):
    @contextmanager
    def _run(name: str) -> None:
        try:
            yield
        except BaseException:
            with capsys.disabled():
                print(f"\n[FAIL] {name}", flush=True)
            raise
        with capsys.disabled():
            print(f"\n[PASS] {name}", flush=True)

    return _run


def make_candidate(text: str) -> ScoredCandidate:
    from uttergen.core import Candidate, Technique

    return ScoredCandidate(
        candidate=Candidate(text=text, source=SOURCE, technique=Technique.EXTERNAL),
        encoder_similarity=0.6,
    )


def scored(text: str, sim: float, tiebreak: float) -> ScoredCandidate:
    sc = make_candidate(text)
    return ScoredCandidate(candidate=sc.candidate, encoder_similarity=sim, tiebreak=tiebreak)


def test_filter_band_invariant_on_randomized_pools(announce, suite, closed_class):
    with announce("filtering invariant: 1000 randomized pools, zero survivors outside the band"):
        rng = random.Random(20260816)
        cfg = SelectionConfig()
        start = time.perf_counter()
        pools = 0
        violations = []

        # Half the pools embed synthetic sentences with the real encoder.
        for _ in range(500):
            source_text = " ".join(rng.sample(VOCAB, rng.randint(1, 3)))
            source = SourceSentence(
                article_id="a1", text=source_text, origin=Origin.TITLE, index=0
            )
            pool = [
                make_candidate(" ".join(rng.sample(VOCAB, rng.randint(1, 4)))).candidate
                for _ in range(rng.randint(1, 8))
            ]
            kept = filter_encoder(pool, source, suite.encoder, cfg)
            pools += 1
            for sc in kept:
                if not cfg.low_threshold <= sc.encoder_similarity <= cfg.dup_threshold:
                    violations.append((source_text, sc.candidate.text, sc.encoder_similarity))
            [source_emb] = suite.encoder.embed([source.text])
            sims = [
                cosine(source_emb, emb)
                for emb in suite.encoder.embed([c.text for c in pool])
            ]
            expected = [
                pool[i].text
                for i in filter_band_oracle(sims, cfg.low_threshold, cfg.dup_threshold)
            ]
            assert [sc.candidate.text for sc in kept] == expected

        # The other half uses constructed vectors, including pools that sit
        # exactly on both band edges.
        def constructed_pool(vectors: dict[str, tuple[float, ...]], source_text: str):
            encoder = VectorEncoder(vectors)
            source = SourceSentence(
                article_id="a1", text=source_text, origin=Origin.TITLE, index=0
            )
            pool = [make_candidate(t).candidate for t in vectors if t != source_text]
            kept = filter_encoder(pool, source, encoder, cfg)
            for sc in kept:
                if not cfg.low_threshold <= sc.encoder_similarity <= cfg.dup_threshold:
                    violations.append((source_text, sc.candidate.text, sc.encoder_similarity))
            sims = [cosine_oracle(vectors[c.text], vectors[source_text]) for c in pool]
            expected = [
                pool[i].text
                for i in filter_band_oracle(sims, cfg.low_threshold, cfg.dup_threshold)
            ]
            assert [sc.candidate.text for sc in kept] == expected
            return kept

        # Exactly 0.5 must survive, orthogonal must not.
        kept = constructed_pool(
            {
                "src zero": (1.0, 0.0, 0.0, 0.0),
                "cand half": (1.0, 1.0, 1.0, 1.0),
                "cand ortho": (0.0, 1.0, 0.0, 0.0),
            },
            "src zero",
        )
        assert [sc.candidate.text for sc in kept] == ["cand half"]
        assert kept[0].encoder_similarity == 0.5
        pools += 1

        # Exactly 0.95 must survive; strictly above must not. Both candidate
        # vectors are unit norm by construction, so their cosine against the
        # source is the bare first coordinate.
        kept = constructed_pool(
            {
                "src unit": (1.0, 0.0),
                "cand edge": (0.95, math.sqrt(1.0 - 0.95**2)),
                "cand above": (0.96, math.sqrt(1.0 - 0.96**2)),
                "cand copy": (2.0, 0.0),
            },
            "src unit",
        )
        assert [sc.candidate.text for sc in kept] == ["cand edge"]
        assert kept[0].encoder_similarity == 0.95
        pools += 1

        for _ in range(498):
            dim = rng.randint(3, 6)
            names = [f"cand n{i}" for i in range(rng.randint(1, 8))]
            vectors = {"src rand": tuple(float(rng.randint(0, 4)) for _ in range(dim))}
            for name in names:
                vectors[name] = tuple(float(rng.randint(0, 4)) for _ in range(dim))
            constructed_pool(vectors, "src rand")
            pools += 1

        elapsed = time.perf_counter() - start
        assert pools == 1000
        assert violations == []
        assert elapsed < 5.0, f"filtering invariant sweep took {elapsed:.2f}s"


def test_embedding_dedup_matches_the_bruteforce_oracle(announce):
    with announce("embedding dedup: 500 random pools equal the brute-force oracle"):
        rng = random.Random(31337)
        cfg = SelectionConfig()
        sim_grid = [0.5, 0.6, 0.7, 0.8, 0.9, 0.94, 0.95, 0.97, 1.0]
        tie_grid = [0.0, 0.25, 0.5, 0.75, 1.0]
        for _ in range(500):
            count = rng.randint(1, 10)
            items = []
            vectors = {}
            for i in range(count):
                text = f"cand {i:02d}"
                sim = rng.choice(sim_grid)
                tiebreak = rng.choice(tie_grid)
                vector = tuple(float(rng.randint(0, 3)) for _ in range(3))
                items.append((text, sim, tiebreak, vector))
                vectors[text] = vector
            pool = [scored(t, s, tb) for t, s, tb, _ in items]
            rng.shuffle(pool)

            got = dedup_embedding(pool, SOURCE, VectorEncoder(vectors), cfg)
            expected = [
                items[i][0] for i in dedup_embedding_oracle(items, cfg.dup_threshold)
            ]
            assert [sc.candidate.text for sc in got] == expected

            for i, a in enumerate(got):
                for b in got[i + 1 :]:
                    pair_cos = cosine_oracle(
                        vectors[a.candidate.text], vectors[b.candidate.text]
                    )
                    assert pair_cos <= cfg.dup_threshold


def test_word_dedup_matches_the_step_replay_oracle(announce, closed_class):
    with announce("word-novelty dedup: 500 random pools equal the step-replay oracle"):
        rng = random.Random(9001)
        tie_grid = [0.0, 0.25, 0.5, 0.75, 1.0]

        def words_of(text: str) -> frozenset[str]:
            return frozenset(content_words(tokenize(text), closed_class))

        for _ in range(500):
            count = rng.randint(1, 8)
            items = [
                (
                    " ".join(rng.sample(VOCAB, rng.randint(1, 3))),
                    0.6,
                    rng.choice(tie_grid),
                )
                for _ in range(count)
            ]
            source_text = " ".join(rng.sample(VOCAB, rng.randint(1, 2)))
            source = SourceSentence(
                article_id="a1", text=source_text, origin=Origin.TITLE, index=0
            )
            cfg = SelectionConfig(
                k=rng.choice([1, 2, 3, 8, 20]),
                allow_zero_novelty=rng.random() < 0.5,
            )
            pool = [
                ScoredCandidate(
                    candidate=make_candidate(t).candidate,
                    encoder_similarity=s,
                    tiebreak=tb,
                )
                for t, s, tb in items
            ]

            got = dedup_words(pool, source, closed_class, cfg)
            expected_indices = dedup_words_oracle(
                items, words_of(source_text), cfg.k, cfg.allow_zero_novelty, words_of
            )
            assert [sc.candidate.text for sc in got] == [
                items[i][0] for i in expected_indices
            ]
            assert len(got) <= cfg.k


def test_combined_pool_contains_every_technique(announce, suite, lexicons):
    with announce("ensemble superset: combined pool covers each technique on the fixture corpus"):
        from uttergen.core import read_articles

        articles = read_articles(data_path("articles.jsonl"))
        assert len(articles) == 10
        cfg = GenerationConfig()
        sentences_checked = 0
        for article in articles:
            sentences = [
                SourceSentence(
                    article_id=article.id, text=article.title, origin=Origin.TITLE, index=0
                )
            ]
            for i, text in enumerate(split_sentences(article.description)):
                sentences.append(
                    SourceSentence(
                        article_id=article.id,
                        text=text,
                        origin=Origin.DESCRIPTION,
                        index=i,
                    )
                )
            for sentence in sentences:
                combined = {
                    fold_text(c.text)
                    for c in generate_pool(sentence, suite, lexicons, cfg)
                }
                per_technique = {
                    "full round-trip": backtranslate_full(sentence, suite.translator, cfg),
                    "phrase round-trip": backtranslate_phrases(
                        sentence, suite.chunker, suite.translator, cfg
                    ),
                    "synonyms": wordnet_paraphrases(
                        sentence, lexicons.synonyms, lexicons.closed_class
                    ),
                    "phrase table": ppdb_paraphrases(sentence, lexicons.ppdb),
                }
                for label, candidates in per_technique.items():
                    technique_set = {fold_text(c.text) for c in candidates}
                    missing = technique_set - combined
                    assert not missing, f"{label} texts missing from pool: {missing}"
                sentences_checked += 1
        assert sentences_checked >= 10


def test_bleu_agrees_with_the_bruteforce_oracle(announce):
    with announce("sentence BLEU: identity, disjoint, and 20 hand-built oracle cases"):
        assert bleu("pay your bill online now", ["pay your bill online now"]) == 1.0
        assert bleu("jumped quickly over fences", ["the dog ran home"]) == 0.0
        assert len(CASES) == 20
        for candidate, references in CASES:
            expected = bleu_oracle(
                tokenize(candidate), [tokenize(r) for r in references]
            )
            got = bleu(candidate, references)
            assert got == pytest.approx(expected, abs=1e-9), (candidate, references)


def test_phrase_table_parser_bit_exactness(announce):
    with announce("phrase-table parser: 25-line fixture parses to the pinned structure"):
        table = load_ppdb(data_path("ppdb_25.txt"))
        assert table.entries == PPDB_25_ENTRIES
        assert table.skipped_rows == 2
        assert table.max_phrase_length == 4

        with pytest.raises(LexiconFormatError) as excinfo:
            load_ppdb(data_path("ppdb_bad_fields.txt"))
        assert excinfo.value.line == 2

        with pytest.raises(LexiconFormatError) as excinfo:
            load_ppdb(data_path("ppdb_bad_score.txt"))
        assert excinfo.value.line == 3


def test_end_to_end_determinism(announce, tmp_path):
    with announce("end-to-end determinism: byte-identical output across runs and worker counts"):
        config = tmp_path / "config.json"
        config.write_text(json.dumps(default_config()), encoding="utf-8")
        start = time.perf_counter()
        outputs = {}
        for tag, workers in (("first", 1), ("second", 1), ("wide", 4)):
            out = tmp_path / f"{tag}.jsonl"
            report = tmp_path / f"{tag}_report.json"
            code = main(
                [
                    "pipeline",
                    "--input",
                    data_path("articles.jsonl"),
                    "--output",
                    str(out),
                    "--config",
                    str(config),
                    "--report",
                    str(report),
                    "--workers",
                    str(workers),
                ]
            )
            assert code == 0
            outputs[tag] = (out.read_bytes(), report.read_bytes())
        elapsed = time.perf_counter() - start
        assert outputs["first"] == outputs["second"]
        assert outputs["first"] == outputs["wide"]
        assert outputs["first"][0], "pipeline must produce at least one utterance"
        assert elapsed < 10.0, f"three pipeline runs took {elapsed:.2f}s"


def test_usefulness_metrics_match_hand_computation(announce):
    with announce("usefulness metrics: hand-computed averages reproduced to 1e-12"):
        fraction, number = usefulness_metrics(
            [
                AnnotationRecord("q1", "wording one", 1),
                AnnotationRecord("q1", "wording two", 0),
            ]
        )
        assert fraction == pytest.approx(0.5, abs=1e-12)
        assert number == pytest.approx(1.0, abs=1e-12)
        assert (fraction, number) == (0.5, 1.0)

        records = [
            AnnotationRecord("q1", "only one", 1),
            AnnotationRecord("q2", "first of three", 1),
            AnnotationRecord("q2", "second of three", 1),
            AnnotationRecord("q2", "third of three", 0),
            AnnotationRecord("q3", "not useful", 0),
        ]
        fraction, number = usefulness_metrics(records)
        assert fraction == pytest.approx((1.0 + 2.0 / 3.0 + 0.0) / 3.0, abs=1e-12)
        assert number == pytest.approx(1.0, abs=1e-12)
