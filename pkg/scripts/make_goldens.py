"""Regenerate the pipeline golden file from independently written oracles.

The golden is NOT a frozen pipeline run: candidate generation feeds the
test-suite oracle implementations of band filtering, tie-break scoring, and
both deduplication passes, and the composed result is written as the
expected output. Before writing, the script runs the real pipeline and
asserts byte-for-byte agreement, so a regeneration that diverges from the
package fails loudly instead of silently blessing new behaviour.

Usage:
    python scripts/make_goldens.py [--check]

--check verifies the existing golden without rewriting it.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

REPO_ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(REPO_ROOT / "tests"))

from uttergen.backends import cosine, reference_suite
from uttergen.cli import run_pipeline
from uttergen.config import default_config, load_settings
from uttergen.core import (
    GenerationConfig,
    Origin,
    SelectionConfig,
    SourceSentence,
    fold_text,
    read_articles,
    tokenize,
)
from uttergen.generate import generate_pool
from uttergen.lexicon import LexiconSuite, content_words
from uttergen.summarize import select_sentences

from oracles import (
    cosine_oracle,
    dedup_embedding_oracle,
    dedup_words_oracle,
    filter_band_oracle,
    tiebreak_oracle,
)

ARTICLES = REPO_ROOT / "tests" / "data" / "articles_2.jsonl"
GOLDEN = REPO_ROOT / "tests" / "data" / "golden_2articles.jsonl"

FLOAT_TOLERANCE = 1e-12


def oracle_records(sentence: SourceSentence, suite, lexicons, sel: SelectionConfig, gen: GenerationConfig):
    """Compose the expected output records for one sentence via the oracles.

    Selection decisions (band membership, visit order, both dedup passes)
    come from the oracle implementations; the float fields written into the
    golden are the package's, after checking they agree with the oracle
    arithmetic to within 1e-12.
    """
    pool = generate_pool(sentence, suite, lexicons, gen)
    if not pool:
        return []

    [source_emb] = suite.encoder.embed([sentence.text])
    embeddings = suite.encoder.embed([c.text for c in pool])
    sims = [cosine(source_emb, emb) for emb in embeddings]
    for sim, emb in zip(sims, embeddings):
        oracle_sim = cosine_oracle(source_emb.values, emb.values)
        assert abs(sim - oracle_sim) <= FLOAT_TOLERANCE

    kept = filter_band_oracle(sims, sel.low_threshold, sel.dup_threshold)
    if not kept:
        return []
    survivors = [pool[i] for i in kept]
    survivor_sims = [sims[i] for i in kept]
    survivor_embs = [embeddings[i] for i in kept]

    losses = suite.fluency_scorer.loss_batch([c.text for c in survivors])
    tiebreaks = tiebreak_oracle(survivor_sims, losses)

    # The oracles tie-break on their text field directly; handing them the
    # folded text makes that identical to the package's folded comparisons.
    embed_items = [
        (fold_text(c.text), sim, tb, emb.values)
        for c, sim, tb, emb in zip(survivors, survivor_sims, tiebreaks, survivor_embs)
    ]
    deduped = dedup_embedding_oracle(embed_items, sel.dup_threshold)

    def words_of(folded: str) -> frozenset[str]:
        return frozenset(content_words(tokenize(folded), lexicons.closed_class))

    word_items = [
        (embed_items[i][0], embed_items[i][1], embed_items[i][2]) for i in deduped
    ]
    picked = dedup_words_oracle(
        word_items,
        words_of(fold_text(sentence.text)),
        sel.k,
        sel.allow_zero_novelty,
        words_of,
    )
    final = [deduped[i] for i in picked][: sel.k]

    return [
        {
            "article_id": sentence.article_id,
            "source_sentence": sentence.text,
            "origin": sentence.origin.value,
            "utterance": survivors[i].text,
            "technique": survivors[i].technique.value,
            "encoder_similarity": survivor_sims[i],
            "tiebreak": tiebreaks[i],
        }
        for i in final
    ]


def compose_golden() -> bytes:
    settings = load_settings(default_config())
    suite = settings.backends
    lexicons: LexiconSuite = settings.lexicons
    articles = read_articles(str(ARTICLES))

    lines = []
    for article in articles:
        sentences = [
            SourceSentence(
                article_id=article.id, text=article.title, origin=Origin.TITLE, index=0
            )
        ]
        sentences.extend(
            select_sentences(
                article.description,
                suite.encoder,
                m=settings.summary_sentences,
                article_id=article.id,
            )
        )
        for sentence in sentences:
            for record in oracle_records(
                sentence, suite, lexicons, settings.selection, settings.generation
            ):
                lines.append(json.dumps(record, ensure_ascii=False) + "\n")
    return "".join(lines).encode("utf-8")


def pipeline_bytes() -> bytes:
    settings = load_settings(default_config())
    records, _ = run_pipeline(settings, read_articles(str(ARTICLES)), workers=1)
    return "".join(
        json.dumps(record, ensure_ascii=False) + "\n" for record in records
    ).encode("utf-8")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--check", action="store_true", help="verify the golden without rewriting"
    )
    args = parser.parse_args()

    composed = compose_golden()
    ran = pipeline_bytes()
    if composed != ran:
        print("composed oracle output differs from the pipeline run:", file=sys.stderr)
        for a, b in zip(composed.splitlines(), ran.splitlines()):
            if a != b:
                print(f"  oracle:   {a.decode('utf-8')}", file=sys.stderr)
                print(f"  pipeline: {b.decode('utf-8')}", file=sys.stderr)
                break
        return 1

    if args.check:
        if not GOLDEN.exists() or GOLDEN.read_bytes() != composed:
            print(f"{GOLDEN} is stale; rerun without --check", file=sys.stderr)
            return 1
        print(f"{GOLDEN} is up to date ({len(composed.splitlines())} records)")
        return 0

    GOLDEN.write_bytes(composed)
    print(f"wrote {GOLDEN} ({len(composed.splitlines())} records)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
