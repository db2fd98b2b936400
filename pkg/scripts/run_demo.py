"""Run the pipeline on the bundled article fixture and print what it selects.

Usage:
    python scripts/run_demo.py [--input articles.jsonl] [--max-per-sentence 3]
"""

from __future__ import annotations

import argparse
from pathlib import Path

from uttergen.cli import run_pipeline
from uttergen.config import default_config, load_settings
from uttergen.core import read_articles

REPO_ROOT = Path(__file__).resolve().parents[1]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--input",
        default=str(REPO_ROOT / "tests" / "data" / "articles.jsonl"),
        help="article JSONL file",
    )
    parser.add_argument(
        "--max-per-sentence",
        type=int,
        default=3,
        help="utterances to print per source sentence",
    )
    args = parser.parse_args()

    settings = load_settings(default_config())
    articles = read_articles(args.input)
    records, report = run_pipeline(settings, articles, workers=1)

    by_sentence: dict[tuple[str, str], list[dict]] = {}
    for record in records:
        by_sentence.setdefault(
            (record["article_id"], record["source_sentence"]), []
        ).append(record)

    for (article_id, sentence), rows in by_sentence.items():
        print(f"{article_id}  {sentence!r}")
        for row in rows[: args.max_per_sentence]:
            print(
                f"    {row['utterance']!r}"
                f"  [{row['technique']}, sim={row['encoder_similarity']:.3f},"
                f" tiebreak={row['tiebreak']:.3f}]"
            )
    print()
    print(
        f"articles={report['articles']}"
        f" sentences={report['sentences']}"
        f" pool={report['pool_candidates']}"
        f" filtered={report['filter_kept']}"
        f" selected={report['selected']}"
        f" pass_rate={report['filter_pass_rate']:.3f}"
    )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
