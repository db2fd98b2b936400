"""Sweep the similarity band over the fixture corpus and report funnel sizes.

Prints one TSV row per (low_threshold, dup_threshold) pair: pool size, how
many candidates the band keeps, how many survive both dedup passes, and the
corpus-level pass rate. Useful for eyeballing how tight the band can be
before the pipeline stops producing output.
"""

from __future__ import annotations

import argparse
from pathlib import Path

from uttergen.cli import run_pipeline
from uttergen.config import default_config, load_settings
from uttergen.core import read_articles

REPO_ROOT = Path(__file__).resolve().parents[1]

DEFAULT_LOWS = (0.3, 0.4, 0.5, 0.6, 0.7)
DEFAULT_DUPS = (0.9, 0.95, 0.99)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--input",
        default=str(REPO_ROOT / "tests" / "data" / "articles.jsonl"),
        help="article JSONL file",
    )
    parser.add_argument(
        "--lows", type=float, nargs="+", default=list(DEFAULT_LOWS),
        help="low band edges to sweep",
    )
    parser.add_argument(
        "--dups", type=float, nargs="+", default=list(DEFAULT_DUPS),
        help="duplicate band edges to sweep",
    )
    args = parser.parse_args()

    articles = read_articles(args.input)
    print("low\tdup\tpool\tfiltered\tselected\tpass_rate")
    for low in args.lows:
        for dup in args.dups:
            if low >= dup:
                continue
            raw = default_config()
            raw["selection"]["low_threshold"] = low
            raw["selection"]["dup_threshold"] = dup
            settings = load_settings(raw)
            _, report = run_pipeline(settings, articles, workers=1)
            print(
                f"{low:.2f}\t{dup:.2f}\t{report['pool_candidates']}"
                f"\t{report['filter_kept']}\t{report['selected']}"
                f"\t{report['filter_pass_rate']:.3f}"
            )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
