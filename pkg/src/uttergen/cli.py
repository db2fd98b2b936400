"""Command-line entry points: the paraphrase pipeline and the eval commands."""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Sequence

from .backends import BackendError
from .config import ConfigError, PipelineSettings, read_settings
from .core import Article, Origin, SourceSentence, read_articles
from .evaluate import corpus_bleu, load_annotations, load_outputs, load_references, usefulness_metrics
from .generate import ALL_TECHNIQUES, GenerationReport, generate_pool
from .select import select_candidates
from .summarize import select_sentences

__all__ = ["main", "run_pipeline"]

EXIT_OK = 0
EXIT_CONFIG_ERROR = 2
EXIT_UNREADABLE_INPUT = 3
EXIT_BACKENDS_UNAVAILABLE = 4
EXIT_EVAL_ID_MISMATCH = 5

CONFIG_ENV_VAR = "UTTERGEN_CONFIG"


def _sentence_records(
    article: Article, settings: PipelineSettings
) -> tuple[list[dict[str, Any]], list[dict[str, Any]]]:
    """Process one article; returns (output records, per-sentence report rows)."""
    sentences = [
        SourceSentence(article_id=article.id, text=article.title, origin=Origin.TITLE, index=0)
    ]
    sentences.extend(
        select_sentences(
            article.description,
            settings.backends.encoder,
            m=settings.summary_sentences,
            article_id=article.id,
        )
    )
    records: list[dict[str, Any]] = []
    sentence_rows: list[dict[str, Any]] = []
    for sentence in sentences:
        report = GenerationReport()
        row: dict[str, Any] = {
            "article_id": article.id,
            "origin": sentence.origin.value,
            "index": sentence.index,
        }
        stage_sizes: dict[str, int] = {}
        try:
            pool = generate_pool(
                sentence, settings.backends, settings.lexicons, settings.generation, report
            )
            selected = select_candidates(
                pool, sentence, settings.backends, settings.lexicons, settings.selection,
                stats=stage_sizes,
            )
        except BackendError as exc:
            row.update(
                {
                    "technique_counts": {t.value: report.counts.get(t, 0) for t in ALL_TECHNIQUES},
                    "failures": [[t.value, msg] for t, msg in report.failures],
                    "error": str(exc),
                }
            )
            sentence_rows.append(row)
            continue
        row.update(
            {
                "technique_counts": {t.value: report.counts.get(t, 0) for t in ALL_TECHNIQUES},
                "pool_pre_dedup": sum(report.counts.get(t, 0) for t in ALL_TECHNIQUES),
                "pool": len(pool),
                "filtered": stage_sizes.get("filtered", 0),
                "selected": len(selected),
                "failures": [[t.value, msg] for t, msg in report.failures],
            }
        )
        sentence_rows.append(row)
        for sc in selected:
            records.append(
                {
                    "article_id": article.id,
                    "source_sentence": sentence.text,
                    "origin": sentence.origin.value,
                    "utterance": sc.candidate.text,
                    "technique": sc.candidate.technique.value,
                    "encoder_similarity": sc.encoder_similarity,
                    "tiebreak": sc.tiebreak,
                }
            )
    return records, sentence_rows


def run_pipeline(
    settings: PipelineSettings,
    articles: Sequence[Article],
    workers: int | None = None,
) -> tuple[list[dict[str, Any]], dict[str, Any]]:
    """Run the full pipeline over articles with a bounded worker pool.

    Articles are processed concurrently but collected in input order, so
    results are identical for any worker-pool size. Returns the output
    records and the run report.
    """
    pool_size = workers or settings.workers or os.cpu_count() or 1
    with ThreadPoolExecutor(max_workers=pool_size) as executor:
        per_article = list(executor.map(lambda a: _sentence_records(a, settings), articles))

    records: list[dict[str, Any]] = []
    sentence_rows: list[dict[str, Any]] = []
    for article_records, article_rows in per_article:
        records.extend(article_records)
        sentence_rows.extend(article_rows)

    technique_totals = {
        t.value: sum(row["technique_counts"].get(t.value, 0) for row in sentence_rows)
        for t in ALL_TECHNIQUES
    }
    failures = [
        {"article_id": row["article_id"], "origin": row["origin"], "index": row["index"],
         "technique": technique, "error": message}
        for row in sentence_rows
        for technique, message in row.get("failures", [])
    ]
    failed_sentences = [row for row in sentence_rows if "error" in row]
    pool_total = sum(row.get("pool", 0) for row in sentence_rows)
    filtered_total = sum(row.get("filtered", 0) for row in sentence_rows)
    selected_total = sum(row.get("selected", 0) for row in sentence_rows)
    report = {
        "articles": len(articles),
        "sentences": len(sentence_rows),
        "sentences_failed": len(failed_sentences),
        "technique_counts": technique_totals,
        "pool_candidates": pool_total,
        "filter_kept": filtered_total,
        "filter_pass_rate": (filtered_total / pool_total) if pool_total else 0.0,
        "selected": selected_total,
        "backend_failures": failures,
        "per_sentence": sentence_rows,
    }
    return records, report


def _cmd_pipeline(args: argparse.Namespace) -> int:
    config_path = args.config or os.environ.get(CONFIG_ENV_VAR)
    if not config_path:
        print(
            f"error: no config given; pass --config or set {CONFIG_ENV_VAR}", file=sys.stderr
        )
        return EXIT_CONFIG_ERROR
    try:
        settings = read_settings(config_path)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR

    try:
        articles = read_articles(args.input)
    except (OSError, ValueError) as exc:
        print(f"error: cannot read input {args.input!r}: {exc}", file=sys.stderr)
        return EXIT_UNREADABLE_INPUT

    records, report = run_pipeline(settings, articles, workers=args.workers)

    try:
        with open(args.output, "w", encoding="utf-8") as handle:
            for record in records:
                handle.write(json.dumps(record, ensure_ascii=False) + "\n")
    except OSError as exc:
        print(f"error: cannot write output {args.output!r}: {exc}", file=sys.stderr)
        return EXIT_UNREADABLE_INPUT

    report_json = json.dumps(report, ensure_ascii=False, indent=2)
    if args.report:
        try:
            with open(args.report, "w", encoding="utf-8") as handle:
                handle.write(report_json + "\n")
        except OSError as exc:
            print(f"error: cannot write report {args.report!r}: {exc}", file=sys.stderr)
            return EXIT_UNREADABLE_INPUT
    else:
        print(report_json, file=sys.stderr)

    sentences = report["sentences"]
    if sentences and report["sentences_failed"] == sentences:
        print("error: all sentences failed with backend errors", file=sys.stderr)
        return EXIT_BACKENDS_UNAVAILABLE
    return EXIT_OK


def _cmd_eval_bleu(args: argparse.Namespace) -> int:
    try:
        outputs = load_outputs(args.outputs)
        references = load_references(args.references)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNREADABLE_INPUT
    try:
        score = corpus_bleu(outputs, references)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EVAL_ID_MISMATCH
    print(json.dumps({"corpus_bleu": score}))
    return EXIT_OK


def _cmd_eval_manual(args: argparse.Namespace) -> int:
    try:
        annotations = load_annotations(args.annotations)
        avg_fraction, avg_number = usefulness_metrics(annotations)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNREADABLE_INPUT
    print(json.dumps({"avg_fraction": avg_fraction, "avg_number": avg_number}))
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="uttergen",
        description="Generate and select paraphrased utterances for knowledge-base articles.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    pipeline = subparsers.add_parser("pipeline", help="run the paraphrase pipeline")
    pipeline.add_argument("--input", required=True, help="article JSONL file")
    pipeline.add_argument("--output", required=True, help="utterance JSONL file to write")
    pipeline.add_argument(
        "--config", help=f"JSON config file (falls back to ${CONFIG_ENV_VAR})"
    )
    pipeline.add_argument("--report", help="write the run report JSON here instead of stderr")
    pipeline.add_argument("--workers", type=int, help="worker pool size (default: CPU count)")
    pipeline.set_defaults(func=_cmd_pipeline)

    evaluate = subparsers.add_parser("eval", help="evaluation utilities")
    eval_sub = evaluate.add_subparsers(dest="eval_command", required=True)

    bleu_cmd = eval_sub.add_parser("bleu", help="corpus BLEU of outputs against references")
    bleu_cmd.add_argument("--outputs", required=True, help="utterance JSONL file")
    bleu_cmd.add_argument("--references", required=True, help="reference JSONL file")
    bleu_cmd.set_defaults(func=_cmd_eval_bleu)

    manual_cmd = eval_sub.add_parser("manual", help="usefulness metrics from 0/1 annotations")
    manual_cmd.add_argument("--annotations", required=True, help="annotation JSONL file")
    manual_cmd.set_defaults(func=_cmd_eval_manual)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
