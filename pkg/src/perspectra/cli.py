"""Command line interface: ingest, search, serve, eval."""

from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources
from pathlib import Path

from .corpus import CorpusError, load_corpus
from .evalstats import (
    DEFAULT_P0,
    DEFAULT_REPEATS,
    DEFAULT_SAMPLE_SIZE,
    DegenerateSampleError,
    read_survey_csv,
    survey_report,
)
from .index import build_index, load_snapshot, save_snapshot
from .pipeline import InvalidQueryError, PipelineConfig, render_json, search

CONFIG_ENV_VAR = "PERSPECTRA_CONFIG"


def _demo_path(name: str) -> Path:
    return Path(str(resources.files("perspectra.data").joinpath(f"demo/{name}")))


def _default_trust_path() -> Path:
    return Path(str(resources.files("perspectra.data").joinpath("trusted_sources.txt")))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="perspectra",
        description="Perspective-oriented search over a local news corpus.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ingest = sub.add_parser("ingest", help="build an index snapshot from a corpus")
    ingest.add_argument("corpus", help="corpus JSONL file")
    ingest.add_argument("trust", nargs="?", default=None,
                        help="trust list (default: bundled list)")
    ingest.add_argument("--index", required=True, help="snapshot output path")

    search_p = sub.add_parser("search", help="run one query")
    search_p.add_argument("query")
    search_p.add_argument("--index", help="index snapshot from `ingest`")
    search_p.add_argument("--corpus", help="corpus JSONL (default: bundled demo corpus)")
    search_p.add_argument("--trust", help="trust list (default: bundled list)")
    search_p.add_argument("--config", help="pipeline config JSON")
    search_p.add_argument("--json", action="store_true", help="print the raw SearchResponse")
    search_p.add_argument("--k", type=int, default=None)
    search_p.add_argument("--seed", type=int, default=None)

    serve_p = sub.add_parser("serve", help="start the HTTP API")
    serve_p.add_argument("--index", help="index snapshot from `ingest`")
    serve_p.add_argument("--corpus", help="corpus JSONL (default: bundled demo corpus)")
    serve_p.add_argument("--trust", help="trust list (default: bundled list)")
    serve_p.add_argument("--config", help="pipeline config JSON")
    serve_p.add_argument("--addr", default="127.0.0.1:8080", help="host:port to bind")
    serve_p.add_argument("--seed", type=int, default=None)

    eval_p = sub.add_parser("eval", help="survey statistics")
    eval_p.add_argument("--ztest", metavar="CSV", required=True,
                        help="survey CSV with header question,response")
    eval_p.add_argument("--p0", type=float, default=DEFAULT_P0)
    eval_p.add_argument("--size", type=int, default=DEFAULT_SAMPLE_SIZE)
    eval_p.add_argument("--repeats", type=int, default=DEFAULT_REPEATS)
    eval_p.add_argument("--seed", type=int, default=0)

    return parser


def _load_config(args) -> PipelineConfig:
    path = getattr(args, "config", None) or os.environ.get(CONFIG_ENV_VAR)
    config = PipelineConfig.from_file(path) if path else PipelineConfig()
    overrides = {}
    if getattr(args, "k", None) is not None:
        overrides["k"] = args.k
    if getattr(args, "seed", None) is not None:
        overrides["seed"] = args.seed
    if overrides:
        from dataclasses import asdict

        config = PipelineConfig(**{**asdict(config), **overrides})
    return config


def _load_data(args):
    if getattr(args, "index", None):
        return load_snapshot(args.index)
    corpus_path = getattr(args, "corpus", None) or _demo_path("demo_corpus.jsonl")
    trust_path = getattr(args, "trust", None) or _default_trust_path()
    corpus = load_corpus(corpus_path, trust_path)
    return corpus, build_index(corpus)


def _cmd_ingest(args) -> int:
    trust_path = args.trust or _default_trust_path()
    corpus = load_corpus(args.corpus, trust_path)
    index = build_index(corpus)
    save_snapshot(args.index, corpus, index)
    print(f"indexed {len(corpus)} documents -> {args.index}")
    return 0


def _cmd_search(args) -> int:
    corpus, index = _load_data(args)
    config = _load_config(args)
    response = search(args.query, corpus, index, config)
    if args.json:
        sys.stdout.write(render_json(response))
        return 0
    _print_human(response)
    return 0


def _print_human(response) -> None:
    print(f"query: {response.query}")
    print(f"retrieved {response.retrieved} documents, dropped {response.dropped}")
    for stance in ("support", "refute", "neutral"):
        cards = response.clusters.get(stance, [])
        if not cards:
            continue
        print(f"\n== {stance} ({len(cards)}) ==")
        for card in cards:
            trusted = " [trusted]" if card["source"]["trusted"] else ""
            print(f"* {card['perspective']}")
            print(f"    {card['title']} — {card['source']['name']}{trusted}")
            for ev in card["evidence"]:
                print(f"    - {ev['text']}")


def _cmd_serve(args) -> int:
    from .service import serve

    corpus, index = _load_data(args)
    config = _load_config(args)
    serve(corpus, index, config, addr=args.addr)
    return 0


def _cmd_eval(args) -> int:
    samples = read_survey_csv(args.ztest)
    report = survey_report(
        samples, p0=args.p0, sample_size=args.size, repeats=args.repeats, seed=args.seed)
    print(json.dumps(report, ensure_ascii=False, indent=2))
    return 0


_COMMANDS = {
    "ingest": _cmd_ingest,
    "search": _cmd_search,
    "serve": _cmd_serve,
    "eval": _cmd_eval,
}


def cli(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except (CorpusError, InvalidQueryError, DegenerateSampleError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
