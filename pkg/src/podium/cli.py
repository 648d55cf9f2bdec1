"""Command-line pipeline driver.

Exit codes: 0 success, 1 validation/data failure, 2 usage error (argparse's
own convention).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .corpus import CorpusError, load_corpus, save_corpus
from .synth import SynthConfig, synth_corpus
from .workspace import Config, Workspace


def _add_workspace_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--corpus", required=True, help="corpus directory")
    p.add_argument("--out", default="out", help="artifact cache directory")
    p.add_argument("--config", default=None, help="JSON config file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="podium", description="speech-effectiveness analytics workbench")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="generate a deterministic synthetic corpus")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True, help="target corpus directory")
    p.add_argument("--per-level", type=int, default=8)
    p.add_argument("--shift", type=float, default=0.08, help="planted per-level mean shift")

    p = sub.add_parser("validate", help="load and validate a corpus")
    p.add_argument("--corpus", required=True)

    for name, help_text in [
        ("factors", "compute the factor table"),
        ("analyze", "fit ordinal models for every factor"),
        ("embed", "compute the similarity embedding"),
    ]:
        p = sub.add_parser(name, help=help_text)
        _add_workspace_args(p)

    p = sub.add_parser("layout", help="emit all layout documents")
    _add_workspace_args(p)
    p.add_argument("--svg", action="store_true", help="also emit reference SVG files")

    p = sub.add_parser("serve", help="serve artifacts and the UI")
    _add_workspace_args(p)
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except (CorpusError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _dispatch(args) -> int:
    if args.command == "synth":
        config = SynthConfig(speeches_per_level=args.per_level, level_shift=args.shift)
        corpus = synth_corpus(config, args.seed)
        save_corpus(corpus, args.out)
        print(f"wrote {len(corpus)} speeches to {args.out}")
        return 0

    if args.command == "validate":
        corpus = load_corpus(args.corpus)
        print(f"{len(corpus)} speeches OK")
        return 0

    ws = Workspace(args.corpus, args.out, Config.from_file(args.config))

    if args.command == "factors":
        table = ws.ensure_factors()
        print(f"factor table {len(table.speech_ids)}x{len(table.factor_names)} -> {ws.cache_dir / 'factors.csv'}")
        return 0

    if args.command == "analyze":
        report = ws.ensure_analysis()
        n_sig = sum(1 for r in report.results if r.significant)
        print(f"analyzed {len(report.results)} factors ({n_sig} significant, {len(report.skipped)} skipped) -> {ws.cache_dir / 'analysis.json'}")
        return 0

    if args.command == "embed":
        doc = ws.ensure_embedding()
        print(f"embedded {len(doc['points'])} speeches (kl={doc['kl_final']:.4f}) -> {ws.cache_dir / 'embedding.json'}")
        return 0

    if args.command == "layout":
        count = ws.write_all_layouts(emit_svg=args.svg)
        print(f"wrote {count} layout documents -> {ws.cache_dir / 'layouts'}")
        return 0

    if args.command == "serve":
        import uvicorn

        from .server import create_app

        app = create_app(ws)
        print(f"serving {len(ws.corpus())} speeches on {args.host}:{args.port}")
        uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
        return 0

    raise ValueError(f"unknown command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())
