"""Operator CLI: one subcommand per pipeline stage.

Exit codes: 0 success, 1 usage error, 2 runtime error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from ..agent import run_episode, serialize_steps, step_kind, step_payload
from ..api_server import serve_catalog
from ..catalog import load_catalog
from ..errors import Kg2dataError
from ..evaluation import (
    GoldScriptedBackend,
    generate_pairs,
    load_cases,
    render_report,
    report_document,
    run_ablation,
    save_cases,
    significance,
)
from ..gateway import Cassette, Gateway
from ..kg.graph import load_alias_table, load_synonym_table, save_snapshot
from ..kg.pipeline import build_graph
from ..memory import load_corpus
from ..tools import ToolRegistry
from .config import load_config
from .context import MEMORY_KINDS, build_context
from .service import serve_sessions


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="kg2data", description="Knowledge-graph-augmented agent over virtual weather APIs.")
    parser.add_argument("--config", help="path to a JSON config file")
    sub = parser.add_subparsers(dest="command")

    s = sub.add_parser("serve-apis", help="run the virtual API server")
    s.add_argument("--host", default="127.0.0.1")
    s.add_argument("--port", type=int, default=8791)
    s.add_argument("--seed", type=int, default=None)

    s = sub.add_parser("build-kg", help="build the knowledge graph from a corpus")
    s.add_argument("--corpus", required=True)
    s.add_argument("--out", required=True)
    s.add_argument("--cassette", default=None)
    s.add_argument("--mode", default="replay_strict", choices=("replay_strict", "replay_fallthrough", "record"))
    s.add_argument("--resolution", type=float, default=1.0)
    s.add_argument("--seed", type=int, default=None)
    s.add_argument("--target-tokens", type=int, default=300)
    s.add_argument("--overlap", type=int, default=50)

    s = sub.add_parser("gen-pairs", help="generate instruction-answer pairs from the catalog")
    s.add_argument("--out", required=True)
    s.add_argument("--cassette", default=None)
    s.add_argument("--mode", default="replay_strict", choices=("replay_strict", "replay_fallthrough", "record"))
    s.add_argument("--per-api", type=int, default=2)

    s = sub.add_parser("chat", help="interactive line-oriented agent loop")
    s.add_argument("--memory", required=True, choices=MEMORY_KINDS)
    s.add_argument("--seed", type=int, default=None)

    s = sub.add_parser("eval", help="run the three-system ablation over the shipped cases")
    s.add_argument("--systems", default="kg,vector,null")
    s.add_argument("--cassettes", default=None)
    s.add_argument("--seed", type=int, default=None)
    s.add_argument("--mode", default="replay_strict", choices=("replay_strict", "replay_fallthrough"))
    s.add_argument("--out", default=None, help="reports directory")

    s = sub.add_parser("report", help="print the latest evaluation report table")
    s.add_argument("--reports", default=None)

    s = sub.add_parser("serve", help="run the chat session service")
    s.add_argument("--host", default="127.0.0.1")
    s.add_argument("--port", type=int, required=True)

    s = sub.add_parser("record-gold", help="record gold cassettes for the shipped cases")
    s.add_argument("--out", required=True)
    s.add_argument("--systems", default="kg,vector,null")
    s.add_argument("--seed", type=int, default=None)
    return parser


def _print_step(step, duration_ms: float) -> None:
    print(serialize_steps([step]), flush=True)


def cli_dispatch(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 1
    except SystemExit as e:  # --help exits with 0
        return int(e.code or 0)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 1
    try:
        config = load_config(args.config)
        return _run_command(args, config)
    except Kg2dataError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def _run_command(args, config) -> int:
    if args.command == "serve-apis":
        catalog = load_catalog(config.catalog_path)
        seed = config.seed if args.seed is None else args.seed
        server = serve_catalog(catalog, args.host, args.port, default_seed=seed)
        print(f"serving {len(catalog)} virtual APIs on {server.base_url} (Ctrl-C to stop)")
        try:
            server._thread.join()
        except KeyboardInterrupt:
            server.stop()
        return 0

    if args.command == "build-kg":
        corpus = load_corpus(args.corpus)
        aliases = load_alias_table(config.aliases_path) if Path(config.aliases_path).exists() else {}
        synonyms = load_synonym_table(config.synonyms_path) if Path(config.synonyms_path).exists() else {}
        cassette_file = Path(args.cassette) if args.cassette else config.kg_build_cassette
        if args.mode == "record":
            cassette = Cassette("record", path=cassette_file)
        else:
            cassette = Cassette.load(cassette_file, args.mode)
        gateway = Gateway(backend=None, cassette=cassette)
        seed = config.seed if args.seed is None else args.seed
        graph = build_graph(
            corpus,
            gateway,
            alias_table=aliases,
            synonym_table=synonyms,
            target_tokens=args.target_tokens,
            overlap=args.overlap,
            resolution=args.resolution,
            seed=seed,
        )
        save_snapshot(graph, args.out)
        print(
            f"graph written to {args.out}: {graph.node_count()} entities, "
            f"{graph.edge_count()} triples, {graph.hierarchy.num_levels} levels"
        )
        return 0

    if args.command == "gen-pairs":
        catalog = load_catalog(config.catalog_path)
        cassette_file = Path(args.cassette) if args.cassette else config.pairs_cassette
        if args.mode == "record":
            cassette = Cassette("record", path=cassette_file)
        else:
            cassette = Cassette.load(cassette_file, args.mode)
        cases = generate_pairs(catalog, Gateway(backend=None, cassette=cassette), per_api=args.per_api)
        save_cases(cases, args.out)
        print(f"{len(cases)} cases written to {args.out}")
        return 0

    if args.command == "chat":
        if args.seed is not None:
            config.seed = args.seed
        context = build_context(config)
        memory = context.backends[args.memory]
        print(f"chat with {args.memory} memory; empty line or Ctrl-D exits")
        while True:
            try:
                line = input("> ")
            except EOFError:
                break
            query = line.strip()
            if not query:
                break
            trace = run_episode(
                query=query,
                memory=memory,
                registry=context.registry,
                gateway=context.gateway_for(args.memory, query),
                config=context.agent_config,
                api_client=context.api_client,
                on_step=_print_step,
            )
            print(f"[status: {trace.status}]", flush=True)
        return 0

    if args.command == "eval":
        systems = [s.strip() for s in args.systems.split(",") if s.strip()]
        if args.seed is not None:
            config.seed = args.seed
        if args.cassettes is not None:
            config.cassette_dir = Path(args.cassettes)
        if args.out is not None:
            config.reports_dir = Path(args.out)
        context = build_context(config)
        reports, _ = run_ablation(
            context.cases,
            systems,
            context.backends,
            context.registry,
            context.api_client,
            config.cassette_dir,
            mode=args.mode,
            seed=config.seed,
            config=context.agent_config,
        )
        ordered = [reports[k] for k in ("kg", "vector", "null") if k in reports]
        marks = {}
        if "kg" in reports:
            for other in ("vector", "null"):
                if other in reports:
                    marks[reports[other].system] = significance(reports["kg"], reports[other])
        document = report_document(ordered, marks)
        config.reports_dir.mkdir(parents=True, exist_ok=True)
        out_file = config.reports_dir / "eval_report.json"
        out_file.write_text(document, encoding="utf-8")
        print(render_report(ordered, marks))
        print(f"report written to {out_file}")
        return 0

    if args.command == "report":
        reports_dir = Path(args.reports) if args.reports else config.reports_dir
        path = reports_dir / "eval_report.json"
        if not path.exists():
            print(f"error: no report at {path}", file=sys.stderr)
            return 2
        doc = json.loads(path.read_text(encoding="utf-8"))
        print(doc["table"])
        return 0

    if args.command == "serve":
        context = build_context(config)
        service = serve_sessions(context, args.host, args.port)
        print(f"session service on {service.base_url} (Ctrl-C to stop)")
        try:
            service._thread.join()
        except KeyboardInterrupt:
            service.stop()
        return 0

    if args.command == "record-gold":
        systems = [s.strip() for s in args.systems.split(",") if s.strip()]
        if args.seed is not None:
            config.seed = args.seed
        context = build_context(config)
        oracle = GoldScriptedBackend(context.cases)
        run_ablation(
            context.cases,
            systems,
            context.backends,
            context.registry,
            context.api_client,
            Path(args.out),
            mode="record",
            seed=config.seed,
            record_backend=oracle,
        )
        print(f"gold cassettes for {systems} written under {args.out}")
        return 0

    raise AssertionError(f"unhandled command {args.command}")


def main(argv=None) -> int:
    return cli_dispatch(argv)


if __name__ == "__main__":
    sys.exit(main())
