"""Command line front door: inspect documents, run matches, evaluate, serve.

Exit codes: 0 success, 1 runtime failure, 2 usage or parse errors. Machine
output is TSV on stdout with dot-decimal numbers at 4 decimal places;
diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import socket
import sys
from pathlib import Path

from . import documents, evaluation, ontology
from .engine import MatchConfig, Query, Strategy, match
from .errors import ParseError, SawmatchError
from .similarity import SimAlgorithm

DATA_DIR_ENV = "SAWMATCH_DATA"


def _fail(message: str, code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _load_graph(ontologies_dir) -> ontology.ClassGraph:
    graph = ontology.ClassGraph.empty()
    if ontologies_dir is None:
        return graph
    for entry in sorted(Path(ontologies_dir).iterdir()):
        if entry.is_file() and entry.suffix.lower() in (".owl", ".rdf", ".xml"):
            graph = ontology.merge(graph, ontology.load_ontology(entry.read_bytes()))
    return graph


def _build_config(args, strategy: Strategy) -> MatchConfig:
    return MatchConfig(
        strategy=strategy,
        sim=SimAlgorithm.of(args.sim),
        weight=args.weight,
        rating_threshold=args.threshold,
    )


def cmd_inspect(args) -> int:
    try:
        desc = documents.parse_document(Path(args.file).read_bytes(), source_id=Path(args.file).name)
    except OSError as exc:
        return _fail(str(exc), 1)
    except ParseError as exc:
        return _fail(str(exc), 2)

    for warning in desc.warnings:
        print(f"warning: {warning}", file=sys.stderr)

    if args.format == "tsv":
        print("interface\toperation\tinput_annotations\toutput_annotations\tinput_names\toutput_names")
        for itf in desc.interfaces:
            for op in itf.operations:
                in_ann, out_ann, in_names, out_names = documents.extract_io(op)
                print(
                    "\t".join(
                        [
                            itf.name,
                            op.name,
                            " ".join(sorted(in_ann)),
                            " ".join(sorted(out_ann)),
                            " ".join(sorted(in_names)),
                            " ".join(sorted(out_names)),
                        ]
                    )
                )
        return 0

    print(f"service: {desc.service_name}  (source: {desc.source_id})")
    for itf in desc.interfaces:
        print(f"interface: {itf.name}")
        for op in itf.operations:
            in_ann, out_ann, in_names, out_names = documents.extract_io(op)
            print(f"  operation: {op.name}")
            print(f"    input annotations:  {', '.join(sorted(in_ann)) or '-'}")
            print(f"    output annotations: {', '.join(sorted(out_ann)) or '-'}")
            print(f"    input names:  {', '.join(sorted(in_names)) or '-'}")
            print(f"    output names: {', '.join(sorted(out_names)) or '-'}")
    return 0


def cmd_match(args) -> int:
    inputs = tuple(args.input or ())
    outputs = tuple(args.output or ())
    if not inputs and not outputs:
        print("error: at least one --input or --output is required", file=sys.stderr)
        return 2
    try:
        strategy = Strategy(args.strategy)
        cfg = _build_config(args, strategy)
        graph = _load_graph(args.ontologies)
        descriptions, failures = documents.load_directory(args.collection)
        for name, msg in failures:
            print(f"warning: skipped {name}: {msg}", file=sys.stderr)
        index = [e for d in descriptions for e in documents.build_index_entries(d)]
        index.sort(key=lambda e: (e.service_id, e.interface_name, e.operation_name))
        query = Query(inputs=inputs, outputs=outputs, query_name=args.query_name)
        results = match(query, index, graph, cfg)
    except SawmatchError as exc:
        return _fail(str(exc), 2)
    except (OSError, ValueError) as exc:
        return _fail(str(exc), 1)

    print("rank\trating\ttier\tservice\tinterface\toperation")
    for rank, r in enumerate(results, 1):
        print(
            f"{rank}\t{r.rating:.4f}\t{r.tier.label}\t{r.service_id}"
            f"\t{r.interface_name}\t{r.operation_name}"
        )
    return 0


DEFAULT_EVAL_CONFIGS = [
    {"strategy": "logic"},
    {"strategy": "syn-on-syn", "sim": "monge-elkan"},
    {"strategy": "syn-on-syn", "sim": "jaro"},
    {"strategy": "syn-on-sem", "sim": "monge-elkan"},
    {"strategy": "syn-on-sem", "sim": "jaro"},
    {"strategy": "hybrid", "sim": "monge-elkan"},
    {"strategy": "hybrid", "sim": "jaro"},
    {"strategy": "name-first", "sim": "monge-elkan"},
]


def _configs_from_spec(spec: list[dict]) -> list[MatchConfig]:
    configs = []
    for entry in spec:
        configs.append(
            MatchConfig(
                strategy=Strategy(entry["strategy"]),
                sim=SimAlgorithm.of(entry.get("sim", "monge-elkan")),
                weight=entry.get("weight", 0.5),
                rating_threshold=entry.get("rating_threshold", 0.0),
                upper_rate=entry.get("upper_rate", 0.75),
                lower_rate=entry.get("lower_rate", 0.25),
            )
        )
    return configs


def cmd_eval(args) -> int:
    try:
        spec = (
            json.loads(Path(args.config).read_text()) if args.config else DEFAULT_EVAL_CONFIGS
        )
        configs = _configs_from_spec(spec)
        judged = evaluation.RelevanceJudgments.from_tsv(args.judgments)
        queries = evaluation.load_queries(args.queries)
        report = evaluation.run_evaluation(
            args.collection, args.ontologies, queries, judged, configs, allow_missing=True
        )
        written = evaluation.write_report_csvs(report, args.out)
    except SawmatchError as exc:
        return _fail(str(exc), 2)
    except (OSError, ValueError, KeyError) as exc:
        return _fail(str(exc), 1)

    for result in report.results:
        print(
            f"{result.name}\tAP={result.ap:.4f}\tnDCG={result.ndcg:.4f}\tQ={result.q:.4f}"
            f"\tqueries={report.query_count}\tper_query_s={result.per_query_s:.4f}"
        )
    for path in written:
        print(f"wrote {path}", file=sys.stderr)
    if report.skipped_queries:
        print(
            "skipped queries without judgments: " + ", ".join(report.skipped_queries),
            file=sys.stderr,
        )
        if not args.allow_missing:
            return 1
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .registry import RegistryStore, create_app

    host, _, port_text = args.listen.rpartition(":")
    host = host or "127.0.0.1"
    try:
        port = int(port_text)
    except ValueError:
        return _fail(f"invalid listen address '{args.listen}'", 2)

    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
    try:
        probe.bind((host, port))
    except OSError as exc:
        return _fail(f"cannot listen on {args.listen}: {exc}", 1)
    finally:
        probe.close()

    data_dir = args.data or os.environ.get(DATA_DIR_ENV)
    if not data_dir:
        return _fail(f"--data or ${DATA_DIR_ENV} is required", 2)
    store = RegistryStore(data_dir)
    app = create_app(store, ui_dir=args.ui)
    uvicorn.run(app, host=host, port=port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sawmatch",
        description="SAWSDL service matchmaking: inspect, match, evaluate, serve.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_inspect = sub.add_parser("inspect", help="print a document's parsed structure and extracted sets")
    p_inspect.add_argument("file")
    p_inspect.add_argument("--format", choices=("text", "tsv"), default="text")
    p_inspect.set_defaults(func=cmd_inspect)

    p_match = sub.add_parser("match", help="rank a directory of service documents against a query")
    p_match.add_argument("--collection", required=True, help="directory of WSDL/SAWSDL files")
    p_match.add_argument("--ontologies", help="directory of RDF/XML ontologies")
    p_match.add_argument(
        "--strategy",
        default="hybrid",
        choices=[s.value for s in Strategy],
    )
    p_match.add_argument("--sim", default="monge-elkan", choices=("monge-elkan", "jaro"))
    p_match.add_argument("--input", action="append", metavar="IRI")
    p_match.add_argument("--output", action="append", metavar="IRI")
    p_match.add_argument("--weight", type=float, default=0.5)
    p_match.add_argument("--threshold", type=float, default=0.0)
    p_match.add_argument("--query-name", dest="query_name")
    p_match.set_defaults(func=cmd_match)

    p_eval = sub.add_parser("eval", help="score configured strategies against relevance judgments")
    p_eval.add_argument("--collection", required=True)
    p_eval.add_argument("--ontologies")
    p_eval.add_argument("--queries", required=True, help="query directory or TSV file")
    p_eval.add_argument("--judgments", required=True, help="TSV of query_id, service_id, grade")
    p_eval.add_argument("--config", help="JSON list of strategy configurations")
    p_eval.add_argument("--out", default="eval-report", help="output directory for CSVs")
    p_eval.add_argument("--allow-missing", action="store_true")
    p_eval.set_defaults(func=cmd_eval)

    p_serve = sub.add_parser("serve", help="run the registry HTTP service")
    p_serve.add_argument("--data", help=f"data directory (or ${DATA_DIR_ENV})")
    p_serve.add_argument("--listen", default="127.0.0.1:8040")
    p_serve.add_argument("--ui", help="directory of built frontend assets to serve")
    p_serve.set_defaults(func=cmd_serve)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
