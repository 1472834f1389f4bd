"""
Command line front end.

Results go to stdout as JSON (or graph text for `gen` and `reduce`); a
RunReport line and all diagnostics go to stderr. Exit status is 0 on
success, 1 when a check fails and 2 on usage or parse errors.
"""
import argparse
import json
import os
import sys
import time

from dotenv import load_dotenv, find_dotenv

load_dotenv(find_dotenv(usecwd=True))
# Loggers read LOG_LEVEL when first created, so this must precede the app imports
os.environ.setdefault("LOG_LEVEL", "WARNING")

from app.api.error_utilities import DomainError, GenerationError, GraphParseError, InvariantError, StructureError  # noqa: E402
from app.features.clawfree.construction import construct_large_two_regular  # noqa: E402
from app.features.clawfree.core import clawfree_payload  # noqa: E402
from app.features.exact.core import exact_payload  # noqa: E402
from app.features.exact.tools import SearchBudget, max_induced_two_regular  # noqa: E402
from app.features.families.core import render_graph  # noqa: E402
from app.features.families.tools import generate_family  # noqa: E402
from app.features.greedy.core import greedy_payload  # noqa: E402
from app.features.hardness.core import reduce_payload  # noqa: E402
from app.features.hardness.tools import reduce_independent_set  # noqa: E402
from app.features.verify.tools import parse_vertex_list, verify_set  # noqa: E402
from app.services.bench import ALL, SUITES, format_table, run_bench  # noqa: E402
from app.services.graph_io import emit_graph, format_for_path, parse_graph, read_graph_file, resolve_format  # noqa: E402
from app.services.logger import setup_logger  # noqa: E402
from app.services.schemas import RunReport  # noqa: E402

logger = setup_logger(__name__)

DEFAULT_SEED = 7
EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE = 0, 1, 2


def default_seed() -> int:
    value = os.environ.get("CIND_SEED")
    if not value:
        return DEFAULT_SEED
    try:
        return int(value)
    except ValueError:
        raise DomainError(f"CIND_SEED must be an integer, got {value!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cind", description="Induced 2-regular subgraphs of graphs.")
    commands = parser.add_subparsers(dest="command", required=True)

    def command(name, help_text, graph_file=True):
        sub = commands.add_parser(name, help=help_text)
        if graph_file:
            sub.add_argument("file", help="graph file; .g6 is graph6 and .el is an edge list")
            sub.add_argument("--format", choices=["graph6", "edgelist"], help="override the format given by the extension")
        sub.add_argument("--seed", type=int, default=None, help=f"random seed (default: $CIND_SEED or {DEFAULT_SEED})")
        return sub

    gen = command("gen", "write a graph of a family", graph_file=False)
    gen.add_argument("family", help="necklace K | tightness K | fixture NAME [K] | clawfree T D | cubic N | multigraph N")
    gen.add_argument("params", nargs="*")
    gen.add_argument("--format", choices=["graph6", "edgelist"], default="graph6")

    exact = command("exact", "largest induced 2-regular subgraph by exhaustive search")
    exact.add_argument("--nodes", type=int, default=None, help="search node limit")
    exact.add_argument("--time", type=float, default=None, help="search time limit in seconds")

    command("greedy", "greedy shortest-cycle construction with its certified bound")
    command("clawfree", "construction beating 13n/20 on cubic claw-free graphs")

    reduce = command("reduce", "reduction from independent set on cubic graphs")
    reduce.add_argument("--sidecar", help="write the gadget cycle map as JSON to this path")

    verify = command("verify", "check that a vertex set induces a 2-regular subgraph")
    verify.add_argument("--set", dest="vertices", required=True, help="comma-separated vertex ids")

    bench = command("bench", "run the acceptance suites", graph_file=False)
    bench.add_argument("--suite", choices=list(SUITES) + [ALL], default=ALL)
    bench.add_argument("--json", action="store_true", help="print the BenchReport as JSON instead of a table")

    return parser


def load_graph(args):
    if args.format is None:
        return read_graph_file(args.file)
    with open(args.file, "r", encoding="utf-8") as f:
        return parse_graph(f.read(), resolve_format(args.format))


def run_gen(args, seed, out):
    graph = generate_family(args.family, args.params, seed)
    out.write(render_graph(graph, resolve_format(args.format)))
    return {"family": args.family, "params": args.params, "n": graph.n}, EXIT_OK


def run_exact(args, seed, out):
    # 0 means no limit, as for the HTTP tool
    budget = SearchBudget(node_limit=args.nodes or None, time_limit=args.time or None)
    payload = exact_payload(max_induced_two_regular(load_graph(args), budget))
    out.write(payload.model_dump_json() + "\n")
    return payload, EXIT_OK


def run_greedy(args, seed, out):
    payload = greedy_payload(load_graph(args))
    out.write(payload.model_dump_json() + "\n")
    return payload, EXIT_OK


def run_clawfree(args, seed, out):
    payload = clawfree_payload(construct_large_two_regular(load_graph(args)))
    out.write(payload.model_dump_json() + "\n")
    return payload, EXIT_OK


def run_reduce(args, seed, out):
    reduction = reduce_independent_set(load_graph(args))
    payload = reduce_payload(reduction)
    fmt = resolve_format(args.format) if args.format else format_for_path(args.file)

    if args.sidecar:
        with open(args.sidecar, "w", encoding="utf-8") as f:
            f.write(payload.model_dump_json() + "\n")
    else:
        out.write(payload.model_dump_json() + "\n")
    out.write(emit_graph(reduction.target, fmt))
    return payload, EXIT_OK


def run_verify(args, seed, out):
    payload = verify_set(load_graph(args), parse_vertex_list(args.vertices))
    out.write(payload.model_dump_json() + "\n")
    if not payload.valid:
        print(f"vertex {payload.vertex} has {payload.in_degree} neighbours in the set, expected 2", file=sys.stderr)
        return payload, EXIT_CHECK_FAILED
    return payload, EXIT_OK


def run_bench_command(args, seed, out):
    report = run_bench(args.suite, seed)
    if args.json:
        out.write(report.model_dump_json() + "\n")
    else:
        out.write("\n".join(format_table(report)) + "\n")
    return report, EXIT_OK if report.passed else EXIT_CHECK_FAILED


COMMANDS = {
    "gen": run_gen,
    "exact": run_exact,
    "greedy": run_greedy,
    "clawfree": run_clawfree,
    "reduce": run_reduce,
    "verify": run_verify,
    "bench": run_bench_command,
}


def cli_main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        # argparse exits with 0 after --help
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    start = time.monotonic()
    try:
        seed = args.seed if args.seed is not None else default_seed()
        payload, code = COMMANDS[args.command](args, seed, out)

    except (DomainError, GraphParseError, OSError) as e:
        logger.error(f"{args.command}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    except (GenerationError, StructureError, InvariantError) as e:
        logger.error(f"{args.command} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CHECK_FAILED

    report = RunReport(
        input=getattr(args, "file", None) or args.command,
        operation=args.command,
        payload=payload.model_dump() if hasattr(payload, "model_dump") else payload,
        wall_ms=int((time.monotonic() - start) * 1000),
        seed=seed,
    )
    print(json.dumps(report.model_dump(), default=str), file=sys.stderr)
    return code


def main():
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
