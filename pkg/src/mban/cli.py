"""Command-line entry point: ``mban gen|verify|evolve|enumerate|stats``.

JSON goes to standard output, diagnostics to standard error.  Exit codes:
0 success (or "solves"), 1 "does not solve", 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys
import time
from pathlib import Path

from . import __version__, graphio
from .core import Configuration, MajorityNetwork, default_max_steps, evolve, network_metrics
from .enumeration import UniverseOptions, enumerate_solvers
from .errors import BudgetExceeded, MbanError
from .families import FAMILY_NAMES, build_family
from .verify import convergence_profile, verify_dct_exhaustive, verify_dct_sampled

log = logging.getLogger("mban")

EXIT_OK = 0
EXIT_NOT_SOLVED = 1
EXIT_USAGE = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _read_input(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    return Path(path).read_bytes()


def _load_graph(path: str):
    raw = _read_input(path)
    try:
        graph = graphio.loads(raw.decode("utf-8"))
    except MbanError as exc:
        raise MbanError(f"{path}: {exc}") from None
    return graph, hashlib.sha256(raw).hexdigest()


def _manifest(args, started, digests=None, seeds=None):
    return {
        "command": list(args.argv),
        "version": __version__,
        "seeds": seeds or [],
        "inputs": digests or {},
        "jobs": getattr(args, "jobs", 1),
        "wall_clock_seconds": round(time.monotonic() - started, 3),
    }


def _emit_text(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _emit_report(doc: dict, out: str | None = None):
    _emit_text(json.dumps(doc, indent=2) + "\n", out)


def cmd_gen(args) -> int:
    inner = None
    if args.inner:
        inner, _ = _load_graph(args.inner)
    graph = build_family(args.family, args.n, cross_point=args.cross, inner=inner)
    _emit_text(graphio.dumps(graph, args.format), args.out)
    return EXIT_OK


def cmd_verify(args, started) -> int:
    graph, digest = _load_graph(args.graph)
    net = MajorityNetwork(graph)
    if args.samples is not None:
        verdict = verify_dct_sampled(
            net, args.samples, args.seed, jobs=args.jobs, max_steps=args.max_steps
        )
        seeds = [args.seed]
    else:
        verdict = verify_dct_exhaustive(net, jobs=args.jobs)
        seeds = []
    doc = verdict.to_dict()
    doc["manifest"] = _manifest(args, started, {args.graph: digest}, seeds)
    _emit_report(doc, args.out)
    return EXIT_OK if verdict.solves else EXIT_NOT_SOLVED


def cmd_evolve(args) -> int:
    graph, _ = _load_graph(args.graph)
    net = MajorityNetwork(graph)
    x = Configuration.from_text(args.init)
    if x.n != graph.n:
        raise MbanError(f"initial configuration has {x.n} automata, graph has {graph.n}")
    max_steps = args.max_steps or default_max_steps(graph.n)
    outcome = evolve(net, x, max_steps=max_steps)
    bits = x.bits
    lines = []
    for _ in range(outcome.transient + outcome.cycle_length):
        lines.append(Configuration(x.n, bits).to_text())
        bits = net.step_bits(bits)
    lines.append(f"transient={outcome.transient} cycle={outcome.cycle_length}")
    _emit_text("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _options(args) -> UniverseOptions:
    return UniverseOptions(
        no_self_loops=args.no_self_loops,
        odd_degrees_only=args.odd_degrees_only,
        weakly_connected=args.weakly_connected,
    )


def cmd_enumerate(args, started) -> int:
    max_n = args.n if args.allow_large else 5
    if args.all_variants:
        variants = []
        for flags in range(8):
            opts = UniverseOptions.from_flags(flags)
            census = enumerate_solvers(args.n, opts, jobs=args.jobs, max_n=max_n)
            variants.append(census.to_dict(count_only=True))
        doc = {"format": "mban-census-variants-v1", "n": args.n, "variants": variants}
    else:
        census = enumerate_solvers(
            args.n, _options(args), jobs=args.jobs, resume=args.resume, max_n=max_n
        )
        doc = census.to_dict(count_only=args.count_only)
    doc["manifest"] = _manifest(args, started)
    _emit_report(doc, args.out)
    return EXIT_OK


def cmd_stats(args, started) -> int:
    graph, digest = _load_graph(args.graph)
    m = network_metrics(graph)
    doc = {
        "format": "mban-stats-v1",
        "n": graph.n,
        "metrics": {
            "edge_count": m.edge_count,
            "distinct_in_degrees": m.distinct_in_degrees,
            "max_in_degree": m.max_in_degree,
            "non_omniscient": m.non_omniscient,
        },
        "profile": None,
    }
    if graph.n % 2 == 1:
        profile = convergence_profile(graph, jobs=args.jobs)
        doc["profile"] = [
            {"ones": d, "max_transient": mx, "mean_transient": round(mean, 6)}
            for d, (mx, mean) in sorted(profile.items())
        ]
        doc["max_transient"] = max(mx for mx, _ in profile.values())
    doc["manifest"] = _manifest(args, started, {args.graph: digest})
    _emit_report(doc, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mban", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    jobs_default = os.cpu_count() or 1

    p = sub.add_parser("gen", help="emit a family graph")
    p.add_argument("family", choices=FAMILY_NAMES)
    p.add_argument("--n", type=int)
    p.add_argument("--cross", type=int, help="cross point for two-cycles")
    p.add_argument("--inner", help="inner graph file for generated")
    p.add_argument("--format", choices=graphio.FORMATS, default="json")
    p.add_argument("--out")

    p = sub.add_parser("verify", help="decide whether a graph's MBAN solves the DCT")
    p.add_argument("graph", help="graph file, or - for stdin")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true", help="check all 2^n configurations (default)")
    mode.add_argument("--samples", type=int, help="stratified random configurations instead")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-steps", type=int)
    p.add_argument("--jobs", type=int, default=jobs_default)
    p.add_argument("--out")

    p = sub.add_parser("evolve", help="print the orbit of one configuration")
    p.add_argument("graph")
    p.add_argument("--init", required=True, help="0/1 string, character i is automaton i")
    p.add_argument("--max-steps", type=int)
    p.add_argument("--out")

    p = sub.add_parser("enumerate", help="census of DCT solvers up to isomorphism")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--no-self-loops", action="store_true")
    p.add_argument("--odd-degrees-only", action="store_true")
    p.add_argument("--weakly-connected", action="store_true")
    p.add_argument("--all-variants", action="store_true", help="count every universe narrowing")
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--resume", type=Path, help="checkpoint file to continue from and update")
    p.add_argument("--allow-large", action="store_true", help="permit n > 5")
    p.add_argument("--jobs", type=int, default=jobs_default)
    p.add_argument("--out")

    p = sub.add_parser("stats", help="difficulty metrics and convergence profile")
    p.add_argument("graph")
    p.add_argument("--jobs", type=int, default=jobs_default)
    p.add_argument("--out")
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    args.argv = argv
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    if getattr(args, "jobs", 1) < 1:
        print("mban: error: --jobs must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    started = time.monotonic()
    try:
        if args.command == "gen":
            return cmd_gen(args)
        if args.command == "verify":
            return cmd_verify(args, started)
        if args.command == "evolve":
            return cmd_evolve(args)
        if args.command == "enumerate":
            return cmd_enumerate(args, started)
        return cmd_stats(args, started)
    except (MbanError, BudgetExceeded) as exc:
        print(f"mban: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"mban: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
