"""Command-line front end.

Subcommands: census, thresholds, spread, estimate-pc, family, verify.
JSON is the canonical output (CSV only for scaling tables); identical
configurations, seeds included, produce byte-identical output.  Exit
codes: 0 success, 1 input error, 2 capacity error, 3 acceptance failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import acceptance
from .census import subgraph_census
from .errors import CapacityError, InputError, ThreshlabError
from .export import (
    census_payload,
    certificate_payload,
    estimate_payload,
    render_json,
    scaling_csv,
    scaling_payload,
    threshold_payload,
)
from .families import FAMILY_KINDS, scaling_table
from .graphio import parse_graph, parse_graph6
from .graphs import Graph
from .mclab import ORACLE_KINDS, estimate_pc, exact_pc
from .spread import empirical_containment_rate, exact_containment_ratio, verify_spread_certificate
from .thresholds import compute_thresholds

THREADS_ENV = "THRESHLAB_THREADS"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _load_graph(path: str) -> Graph:
    p = Path(path)
    if not p.exists():
        raise InputError(f"graph file not found: {path}")
    text = p.read_text()
    if p.suffix in (".g6", ".graph6"):
        return parse_graph6(text)
    return parse_graph(text)


def _emit(args, text: str):
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _threads(args) -> int:
    if args.threads is not None:
        return max(1, args.threads)
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise InputError(f"{THREADS_ENV} must be an integer, got {env!r}")
    return 1


def _cmd_census(args) -> int:
    g = _load_graph(args.graph)
    classes = subgraph_census(
        g, connected_only=args.connected_only, threads=_threads(args)
    )
    _emit(args, render_json(census_payload(classes, n=args.n)) + "\n")
    return 0


def _cmd_thresholds(args) -> int:
    g = _load_graph(args.graph)
    report = compute_thresholds(g, args.n, subgraph_census(g, threads=_threads(args)))
    _emit(args, render_json(threshold_payload(report)) + "\n")
    return 0


def _cmd_spread(args) -> int:
    g = _load_graph(args.graph)
    census = subgraph_census(g, threads=_threads(args))
    report = compute_thresholds(g, args.n, census)
    cert = verify_spread_certificate(g, args.n, report, census)
    payload = certificate_payload(cert)
    if args.empirical:
        checks = []
        for margin in cert.worst_classes:
            cls = margin.subgraph
            if cls.representative is None:
                continue
            rate, se = empirical_containment_rate(
                g, args.n, cls.representative, args.samples, seed=args.seed
            )
            checks.append(
                {
                    "canonical_key": cls.key_text(),
                    "exact_ratio": exact_containment_ratio(census, args.n, cls),
                    "empirical_rate": rate,
                    "standard_error": se,
                    "samples": args.samples,
                }
            )
        payload["empirical"] = checks
    _emit(args, render_json(payload) + "\n")
    return 0


def _cmd_estimate_pc(args) -> int:
    g = _load_graph(args.graph)
    if args.exact:
        est = exact_pc(g, args.n, tol=min(args.tol, 1e-9))
    else:
        est = estimate_pc(
            g,
            args.n,
            samples_per_probe=args.samples,
            tol=args.tol,
            seed=args.seed,
            oracle=args.oracle,
            threads=_threads(args),
        )
    if args.plot:
        from .figures import render_trace_figure

        render_trace_figure(est, args.plot)
    _emit(args, render_json(estimate_payload(est)) + "\n")
    return 0


def _cmd_family(args) -> int:
    try:
        n_values = [int(tok) for tok in args.n_list.split(",") if tok.strip()]
    except ValueError:
        raise InputError(f"--n-list must be comma-separated integers, got {args.n_list!r}")
    if not n_values:
        raise InputError("--n-list is empty")
    rows = scaling_table(
        args.kind,
        n_values,
        with_pc=args.with_pc,
        param=args.param,
        samples_per_probe=args.samples,
        tol=args.tol,
        seed=args.seed,
        threads=_threads(args),
    )
    if args.plot:
        from .figures import render_scaling_figure

        render_scaling_figure(rows, args.plot, args.kind)
    if args.format == "csv":
        _emit(args, scaling_csv(rows))
    else:
        _emit(args, render_json(scaling_payload(rows)) + "\n")
    return 0


def _cmd_verify(args) -> int:
    results = acceptance.run_suite(
        args.suite, seed=args.seed, threads=_threads(args), out=sys.stdout
    )
    failed = [r for r in results if not r.passed]
    if args.out:
        payload = [
            {"criterion": r.cid, "name": r.name, "pass": r.passed, "details": r.details}
            for r in results
        ]
        Path(args.out).write_text(render_json(payload) + "\n")
    return 3 if failed else 0


def build_parser() -> _Parser:
    parser = _Parser(prog="threshlab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seeded=True):
        p.add_argument("--threads", type=int, default=None, help="worker threads (default: env or 1)")
        p.add_argument("--out", default=None, help="write output to file instead of stdout")
        if seeded:
            p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("census", help="isomorphism classes of edge subsets")
    p.add_argument("--graph", required=True)
    p.add_argument("--connected-only", action="store_true")
    p.add_argument("--n", type=int, default=None, help="also report copy counts in K_n")
    common(p, seeded=False)
    p.set_defaults(func=_cmd_census)

    p = sub.add_parser("thresholds", help="p_E and p~_E at ambient order n")
    p.add_argument("--graph", required=True)
    p.add_argument("--n", type=int, required=True)
    common(p, seeded=False)
    p.set_defaults(func=_cmd_thresholds)

    p = sub.add_parser("spread", help="R-spread certificate for 1/(2 p~_E)")
    p.add_argument("--graph", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--empirical", action="store_true", help="Monte Carlo containment cross-check")
    p.add_argument("--samples", type=int, default=10000)
    common(p)
    p.set_defaults(func=_cmd_spread)

    p = sub.add_parser("estimate-pc", help="critical probability of the pattern")
    p.add_argument("--graph", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--exact", action="store_true")
    p.add_argument("--samples", type=int, default=2000)
    p.add_argument("--oracle", choices=ORACLE_KINDS, default="generic")
    p.add_argument("--tol", type=float, default=5e-3)
    p.add_argument("--plot", default=None, help="render the bisection trace to this file")
    common(p)
    p.set_defaults(func=_cmd_estimate_pc)

    p = sub.add_parser("family", help="scaling table for a structured family")
    p.add_argument("--kind", choices=FAMILY_KINDS, required=True)
    p.add_argument("--param", type=int, default=None)
    p.add_argument("--n-list", required=True)
    p.add_argument("--with-pc", action="store_true")
    p.add_argument("--samples", type=int, default=2000)
    p.add_argument("--tol", type=float, default=5e-3)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--plot", default=None, help="render the scaling figure to this file")
    common(p)
    p.set_defaults(func=_cmd_family)

    p = sub.add_parser("verify", help="run acceptance criteria")
    p.add_argument("--suite", default="all", help="fast|sandwich|scaling|mc|all|c1..c11")
    common(p)
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except InputError as exc:
        print(f"error:input: {exc}", file=sys.stderr)
        print("Run 'threshlab --help' for usage.", file=sys.stderr)
        return 1
    except CapacityError as exc:
        print(f"error:capacity: {exc}", file=sys.stderr)
        return 2
    except ThreshlabError as exc:
        print(f"error:{exc.code}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
