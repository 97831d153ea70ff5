"""Command-line front end: build matrices, ranks, verification suites, probes.

Exit codes: 0 success, 1 a check failed, 2 input error, 3 precondition violation,
4 internal error.
"""

from __future__ import annotations

import argparse
import datetime as _dt
import json
import os
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .builders import build, canonical_builder, get_basis
from .errors import ParseError, PreconditionError, RigidLabError
from .geometry import Params, PointConfig, derive_seed
from .graph import Graph, complete, parse_edge_list, parse_graph_spec
from .matroid import DEFAULT_EXHAUSTIVE_LIMIT, LinearMatroid, generic_matroid
from .verify import probes, suite
from .verify.report import jsonable

SCHEMA = "rigidlab/1"


def _timestamp() -> str:
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    now = (_dt.datetime.fromtimestamp(int(epoch), _dt.timezone.utc) if epoch
           else _dt.datetime.now(_dt.timezone.utc))
    return now.replace(microsecond=0).isoformat()


def _dump(payload: dict, out: Path | None) -> None:
    text = json.dumps(jsonable(payload), sort_keys=True, indent=2) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def _load_graph(value: str) -> Graph:
    path = Path(value)
    if path.is_file():
        return Graph.read(path)
    return parse_graph_spec(value)


def _load_params(value: str) -> Params:
    path = Path(value)
    if path.is_file():
        try:
            value = path.read_text()
        except OSError as exc:
            raise ParseError(f"cannot read params file {value}: {exc}") from exc
    return Params.parse(value.replace("\n", ",").replace(" ", ","))


def _check_names(args) -> None:
    try:
        canonical_builder(args.builder)
        get_basis(args.basis)
    except PreconditionError as exc:
        raise ParseError(str(exc)) from None


def _inputs(args) -> tuple[Graph, PointConfig | None, Params | None, int]:
    _check_names(args)
    G = _load_graph(args.graph)
    points = PointConfig.read(args.points) if args.points else None
    params = _load_params(args.params) if args.params else None
    d = args.d
    if d is None:
        if points is None or canonical_builder(args.builder) in ("cofactor", "poly"):
            raise ParseError("--d is required for this builder")
        d = points.d
    if d < 1:
        raise ParseError("--d must be at least 1")
    if points is not None and canonical_builder(args.builder) in ("bar_joint", "hyper") \
            and points.d != d:
        raise PreconditionError(f"points live in dimension {points.d}, but d = {d}")
    for cfg, what in ((points, "points"), (params, "parameters")):
        if cfg is not None and len(cfg.points if what == "points" else cfg) != G.n:
            raise PreconditionError(f"graph has {G.n} vertices but {what} give a different count")
    return G, points, params, d


def cmd_build_matrix(args) -> int:
    G, points, params, d = _inputs(args)
    if points is None and params is None:
        raise ParseError("build-matrix needs --points or --params")
    R = build(args.builder, G, d, points, params, args.basis)
    rows = "rows: " + " ".join(f"{i}-{j}" for i, j in R.edges)
    source = f"source: graph={args.graph} points={args.points or '-'} params={args.params or '-'}"
    text = R.matrix.to_text(header="\n".join([R.header(), source, rows]))
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_rank(args) -> int:
    G, points, params, d = _inputs(args)
    K = complete(G.n)
    if points is None and params is None:
        M = generic_matroid(args.builder, K, d, args.trials, args.seed, basis=args.basis)
        source = {"generic": True, "seed": args.seed, "trials": args.trials}
    else:
        M = LinearMatroid(build(args.builder, K, d, points, params, args.basis))
        source = {"generic": False}
    S = parse_edge_list(args.subset) if args.subset is not None else G.sorted_edges()
    for e in S:
        if e not in M.index:
            raise PreconditionError(f"edge {e[0]}-{e[1]} is outside the vertex range 1..{G.n}")
    r = M.rank_of(S)
    payload = {
        "schema": SCHEMA, "builder": canonical_builder(args.builder), "n": G.n, "d": d,
        "size": len(S), "rank": r, "corank": len(S) - r,
        "independent": r == len(S), "spanning": r == M.full_rank,
        "circuit": M.is_circuit(S), **source,
    }
    _dump(payload, None)
    return 0


def _envelope(command: Sequence[str], seed: int, reports, extra: dict | None = None) -> dict:
    statuses = [rep.status for rep in reports]
    return {
        "schema": SCHEMA,
        "tool_version": __version__,
        "command": list(command),
        "timestamp": _timestamp(),
        "seed": seed,
        "checks": [rep.to_dict() for rep in reports],
        "status": "fail" if any(not rep.ok for rep in reports) else "pass",
        "probabilistic": any(s == "probabilistic-pass" for s in statuses),
        **(extra or {}),
    }


def cmd_verify(args, argv) -> int:
    path = args.manifest or suite.default_manifest_path()
    if args.exhaustive_limit < 0:
        raise ParseError("--exhaustive-limit must be non-negative")
    invocations = suite.load_manifest(path)
    reports = suite.run_suite(invocations, args.seed, args.exhaustive_limit)
    env = _envelope(["rigidlab", *argv], args.seed, reports, {"manifest": str(args.manifest or "default")})
    _dump(env, Path(args.out) if args.out else None)
    return 0 if env["status"] == "pass" else 1


def cmd_probe(args, argv) -> int:
    if not 2 <= args.n <= probes.MAX_PROBE_N:
        raise ParseError(f"--n must be between 2 and {probes.MAX_PROBE_N}")
    if args.d < 1 or args.samples < 0:
        raise ParseError("--d must be positive and --samples non-negative")
    rep = probes.probe_conjectures(args.n, args.d, args.samples, derive_seed(args.seed, "probe"))
    env = _envelope(["rigidlab", *argv], args.seed, [rep], {"decisive": False})
    _dump(env, Path(args.out) if args.out else None)
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rigidlab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"rigidlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def matrix_args(p):
        p.add_argument("--builder", required=True,
                       help="bar_joint (R), hyper (H), cofactor (C) or poly (P)")
        p.add_argument("--graph", required=True,
                       help="graph file, or a spec such as K5, K3x3, cone1(K4), edges:1-2,2-3")
        p.add_argument("--points", help="point configuration file")
        p.add_argument("--params", help="curve parameters: comma list or file")
        p.add_argument("--d", type=int, help="dimension (defaults to the points' dimension)")
        p.add_argument("--basis", default="monomial", help="basis for poly: monomial, barjoint, cofactor")

    p = sub.add_parser("build-matrix", help="write a rigidity matrix in exact text format")
    matrix_args(p)
    p.add_argument("--out", help="output path (default stdout)")

    p = sub.add_parser("rank", help="rank, corank and matroid predicates of an edge set")
    matrix_args(p)
    p.add_argument("--subset", help="edge subset such as 1-2,2-3 (default: all edges of the graph)")
    p.add_argument("--seed", type=int, default=0, help="seed for generic sampling without positions")
    p.add_argument("--trials", type=int, default=3)

    p = sub.add_parser("verify", help="run a verification manifest")
    p.add_argument("manifest", nargs="?", help="manifest file (default: the bundled suite)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--exhaustive-limit", type=int, default=DEFAULT_EXHAUSTIVE_LIMIT,
                   help="largest ground set compared exhaustively; 0 forces sampling")
    p.add_argument("--out", help="report path (default stdout)")

    p = sub.add_parser("probe", help="sample graphs and compare generic ranks in H, R, C, P")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--samples", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="report path (default stdout)")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = make_parser().parse_args(argv)
        if args.command == "build-matrix":
            return cmd_build_matrix(args)
        if args.command == "rank":
            return cmd_rank(args)
        if args.command == "verify":
            return cmd_verify(args, argv)
        return cmd_probe(args, argv)
    except PreconditionError as exc:
        print(f"rigidlab: precondition violated: {exc}", file=sys.stderr)
        return 3
    except (ParseError, RigidLabError) as exc:
        print(f"rigidlab: input error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"rigidlab: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"rigidlab: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    raise SystemExit(main())
