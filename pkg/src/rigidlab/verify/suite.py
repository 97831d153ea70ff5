"""Plain-text verification manifests and their runner.

One check per line: ``check_name key=value ...``; ``#`` starts a comment.
Every line gets its own seed, derived from the master seed and the line
index, so adding a check never perturbs the randomness of the others.
"""

from __future__ import annotations

import random
import shlex
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from pathlib import Path
from typing import Callable

from ..errors import ParseError, PreconditionError, RigidLabError
from ..exact_linalg import Matrix, determinant
from ..geometry import (Params, PointConfig, derive_seed, random_generic, random_params,
                        random_rational_params)
from ..graph import Bipartition, parse_graph_spec
from ..matroid import DEFAULT_EXHAUSTIVE_LIMIT, choose_mode
from . import bipartite, combinatorial, identities, probes, splits
from .report import FAIL, CheckReport


def _intlist(s: str) -> list[int]:
    return [int(x) for x in s.split(",") if x.strip()]


def _fraclist(s: str) -> list[Fraction]:
    return [Fraction(x) for x in s.split(",") if x.strip()]


def _bool(s: str) -> bool:
    if s.lower() in ("1", "true", "yes"):
        return True
    if s.lower() in ("0", "false", "no"):
        return False
    raise ValueError(s)


CONVERTERS: dict[str, Callable] = {
    "int": int, "str": str, "bool": _bool, "ints": _intlist, "fracs": _fraclist,
    "graph": parse_graph_spec,
}


@dataclass
class Context:
    seed: int
    exhaustive_limit: int = DEFAULT_EXHAUSTIVE_LIMIT

    def mode(self, ground: int, salt="mode"):
        return choose_mode(ground, self.exhaustive_limit, 2000, derive_seed(self.seed, salt))


# -- random inputs for checks --------------------------------------------------------


def _random_invertible(d: int, rng: random.Random, bound: int = 9) -> Matrix:
    while True:
        L = Matrix([[rng.randint(-bound, bound) for _ in range(d)] for _ in range(d)])
        if determinant(L) != 0:
            return L


def _random_nonzero(n: int, rng: random.Random, bound: int = 30) -> list[Fraction]:
    out = []
    while len(out) < n:
        x = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if x:
            out.append(x)
    return out


def scaling_instance(d: int, n: int, seed: int):
    rng = random.Random(seed)
    p = random_generic(d, n, derive_seed(seed, "p"), bound=1000, mode=None)
    return p, _random_nonzero(n, rng), _random_invertible(d, rng)


def planar_instance(n: int, seed: int, bound: int = 1000) -> PointConfig:
    rng = random.Random(seed)
    while True:
        pts = [(rng.choice([-1, 1]) * rng.randint(1, bound), rng.choice([-1, 1]) * rng.randint(1, bound))
               for _ in range(n)]
        slopes = {Fraction(b, a) for a, b in pts}
        if len(slopes) == n:
            return PointConfig(2, tuple(pts))


def subspace_points(n: int, d: int, span: int, rng: random.Random, bound: int = 50):
    """n points spanning a random ``span``-dimensional linear subspace of R^d."""
    basis = [[rng.randint(-bound, bound) for _ in range(d)] for _ in range(span)]
    pts = []
    for _ in range(n):
        c = [rng.randint(-bound, bound) for _ in range(span)]
        pts.append(tuple(sum(ci * b[k] for ci, b in zip(c, basis)) for k in range(d)))
    return pts


def skew_instance(n: int, k: int, seed: int, bound: int = 50):
    rng = random.Random(seed)
    while True:
        a = [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(k)]
        b = [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(k)]
        pts = {tuple(x for l in range(k) for x in (b[l][i], -a[l][i])) for i in range(n)}
        if len(pts) == n:
            return a, b


def _params_for(n: int, seed: int, rational: bool, params):
    if params:
        return Params(tuple(params))
    if rational:
        return random_rational_params(n, seed)
    return random_params(n, seed, bound=1000)


# -- check adapters -------------------------------------------------------------------


def _coincidence(ctx, d, n, params=None, rational=True):
    return identities.check_coincidence(_params_for(n, ctx.seed, rational, params), d)


def _coincidence_matroids(ctx, d, n, params=None, rational=True):
    t = _params_for(n, ctx.seed, rational, params)
    return identities.check_coincidence_matroids(t, d, ctx.mode(comb(len(t), 2)))


def _scaling(ctx, d, n):
    return identities.check_scaling_invariance(*scaling_instance(d, n, ctx.seed))


def _planar(ctx, n):
    return identities.check_planar_reduction(planar_instance(n, ctx.seed))


def _skew(ctx, k, n):
    return identities.check_skew_jacobian(*skew_instance(n, k, ctx.seed))


def _bipartite_rank(ctx, n1, n2, d, theory="H", points="generic"):
    if points == "moment":
        from ..geometry import moment_curve
        p = moment_curve(d, random_params(n1 + n2, ctx.seed, bound=1000))
    else:
        p = random_generic(d, n1 + n2, ctx.seed)
    return bipartite.check_bipartite_rank(n1, n2, d, p, theory)


def _bipartite_general(ctx, n1, n2, d, span1, span2):
    rng = random.Random(ctx.seed)
    for _ in range(100):
        pts = subspace_points(n1, d, span1, rng) + subspace_points(n2, d, span2, rng)
        if len(set(pts)) == n1 + n2:
            break
    p = PointConfig(d, tuple(pts))
    bip = Bipartition.from_side(n1 + n2, range(1, n1 + 1))
    return bipartite.check_bipartite_general_rank(p, bip)


def _bipartite_coincidence(ctx, d, n1, n2):
    p = random_generic(d - 1, n1 + n2, ctx.seed, mode=None)
    bip = Bipartition.from_side(n1 + n2, range(1, n1 + 1))
    return bipartite.check_bipartite_coincidence(p, bip, ctx.mode(n1 * n2))


def _bipartite_freeness(ctx, d, n1, n2):
    return bipartite.check_bipartite_freeness(n1, n2, d, ctx.seed, ctx.mode(n1 * n2))


def _bipartite_not_spanning(ctx, n, d):
    return bipartite.check_bipartite_not_spanning(n, d, ctx.seed)


def _split(ctx, builder, graph, d, split, v, A, B, C):
    return splits.check_split_monotonicity(builder, graph, d, split, v, A, B, C, seed=ctx.seed)


def _random_splits(ctx, builder, d, count=20):
    return splits.check_random_splits(builder, d, count, ctx.seed)


def _h2_oracle(ctx, n=5):
    from ..graph import complete, complete_bipartite
    extra = {"K3x3": complete_bipartite(3, 3), "K4": complete(4)}
    return combinatorial.check_h2_oracle(n, ctx.seed, extra=extra)


def _abstract(ctx, builder, d, n):
    return probes.check_abstract_rigidity(builder, d, n, ctx.seed)


def _quadrics(ctx, d, n):
    return probes.check_quadric_count(d, n, ctx.seed)


def _property(ctx, builder, graph, d, property, expect=True, basis="monomial"):
    return probes.check_generic_property(builder, graph, d, property, expect, ctx.seed,
                                         basis=basis)


def _generic_rank(ctx, builder, graph, d, expect, basis="monomial"):
    return probes.check_generic_rank(builder, graph, d, expect, ctx.seed, basis=basis)


def _probe(ctx, n, d, samples=10):
    return probes.probe_conjectures(n, d, samples, ctx.seed)


# name -> (adapter, {key: (type, required)})
CHECKS: dict[str, tuple[Callable, dict[str, tuple[str, bool]]]] = {
    "coincidence": (_coincidence, {"d": ("int", True), "n": ("int", True),
                                   "params": ("fracs", False), "rational": ("bool", False)}),
    "coincidence_matroids": (_coincidence_matroids, {"d": ("int", True), "n": ("int", True),
                                                     "params": ("fracs", False),
                                                     "rational": ("bool", False)}),
    "scaling_invariance": (_scaling, {"d": ("int", True), "n": ("int", True)}),
    "planar_reduction": (_planar, {"n": ("int", True)}),
    "skew_jacobian": (_skew, {"k": ("int", True), "n": ("int", True)}),
    "bipartite_rank": (_bipartite_rank, {"n1": ("int", True), "n2": ("int", True),
                                         "d": ("int", True), "theory": ("str", False),
                                         "points": ("str", False)}),
    "bipartite_general_rank": (_bipartite_general, {"n1": ("int", True), "n2": ("int", True),
                                                    "d": ("int", True), "span1": ("int", True),
                                                    "span2": ("int", True)}),
    "bipartite_coincidence": (_bipartite_coincidence, {"d": ("int", True), "n1": ("int", True),
                                                       "n2": ("int", True)}),
    "bipartite_freeness": (_bipartite_freeness, {"d": ("int", True), "n1": ("int", True),
                                                 "n2": ("int", True)}),
    "bipartite_not_spanning": (_bipartite_not_spanning, {"n": ("int", True), "d": ("int", True)}),
    "split": (_split, {"builder": ("str", True), "graph": ("graph", True), "d": ("int", True),
                       "split": ("str", True), "v": ("int", True), "A": ("ints", True),
                       "B": ("ints", True), "C": ("ints", True)}),
    "random_splits": (_random_splits, {"builder": ("str", True), "d": ("int", True),
                                       "count": ("int", False)}),
    "h2_oracle": (_h2_oracle, {"n": ("int", False)}),
    "abstract_rigidity": (_abstract, {"builder": ("str", True), "d": ("int", True),
                                      "n": ("int", True)}),
    "quadric_count": (_quadrics, {"d": ("int", True), "n": ("int", True)}),
    "property": (_property, {"builder": ("str", True), "graph": ("graph", True),
                             "d": ("int", True), "property": ("str", True),
                             "expect": ("bool", False), "basis": ("str", False)}),
    "generic_rank": (_generic_rank, {"builder": ("str", True), "graph": ("graph", True),
                                     "d": ("int", True), "expect": ("int", True),
                                     "basis": ("str", False)}),
    "probe": (_probe, {"n": ("int", True), "d": ("int", True), "samples": ("int", False)}),
}


@dataclass
class Invocation:
    line: int
    name: str
    args: dict
    text: str


def parse_manifest(text: str) -> list[Invocation]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = shlex.split(line)
        name, rest = toks[0], toks[1:]
        if name not in CHECKS:
            raise ParseError(f"line {lineno}: unknown check {name!r}")
        schema = CHECKS[name][1]
        args = {}
        for tok in rest:
            key, sep, val = tok.partition("=")
            if not sep:
                raise ParseError(f"line {lineno}: expected key=value, got {tok!r}")
            if key not in schema:
                raise ParseError(f"line {lineno}: check {name!r} has no parameter {key!r}")
            try:
                args[key] = CONVERTERS[schema[key][0]](val)
            except (ValueError, ZeroDivisionError, RigidLabError) as exc:
                raise ParseError(f"line {lineno}: bad value for {key}: {val!r}") from exc
        missing = [k for k, (_, req) in schema.items() if req and k not in args]
        if missing:
            raise ParseError(f"line {lineno}: {name} is missing {', '.join(missing)}")
        out.append(Invocation(lineno, name, args, line))
    return out


def load_manifest(path) -> list[Invocation]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read manifest {path}: {exc}") from exc
    return parse_manifest(text)


def default_manifest_path() -> Path:
    return Path(__file__).resolve().parent.parent / "data" / "default_suite.txt"


def run_invocation(inv: Invocation, index: int, seed: int,
                   exhaustive_limit: int = DEFAULT_EXHAUSTIVE_LIMIT) -> CheckReport:
    ctx = Context(derive_seed(seed, "check", index, inv.name), exhaustive_limit)
    fn = CHECKS[inv.name][0]
    try:
        rep = fn(ctx, **inv.args)
    except PreconditionError as exc:
        rep = CheckReport(inv.name, dict(inv.args), FAIL,
                          {"witness": {"precondition": str(exc)}})
    rep.inputs = {"manifest_line": inv.line, "invocation": inv.text, **rep.inputs}
    return rep


def run_suite(invocations: list[Invocation], seed: int,
              exhaustive_limit: int = DEFAULT_EXHAUSTIVE_LIMIT) -> list[CheckReport]:
    return [run_invocation(inv, k, seed, exhaustive_limit) for k, inv in enumerate(invocations)]
