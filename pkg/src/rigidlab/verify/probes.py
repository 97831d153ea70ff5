"""Generic-rank assertions, abstract-rigidity properties and conjecture probes.

Probes never decide a conjecture: a clean probe only means no counterexample
turned up among the sampled graphs at the sampled positions.
"""

from __future__ import annotations

import random
from math import comb

from ..builders import canonical_builder, count_quadrics, quadric_matrix
from ..errors import PreconditionError
from ..exact_linalg import Matrix, multiply, rank
from ..geometry import derive_seed, moment_curve, random_params
from ..graph import Graph, complete, complete_bipartite, cone, format_edges, random_graph
from ..matroid import estimate_generic_rank, generic_matroid
from .report import conclude

MAX_PROBE_N = 16
PROPERTIES = ("independent", "dependent", "circuit", "basis", "spanning")


def check_generic_property(builder: str, G: Graph, d: int, prop: str, expect: bool = True,
                           seed: int = 0, trials: int = 3, basis: str = "monomial"):
    """Assert that G's edge set has (or lacks) a matroid property generically."""
    if prop not in PROPERTIES:
        raise PreconditionError(f"unknown property {prop!r}; choose from {PROPERTIES}")
    M = generic_matroid(builder, G, d, trials, seed, basis=basis)
    S = list(G.edges)
    value = {
        "independent": M.is_independent,
        "dependent": lambda s: not M.is_independent(s),
        "circuit": M.is_circuit,
        "basis": lambda s: M.is_basis(s) and M.full_rank == (M.ambient_bound or M.full_rank),
        "spanning": lambda s: M.rank_of(s) == (M.ambient_bound or M.full_rank),
    }[prop](S)
    r = M.rank_of(S)
    inputs = {"builder": canonical_builder(builder), "graph": format_edges(G.edges), "n": G.n,
              "d": d, "property": prop, "expect": expect, "seed": seed}
    failures = []
    if value != expect:
        failures.append({"subset": format_edges(S), "rank": r, "size": len(S),
                         "ambient_rank": M.ambient_bound})
    return conclude("generic_property", inputs, failures, value=value, rank=r, size=len(S))


def check_generic_rank(builder: str, G: Graph, d: int, expect: int, seed: int = 0,
                       trials: int = 3, basis: str = "monomial"):
    est = estimate_generic_rank(builder, G, d, trials, seed, basis=basis)
    inputs = {"builder": canonical_builder(builder), "graph": format_edges(G.edges), "n": G.n,
              "d": d, "expect": expect, "seed": seed}
    failures = [] if est.rank == expect else [{"subset": format_edges(G.edges), "rank": est.rank}]
    return conclude("generic_rank", inputs, failures, estimate=est)


def check_abstract_rigidity(builder: str, d: int, n: int, seed: int = 0, trials: int = 3):
    """rank K_n = n d - C(d+1, 2); K_{d+2} a circuit; K_{d+1} independent."""
    if n < d + 1:
        raise PreconditionError("needs n >= d + 1")
    failures = []
    target = n * d - comb(d + 1, 2)
    est = estimate_generic_rank(builder, complete(n), d, trials, derive_seed(seed, "Kn"))
    if est.rank != target:
        failures.append({"graph": f"K{n}", "rank": est.rank, "expected": target})
    M = generic_matroid(builder, complete(d + 2), d, trials, derive_seed(seed, "Kd+2"))
    if not M.is_circuit(M.ground):
        failures.append({"graph": f"K{d + 2}", "rank": M.full_rank, "expected": "circuit"})
    small = [e for e in M.ground if max(e) <= d + 1]
    if not M.is_independent(small):
        failures.append({"graph": f"K{d + 1}", "rank": M.rank_of(small), "expected": "independent"})
    return conclude("abstract_rigidity", {"builder": canonical_builder(builder), "d": d, "n": n,
                                          "seed": seed},
                    failures, rank=est.rank, expected_rank=target)


def moment_curve_quadrics(d: int) -> list[tuple[int, ...]]:
    """Integer coefficient vectors (in quadric_monomials order) of the
    C(d, 2) quadrics through the d-dimensional moment curve."""
    quad_index = {}
    k = 1 + d
    for a in range(1, d + 1):
        for b in range(a, d + 1):
            quad_index[(a, b)] = k
            k += 1
    width = k

    def q(a, b):
        return quad_index[(min(a, b), max(a, b))]

    out = []
    for i in range(2, d + 1):
        c = [0] * width
        c[i] += 1
        c[q(1, i - 1)] -= 1
        out.append(tuple(c))
    for i in range(2, d):
        for j in range(i, d):
            c = [0] * width
            if i + j <= d + 1:
                c[q(1, i + j - 1)] += 1
            else:
                c[q(d, i + j - d)] += 1
            c[q(i, j)] -= 1
            out.append(tuple(c))
    return out


def check_quadric_count(d: int, n: int, seed: int = 0):
    """Moment-curve points lie on exactly C(d, 2) independent quadrics, and the
    explicit quadrics vanish on them."""
    if n < comb(d + 2, 2):
        raise PreconditionError(f"needs n >= {comb(d + 2, 2)} points to pin the quadric count")
    t = random_params(n, seed, bound=max(n, 1000))
    p = moment_curve(d, t)
    got = count_quadrics(p)
    failures = []
    if got != comb(d, 2):
        failures.append({"quadrics": got, "expected": comb(d, 2)})
    Q = moment_curve_quadrics(d)
    if Q:
        prod = multiply(quadric_matrix(p), Matrix(Q).transpose())
        if any(x for r in prod.entries for x in r):
            failures.append({"explicit_quadric_not_vanishing": True})
        if rank(Matrix(Q)) != len(Q):
            failures.append({"explicit_quadrics_dependent": True})
    return conclude("quadric_count", {"d": d, "n": n, "seed": seed, "params": t.t}, failures,
                    quadrics=got, explicit=len(Q))


# -- conjecture probes -------------------------------------------------------------


def fixtures(n: int, d: int) -> dict[str, tuple[Graph, dict]]:
    """Known separating graphs that fit on n vertices, with expected ranks."""
    out = {}
    if 2 * (d + 1) <= n:
        G = complete_bipartite(d + 1, d + 1)
        out[f"K{d + 1}x{d + 1}"] = (G, {"H": G.m - 1, "P": G.m - 1})
    m = comb(d + 1, 2)
    if d >= 2 and d + 1 + m <= n:
        G = complete_bipartite(d + 1, m)
        vs = d + 1 + m
        spanning = vs * d - comb(d + 1, 2)
        out[f"K{d + 1}x{m}"] = (G, {"R": spanning, "C": spanning, "H": vs * d - d * d,
                                    "P": vs * d - d * d})
    if d >= 4 and 13 + (d - 4) <= n:
        G = cone(complete_bipartite(6, 7), d - 4)
        out[f"cone{d - 4}(K6x7)"] = (G, {"C": G.m, "R<": G.m})
    return out


def _ranks(G: Graph, d: int, seed: int, trials: int) -> dict[str, int]:
    return {key: estimate_generic_rank(b, G, d, trials, derive_seed(seed, key)).rank
            for key, b in (("H", "hyper"), ("R", "bar_joint"), ("C", "cofactor"), ("P", "poly"))}


def probe_conjectures(n: int, d: int, samples: int = 10, seed: int = 0, trials: int = 3,
                      with_fixtures: bool = True):
    """Sample random graphs, compare generic ranks in H, R, C, P.

    Reports order violations of rank_H <= rank_R <= rank_C and graphs with
    rank_P != rank_H; neither is treated as a check failure.  Expected ranks
    of the known separating fixtures are checked and do count as failures.
    """
    if n > MAX_PROBE_N:
        raise PreconditionError(f"probes are limited to n <= {MAX_PROBE_N}")
    rng = random.Random(derive_seed(seed, "probe", n, d))
    top = min(comb(n, 2), n * d - comb(d + 1, 2) + 2)
    order_violations, p_ne_h, rows = [], [], []
    for k in range(samples):
        G = random_graph(n, rng.randint(1, max(1, top)), rng)
        r = _ranks(G, d, derive_seed(seed, "sample", k), trials)
        rows.append({"graph": format_edges(G.edges), **r})
        if not (r["H"] <= r["R"] <= r["C"]):
            order_violations.append(rows[-1])
        if r["P"] != r["H"]:
            p_ne_h.append(rows[-1])
    failures, fixture_rows = [], {}
    if with_fixtures:
        for name, (G, expect) in fixtures(n, d).items():
            r = _ranks(G, d, derive_seed(seed, "fixture", name), trials)
            fixture_rows[name] = {"edges": G.m, **r, "expected": expect}
            for key, val in expect.items():
                ok = r[key[0]] < val if key.endswith("<") else r[key] == val
                if not ok:
                    failures.append({"fixture": name, "matroid": key[0], "rank": r[key[0]],
                                     "expected": val if not key.endswith("<") else f"< {val}"})
    return conclude("probe", {"n": n, "d": d, "samples": samples, "seed": seed}, failures,
                    decisive=False, samples=rows, order_violations=order_violations,
                    p_differs_from_h=p_ne_h, fixtures=fixture_rows)
