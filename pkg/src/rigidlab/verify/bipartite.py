"""Complete bipartite ranks and the bipartite coincidence of R_d and H_d."""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb

from ..builders import (affine_basis, affine_rigidity, bar_joint, change_of_basis,
                        count_quadrics, hyperconnectivity)
from ..errors import PreconditionError
from ..exact_linalg import Matrix, block_diagonal, multiply, nullspace, rank, scale_rows
from ..geometry import (PointConfig, general_position, homogenize, lift_bipartite,
                        linear_span_dim)
from ..graph import Bipartition, Graph, complete, complete_bipartite, complete_on, edge
from ..matroid import (CompareMode, Exhaustive, LinearMatroid, Sampled, freer_than,
                       generic_matroid, matroids_equal)
from .report import CheckReport, conclude


def _parts(p: PointConfig, bip: Bipartition):
    X, Y = sorted(bip.X), sorted(bip.Y)
    return X, Y, [p[v] for v in X], [p[v] for v in Y]


def lower_bound_graph(X: list[int], Y: list[int], d: int) -> Graph:
    """K_{d,d} on the first d vertices of each side, then every further vertex
    joined to the first d vertices of the opposite side."""
    X0, Y0 = X[:d], Y[:d]
    edges = {edge(x, y) for x in X0 for y in Y0}
    edges |= {edge(x, y) for x in X[d:] for y in Y0}
    edges |= {edge(x, y) for y in Y[d:] for x in X0}
    return Graph(len(X) + len(Y), frozenset(edges))


def tensor_kernel_vectors(p: PointConfig, bip: Bipartition, edges) -> list[tuple[Fraction, ...]]:
    """l (x) m for bases l, m of the linear dependences of the two sides,
    laid out on the rows of the hyperconnectivity matrix of K_{X,Y}."""
    X, Y, PX, PY = _parts(p, bip)
    dep_x = nullspace(Matrix(PX, cols=p.d).transpose())
    dep_y = nullspace(Matrix(PY, cols=p.d).transpose())
    xi = {v: k for k, v in enumerate(X)}
    yi = {v: k for k, v in enumerate(Y)}
    out = []
    for l in dep_x:
        for m in dep_y:
            w = []
            for i, j in edges:
                x, y = (i, j) if i in bip.X else (j, i)
                # row (i, j) with i < j carries p_j in block i; flip for y < x
                sign = 1 if x < y else -1
                w.append(sign * l[xi[x]] * m[yi[y]])
            out.append(tuple(w))
    return out


def check_bipartite_rank(n1: int, n2: int, d: int, p: PointConfig, theory: str = "H") -> CheckReport:
    """Rank of K_{n1,n2} in H_d(p) or R_d(p) against the closed formulas."""
    G = complete_bipartite(n1, n2)
    bip = G.bipartition
    if p.n != n1 + n2 or p.d != d:
        raise PreconditionError(f"need {n1 + n2} points in dimension {d}")
    X, Y, PX, PY = _parts(p, bip)
    inputs = {"n1": n1, "n2": n2, "d": d, "theory": theory, "points": p.points}
    failures = []
    details: dict = {}
    if theory == "H":
        if not general_position(p, "linear"):
            raise PreconditionError("points are not in linear general position")
        HM = hyperconnectivity(G, p)
        M = LinearMatroid(HM)
        expected = n1 * n2 if min(n1, n2) <= d else d * (n1 + n2) - d * d
        got = M.full_rank
        details.update(expected=expected, rank=got)
        if got != expected:
            failures.append({"subset": "all", "rank": got, "expected": expected})
        if min(n1, n2) >= d:
            L = lower_bound_graph(X, Y, d)
            indep = M.is_independent(L.edges)
            details["lower_bound_edges"] = len(L.edges)
            if not indep or len(L.edges) != expected:
                failures.append({"lower_bound": sorted(L.edges)})
            W = tensor_kernel_vectors(p, bip, HM.edges)
            details["tensor_vectors"] = len(W)
            if len(W) != (n1 - d) * (n2 - d):
                failures.append({"tensor_count": len(W)})
            if W:
                prod = multiply(Matrix(W, cols=len(HM.edges)), HM.matrix)
                bad = [k for k, r in enumerate(prod.entries) if any(r)]
                if bad:
                    failures.append({"tensor_vector_not_orthogonal": bad[0]})
                if rank(Matrix(W)) != len(W):
                    failures.append({"tensor_vectors_dependent": True})
    elif theory == "R":
        M = LinearMatroid(bar_joint(G, p))
        if min(n1, n2) <= d:
            if not (general_position(PX, "affine") and general_position(PY, "affine")):
                raise PreconditionError("each part must be in affine general position")
            expected = n1 * n2
        else:
            lifted = lambda pts: [tuple(q) + (Fraction(1),) for q in pts]  # noqa: E731
            if rank(Matrix(lifted(PX))) != d + 1 or rank(Matrix(lifted(PY))) != d + 1:
                raise PreconditionError("each part must affinely span R^d")
            quadrics = count_quadrics(p)
            details["quadrics"] = quadrics
            expected = (n1 + n2) * d - comb(d + 1, 2) - quadrics
        got = M.full_rank
        details.update(expected=expected, rank=got)
        if got != expected:
            failures.append({"subset": "all", "rank": got, "expected": expected})
    else:
        raise PreconditionError(f"unknown theory {theory!r}; use H or R")
    return conclude("bipartite_rank", inputs, failures, **details)


def check_bipartite_general_rank(p: PointConfig, bip: Bipartition) -> CheckReport:
    """rank K_{X,Y} in H(p) = n1 n2 - (n1 - d1)(n2 - d2), d_k the span dimensions."""
    X, Y, PX, PY = _parts(p, bip)
    d1, d2 = linear_span_dim(PX), linear_span_dim(PY)
    n1, n2 = len(X), len(Y)
    G = complete_on(p.n, X, Y)
    got = LinearMatroid(hyperconnectivity(G, p)).full_rank
    expected = n1 * n2 - (n1 - d1) * (n2 - d2)
    failures = [] if got == expected else [{"rank": got, "expected": expected}]
    return conclude("bipartite_general_rank", {"X": X, "Y": Y, "points": p.points}, failures,
                    span_dims=[d1, d2], rank=got, expected=expected)


def check_bipartite_coincidence(p: PointConfig, bip: Bipartition,
                                mode: CompareMode = Exhaustive()) -> CheckReport:
    """Bar-joint on the two-level lift equals hyperconnectivity on the
    homogenization, restricted to X x Y; plus the exact basis changes."""
    if not bip.covers(p.n):
        raise PreconditionError("bipartition does not match the points")
    X, Y = sorted(bip.X), sorted(bip.Y)
    if not X or not Y:
        raise PreconditionError("both sides of the bipartition must be non-empty")
    dd = p.d + 1
    G = complete_on(p.n, X, Y)
    lift, hom = lift_bipartite(p, bip), homogenize(p)
    R = bar_joint(G, lift)
    H = hyperconnectivity(G, hom)
    failures = []

    verdict = matroids_equal(LinearMatroid(R), LinearMatroid(H), mode)
    if not verdict:
        failures.append({"subset": verdict.witness, "ranks": verdict.ranks})

    A_lift = affine_rigidity(G, p, "lifted", bip)
    A_hom = affine_rigidity(G, p, "homogeneous", bip)
    neg = Matrix.diagonal([-1] * dd)
    signs = block_diagonal([neg if v in bip.X else Matrix.identity(dd) for v in range(1, p.n + 1)])
    if multiply(R.matrix, signs) != A_lift.matrix:
        failures.append({"identity": "affine(lifted) = R(lift) . diag(-I on X, I on Y)"})
    row_signs = [1 if min(e) in bip.X else -1 for e in H.edges]
    if scale_rows(H.matrix, row_signs) != A_hom.matrix:
        failures.append({"identity": "affine(homogeneous) = D H(homogenized)"})

    F_hom = affine_basis("homogeneous", bip, p)
    F_lift = affine_basis("lifted", bip, p)
    samples = [tuple(Fraction(0) for _ in range(p.d))]
    samples += [tuple(Fraction(int(c == k)) for c in range(p.d)) for k in range(p.d)]
    blocks = []
    for v in range(1, p.n + 1):
        Xv = change_of_basis(lambda s: F_hom(v, s), lambda s: F_lift(v, s), samples)
        if rank(Xv) != dd:
            failures.append({"singular_change_of_basis": v})
        blocks.append(Xv)
    if multiply(A_hom.matrix, block_diagonal(blocks)) != A_lift.matrix:
        failures.append({"identity": "affine(homogeneous) . blockdiag(X_v) = affine(lifted)"})

    return conclude("bipartite_coincidence", {"X": X, "Y": Y, "points": p.points, "d": dd},
                    failures, probabilistic=isinstance(mode, Sampled), comparison=verdict)


def check_bipartite_freeness(n1: int, n2: int, d: int, seed: int = 0,
                             mode: CompareMode = Exhaustive(), trials: int = 3) -> CheckReport:
    """On K_{n1,n2}: generic H_d ranks never exceed generic R_d ranks."""
    G = complete_bipartite(n1, n2)
    H = generic_matroid("hyper", G, d, trials, seed)
    R = generic_matroid("bar_joint", G, d, trials, seed)
    v = freer_than(H, R, mode)
    failures = [] if v else [{"independent_in_H_dependent_in_R": v.witness, "ranks": v.ranks}]
    return conclude("bipartite_freeness", {"n1": n1, "n2": n2, "d": d, "seed": seed}, failures,
                    probabilistic=isinstance(mode, Sampled), comparison=v,
                    full_ranks=[H.full_rank, R.full_rank])


def check_bipartite_not_spanning(n: int, d: int, seed: int = 0, trials: int = 3) -> CheckReport:
    """No complete bipartite graph on n >= d + 1 vertices is spanning in generic H_d."""
    if n < d + 1:
        raise PreconditionError("needs n >= d + 1")
    target = n * d - comb(d + 1, 2)
    H = generic_matroid("hyper", complete(n), d, trials, seed)
    failures = []
    checked = 0
    for k in range(0, n // 2 + 1):
        for X in itertools.combinations(range(1, n + 1), k):
            Y = [v for v in range(1, n + 1) if v not in X]
            r = H.rank_of(edge(x, y) for x in X for y in Y)
            checked += 1
            if r >= target:
                failures.append({"X": list(X), "rank": r})
    return conclude("bipartite_not_spanning", {"n": n, "d": d, "seed": seed}, failures,
                    bipartitions=checked, spanning_rank=target)
