"""Bit-exact matrix identities behind the coincidence results."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..builders import (BarJointBasis, CofactorBasis, Monomial, bar_joint, cofactor,
                        hyperconnectivity, polynomial_change_of_basis, polynomial_matrix,
                        skew_jacobian, skew_points)
from ..errors import PreconditionError
from ..exact_linalg import (Matrix, as_rational, block_diagonal, determinant, multiply, rank,
                            scale_rows)
from ..geometry import Params, PointConfig, monomial_vectors, moment_curve, parabola
from ..graph import complete
from ..matroid import CompareMode, Exhaustive, LinearMatroid, Sampled, matroids_equal
from .report import CheckReport, conclude


def _first_row_mismatch(A: Matrix, B: Matrix, labels) -> list | None:
    if A.shape != B.shape:
        return ["shape", list(A.shape), list(B.shape)]
    for k, (ra, rb) in enumerate(zip(A.entries, B.entries)):
        if ra != rb:
            return list(labels[k])
    return None


def scaling_factors(p: PointConfig, alphas: Sequence, l: Matrix):
    """Row scalars D and column blocks C with H(q) = D H(p) C for q_i = alpha_i l(p_i)."""
    alphas = [as_rational(a) for a in alphas]
    if len(alphas) != p.n:
        raise PreconditionError(f"need {p.n} scalars, got {len(alphas)}")
    if any(a == 0 for a in alphas):
        raise PreconditionError("scalars must be non-zero")
    if l.shape != (p.d, p.d) or determinant(l) == 0:
        raise PreconditionError("the linear map must be an invertible d x d matrix")
    lt = l.transpose()
    C = block_diagonal([Matrix(([x / a for x in r] for r in lt.entries), cols=p.d)
                        for a in alphas])
    return alphas, C


def scaled_config(p: PointConfig, alphas: Sequence, l: Matrix) -> PointConfig:
    pts = []
    for a, q in zip(alphas, p.points):
        lq = [sum((l[r, c] * q[c] for c in range(p.d)), Fraction(0)) for r in range(p.d)]
        pts.append(tuple(as_rational(a) * x for x in lq))
    return PointConfig(p.d, tuple(pts), allow_coincident=True)


def check_scaling_invariance(p: PointConfig, alphas: Sequence, l: Matrix) -> CheckReport:
    """H(q) = D H(p) C exactly, for q_i = alpha_i l(p_i)."""
    alphas, C = scaling_factors(p, alphas, l)
    G = complete(p.n)
    Hp = hyperconnectivity(G, p)
    q = scaled_config(p, alphas, l)
    Hq = hyperconnectivity(G, q)
    D = [alphas[i - 1] * alphas[j - 1] for i, j in Hp.edges]
    rhs = multiply(scale_rows(Hp.matrix, D), C)
    bad = _first_row_mismatch(Hq.matrix, rhs, Hp.edges)
    inputs = {"n": p.n, "d": p.d, "points": p.points, "alphas": alphas, "l": l.entries}
    return conclude("scaling_invariance", inputs, [bad] if bad else [],
                    identity="H(q) = D H(p) C", matroids_equal=bad is None)


def check_planar_reduction(p: PointConfig) -> CheckReport:
    """Scaling (a_i, b_i) by b_i / a_i^2 lands on the parabola at t_i = b_i / a_i,
    and scaling by 1 / t_i then reaches the monomial vectors (1, t_i)."""
    if p.d != 2:
        raise PreconditionError("planar reduction needs points in the plane")
    if any(x == 0 for q in p.points for x in q):
        raise PreconditionError("all coordinates must be non-zero")
    alphas = [b / a ** 2 for a, b in p.points]
    t = [b / a for a, b in p.points]
    if len(set(t)) != len(t):
        raise PreconditionError("points on a common line through the origin")
    I2 = Matrix.identity(2)
    failures = []
    q = scaled_config(p, alphas, I2)
    if q != parabola(t):
        failures.append(["not on parabola"])
    first = check_scaling_invariance(p, alphas, I2)
    if not first.ok:
        failures.append(["first scaling", first.details["witness"]])
    second = check_scaling_invariance(q, [1 / x for x in t], I2)
    if not second.ok:
        failures.append(["second scaling", second.details["witness"]])
    if scaled_config(q, [1 / x for x in t], I2) != monomial_vectors(2, t):
        failures.append(["not monomial"])
    hyper_mono = hyperconnectivity(complete(p.n), monomial_vectors(2, t)).matrix
    poly_mono = polynomial_matrix(complete(p.n), t, 2, Monomial()).matrix
    if hyper_mono != poly_mono:
        failures.append(["monomial hyperconnectivity differs from polynomial matrix"])
    return conclude("planar_reduction", {"points": p.points}, failures,
                    alphas=alphas, params=t)


def cofactor_entry_identity(ti: Fraction, tj: Fraction, d: int) -> bool:
    """(x_i-x_j)^(d-k) (y_i-y_j)^(k-1) = (t_i-t_j)^(d-1) (t_i+t_j)^(k-1) on the parabola."""
    dx, dy = ti - tj, ti ** 2 - tj ** 2
    return all(dx ** (d - k) * dy ** (k - 1) == (ti - tj) ** (d - 1) * (ti + tj) ** (k - 1)
               for k in range(1, d + 1))


def check_coincidence(params, d: int) -> CheckReport:
    """Row identities linking the three curve matrices to polynomial matrices,
    plus exact change-of-basis blocks between the polynomial bases."""
    t = params if isinstance(params, Params) else Params(tuple(params))
    n = len(t)
    G = complete(n)
    edges = G.sorted_edges()
    failures = []
    P = {b.name: polynomial_matrix(G, t, d, b) for b in (Monomial(), BarJointBasis(), CofactorBasis())}

    R = bar_joint(G, moment_curve(d, t))
    for k, (i, j) in enumerate(edges):
        s = t[i - 1] - t[j - 1]
        if R.matrix.row(k) != tuple(s * x for x in P["barjoint"].matrix.row(k)):
            failures.append(["bar_joint", i, j])
            break

    C = cofactor(G, parabola(t), d)
    for k, (i, j) in enumerate(edges):
        ti, tj = t[i - 1], t[j - 1]
        if not cofactor_entry_identity(ti, tj, d):
            failures.append(["cofactor entry identity", i, j])
            break
        s = (ti - tj) ** (d - 1)
        if C.matrix.row(k) != tuple(s * x for x in P["cofactor"].matrix.row(k)):
            failures.append(["cofactor", i, j])
            break

    H = hyperconnectivity(G, monomial_vectors(d, t))
    if H.matrix != P["monomial"].matrix:
        failures.append(["hyperconnectivity",
                         _first_row_mismatch(H.matrix, P["monomial"].matrix, edges)])

    bases = {"monomial": Monomial(), "barjoint": BarJointBasis(), "cofactor": CofactorBasis()}
    for f, g in (("monomial", "barjoint"), ("monomial", "cofactor"), ("barjoint", "cofactor")):
        blocks = polynomial_change_of_basis(bases[f], bases[g], t, d, n)
        if any(rank(X) != d for X in blocks):
            failures.append(["singular change of basis", f, g])
            continue
        if multiply(P[f].matrix, block_diagonal(blocks)) != P[g].matrix:
            failures.append(["change of basis", f, g])

    rescaled = None
    if all(x != 0 for x in t):
        # moment-curve points are t_i times the monomial vectors
        mono = monomial_vectors(d, t)
        rescaled = (moment_curve(d, t).points == scaled_config(mono, list(t), Matrix.identity(d)).points
                    and check_scaling_invariance(mono, list(t), Matrix.identity(d)).ok)
        if not rescaled:
            failures.append(["moment-curve rescaling"])

    return conclude("coincidence", {"d": d, "params": t.t}, failures,
                    legs=["bar_joint", "cofactor", "hyperconnectivity", "change_of_basis"],
                    rescaling_checked=rescaled is not None)


def curve_matroids(params, d: int) -> dict[str, LinearMatroid]:
    t = params if isinstance(params, Params) else Params(tuple(params))
    G = complete(len(t))
    return {
        "bar_joint": LinearMatroid(bar_joint(G, moment_curve(d, t))),
        "cofactor": LinearMatroid(cofactor(G, parabola(t), d)),
        "hyperconnectivity": LinearMatroid(hyperconnectivity(G, monomial_vectors(d, t))),
    }


def check_coincidence_matroids(params, d: int, mode: CompareMode = Exhaustive()) -> CheckReport:
    """Subset-rank comparison of the three curve matroids on K_n."""
    Ms = curve_matroids(params, d)
    failures, verdicts = [], {}
    for other in ("cofactor", "hyperconnectivity"):
        v = matroids_equal(Ms["bar_joint"], Ms[other], mode)
        verdicts[f"bar_joint=={other}"] = v
        if not v:
            failures.append({"pair": ["bar_joint", other], "subset": v.witness, "ranks": v.ranks})
    t = params.t if isinstance(params, Params) else tuple(params)
    return conclude("coincidence_matroids", {"d": d, "params": t}, failures,
                    probabilistic=isinstance(mode, Sampled), verdicts=verdicts,
                    rank=Ms["bar_joint"].full_rank)


def check_skew_jacobian(a: Sequence[Sequence], b: Sequence[Sequence]) -> CheckReport:
    """The Jacobian of the skew parametrization is a hyperconnectivity matrix."""
    k, n = len(a), len(a[0])
    J = skew_jacobian(n, k, a, b)
    H = hyperconnectivity(complete(n), skew_points(a, b))
    bad = _first_row_mismatch(J.matrix, H.matrix, J.edges)
    return conclude("skew_jacobian", {"n": n, "k": k, "a": a, "b": b}, [bad] if bad else [],
                    rank=rank(J.matrix))
