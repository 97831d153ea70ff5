"""Rigidity matrices restricted to the edge rows of a framework.

Every builder returns a :class:`RigidityMatrix`: rows follow the
lexicographic edge order of the graph, columns form one block of width ``d``
per vertex.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Sequence

from .errors import PreconditionError
from .exact_linalg import Matrix, as_rational, rank, solve
from .geometry import Params, PointConfig, monomial_rows
from .graph import Bipartition, Edge, Graph

Vector = tuple[Fraction, ...]


@dataclass(frozen=True)
class RigidityMatrix:
    matrix: Matrix
    edges: tuple[Edge, ...]
    n: int
    d: int
    builder: str
    inputs: dict = field(default_factory=dict, compare=False)

    @property
    def rows(self) -> int:
        return self.matrix.rows

    def row_of(self, e: Edge) -> tuple[Fraction, ...]:
        return self.matrix.row(self.edges.index(e))

    def block(self, row: int, vertex: int) -> tuple[Fraction, ...]:
        d = self.d
        return self.matrix.row(row)[(vertex - 1) * d: vertex * d]

    def header(self) -> str:
        parts = [f"builder={self.builder}", f"n={self.n}", f"d={self.d}"]
        parts += [f"{k}={v}" for k, v in self.inputs.items()]
        return " ".join(parts)


def _assemble(G: Graph, d: int, row_blocks: Callable[[int, int], tuple[Vector, Vector]],
              builder: str, inputs: dict, edges: Sequence[Edge] | None = None) -> RigidityMatrix:
    """``row_blocks(i, j)`` gives the (block i, block j) contents of row (i, j)."""
    edges = tuple(G.sorted_edges() if edges is None else edges)
    width = G.n * d
    rows = []
    for i, j in edges:
        bi, bj = row_blocks(i, j)
        r = [Fraction(0)] * width
        r[(i - 1) * d: i * d] = bi
        r[(j - 1) * d: j * d] = bj
        rows.append(r)
    M = Matrix(rows, cols=width, row_labels=edges, block_width=d if d else None)
    return RigidityMatrix(M, edges, G.n, d, builder, inputs)


def _check_points(G: Graph, p: PointConfig):
    if p.n < G.n:
        raise PreconditionError(f"vertex {p.n + 1} has no point ({p.n} points for {G.n} vertices)")


# -- the classical matrices ----------------------------------------------------


def bar_joint(G: Graph, p: PointConfig) -> RigidityMatrix:
    _check_points(G, p)

    def blocks(i, j):
        pi, pj = p[i], p[j]
        return (tuple(a - b for a, b in zip(pi, pj)), tuple(b - a for a, b in zip(pi, pj)))

    return _assemble(G, p.d, blocks, "bar_joint", {})


def hyperconnectivity(G: Graph, p: PointConfig) -> RigidityMatrix:
    _check_points(G, p)

    def blocks(i, j):
        return tuple(p[j]), tuple(-x for x in p[i])

    return _assemble(G, p.d, blocks, "hyperconnectivity", {})


def cofactor_vector(x: Fraction, y: Fraction, d: int) -> Vector:
    """c(x, y) = (x^(d-1), x^(d-2) y, ..., y^(d-1))."""
    return tuple(x ** (d - k) * y ** (k - 1) for k in range(1, d + 1))


def cofactor(G: Graph, q: PointConfig, d: int) -> RigidityMatrix:
    _check_points(G, q)
    if q.d != 2:
        raise PreconditionError("cofactor matrices need planar points")
    if d < 1:
        raise PreconditionError("dimension must be >= 1")

    def blocks(i, j):
        qi, qj = q[i], q[j]
        if qi == qj:
            raise PreconditionError(f"coincident points for vertices {i} and {j}")
        c = cofactor_vector(qi[0] - qj[0], qi[1] - qj[1], d)
        return c, tuple(-x for x in c)

    return _assemble(G, d, blocks, "cofactor", {})


# -- polynomial bases ----------------------------------------------------------


def horner(coeffs: Sequence[Fraction], t: Fraction) -> Fraction:
    """Evaluate sum coeffs[m] * t^m."""
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


class Basis:
    """A basis of the polynomials of degree < d attached to each vertex.

    ``coefficients`` returns a d x d matrix whose k-th row holds the
    monomial-basis coefficients (ascending powers) of the k-th basis
    polynomial of ``vertex`` with curve parameter ``t_vertex``.
    """

    name = "basis"

    def coefficients(self, vertex: int, t_vertex: Fraction, d: int) -> Matrix:
        raise NotImplementedError

    def evaluate(self, vertex: int, t_vertex: Fraction, t: Fraction, d: int) -> Vector:
        C = self.coefficients(vertex, t_vertex, d)
        return tuple(horner(row, t) for row in C.entries)

    def __repr__(self):
        return self.name


class Monomial(Basis):
    """(1, t, ..., t^(d-1)) at every vertex."""

    name = "monomial"

    def coefficients(self, vertex, t_vertex, d):
        return Matrix.identity(d)


class BarJointBasis(Basis):
    """((t_i^k - t^k) / (t_i - t))_{k=1..d}, expanded as a polynomial in t."""

    name = "barjoint"

    def coefficients(self, vertex, t_vertex, d):
        return Matrix(
            [[t_vertex ** (k - 1 - m) if m < k else 0 for m in range(d)] for k in range(1, d + 1)],
            cols=d)


class CofactorBasis(Basis):
    """((t_i + t)^(k-1))_{k=1..d}, binomially expanded."""

    name = "cofactor"

    def coefficients(self, vertex, t_vertex, d):
        return Matrix(
            [[comb(k - 1, m) * t_vertex ** (k - 1 - m) if m < k else 0 for m in range(d)]
             for k in range(1, d + 1)],
            cols=d)


class Custom(Basis):
    """Explicit invertible coefficient matrices, one per vertex (1-based)."""

    name = "custom"

    def __init__(self, matrices: Sequence[Matrix]):
        self.matrices = tuple(matrices)
        for v, C in enumerate(self.matrices, start=1):
            if C.rows != C.cols or rank(C) != C.rows:
                raise PreconditionError(f"custom basis of vertex {v} is singular")

    def coefficients(self, vertex, t_vertex, d):
        C = self.matrices[vertex - 1]
        if C.rows != d:
            raise PreconditionError(f"custom basis of vertex {vertex} has size {C.rows}, expected {d}")
        return C


BASES = {"monomial": Monomial, "barjoint": BarJointBasis, "cofactor": CofactorBasis}


def get_basis(name: str) -> Basis:
    try:
        return BASES[name]()
    except KeyError:
        raise PreconditionError(f"unknown basis {name!r}; choose from {sorted(BASES)}") from None


def polynomial_matrix(G: Graph, params, d: int, bases: Basis | str = "monomial") -> RigidityMatrix:
    """Row (i, j) holds F^i(t_j) in block i and -F^j(t_i) in block j."""
    t = params if isinstance(params, Params) else Params(tuple(params))
    if len(t) < G.n:
        raise PreconditionError(f"vertex {len(t) + 1} has no parameter")
    basis = get_basis(bases) if isinstance(bases, str) else bases
    coeffs = {v: basis.coefficients(v, t[v - 1], d) for v in G.vertices}

    def ev(v, x):
        return tuple(horner(row, x) for row in coeffs[v].entries)

    def blocks(i, j):
        return ev(i, t[j - 1]), tuple(-x for x in ev(j, t[i - 1]))

    return _assemble(G, d, blocks, "polynomial", {"basis": basis.name})


# -- affine rigidity (bipartite coincidence) -----------------------------------


def affine_basis(variant: str, bip: Bipartition, p: PointConfig):
    """Per-vertex affine function bases R^(d-1) -> R^d used by the
    bipartite coincidence argument; returns ``F(vertex, x) -> vector``."""
    one = Fraction(1)
    if variant == "lifted":
        def F(v, x):
            sign = one if v in bip.X else -one
            return tuple(a - b for a, b in zip(x, p[v])) + (sign,)
    elif variant == "homogeneous":
        def F(v, x):
            return tuple(x) + (one,)
    else:
        raise PreconditionError(f"unknown affine variant {variant!r}")
    return F


def affine_rigidity(G: Graph, p: PointConfig, variant: str = "lifted",
                    bip: Bipartition | None = None) -> RigidityMatrix:
    """Edge {x, y}, x in X, y in Y: F^x(p_y) in block x, -F^y(p_x) in block y."""
    _check_points(G, p)
    bip = bip or G.bipartition
    if bip is None:
        raise PreconditionError("affine rigidity matrix needs a bipartition")
    bad = [e for e in G.edges if not bip.separates(e)]
    if bad:
        raise PreconditionError(f"edge {min(bad)} is not bipartite for the given bipartition")
    F = affine_basis(variant, bip, p)

    def blocks(i, j):
        x, y = (i, j) if i in bip.X else (j, i)
        bx = F(x, p[y])
        by = tuple(-v for v in F(y, p[x]))
        return (bx, by) if x == i else (by, bx)

    return _assemble(G, p.d + 1, blocks, "affine", {"variant": variant})


# -- low-rank skew-symmetric parametrization -----------------------------------


def skew_parametrization(a: Sequence[Sequence], b: Sequence[Sequence], n: int) -> dict[Edge, Fraction]:
    """Upper-triangular entries of sum_l (a_l^T b_l - b_l^T a_l)."""
    out = {}
    for i, j in itertools.combinations(range(1, n + 1), 2):
        out[(i, j)] = sum((Fraction(al[i - 1]) * bl[j - 1] - Fraction(al[j - 1]) * bl[i - 1]
                           for al, bl in zip(a, b)), Fraction(0))
    return out


def skew_jacobian(n: int, k: int, a: Sequence[Sequence], b: Sequence[Sequence]) -> RigidityMatrix:
    """Jacobian of the skew parametrization, by exact central differences.

    The map is quadratic in its variables, so (T(x + e) - T(x - e)) / 2 is
    the exact partial derivative.  Columns: vertex block i holds the
    derivatives in (a_{1,i}, b_{1,i}, ..., a_{k,i}, b_{k,i}).
    """
    if k < 1:
        raise PreconditionError("k must be >= 1")
    a = [[as_rational(x) for x in v] for v in a]
    b = [[as_rational(x) for x in v] for v in b]
    if len(a) != k or len(b) != k or any(len(v) != n for v in a + b):
        raise PreconditionError(f"need {k} vectors a and {k} vectors b of length {n}")
    edges = tuple(itertools.combinations(range(1, n + 1), 2))
    width = 2 * k
    cols = []
    for i in range(1, n + 1):
        for l in range(k):
            for which in ("a", "b"):
                def bumped(h):
                    aa = [list(v) for v in a]
                    bb = [list(v) for v in b]
                    (aa if which == "a" else bb)[l][i - 1] += h
                    return skew_parametrization(aa, bb, n)
                plus, minus = bumped(1), bumped(-1)
                cols.append([(plus[e] - minus[e]) / 2 for e in edges])
    M = Matrix(zip(*cols), cols=n * width, row_labels=edges, block_width=width)
    return RigidityMatrix(M, edges, n, width, "skew_jacobian", {"k": k})


def skew_points(a: Sequence[Sequence], b: Sequence[Sequence]) -> PointConfig:
    """p_i = (b_{1,i}, -a_{1,i}, ..., b_{k,i}, -a_{k,i})."""
    n = len(a[0])
    pts = []
    for i in range(n):
        pts.append(tuple(x for al, bl in zip(a, b) for x in (Fraction(bl[i]), -Fraction(al[i]))))
    return PointConfig(2 * len(a), tuple(pts), allow_coincident=True)


# -- quadrics through a configuration ------------------------------------------


def quadric_monomials(x: Sequence[Fraction]) -> Vector:
    """1, x_1..x_d, then x_a x_b for a <= b in lexicographic order."""
    d = len(x)
    quad = [x[a] * x[b] for a in range(d) for b in range(a, d)]
    return (Fraction(1),) + tuple(x) + tuple(quad)


def quadric_matrix(p: PointConfig) -> Matrix:
    return Matrix((quadric_monomials(q) for q in p.points), cols=comb(p.d + 2, 2))


def count_quadrics(p: PointConfig) -> int:
    """Dimension of the space of polynomials of degree <= 2 vanishing on p."""
    Q = quadric_matrix(p)
    return Q.cols - rank(Q)


# -- change of basis -----------------------------------------------------------


def change_of_basis(F: Callable[[Fraction], Vector], G: Callable[[Fraction], Vector],
                    samples: Sequence) -> Matrix:
    """The d x d matrix X with G(x) = F(x) X for all x, solved from evaluations
    at ``samples`` (which must make the F-evaluation matrix invertible)."""
    A = Matrix([F(s) for s in samples])
    B = Matrix([G(s) for s in samples])
    return solve(A, B)


def polynomial_change_of_basis(basis_f: Basis, basis_g: Basis, params: Params, d: int,
                               n: int) -> list[Matrix]:
    """Per-vertex blocks X_v with F^v(t) X_v = G^v(t)."""
    samples = [Fraction(s) for s in range(d)]
    out = []
    for v in range(1, n + 1):
        tv = params[v - 1]
        out.append(change_of_basis(lambda s: basis_f.evaluate(v, tv, s, d),
                                   lambda s: basis_g.evaluate(v, tv, s, d), samples))
    return out


# -- generic samples by builder name -------------------------------------------

BUILDER_ALIASES = {
    "bar_joint": "bar_joint", "bar": "bar_joint", "R": "bar_joint",
    "hyperconnectivity": "hyper", "hyper": "hyper", "H": "hyper",
    "cofactor": "cofactor", "C": "cofactor",
    "polynomial": "poly", "poly": "poly", "P": "poly",
}


def canonical_builder(name: str) -> str:
    try:
        return BUILDER_ALIASES[name]
    except KeyError:
        raise PreconditionError(
            f"unknown builder {name!r}; choose from bar_joint, hyper, cofactor, poly") from None


def build(builder: str, G: Graph, d: int, points: PointConfig | None = None,
          params: Params | None = None, basis: str = "monomial") -> RigidityMatrix:
    """Dispatch on a builder name with explicit positions."""
    b = canonical_builder(builder)
    if b == "poly":
        if params is None:
            raise PreconditionError("the polynomial builder needs curve parameters")
        return polynomial_matrix(G, params, d, basis)
    if points is None:
        raise PreconditionError(f"the {b} builder needs a point configuration")
    if b == "bar_joint":
        return bar_joint(G, points)
    if b == "hyper":
        return hyperconnectivity(G, points)
    return cofactor(G, points, d)
