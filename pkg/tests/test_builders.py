from __future__ import annotations

import random
from fractions import Fraction as F

import pytest

from rigidlab.builders import (BarJointBasis, CofactorBasis, Custom, Monomial, affine_rigidity,
                               bar_joint, build, cofactor, cofactor_vector, count_quadrics,
                               hyperconnectivity, polynomial_change_of_basis, polynomial_matrix,
                               quadric_matrix, skew_jacobian, skew_points)
from rigidlab.errors import PreconditionError
from rigidlab.exact_linalg import Matrix, block_diagonal, determinant, left_nullspace_dim, multiply, rank
from rigidlab.geometry import (PointConfig, homogenize, lift_bipartite, moment_curve,
                               monomial_vectors, parabola, random_generic, random_params)
from rigidlab.graph import Graph, complete, complete_bipartite
from rigidlab.matroid import LinearMatroid

EDGE = Graph.from_edges(2, [(1, 2)])


def ints(row):
    return [int(x) if x.denominator == 1 else x for x in row]


def test_single_edge_rows():
    p = PointConfig(2, ((0, 0), (1, 1)))
    assert ints(bar_joint(EDGE, p).matrix.row(0)) == [-1, -1, 1, 1]
    q = PointConfig(2, ((1, 0), (0, 1)))
    assert ints(hyperconnectivity(EDGE, q).matrix.row(0)) == [0, 1, -1, 0]
    c = PointConfig(2, ((1, 2), (0, 0)))
    assert ints(cofactor(EDGE, c, 3).matrix.row(0)) == [1, 2, 4, -1, -2, -4]
    assert cofactor_vector(F(1), F(2), 3) == (1, 2, 4)


def test_polynomial_single_edge_rows():
    row = polynomial_matrix(EDGE, [1, 2], 2, "barjoint").matrix.row(0)
    assert ints(row) == [1, 3, -1, -3]
    row = polynomial_matrix(EDGE, [0, 1], 3, "cofactor").matrix.row(0)
    assert ints(row) == [1, 1, 1, -1, -1, -1]


def test_row_order_and_support():
    G = complete(5)
    p = random_generic(3, 5, 4)
    for R in (bar_joint(G, p), hyperconnectivity(G, p), polynomial_matrix(G, random_params(5, 1), 3)):
        assert list(R.edges) == sorted(G.edges)
        for r, (i, j) in enumerate(R.edges):
            nonzero_blocks = {v for v in G.vertices if any(R.block(r, v))}
            assert nonzero_blocks == {i, j}


@pytest.mark.parametrize("seed", range(3))
def test_known_ranks(seed):
    p2 = random_generic(2, 4, seed)
    assert rank(bar_joint(complete(4), p2).matrix) == 5
    assert rank(hyperconnectivity(complete(4), p2).matrix) == 5
    p6 = random_generic(2, 6, seed)
    K33 = complete_bipartite(3, 3)
    assert rank(bar_joint(K33, p6).matrix) == 9
    H = hyperconnectivity(K33, p6)
    assert rank(H.matrix) == 8 and left_nullspace_dim(H.matrix) == 1
    q = random_generic(2, 5, seed)
    M = LinearMatroid(cofactor(complete(5), q, 3))
    assert M.full_rank == 9 and M.is_circuit(M.ground)


def test_cofactor_d2_equals_bar_joint():
    q = random_generic(2, 6, 9)
    assert cofactor(complete(6), q, 2).matrix == bar_joint(complete(6), q).matrix


def test_cofactor_rejects_coincident():
    q = PointConfig(2, ((0, 0), (0, 0)), allow_coincident=True)
    with pytest.raises(PreconditionError):
        cofactor(EDGE, q, 3)


def test_missing_points():
    with pytest.raises(PreconditionError):
        bar_joint(complete(4), random_generic(2, 3, 0))
    with pytest.raises(PreconditionError):
        polynomial_matrix(complete(4), [1, 2, 3], 2)


def test_monomial_polynomial_is_hyperconnectivity():
    t = [F(1, 2), -3, 4, 7, F(-5, 3)]
    assert polynomial_matrix(complete(5), t, 3).matrix == \
        hyperconnectivity(complete(5), monomial_vectors(3, t)).matrix


def test_curve_identities_by_hand():
    t = [2, -1, 3, 5]
    R = bar_joint(complete(4), moment_curve(3, t))
    P = polynomial_matrix(complete(4), t, 3, "barjoint")
    for r, (i, j) in enumerate(R.edges):
        assert [x / (t[i - 1] - t[j - 1]) for x in R.matrix.row(r)] == list(P.matrix.row(r))
    C = cofactor(complete(4), parabola(t), 3)
    Pc = polynomial_matrix(complete(4), t, 3, "cofactor")
    for r, (i, j) in enumerate(C.edges):
        assert [x / (t[i - 1] - t[j - 1]) ** 2 for x in C.matrix.row(r)] == list(Pc.matrix.row(r))


def _random_invertible(d, rng):
    while True:
        M = Matrix([[rng.randint(-4, 4) for _ in range(d)] for _ in range(d)])
        if determinant(M) != 0:
            return M


@pytest.mark.parametrize("seed", range(4))
def test_custom_basis_is_block_change(seed):
    rng = random.Random(seed)
    n, d = 5, 3
    t = random_params(n, seed, 50)
    mats = [_random_invertible(d, rng) for _ in range(n)]
    P = polynomial_matrix(complete(n), t, d, Custom(mats))
    P0 = polynomial_matrix(complete(n), t, d, Monomial())
    assert P.matrix == multiply(P0.matrix, block_diagonal([m.transpose() for m in mats]))
    blocks = polynomial_change_of_basis(Monomial(), BarJointBasis(), t, d, n)
    assert multiply(P0.matrix, block_diagonal(blocks)) == \
        polynomial_matrix(complete(n), t, d, BarJointBasis()).matrix
    assert all(rank(X) == d for X in blocks)
    blocks = polynomial_change_of_basis(CofactorBasis(), Monomial(), t, d, n)
    assert all(rank(X) == d for X in blocks)


def test_custom_basis_singular():
    with pytest.raises(PreconditionError):
        Custom([Matrix([[1, 2], [2, 4]])])


def test_affine_variants():
    p = PointConfig(2, ((1, 2), (3, 5), (0, 7), (4, 1)))
    G = complete_bipartite(2, 2)
    hom = affine_rigidity(G, p, "homogeneous")
    assert hom.matrix == hyperconnectivity(G, homogenize(p)).matrix
    lifted = affine_rigidity(G, p, "lifted")
    for r, (i, j) in enumerate(lifted.edges):
        want = tuple(a - b for a, b in zip(p[j], p[i])) + (1,)
        assert lifted.block(r, i) == want and lifted.block(r, j) == want
    q = PointConfig(1, ((3,), (-1,), (5,), (2,)))
    assert rank(affine_rigidity(G, q, "lifted").matrix) == \
        rank(bar_joint(G, lift_bipartite(q, G.bipartition)).matrix)
    with pytest.raises(PreconditionError):
        affine_rigidity(complete(4).with_bipartition(None), p, "lifted", G.bipartition)


def test_skew_jacobian():
    J = skew_jacobian(2, 1, [[1, 0]], [[0, 1]])
    # d/d(a1, b1, a2, b2) of a1 b2 - a2 b1 at a = (1, 0), b = (0, 1)
    assert ints(J.matrix.row(0)) == [1, 0, 0, 1]
    rng = random.Random(3)
    for k in (1, 2):
        for n in (4, 5):
            a = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(k)]
            b = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(k)]
            J = skew_jacobian(n, k, a, b)
            assert J.matrix == hyperconnectivity(complete(n), skew_points(a, b)).matrix


def test_skew_rank_k1():
    # generic rank is that of H_2 on K_n: 2n - 3
    a, b = [[3, -1, 4, 2]], [[1, 5, -2, 7]]
    assert rank(skew_jacobian(4, 1, a, b).matrix) == 5


def test_quadrics():
    Q = quadric_matrix(PointConfig(1, ((1,), (2,), (3,))))
    assert ints(Q.row(1)) == [1, 2, 4]
    assert count_quadrics(PointConfig(1, ((1,), (2,), (3,)))) == 0
    assert count_quadrics(parabola([1, 2, 3, 4, 5, 6])) == 1
    assert count_quadrics(moment_curve(3, range(1, 11))) == 3
    assert ints(quadric_matrix(PointConfig(2, ((2, 3),))).row(0)) == [1, 2, 3, 4, 6, 9]


def test_build_dispatch():
    p = random_generic(2, 4, 1)
    assert build("R", complete(4), 2, points=p).matrix == bar_joint(complete(4), p).matrix
    assert build("H", complete(4), 2, points=p).builder == "hyperconnectivity"
    with pytest.raises(PreconditionError):
        build("poly", complete(4), 2, points=p)
    with pytest.raises(PreconditionError):
        build("nope", complete(4), 2, points=p)
