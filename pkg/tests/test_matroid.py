from __future__ import annotations

import random
import threading

import pytest

from rigidlab.builders import bar_joint, hyperconnectivity, polynomial_matrix
from rigidlab.errors import PreconditionError
from rigidlab.geometry import moment_curve, monomial_vectors, random_generic
from rigidlab.graph import complete, complete_bipartite
from rigidlab.matroid import (Exhaustive, LinearMatroid, Sampled, choose_mode, circuits_up_to,
                              estimate_generic_rank, freer_than, generic_matroid, generic_rank,
                              matroids_equal)


def H(G, d, seed):
    return LinearMatroid(hyperconnectivity(G, random_generic(d, G.n, seed)))


def R(G, d, seed):
    return LinearMatroid(bar_joint(G, random_generic(d, G.n, seed)))


def test_ranks():
    M = H(complete_bipartite(4, 4), 3, 1)
    assert M.rank_of([]) == 0
    assert M.full_rank == 15 and M.corank_of(M.ground) == 1
    assert M.is_circuit(M.ground)
    N = H(complete_bipartite(2, 5), 3, 1)
    assert N.full_rank == 10 and N.corank_of(N.ground) == 0
    with pytest.raises(PreconditionError):
        N.rank_of([(1, 2)])


def test_predicates():
    assert R(complete(4), 2, 0).is_circuit(complete(4).edges)
    K33 = complete_bipartite(3, 3)
    RK = R(K33, 2, 0)
    assert RK.is_basis(K33.edges) and RK.full_rank == RK.ambient_bound == 9
    assert H(K33, 2, 0).is_circuit(K33.edges)
    M = R(complete(5), 2, 2)
    B = M.basis_of(M.ground)
    assert M.is_basis(B) and len(B) == 7
    assert M.is_spanning(M.ground) and not M.is_independent(M.ground)


def test_matroid_comparisons():
    K33 = complete_bipartite(3, 3)
    Rm, Hm = R(K33, 2, 3), H(K33, 2, 3)
    assert matroids_equal(Rm, Rm)
    v = matroids_equal(Rm, Hm, Exhaustive())
    assert not v and sorted(v.witness) == sorted(K33.edges) and tuple(v.ranks) == (9, 8)
    assert freer_than(Rm, Rm)
    assert freer_than(Hm, Rm, Exhaustive())
    v = freer_than(Rm, Hm, Exhaustive())
    assert not v and sorted(v.witness) == sorted(K33.edges)
    t = [1, 2, 3, 4]
    K4 = complete(4)
    assert matroids_equal(LinearMatroid(bar_joint(K4, moment_curve(2, t))),
                          LinearMatroid(hyperconnectivity(K4, monomial_vectors(2, t))), Exhaustive())


def test_modes():
    assert isinstance(choose_mode(10), Exhaustive)
    assert isinstance(choose_mode(17), Sampled)
    assert isinstance(choose_mode(4, limit=0), Sampled)
    with pytest.raises(PreconditionError):
        matroids_equal(R(complete(7), 2, 0), R(complete(7), 2, 1), Exhaustive())
    v = matroids_equal(R(complete(7), 2, 0), R(complete(7), 2, 1), Sampled(300, 5))
    assert v and v.probabilistic


def test_circuits():
    M = H(complete(4), 2, 0)
    assert [sorted(c) for c in circuits_up_to(M, 6)] == [sorted(complete(4).edges)]
    assert [sorted(c) for c in circuits_up_to(R(complete(3), 1, 0), 3)] == [[(1, 2), (1, 3), (2, 3)]]
    assert circuits_up_to(R(complete_bipartite(3, 3), 2, 0), 9) == []


def test_rank_function_axioms():
    M = R(complete(6), 2, 4)
    rng = random.Random(0)
    ground = list(M.ground)
    for _ in range(200):
        A = {e for e in ground if rng.random() < 0.5}
        B = {e for e in ground if rng.random() < 0.5}
        assert M.rank_of(A & B) + M.rank_of(A | B) <= M.rank_of(A) + M.rank_of(B)
        assert M.rank_of(A & B) <= M.rank_of(A) <= len(A)
    for C in circuits_up_to(M, 5):
        assert M.corank_of(C) == 1
        assert all(M.is_independent([e for e in C if e != f]) for f in C)


@pytest.mark.parametrize("builder", ["bar_joint", "hyper", "cofactor", "poly"])
def test_rank_bounded_by_ambient(builder):
    for d in (2, 3):
        M = generic_matroid(builder, complete(d + 3), d, 1, 7)
        assert M.full_rank <= M.ambient_bound


def test_generic_rank_examples():
    assert generic_rank("bar_joint", complete(5), 3, 3, 1) == 9
    assert generic_rank("poly", complete_bipartite(4, 6), 3, 3, 1, basis="barjoint") == 21
    assert generic_rank("bar_joint", complete_bipartite(4, 6), 3, 3, 1) == 24
    est = estimate_generic_rank("hyper", complete(5), 2, 4, 9)
    assert est.consistent and len(est.trial_ranks) == 4
    a = generic_rank("hyper", complete_bipartite(3, 4), 3, 1, 2)
    b = generic_rank("hyper", complete_bipartite(3, 4), 3, 3, 2)
    assert a <= b


def test_concurrent_queries():
    M = R(complete(6), 2, 1)
    masks = list(range(1, 1 << 10))
    expect = {m: LinearMatroid(M.source).rank_mask(m) for m in masks[:200]}
    errors = []

    def worker():
        for m in masks[:200]:
            if M.rank_mask(m) != expect[m]:
                errors.append(m)

    threads = [threading.Thread(target=worker) for _ in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert not errors


def test_poly_matroid_uses_params():
    G = complete(5)
    M = LinearMatroid(polynomial_matrix(G, [1, 2, 3, 4, 5], 2))
    assert M.full_rank == 7
