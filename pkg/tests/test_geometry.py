from __future__ import annotations

from fractions import Fraction as F

import pytest

from rigidlab.errors import ParseError, PreconditionError
from rigidlab.geometry import (Params, PointConfig, derive_seed, general_position, homogenize,
                               lift_bipartite, linear_span_dim, moment_curve, monomial_vectors,
                               parabola, project_last, random_generic, random_params,
                               random_rational_params)
from rigidlab.graph import Bipartition


def pts(cfg):
    return [tuple(int(x) if x.denominator == 1 else x for x in p) for p in cfg.points]


def test_curves():
    assert pts(moment_curve(2, [1, 2])) == [(1, 1), (2, 4)]
    assert pts(moment_curve(3, [-1, 0, 2])) == [(-1, 1, -1), (0, 0, 0), (2, 4, 8)]
    assert pts(moment_curve(1, [5, -3])) == [(5,), (-3,)]
    assert pts(parabola([1, 2, 3])) == [(1, 1), (2, 4), (3, 9)]
    assert pts(parabola([0, 1])) == [(0, 0), (1, 1)]
    assert parabola([F(1, 3), 7]) == moment_curve(2, [F(1, 3), 7])
    assert pts(monomial_vectors(3, [2])) == [(1, 2, 4)]
    assert pts(monomial_vectors(1, [4, 5, 6])) == [(1,), (1,), (1,)]
    assert pts(monomial_vectors(2, [F(1, 2), 9])) == [(1, F(1, 2)), (1, 9)]


def test_params_distinct():
    with pytest.raises(PreconditionError):
        Params((F(1), F(1)))
    assert Params.parse("1, 2/3,-4").t == (1, F(2, 3), -4)
    with pytest.raises(ParseError):
        Params.parse("1,zz")


def test_point_config_invariants():
    with pytest.raises(PreconditionError):
        PointConfig(2, ((F(0), F(0)), (F(0), F(0))))
    with pytest.raises(PreconditionError):
        PointConfig(2, ((F(0), F(0)), (F(1),)))
    p = PointConfig(2, ((1, 2), (3, 4)))
    assert p[1] == (1, 2) and p.n == 2


def test_point_file_round_trip(tmp_path):
    p = PointConfig(2, ((F(1, 2), 3), (-1, F(-7, 3))))
    assert PointConfig.from_text(p.to_text()) == p
    path = tmp_path / "p.cfg"
    path.write_text("2 1\n5\n1/2\n")
    assert PointConfig.read(path).points == ((5,), (F(1, 2),))
    for bad in ("2 2\n1 2\n", "1 2\n1 a\n", "x\n"):
        with pytest.raises(ParseError):
            PointConfig.from_text(bad)


def test_random_determinism_and_range():
    assert random_generic(3, 6, 11) == random_generic(3, 6, 11)
    assert random_params(5, 3) == random_params(5, 3)
    assert random_rational_params(5, 3) == random_rational_params(5, 3)
    assert derive_seed(1, "a", 2) == derive_seed(1, "a", 2) != derive_seed(1, "a", 3)
    for s in range(20):
        t = random_params(3, s, 10)
        assert len(set(t)) == 3 and all(-10 <= x <= 10 and x.denominator == 1 for x in t)


def test_random_generic_in_general_position():
    hits = sum(general_position(random_generic(2, 5, s, 2 ** 20, mode=None), "both") for s in range(100))
    assert hits == 100


def test_lifts():
    assert pts(homogenize(PointConfig(2, ((1, 2), (3, 4))))) == [(1, 2, 1), (3, 4, 1)]
    p = PointConfig(1, ((5,), (7,)))
    bip = Bipartition.from_side(2, [1])
    assert pts(lift_bipartite(p, bip)) == [(5, 0), (7, 1)]
    assert project_last(lift_bipartite(p, bip)) == p


def test_general_position():
    for d in (2, 3, 4):
        assert general_position(moment_curve(d, [1, 2, 3, -1, 5, F(1, 2)]), "linear")
        assert general_position(monomial_vectors(d, [0, 1, 2, -1, 5, F(1, 2)]), "linear")
    assert not general_position(PointConfig(2, ((0, 0), (1, 1), (2, 2))), "affine")
    assert not general_position(PointConfig(2, ((1, 1), (2, 2), (0, 1))), "linear")
    assert linear_span_dim([(1, 2, 3), (2, 4, 6)]) == 1
