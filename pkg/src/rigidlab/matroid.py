"""Linear matroids on edge-labelled rigidity matrices."""

from __future__ import annotations

import itertools
import random
import threading
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Sequence

from .builders import (RigidityMatrix, bar_joint, canonical_builder, cofactor, hyperconnectivity,
                       polynomial_matrix)
from .errors import PreconditionError
from .exact_linalg import Matrix, bareiss_rank, integer_rows
from .geometry import DEFAULT_BOUND, derive_seed, random_generic, random_params
from .graph import Edge, Graph

EXHAUSTIVE_MAX = 20
DEFAULT_EXHAUSTIVE_LIMIT = 16


class LinearMatroid:
    """Row matroid of a matrix whose rows are labelled by edges.

    Subset ranks are memoised by bitmask; concurrent callers may compute the
    same entry twice, which is harmless since results are identical.
    """

    def __init__(self, matrix: Matrix | RigidityMatrix, labels: Sequence[Edge] | None = None,
                 n: int | None = None, d: int | None = None):
        if isinstance(matrix, RigidityMatrix):
            labels = matrix.edges if labels is None else labels
            n = matrix.n if n is None else n
            d = matrix.d if d is None else d
            self.source = matrix
            matrix = matrix.matrix
        else:
            self.source = None
            labels = matrix.row_labels if labels is None else labels
        if labels is None:
            raise ValueError("a linear matroid needs row labels")
        labels = tuple(labels)
        if len(set(labels)) != len(labels):
            raise ValueError("ground labels must be distinct")
        if len(labels) != matrix.rows:
            raise ValueError("one label per row required")
        self.ground = labels
        self.index = {e: k for k, e in enumerate(labels)}
        self.ncols = matrix.cols
        self._int_rows = integer_rows(matrix.entries)
        self.n, self.d = n, d
        self._cache: dict[int, int] = {}
        self._lock = threading.Lock()
        self.full_rank = self.rank_of(labels)

    def __len__(self):
        return len(self.ground)

    @property
    def ambient_bound(self) -> int | None:
        """n d - C(d+1, 2), the rank of an abstract rigidity matroid."""
        if self.n is None or self.d is None or self.n < self.d:
            return None
        return self.n * self.d - comb(self.d + 1, 2)

    def mask(self, S: Iterable[Edge]) -> int:
        m = 0
        for e in S:
            e = tuple(sorted(e))
            try:
                m |= 1 << self.index[e]
            except KeyError:
                raise PreconditionError(f"edge {e} is not in the ground set") from None
        return m

    def elements(self, mask: int) -> list[Edge]:
        return [e for k, e in enumerate(self.ground) if mask >> k & 1]

    def rank_mask(self, mask: int) -> int:
        with self._lock:
            hit = self._cache.get(mask)
        if hit is not None:
            return hit
        rows = [list(self._int_rows[k]) for k in range(len(self.ground)) if mask >> k & 1]
        r = bareiss_rank(rows, self.ncols) if rows else 0
        if len(self.ground) <= 64:
            with self._lock:
                self._cache[mask] = r
        return r

    def rank_of(self, S: Iterable[Edge]) -> int:
        return self.rank_mask(self.mask(S))

    def corank_of(self, S: Iterable[Edge]) -> int:
        m = self.mask(S)
        return bin(m).count("1") - self.rank_mask(m)

    def is_independent(self, S) -> bool:
        m = self.mask(S)
        return self.rank_mask(m) == bin(m).count("1")

    def is_circuit(self, S) -> bool:
        m = self.mask(S)
        size = bin(m).count("1")
        if size == 0 or self.rank_mask(m) == size:
            return False
        return all(self.rank_mask(m & ~(1 << k)) == size - 1
                   for k in range(len(self.ground)) if m >> k & 1)

    def is_spanning(self, S) -> bool:
        return self.rank_of(S) == self.full_rank

    def is_basis(self, S) -> bool:
        return self.is_independent(S) and self.is_spanning(S)

    def basis_of(self, S) -> list[Edge]:
        """A maximal independent subset of S (greedy, in ground order)."""
        m = self.mask(S)
        keep = 0
        for k in range(len(self.ground)):
            if m >> k & 1:
                trial = keep | 1 << k
                if self.rank_mask(trial) == bin(trial).count("1"):
                    keep = trial
        return self.elements(keep)

    def restrict(self, S: Iterable[Edge]) -> "LinearMatroid":
        idx = sorted(self.index[tuple(sorted(e))] for e in S)
        sub = Matrix((self._int_rows[k] for k in idx), cols=self.ncols)
        return LinearMatroid(sub, [self.ground[k] for k in idx], self.n, self.d)


# -- comparison ------------------------------------------------------------------


@dataclass(frozen=True)
class Exhaustive:
    pass


@dataclass(frozen=True)
class Sampled:
    count: int
    seed: int


CompareMode = Exhaustive | Sampled


def choose_mode(ground_size: int, limit: int = DEFAULT_EXHAUSTIVE_LIMIT,
                count: int = 2000, seed: int = 0) -> CompareMode:
    return Exhaustive() if ground_size <= min(limit, EXHAUSTIVE_MAX) else Sampled(count, seed)


@dataclass
class Verdict:
    holds: bool
    relation: str
    mode: str
    subsets_checked: int
    witness: list[Edge] | None = None
    ranks: tuple[int, int] | None = None

    @property
    def probabilistic(self) -> bool:
        return self.mode == "sampled"

    def __bool__(self):
        return self.holds

    def to_dict(self) -> dict:
        out = {"holds": self.holds, "relation": self.relation, "mode": self.mode,
               "subsets_checked": self.subsets_checked}
        if self.witness is not None:
            out["witness"] = [list(e) for e in self.witness]
            out["ranks"] = list(self.ranks)
        return out


def _masks(size: int, mode: CompareMode):
    if isinstance(mode, Exhaustive):
        if size > EXHAUSTIVE_MAX:
            raise PreconditionError(f"exhaustive comparison limited to {EXHAUSTIVE_MAX} elements")
        yield from range(1 << size)
    else:
        rng = random.Random(mode.seed)
        full = (1 << size) - 1
        yield full
        for _ in range(mode.count - 1):
            yield rng.getrandbits(size) if size else 0


def _same_ground(M1: LinearMatroid, M2: LinearMatroid):
    if set(M1.ground) != set(M2.ground):
        raise PreconditionError("matroids have different ground sets")


def _translate(M_from: LinearMatroid, M_to: LinearMatroid, mask: int) -> int:
    if M_from.ground == M_to.ground:
        return mask
    return M_to.mask(M_from.elements(mask))


def matroids_equal(M1: LinearMatroid, M2: LinearMatroid,
                   mode: CompareMode = Exhaustive()) -> Verdict:
    _same_ground(M1, M2)
    name = "sampled" if isinstance(mode, Sampled) else "exhaustive"
    checked = 0
    for m in _masks(len(M1), mode):
        checked += 1
        r1, r2 = M1.rank_mask(m), M2.rank_mask(_translate(M1, M2, m))
        if r1 != r2:
            return Verdict(False, "equal", name, checked, M1.elements(m), (r1, r2))
    return Verdict(True, "equal", name, checked)


def freer_than(M_small: LinearMatroid, M_big: LinearMatroid,
               mode: CompareMode = Exhaustive()) -> Verdict:
    """Whether rank_small <= rank_big everywhere.  A failure witness is a set
    independent in ``M_small`` and dependent in ``M_big``."""
    _same_ground(M_small, M_big)
    name = "sampled" if isinstance(mode, Sampled) else "exhaustive"
    checked = 0
    for m in _masks(len(M_small), mode):
        checked += 1
        r1, r2 = M_small.rank_mask(m), M_big.rank_mask(_translate(M_small, M_big, m))
        if r1 > r2:
            B = M_small.basis_of(M_small.elements(m))
            return Verdict(False, "freer", name, checked, B,
                           (M_small.rank_of(B), M_big.rank_of(B)))
    return Verdict(True, "freer", name, checked)


def circuits_up_to(M: LinearMatroid, max_size: int) -> list[list[Edge]]:
    size = len(M)
    if size > EXHAUSTIVE_MAX:
        raise PreconditionError(f"circuit enumeration limited to {EXHAUSTIVE_MAX} elements")
    found: list[int] = []
    for k in range(1, min(max_size, size) + 1):
        for combo in itertools.combinations(range(size), k):
            m = 0
            for c in combo:
                m |= 1 << c
            if any(c & m == c for c in found):
                continue
            if M.rank_mask(m) < k:
                found.append(m)
    return [M.elements(m) for m in found]


# -- generic ranks ---------------------------------------------------------------


def sample_matrix(builder: str, G: Graph, d: int, seed: int, bound: int = DEFAULT_BOUND,
                  basis: str = "monomial") -> RigidityMatrix:
    """The builder's matrix at a random configuration drawn from ``seed``."""
    b = canonical_builder(builder)
    if b == "poly":
        return polynomial_matrix(G, random_params(G.n, seed, bound), d, basis)
    if b == "cofactor":
        return cofactor(G, random_generic(2, G.n, seed, bound, "affine"), d)
    if b == "bar_joint":
        return bar_joint(G, random_generic(d, G.n, seed, bound, "both"))
    return hyperconnectivity(G, random_generic(d, G.n, seed, bound, "both"))


@dataclass
class GenericRank:
    rank: int
    seed: int
    trial_ranks: list[int] = field(default_factory=list)
    trial_seeds: list[int] = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return len(set(self.trial_ranks)) <= 1

    def to_dict(self) -> dict:
        return {"rank": self.rank, "seed": self.seed, "trial_ranks": self.trial_ranks,
                "consistent": self.consistent}


def estimate_generic_rank(builder: str, G: Graph, d: int, trials: int = 3, seed: int = 0,
                          bound: int = DEFAULT_BOUND, basis: str = "monomial") -> GenericRank:
    """Max rank of G's edge set over ``trials`` random configurations."""
    if trials < 1:
        raise PreconditionError("need at least one trial")
    seeds = [derive_seed(seed, "trial", k) for k in range(trials)]
    ranks = []
    for s in seeds:
        M = LinearMatroid(sample_matrix(builder, G, d, s, bound, basis))
        ranks.append(M.full_rank)
    best = max(range(trials), key=lambda k: (ranks[k], -k))
    return GenericRank(ranks[best], seeds[best], ranks, seeds)


def generic_rank(builder: str, G: Graph, d: int, trials: int = 3, seed: int = 0,
                 bound: int = DEFAULT_BOUND, basis: str = "monomial") -> int:
    return estimate_generic_rank(builder, G, d, trials, seed, bound, basis).rank


def generic_matroid(builder: str, G: Graph, d: int, trials: int = 3, seed: int = 0,
                    bound: int = DEFAULT_BOUND, basis: str = "monomial") -> LinearMatroid:
    """Matroid at the trial configuration achieving the largest full rank."""
    est = estimate_generic_rank(builder, G, d, trials, seed, bound, basis)
    return LinearMatroid(sample_matrix(builder, G, d, est.seed, bound, basis))
