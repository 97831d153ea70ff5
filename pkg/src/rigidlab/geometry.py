"""Point configurations: curve embeddings, random generic samples, lifts."""

from __future__ import annotations

import hashlib
import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .errors import ParseError, PreconditionError
from .exact_linalg import Matrix, as_rational, rank
from .graph import Bipartition

DEFAULT_BOUND = 2 ** 20
MAX_ATTEMPTS = 1000


def derive_seed(seed: int, *labels) -> int:
    """Counter-style expansion of a master seed into independent sub-seeds."""
    h = hashlib.sha256(repr((int(seed),) + tuple(labels)).encode())
    return int.from_bytes(h.digest()[:8], "big")


@dataclass(frozen=True)
class Params:
    t: tuple[Fraction, ...]

    def __post_init__(self):
        t = tuple(as_rational(x) for x in self.t)
        if len(set(t)) != len(t):
            raise PreconditionError("curve parameters must be pairwise distinct")
        object.__setattr__(self, "t", t)

    def __len__(self):
        return len(self.t)

    def __iter__(self):
        return iter(self.t)

    def __getitem__(self, i):
        return self.t[i]

    @classmethod
    def parse(cls, text: str) -> "Params":
        toks = text.replace(",", " ").split()
        return cls(tuple(as_rational(x) for x in toks))


@dataclass(frozen=True)
class PointConfig:
    d: int
    points: tuple[tuple[Fraction, ...], ...]
    # only degree-0 monomial vectors need coincident points
    allow_coincident: bool = field(default=False, compare=False)

    def __post_init__(self):
        pts = tuple(tuple(as_rational(x) for x in p) for p in self.points)
        if not pts:
            raise PreconditionError("a point configuration needs at least one point")
        if any(len(p) != self.d for p in pts):
            raise PreconditionError(f"all points must have {self.d} coordinates")
        if not self.allow_coincident and len(set(pts)) != len(pts):
            dup = next(i for i, p in enumerate(pts) if pts.index(p) != i)
            raise PreconditionError(f"coincident points: point {dup + 1} repeats an earlier point")
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return len(self.points)

    def __getitem__(self, i: int) -> tuple[Fraction, ...]:
        """Point of vertex ``i`` (1-based, like graph vertices)."""
        return self.points[i - 1]

    def __iter__(self):
        return iter(self.points)

    def as_matrix(self) -> Matrix:
        """n x d matrix with one point per row."""
        return Matrix(self.points, cols=self.d)

    def to_text(self) -> str:
        lines = [f"{self.n} {self.d}"]
        lines += [" ".join(str(x) for x in p) for p in self.points]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "PointConfig":
        lines = [ln.strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln and not ln.startswith("#")]
        if not lines:
            raise ParseError("empty point file")
        try:
            n, d = (int(x) for x in lines[0].split())
        except ValueError as exc:
            raise ParseError(f"bad point header {lines[0]!r}; expected 'n d'") from exc
        if len(lines) - 1 != n:
            raise ParseError(f"header announces {n} points, found {len(lines) - 1}")
        pts = []
        for ln in lines[1:]:
            toks = ln.split()
            if len(toks) != d:
                raise ParseError(f"point line {ln!r} does not have {d} coordinates")
            pts.append(tuple(as_rational(x) for x in toks))
        return cls(d, tuple(pts))

    @classmethod
    def read(cls, path) -> "PointConfig":
        return cls.from_text(Path(path).read_text())


def _params(params) -> Params:
    return params if isinstance(params, Params) else Params(tuple(params))


def moment_curve(d: int, params) -> PointConfig:
    if d < 1:
        raise PreconditionError("dimension must be >= 1")
    t = _params(params)
    return PointConfig(d, tuple(tuple(x ** k for k in range(1, d + 1)) for x in t))


def parabola(params) -> PointConfig:
    return moment_curve(2, params)


def monomial_vectors(d: int, params) -> PointConfig:
    """Points (1, t, ..., t^(d-1)); for d = 1 all points are (1)."""
    if d < 1:
        raise PreconditionError("dimension must be >= 1")
    t = _params(params)
    return PointConfig(d, monomial_rows(d, t), allow_coincident=(d == 1))


def monomial_rows(d: int, params) -> tuple[tuple[Fraction, ...], ...]:
    t = _params(params)
    return tuple(tuple(x ** k for k in range(d)) for x in t)


# -- position predicates -------------------------------------------------------


def linear_span_dim(vectors: Sequence[Sequence]) -> int:
    if not vectors:
        return 0
    return rank(Matrix(vectors))


def general_position(p, mode: str = "linear") -> bool:
    """Linear mode: every min(n, d) points are linearly independent.
    Affine mode: every min(n, d+1) points are affinely independent."""
    pts = list(p.points if isinstance(p, PointConfig) else p)
    if not pts:
        return True
    d = len(pts[0])
    if mode == "linear":
        k = min(len(pts), d)
        return all(rank(Matrix(sub, cols=d)) == k for sub in itertools.combinations(pts, k))
    if mode == "affine":
        k = min(len(pts), d + 1)
        lifted = [tuple(q) + (Fraction(1),) for q in pts]
        return all(rank(Matrix(sub, cols=d + 1)) == k for sub in itertools.combinations(lifted, k))
    if mode == "both":
        return general_position(pts, "affine") and general_position(pts, "linear")
    raise ValueError(f"unknown position mode {mode!r}")


# -- random samples ------------------------------------------------------------


def random_params(n: int, seed: int, bound: int = DEFAULT_BOUND, nonzero: bool = False) -> Params:
    """n distinct integers drawn uniformly from [-bound, bound]."""
    if bound < n:
        raise PreconditionError(f"bound {bound} too small for {n} distinct values")
    rng = random.Random(seed)
    for _ in range(MAX_ATTEMPTS):
        t = [rng.randint(-bound, bound) for _ in range(n)]
        if len(set(t)) == n and not (nonzero and 0 in t):
            return Params(tuple(t))
    raise PreconditionError(f"no distinct parameters after {MAX_ATTEMPTS} attempts; raise the bound")


def random_generic(d: int, n: int, seed: int, bound: int = DEFAULT_BOUND,
                   mode: str | None = "both") -> PointConfig:
    """Integer points uniform in [-bound, bound]^d, resampled until they are
    distinct and pass ``general_position(.., mode)`` (skipped for None)."""
    if bound < n:
        raise PreconditionError(f"bound {bound} too small for {n} points")
    rng = random.Random(seed)
    for _ in range(MAX_ATTEMPTS):
        pts = [tuple(rng.randint(-bound, bound) for _ in range(d)) for _ in range(n)]
        if len(set(pts)) != n:
            continue
        if mode is None or general_position(pts, mode):
            return PointConfig(d, tuple(pts))
    raise PreconditionError(f"no configuration in {mode} general position after "
                            f"{MAX_ATTEMPTS} attempts; raise the bound")


def random_rational_params(n: int, seed: int, bound: int = 50) -> Params:
    """Distinct non-integer-heavy rationals a/b, used to exercise Fractions."""
    rng = random.Random(seed)
    seen: list[Fraction] = []
    while len(seen) < n:
        x = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if x not in seen:
            seen.append(x)
    return Params(tuple(seen))


# -- lifts ---------------------------------------------------------------------


def lift_bipartite(p: PointConfig, bip: Bipartition) -> PointConfig:
    """Append 0 to points of X and 1 to points of Y."""
    if not bip.covers(p.n):
        raise PreconditionError("bipartition does not match the point indices")
    return PointConfig(p.d + 1, tuple(
        tuple(q) + (Fraction(0 if i in bip.X else 1),) for i, q in enumerate(p.points, start=1)))


def homogenize(p: PointConfig) -> PointConfig:
    return PointConfig(p.d + 1, tuple(tuple(q) + (Fraction(1),) for q in p.points))


def project_last(p: PointConfig) -> PointConfig:
    return PointConfig(p.d - 1, tuple(q[:-1] for q in p.points))


def from_rows(rows: Iterable[Sequence]) -> PointConfig:
    rows = [tuple(r) for r in rows]
    return PointConfig(len(rows[0]), tuple(rows))
