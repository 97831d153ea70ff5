"""Corank behaviour of vertex splits and diamond splits."""

from __future__ import annotations

import random
from math import comb

from ..builders import canonical_builder
from ..errors import PreconditionError
from ..geometry import derive_seed
from ..graph import Graph, complete, diamond_split, format_edges, random_split_args, vertex_split
from ..matroid import estimate_generic_rank, sample_matrix, LinearMatroid
from .report import conclude

SPLITS = {"vertex": vertex_split, "diamond": diamond_split}


def generic_corank(builder: str, G: Graph, d: int, seed: int, trials: int = 3):
    est = estimate_generic_rank(builder, G, d, trials, seed)
    return G.m - est.rank, est


def check_split_monotonicity(builder: str, G: Graph, d: int, split: str, v: int, A, B, C,
                             seed: int = 0, trials: int = 3):
    if canonical_builder(builder) not in ("hyper", "poly"):
        raise PreconditionError("split monotonicity is a statement about H_d and P_d")
    if split not in SPLITS:
        raise PreconditionError(f"unknown split {split!r}; use vertex or diamond")
    G2 = SPLITS[split](G, v, A, B, C, d)
    c1, e1 = generic_corank(builder, G, d, derive_seed(seed, "before"), trials)
    c2, e2 = generic_corank(builder, G2, d, derive_seed(seed, "after"), trials)
    inputs = {"builder": builder, "d": d, "split": split, "graph": format_edges(G.edges),
              "v": v, "A": sorted(A), "B": sorted(B), "C": sorted(C), "seed": seed}
    failures = [] if c2 <= c1 else [{"split_graph": format_edges(G2.edges),
                                     "corank_before": c1, "corank_after": c2}]
    return conclude("split_monotonicity", inputs, failures, corank_before=c1, corank_after=c2,
                    split_edges=format_edges(G2.edges), split_vertices=G2.n,
                    trials_before=e1, trials_after=e2)


def random_independent_graph(builder: str, n: int, d: int, rng: random.Random, seed: int) -> Graph:
    """Greedy random independent set of random size in one generic sample."""
    M = LinearMatroid(sample_matrix(builder, complete(n), d, seed))
    order = list(M.ground)
    rng.shuffle(order)
    target = rng.randint(max(1, n * d - comb(d + 1, 2) - 3), n * d - comb(d + 1, 2))
    chosen: list = []
    for e in order:
        if len(chosen) == target:
            break
        if M.is_independent(chosen + [e]):
            chosen.append(e)
    return Graph(n, frozenset(chosen))


def check_random_splits(builder: str, d: int, count: int = 100, seed: int = 0,
                        n_min: int | None = None, n_max: int | None = None, trials: int = 3):
    """``count`` random vertex/diamond splits (alternating) of random
    independent graphs; corank must never increase."""
    rng = random.Random(derive_seed(seed, "random_splits", builder, d))
    n_min = n_min or d + 2
    n_max = n_max or d + 4
    failures, done, increased = [], 0, 0
    attempts = 0
    while done < count:
        attempts += 1
        if attempts > 20 * count:
            raise PreconditionError("could not generate enough valid split instances")
        kind = "vertex" if done % 2 == 0 else "diamond"
        n = rng.randint(n_min, n_max)
        G = random_independent_graph(builder, n, d, rng, derive_seed(seed, "graph", attempts))
        args = random_split_args(G, d, kind, rng)
        if args is None:
            continue
        rep = check_split_monotonicity(builder, G, d, kind, *args,
                                       seed=derive_seed(seed, "split", attempts), trials=trials)
        done += 1
        if not rep.ok:
            increased += 1
            failures.append(rep.details["witness"] | {"graph": rep.inputs["graph"], "kind": kind})
    return conclude("random_splits", {"builder": builder, "d": d, "count": count, "seed": seed},
                    failures, splits=done, corank_increases=increased)
