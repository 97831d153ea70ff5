"""Orientation-based independence test for the planar hyperconnectivity matroid.

A graph is independent in H_2 iff some acyclic orientation has no
alternating closed walk, i.e. no closed trail whose consecutive edges meet
alternately head-to-head and tail-to-tail.

Split every vertex v into a tail copy v+ and a head copy v-, and send the
arc u -> w to the undirected edge {u+, w-}.  An alternating trail leaves u
through a tail, enters w through a head, leaves w again through a head, and
so on, which is exactly a trail in the split graph.  So an orientation has an
alternating closed trail iff its split graph contains a cycle.  Both
failure modes (a directed cycle, a cycle in the split graph) are monotone
under adding arcs, which makes a pruned backtracking search practical.
"""

from __future__ import annotations

import itertools

from ..errors import PreconditionError
from ..graph import Edge, Graph, complete
from ..matroid import generic_matroid
from .report import conclude

MAX_EDGES = 20


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}
        self.history: list = []

    def find(self, x):
        while self.parent.get(x, x) != x:
            x = self.parent[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        self.history.append(ra)
        return True

    def undo(self):
        del self.parent[self.history.pop()]


def _reaches(succ: dict[int, set[int]], src: int, dst: int) -> bool:
    stack, seen = [src], {src}
    while stack:
        u = stack.pop()
        if u == dst:
            return True
        for w in succ[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return False


def good_orientation(G: Graph) -> list[tuple[int, int]] | None:
    """An acyclic orientation without alternating closed trails, or None."""
    if G.m > MAX_EDGES:
        raise PreconditionError(f"orientation search limited to {MAX_EDGES} edges")
    edges = G.sorted_edges()
    succ: dict[int, set[int]] = {v: set() for v in G.vertices}
    uf = _UnionFind()
    arcs: list[tuple[int, int]] = []

    def place(k: int) -> bool:
        if k == len(edges):
            return True
        i, j = edges[k]
        for u, w in ((i, j), (j, i)):
            if _reaches(succ, w, u):
                continue
            if not uf.union((u, "+"), (w, "-")):
                continue
            succ[u].add(w)
            arcs.append((u, w))
            if place(k + 1):
                return True
            arcs.pop()
            succ[u].discard(w)
            uf.undo()
        return False

    return list(arcs) if place(0) else None


def h2_independent_combinatorial(G: Graph) -> bool:
    return good_orientation(G) is not None


def check_h2_oracle(n: int = 5, seed: int = 0, trials: int = 3, extra: dict[str, Graph] | None = None):
    """Agreement of the orientation test with generic H_2 ranks on every
    subgraph of K_n, plus optional named fixtures."""
    H = generic_matroid("hyper", complete(n), 2, trials, seed)
    ground = list(H.ground)
    failures = []
    checked = 0
    for k in range(len(ground) + 1):
        for S in itertools.combinations(ground, k):
            checked += 1
            comb_ = h2_independent_combinatorial(Graph(n, frozenset(S)))
            if comb_ != H.is_independent(S):
                failures.append({"edges": [list(e) for e in S], "combinatorial": comb_})
    fixtures = {}
    for name, F in (extra or {}).items():
        Hf = generic_matroid("hyper", F, 2, trials, seed)
        comb_ = h2_independent_combinatorial(F)
        fixtures[name] = comb_
        if comb_ != Hf.is_independent(F.edges):
            failures.append({"fixture": name, "combinatorial": comb_})
    return conclude("h2_oracle", {"n": n, "seed": seed}, failures,
                    subgraphs=checked, fixtures=fixtures)
