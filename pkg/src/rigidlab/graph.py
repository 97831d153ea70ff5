"""Graphs on the vertex set ``{1, ..., n}`` and the split operations.

Edges are stored as sorted pairs ``(i, j)`` with ``i < j``; every iteration
over edges is in lexicographic order, which fixes the row order of every
rigidity matrix built from a graph.
"""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .errors import ParseError, PreconditionError

Edge = tuple[int, int]


def edge(i: int, j: int) -> Edge:
    if i == j:
        raise PreconditionError(f"loop at vertex {i}")
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class Bipartition:
    X: frozenset[int]
    Y: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "X", frozenset(self.X))
        object.__setattr__(self, "Y", frozenset(self.Y))
        if self.X & self.Y:
            raise PreconditionError(f"bipartition sides overlap in {sorted(self.X & self.Y)}")

    @classmethod
    def from_side(cls, n: int, X: Iterable[int]) -> "Bipartition":
        X = frozenset(X)
        if not X <= set(range(1, n + 1)):
            raise PreconditionError("bipartition side contains unknown vertices")
        return cls(X, frozenset(range(1, n + 1)) - X)

    def covers(self, n: int) -> bool:
        return self.X | self.Y == frozenset(range(1, n + 1))

    def side(self, v: int) -> str:
        if v in self.X:
            return "X"
        if v in self.Y:
            return "Y"
        raise PreconditionError(f"vertex {v} not in bipartition")

    def separates(self, e: Edge) -> bool:
        i, j = e
        return (i in self.X and j in self.Y) or (i in self.Y and j in self.X)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[Edge]
    bipartition: Bipartition | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise PreconditionError("negative vertex count")
        es = set()
        for e in self.edges:
            i, j = e
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise PreconditionError(f"edge {e} has an endpoint outside [1, {self.n}]")
            es.add(edge(i, j))
        object.__setattr__(self, "edges", frozenset(es))
        bip = self.bipartition
        if bip is not None:
            if not bip.covers(self.n):
                raise PreconditionError("bipartition does not cover the vertex set")
            bad = [e for e in es if not bip.separates(e)]
            if bad:
                raise PreconditionError(f"edge {min(bad)} lies inside one side of the bipartition")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Iterable[int]], bipartition=None) -> "Graph":
        return cls(n, frozenset(edge(*e) for e in edges), bipartition)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def neighbors(self, v: int) -> set[int]:
        return {j if i == v else i for i, j in self.edges if v in (i, j)}

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def subgraph(self, edges: Iterable[Edge]) -> "Graph":
        es = frozenset(edge(*e) for e in edges)
        if not es <= self.edges:
            raise PreconditionError("not a subset of the edge set")
        return Graph(self.n, es, self.bipartition)

    def with_bipartition(self, bip: Bipartition | None) -> "Graph":
        return Graph(self.n, self.edges, bip)

    def find_bipartition(self) -> Bipartition | None:
        """A 2-colouring (isolated vertices go to X), or None."""
        color: dict[int, int] = {}
        adj = {v: self.neighbors(v) for v in self.vertices}
        for s in self.vertices:
            if s in color:
                continue
            color[s] = 0
            stack = [s]
            while stack:
                u = stack.pop()
                for w in adj[u]:
                    if w not in color:
                        color[w] = 1 - color[u]
                        stack.append(w)
                    elif color[w] == color[u]:
                        return None
        return Bipartition(frozenset(v for v in color if color[v] == 0),
                           frozenset(v for v in color if color[v] == 1))

    def is_bipartite(self) -> bool:
        return self.find_bipartition() is not None

    # -- file format ----------------------------------------------------------

    def to_text(self) -> str:
        lines = [f"{self.n} {self.m}"]
        lines += [f"{i} {j}" for i, j in self.sorted_edges()]
        if self.bipartition is not None:
            lines.append("B: " + " ".join(str(v) for v in sorted(self.bipartition.X)))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Graph":
        lines = [ln.strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln and not ln.startswith("#")]
        if not lines:
            raise ParseError("empty graph file")
        try:
            n, m = (int(x) for x in lines[0].split())
        except ValueError as exc:
            raise ParseError(f"bad graph header {lines[0]!r}; expected 'n m'") from exc
        side = None
        body = []
        for ln in lines[1:]:
            if ln.startswith("B:"):
                try:
                    side = [int(x) for x in ln[2:].split()]
                except ValueError as exc:
                    raise ParseError(f"bad bipartition line {ln!r}") from exc
            else:
                body.append(ln)
        if len(body) != m:
            raise ParseError(f"header announces {m} edges, found {len(body)}")
        edges = []
        for ln in body:
            parts = ln.split()
            if len(parts) != 2:
                raise ParseError(f"bad edge line {ln!r}")
            try:
                i, j = int(parts[0]), int(parts[1])
            except ValueError as exc:
                raise ParseError(f"bad edge line {ln!r}") from exc
            if i == j or not (1 <= i <= n and 1 <= j <= n):
                raise ParseError(f"edge {ln!r} is a loop or leaves [1, {n}]")
            edges.append(edge(i, j))
        if len(set(edges)) != len(edges):
            raise ParseError("repeated edge in graph file")
        bip = Bipartition.from_side(n, side) if side is not None else None
        return cls(n, frozenset(edges), bip)

    @classmethod
    def read(cls, path) -> "Graph":
        return cls.from_text(Path(path).read_text())


# -- generators ----------------------------------------------------------------


def complete(n: int) -> Graph:
    if n < 1:
        raise PreconditionError("complete graph needs n >= 1")
    return Graph(n, frozenset(itertools.combinations(range(1, n + 1), 2)))


def complete_bipartite(n1: int, n2: int) -> Graph:
    """K_{n1,n2} with X = {1..n1} and Y = {n1+1..n1+n2}."""
    if n1 < 1 or n2 < 1:
        raise PreconditionError("complete bipartite graph needs n1, n2 >= 1")
    X = range(1, n1 + 1)
    Y = range(n1 + 1, n1 + n2 + 1)
    bip = Bipartition(frozenset(X), frozenset(Y))
    return Graph(n1 + n2, frozenset((i, j) for i in X for j in Y), bip)


def complete_on(n: int, X: Iterable[int], Y: Iterable[int]) -> Graph:
    """All edges between X and Y inside an n-vertex graph."""
    X, Y = frozenset(X), frozenset(Y)
    bip = Bipartition(X, Y)
    return Graph(n, frozenset(edge(i, j) for i in X for j in Y), bip)


def cone(G: Graph, k: int = 1) -> Graph:
    """k-fold cone; each apex is joined to every vertex present before it."""
    if k < 0:
        raise PreconditionError("negative cone order")
    edges = set(G.edges)
    n = G.n
    for _ in range(k):
        n += 1
        edges.update((v, n) for v in range(1, n))
    return Graph(n, frozenset(edges), G.bipartition if k == 0 else None)


def _check_split_parts(G: Graph, v: int, A, B, C, b_size: int, kind: str):
    if not 1 <= v <= G.n:
        raise PreconditionError(f"{kind}: vertex {v} not in graph")
    A, B, C = set(A), set(B), set(C)
    nbrs = G.neighbors(v)
    if A & B or A & C or B & C or A | B | C != nbrs:
        raise PreconditionError(
            f"{kind}: A, B, C must partition the neighbourhood {sorted(nbrs)} of vertex {v}")
    if len(B) != b_size:
        raise PreconditionError(f"{kind}: |B| must be {b_size}, got {len(B)}")
    return A, B, C


def vertex_split(G: Graph, v: int, A, B, C, d: int) -> Graph:
    """Vertex d-split: drop v-C, add vertex n+1 joined to B, C and v."""
    A, B, C = _check_split_parts(G, v, A, B, C, d - 1, "vertex split")
    new = G.n + 1
    edges = {e for e in G.edges if not (v in e and (e[0] in C or e[1] in C))}
    edges.update(edge(w, new) for w in B | C | {v})
    return Graph(new, frozenset(edges))


def diamond_split(G: Graph, v: int, A, B, C, d: int) -> Graph:
    """Diamond d-split: drop v-C, add vertex n+1 joined to B and C (not v)."""
    A, B, C = _check_split_parts(G, v, A, B, C, d, "diamond split")
    new = G.n + 1
    edges = {e for e in G.edges if not (v in e and (e[0] in C or e[1] in C))}
    edges.update(edge(w, new) for w in B | C)
    bip = None
    if G.bipartition is not None:
        bip = G.bipartition
        if v in bip.X:
            bip = Bipartition(bip.X | {new}, bip.Y)
        else:
            bip = Bipartition(bip.X, bip.Y | {new})
    return Graph(new, frozenset(edges), bip)


def random_split_args(G: Graph, d: int, kind: str, rng: random.Random):
    """Random (v, A, B, C) satisfying the split preconditions, or None."""
    need = d - 1 if kind == "vertex" else d
    cands = [v for v in G.vertices if G.degree(v) >= need]
    if not cands:
        return None
    v = rng.choice(cands)
    nbrs = sorted(G.neighbors(v))
    rng.shuffle(nbrs)
    B = set(nbrs[:need])
    A, C = set(), set()
    for w in nbrs[need:]:
        (A if rng.random() < 0.5 else C).add(w)
    return v, A, B, C


def random_graph(n: int, m: int, rng: random.Random) -> Graph:
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    return Graph(n, frozenset(rng.sample(pairs, min(m, len(pairs)))))


# -- compact textual names used in manifests and the CLI -----------------------

_KN = re.compile(r"^K(\d+)$")
_KAB = re.compile(r"^K(\d+)x(\d+)$")
_CONE = re.compile(r"^cone(\d+)\((.+)\)$")


def parse_graph_spec(spec: str) -> Graph:
    """Parse ``K5``, ``K3x3``, ``cone2(K6x7)``, ``edges:12,23,...`` (single
    digit vertices) or ``edges:1-2,2-3,...``; ``file:<path>`` reads a file."""
    s = spec.strip()
    if s.startswith("file:"):
        return Graph.read(s[5:])
    if m := _KN.match(s):
        return complete(int(m.group(1)))
    if m := _KAB.match(s):
        return complete_bipartite(int(m.group(1)), int(m.group(2)))
    if m := _CONE.match(s):
        return cone(parse_graph_spec(m.group(2)), int(m.group(1)))
    if s.startswith("edges:"):
        items = [t for t in s[6:].split(",") if t]
        edges = []
        for t in items:
            if "-" in t:
                a, _, b = t.partition("-")
            elif len(t) == 2:
                a, b = t[0], t[1]
            else:
                raise ParseError(f"bad edge token {t!r}")
            try:
                edges.append(edge(int(a), int(b)))
            except (ValueError, PreconditionError) as exc:
                raise ParseError(f"bad edge token {t!r}") from exc
        n = max((max(e) for e in edges), default=0)
        return Graph(n, frozenset(edges))
    raise ParseError(f"unknown graph spec {spec!r}")


def parse_edge_list(text: str) -> list[Edge]:
    """``1-2,2-3`` or ``12,23`` into sorted edge tuples."""
    return parse_graph_spec("edges:" + text).sorted_edges() if text.strip() else []


def format_edges(edges: Iterable[Edge]) -> str:
    return ",".join(f"{i}-{j}" for i, j in sorted(edges))
