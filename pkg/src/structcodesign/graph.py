"""Digraphs of structural systems and the graph routines built on them.

Vertices of a :class:`SystemDigraph` are numbered internally in the order
``x_1..x_n, u_1..u_p, y_1..y_m``; this is also the row/column order of the
cost matrices in :mod:`structcodesign.codesign`, so an assignment over those
matrices can be read directly as a set of digraph edges.
"""

from __future__ import annotations

import functools
from collections import deque
from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

from .errors import DimensionMismatch, NotSquare, UnknownVertex
from .model import SparsityPattern

KINDS = ("x", "u", "y")
_KIND_RANK = {k: r for r, k in enumerate(KINDS)}

EDGE_CLASSES = {("x", "x"): "xx", ("u", "x"): "ux", ("x", "y"): "xy", ("y", "u"): "yu"}


@functools.total_ordering
@dataclass(frozen=True)
class Vertex:
    """A state (``x``), input (``u``) or output (``y``) vertex, 1-based."""

    kind: str
    index: int

    def __post_init__(self):
        if self.kind not in _KIND_RANK:
            raise ValueError(f"unknown vertex kind {self.kind!r}")

    def __lt__(self, other: "Vertex") -> bool:
        return (_KIND_RANK[self.kind], self.index) < (_KIND_RANK[other.kind], other.index)

    def __str__(self) -> str:
        return f"{self.kind}{self.index}"

    @classmethod
    def parse(cls, text: str) -> "Vertex":
        return cls(text[0], int(text[1:]))


def x(i: int) -> Vertex:
    return Vertex("x", i)


def u(i: int) -> Vertex:
    return Vertex("u", i)


def y(i: int) -> Vertex:
    return Vertex("y", i)


class SystemDigraph:
    """Immutable digraph over state, input and output vertices.

    Edges follow the transposed convention of structural systems:
    ``x_i -> x_j`` iff ``A[j,i] = 1``, ``u_i -> x_j`` iff ``B[j,i] = 1``,
    ``x_i -> y_j`` iff ``C[j,i] = 1`` and ``y_j -> u_i`` iff ``K[i,j] = 1``.
    """

    def __init__(self, n: int, p: int, m: int, edges: Iterable[tuple[int, int]]):
        self.n, self.p, self.m = n, p, m
        size = n + p + m
        succ: list[set[int]] = [set() for _ in range(size)]
        for a, b in edges:
            succ[a].add(b)
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(s)) for s in succ)

    def __len__(self) -> int:
        return self.n + self.p + self.m

    def __repr__(self) -> str:
        return f"SystemDigraph(n={self.n}, p={self.p}, m={self.m}, edges={self.num_edges})"

    @property
    def num_edges(self) -> int:
        return sum(len(s) for s in self.adj)

    def vertex_id(self, v: Vertex) -> int:
        limit = {"x": self.n, "u": self.p, "y": self.m}[v.kind]
        if not 1 <= v.index <= limit:
            raise UnknownVertex(str(v))
        offset = {"x": 0, "u": self.n, "y": self.n + self.p}[v.kind]
        return offset + v.index - 1

    def label(self, vid: int) -> Vertex:
        if vid < self.n:
            return Vertex("x", vid + 1)
        if vid < self.n + self.p:
            return Vertex("u", vid - self.n + 1)
        return Vertex("y", vid - self.n - self.p + 1)

    def kind_of(self, vid: int) -> str:
        if vid < self.n:
            return "x"
        return "u" if vid < self.n + self.p else "y"

    @property
    def vertices(self) -> list[Vertex]:
        return [self.label(v) for v in range(len(self))]

    @property
    def state_ids(self) -> range:
        return range(self.n)

    def id_edges(self) -> list[tuple[int, int]]:
        return [(a, b) for a, succ in enumerate(self.adj) for b in succ]

    @property
    def edges(self) -> set[tuple[Vertex, Vertex]]:
        return {(self.label(a), self.label(b)) for a, b in self.id_edges()}

    def has_edge(self, a: Vertex, b: Vertex) -> bool:
        return self.vertex_id(b) in self.adj[self.vertex_id(a)]

    def successors(self, v: Vertex) -> list[Vertex]:
        return [self.label(b) for b in self.adj[self.vertex_id(v)]]

    @staticmethod
    def edge_class(a: Vertex, b: Vertex) -> str:
        return EDGE_CLASSES[(a.kind, b.kind)]


def build_digraph(
    A: SparsityPattern,
    B: SparsityPattern | None = None,
    C: SparsityPattern | None = None,
    K: SparsityPattern | None = None,
) -> SystemDigraph:
    if A.rows != A.cols:
        raise DimensionMismatch(f"A must be square, got {A.rows}x{A.cols}")
    n = A.rows
    if K is not None and (B is None or C is None):
        raise DimensionMismatch("a feedback pattern needs both B and C")
    p = 0 if B is None else B.cols
    m = 0 if C is None else C.rows
    if B is not None and B.rows != n:
        raise DimensionMismatch(f"B has {B.rows} rows, expected {n}")
    if C is not None and C.cols != n:
        raise DimensionMismatch(f"C has {C.cols} columns, expected {n}")
    if K is not None and K.shape != (p, m):
        raise DimensionMismatch(f"K is {K.rows}x{K.cols}, expected {p}x{m}")

    uo, yo = n, n + p
    edges = [(j - 1, i - 1) for i, j in A.nonzeros]
    if B is not None:
        edges += [(uo + j - 1, i - 1) for i, j in B.nonzeros]
    if C is not None:
        edges += [(j - 1, yo + i - 1) for i, j in C.nonzeros]
    if K is not None:
        edges += [(yo + j - 1, uo + i - 1) for i, j in K.nonzeros]
    return SystemDigraph(n, p, m, edges)


# -- strongly connected components --------------------------------------------


def scc_ids(adj: Sequence[Sequence[int]]) -> list[list[int]]:
    """Tarjan's algorithm, iterative. Components come out in reverse topological order."""
    size = len(adj)
    index = [-1] * size
    low = [0] * size
    on_stack = [False] * size
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(size):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, pos = work[-1]
            succ = adj[v]
            if pos < len(succ):
                work[-1] = (v, pos + 1)
                w = succ[pos]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                if low[v] < low[parent]:
                    low[parent] = low[v]
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(comp)
    return comps


def strongly_connected_components(D: SystemDigraph) -> list[set[Vertex]]:
    """Maximal SCCs of ``D``, ordered by their smallest vertex (x < u < y, then index)."""
    comps = sorted((sorted(c) for c in scc_ids(D.adj)), key=lambda c: c[0])
    return [{D.label(v) for v in c} for c in comps]


def is_irreducible(A: SparsityPattern) -> bool:
    if A.rows != A.cols:
        raise NotSquare(f"pattern is {A.rows}x{A.cols}")
    return len(scc_ids(build_digraph(A).adj)) == 1


def reachable_ids(adj: Sequence[Sequence[int]], sources: Iterable[int]) -> set[int]:
    seen = set(sources)
    queue = deque(seen)
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def reachable_from(D: SystemDigraph, sources: Iterable[Vertex]) -> set[Vertex]:
    ids = [D.vertex_id(s) for s in sources]
    return {D.label(v) for v in reachable_ids(D.adj, ids)}


# -- bipartite matching --------------------------------------------------------


@dataclass(frozen=True)
class BipartiteGraph:
    left: tuple[Hashable, ...]
    right: tuple[Hashable, ...]
    edges: frozenset[tuple[Hashable, Hashable]]

    def __post_init__(self):
        object.__setattr__(self, "left", tuple(self.left))
        object.__setattr__(self, "right", tuple(self.right))
        object.__setattr__(self, "edges", frozenset(self.edges))
        if len(set(self.left)) != len(self.left) or len(set(self.right)) != len(self.right):
            raise ValueError("labels must be distinct within each side")
        ls, rs = set(self.left), set(self.right)
        for a, b in self.edges:
            if a not in ls or b not in rs:
                raise UnknownVertex(f"edge ({a!r}, {b!r}) references a missing label")


def hopcroft_karp(adj: Sequence[Sequence[int]], n_right: int) -> list[int]:
    """Maximum matching; returns ``match[left] = right`` or -1.

    ``adj[l]`` lists right neighbours of left vertex ``l``; the scan order of
    those lists fixes the tie-breaking.
    """
    n_left = len(adj)
    match_l = [-1] * n_left
    match_r = [-1] * n_right
    while True:
        dist = [-1] * n_left
        queue = deque()
        for v in range(n_left):
            if match_l[v] == -1:
                dist[v] = 0
                queue.append(v)
        found = False
        while queue:
            v = queue.popleft()
            for r in adj[v]:
                w = match_r[r]
                if w == -1:
                    found = True
                elif dist[w] == -1:
                    dist[w] = dist[v] + 1
                    queue.append(w)
        if not found:
            return match_l

        it = [0] * n_left
        for s in range(n_left):
            if match_l[s] != -1:
                continue
            stack = [s]
            path: list[int] = []
            while stack:
                v = stack[-1]
                pushed = False
                while it[v] < len(adj[v]):
                    r = adj[v][it[v]]
                    it[v] += 1
                    w = match_r[r]
                    if w == -1:
                        path.append(r)
                        for lv, rv in zip(stack, path):
                            match_l[lv] = rv
                            match_r[rv] = lv
                        stack = []
                        pushed = True
                        break
                    if dist[w] == dist[v] + 1:
                        path.append(r)
                        stack.append(w)
                        pushed = True
                        break
                if not pushed:
                    dist[v] = -1
                    stack.pop()
                    if path:
                        path.pop()


def max_bipartite_matching(G: BipartiteGraph) -> set[tuple[Hashable, Hashable]]:
    lpos = {a: k for k, a in enumerate(G.left)}
    rpos = {b: k for k, b in enumerate(G.right)}
    adj: list[list[int]] = [[] for _ in G.left]
    for a, b in G.edges:
        adj[lpos[a]].append(rpos[b])
    for lst in adj:
        lst.sort()
    match = hopcroft_karp(adj, len(G.right))
    return {(G.left[a], G.right[b]) for a, b in enumerate(match) if b != -1}


# -- cycle families ------------------------------------------------------------


def _cycle_cover_adj(D: SystemDigraph) -> list[list[int]]:
    adj = [list(s) for s in D.adj]
    for v in range(D.n, len(D)):
        if v not in D.adj[v]:
            adj[v].append(v)
            adj[v].sort()
    return adj


def spanning_cycle_family(D: SystemDigraph) -> list[list[Vertex]] | None:
    """Vertex-disjoint cycles of ``D`` covering all state vertices, or None.

    Found as a perfect matching of the graph whose left and right copies are
    all vertices, with the digraph's edges plus a free self-pair on every
    input and output vertex. Those free self-pairs are dropped from the
    returned cycles; genuine self-loops are kept.
    """
    adj = _cycle_cover_adj(D)
    succ = hopcroft_karp(adj, len(D))
    if any(s == -1 for s in succ):
        return None
    cycles = []
    seen = [False] * len(D)
    for start in range(len(D)):
        if seen[start]:
            continue
        cyc = []
        v = start
        while not seen[v]:
            seen[v] = True
            cyc.append(v)
            v = succ[v]
        if len(cyc) == 1 and cyc[0] >= D.n and cyc[0] not in D.adj[cyc[0]]:
            continue
        cycles.append([D.label(v) for v in cyc])
    return cycles


def has_spanning_cycle_family(D: SystemDigraph) -> bool:
    adj = _cycle_cover_adj(D)
    return all(s != -1 for s in hopcroft_karp(adj, len(D)))


# -- DOT -----------------------------------------------------------------------

_SHAPES = {"x": "circle", "u": "box", "y": "diamond"}


def to_dot(
    D: SystemDigraph,
    bold: Iterable[tuple[Vertex, Vertex]] = (),
    dashed_vertices: Iterable[Vertex] = (),
    dashed_edges: Iterable[tuple[Vertex, Vertex]] = (),
    name: str = "closed_loop",
) -> str:
    bold = set(bold)
    dashed_vertices = set(dashed_vertices)
    dashed_edges = set(dashed_edges)
    lines = [f"digraph {name} {{"]
    for v in D.vertices:
        attrs = [f"shape={_SHAPES[v.kind]}"]
        if v in dashed_vertices:
            attrs.append("style=dashed")
        lines.append(f'  "{v}" [{", ".join(attrs)}];')
    for a, b in sorted(D.edges):
        attrs = [f'class="{D.edge_class(a, b)}"']
        if (a, b) in bold:
            attrs.append("penwidth=3")
        if (a, b) in dashed_edges:
            attrs.append("style=dashed")
        lines.append(f'  "{a}" -> "{b}" [{", ".join(attrs)}];')
    lines.append("}")
    return "\n".join(lines) + "\n"
