"""Seeded random instances for property tests and benchmarks."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidSpec
from .model import INF, Instance, SparsityPattern

BACKBONES = ("cycle", "tree")


@dataclass(frozen=True)
class GenSpec:
    """Parameters of a random instance.

    With ``irreducible=True`` the state digraph gets a strongly connected
    backbone before density sampling: ``"cycle"`` is a random Hamiltonian
    cycle (so the states always admit a cycle cover), ``"tree"`` is a random
    spanning tree with every edge in both directions, which is strongly
    connected but usually has no cycle cover on its own.
    """

    n: int
    p: int
    m: int
    edge_density: float = 0.3
    irreducible: bool = True
    cost_range: tuple[int, int] = (0, 20)
    inf_fraction: float = 0.2
    seed: int = 0
    backbone: str = "cycle"
    io_density: float | None = None

    def validate(self) -> "GenSpec":
        if self.n < 1 or self.p < 0 or self.m < 0:
            raise InvalidSpec(f"bad sizes n={self.n}, p={self.p}, m={self.m}")
        if not 0 < self.edge_density <= 1:
            raise InvalidSpec(f"edge_density {self.edge_density} not in (0, 1]")
        if self.io_density is not None and not 0 < self.io_density <= 1:
            raise InvalidSpec(f"io_density {self.io_density} not in (0, 1]")
        if not 0 <= self.inf_fraction < 1:
            raise InvalidSpec(f"inf_fraction {self.inf_fraction} not in [0, 1)")
        lo, hi = self.cost_range
        if lo < 0 or hi < lo:
            raise InvalidSpec(f"bad cost range {self.cost_range}")
        if self.backbone not in BACKBONES:
            raise InvalidSpec(f"backbone must be one of {BACKBONES}")
        return self


def _backbone_edges(rng: np.random.Generator, n: int, kind: str) -> set[tuple[int, int]]:
    """Directed edges (from, to), 1-based, of a strongly connected skeleton."""
    order = [int(v) + 1 for v in rng.permutation(n)]
    if kind == "cycle":
        return {(order[k], order[(k + 1) % n]) for k in range(n)}
    edges = set()
    for k in range(1, n):
        parent = order[int(rng.integers(k))]
        edges.add((parent, order[k]))
        edges.add((order[k], parent))
    return edges


def generate(spec: GenSpec) -> Instance:
    spec.validate()
    rng = np.random.default_rng(spec.seed)
    n, p, m = spec.n, spec.p, spec.m

    a_nz = set()
    if spec.irreducible:
        # edge a -> b is the entry A[b, a]
        a_nz |= {(b, a) for a, b in _backbone_edges(rng, n, spec.backbone)}
    extra = rng.random((n, n)) < spec.edge_density
    a_nz |= {(int(i) + 1, int(j) + 1) for i, j in zip(*np.nonzero(extra))}

    io_density = spec.edge_density if spec.io_density is None else spec.io_density
    b_dense = rng.random((n, p)) < io_density
    c_dense = rng.random((m, n)) < io_density

    lo, hi = spec.cost_range
    cost_u = rng.integers(lo, hi + 1, size=p).astype(float)
    cost_y = rng.integers(lo, hi + 1, size=m).astype(float)
    cost_f = rng.integers(lo, hi + 1, size=(p, m)).astype(float)
    cost_f[rng.random((p, m)) < spec.inf_fraction] = INF

    return Instance(
        SparsityPattern(n, n, frozenset(a_nz)),
        SparsityPattern.from_dense(b_dense) if p else SparsityPattern.zeros(n, 0),
        SparsityPattern.from_dense(c_dense) if m else SparsityPattern.zeros(0, n),
        cost_u.tolist(),
        cost_y.tolist(),
        cost_f.tolist(),
    )
