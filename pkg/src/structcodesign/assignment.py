"""Minimum-cost assignment over square matrices with +inf entries.

The solver is the O(k^3) shortest-augmenting-path form of the Hungarian
method, with the inner scan vectorised in numpy. Infinite entries are never
used: a perfect matching over the finite entries is checked first and, when
none exists, the total cost is reported as ``inf`` directly.

Among optimal bijections the lexicographically smallest one is returned,
comparing the column assigned to the first row, then the second row, and so
on (rows and columns in label order). Optimal bijections are exactly the
perfect matchings of the zero-reduced-cost subgraph for the final duals, so
the tie-break is a greedy walk over that subgraph.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Hashable, Sequence

import numpy as np

from .errors import NotSquare, ValidationError
from .graph import hopcroft_karp
from .model import INF, cost_sum

# Relative tolerance used to decide whether a reduced cost is zero.
TIGHT_TOL = 1e-9


@dataclass(frozen=True)
class LabeledCostMatrix:
    labels: tuple[Hashable, ...]
    entries: np.ndarray

    def __post_init__(self):
        entries = np.array(self.entries, dtype=float)
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "entries", entries)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise NotSquare(f"cost matrix has shape {entries.shape}")
        if entries.shape[0] != len(labels):
            raise ValidationError(f"{len(labels)} labels for a {entries.shape[0]}-square matrix")
        if len(set(labels)) != len(labels):
            raise ValidationError("labels must be distinct")
        if np.isnan(entries).any() or (entries < 0).any():
            raise ValidationError("cost entries must be non-negative")

    @classmethod
    def unlabeled(cls, entries) -> "LabeledCostMatrix":
        entries = np.asarray(entries, dtype=float)
        return cls(tuple(range(1, entries.shape[0] + 1)), entries)

    @property
    def size(self) -> int:
        return len(self.labels)

    def __getitem__(self, key: tuple[Hashable, Hashable]) -> float:
        r, c = key
        return float(self.entries[self.labels.index(r), self.labels.index(c)])

    def finite_count(self) -> int:
        return int(np.isfinite(self.entries).sum())


@dataclass(frozen=True)
class AssignmentResult:
    """A bijection rows -> columns given as ``(row_label, col_label)`` pairs in row order."""

    pairs: tuple[tuple[Hashable, Hashable], ...]
    total_cost: float

    @property
    def finite(self) -> bool:
        return self.total_cost != INF

    def as_dict(self) -> dict:
        return dict(self.pairs)


def _hungarian(cost: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Row-to-column assignment plus row/column duals.

    Requires a perfect matching over the finite entries; under that condition
    every step length is finite, so no big-M sentinel is needed.
    """
    k = cost.shape[0]
    u = np.zeros(k + 1)
    v = np.zeros(k + 1)
    owner = np.zeros(k + 1, dtype=np.int64)  # owner[col] = row, 1-based, 0 = free
    way = np.zeros(k + 1, dtype=np.int64)
    for i in range(1, k + 1):
        owner[0] = i
        j0 = 0
        minv = np.full(k + 1, INF)
        used = np.zeros(k + 1, dtype=bool)
        while True:
            used[j0] = True
            i0 = owner[j0]
            free = ~used
            free[0] = False
            cur = cost[i0 - 1] - u[i0] - v[1:]
            better = free[1:] & (cur < minv[1:])
            minv[1:][better] = cur[better]
            way[1:][better] = j0
            masked = np.where(free, minv, INF)
            j1 = int(np.argmin(masked))
            delta = masked[j1]
            if not np.isfinite(delta):
                raise RuntimeError("no finite augmenting path; matching check was bypassed")
            u[owner[used]] += delta
            v[used] -= delta
            minv[free] -= delta
            j0 = j1
            if owner[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            owner[j0] = owner[j1]
            j0 = j1
    row_to_col = np.empty(k, dtype=np.int64)
    for j in range(1, k + 1):
        row_to_col[owner[j] - 1] = j - 1
    return row_to_col, u[1:], v[1:]


def _lex_smallest(tight: list[list[int]], row_to_col: list[int]) -> list[int]:
    """Lexicographically smallest perfect matching of ``tight``, starting from one."""
    k = len(row_to_col)
    col_owner = [0] * k
    for r, c in enumerate(row_to_col):
        col_owner[c] = r
    fixed = [False] * k  # columns claimed by already-fixed rows
    for r in range(k):
        target = row_to_col[r]
        for c in tight[r]:
            if c >= target:
                break
            if fixed[c]:
                continue
            # Hand column c to r; its owner must reach r's old column through
            # an alternating path among rows not yet fixed.
            start = col_owner[c]
            prev: dict[int, tuple[int, int]] = {start: (-1, -1)}
            queue = deque([start])
            end_row = -1
            while queue and end_row == -1:
                row = queue.popleft()
                for cc in tight[row]:
                    if fixed[cc] or cc == c:
                        continue
                    if cc == target:
                        end_row = row
                        break
                    nxt = col_owner[cc]
                    if nxt not in prev and nxt != r:
                        prev[nxt] = (row, cc)
                        queue.append(nxt)
            if end_row == -1:
                continue
            # Rotate along the path: end_row takes target, each predecessor
            # takes the column that led to its successor.
            row, col = end_row, target
            while row != -1:
                row_to_col[row] = col
                col_owner[col] = row
                row, col = prev[row]
            row_to_col[r] = c
            col_owner[c] = r
            break
        fixed[row_to_col[r]] = True
    return row_to_col


def solve_assignment(M: LabeledCostMatrix) -> AssignmentResult:
    cost = M.entries
    k = M.size
    if k == 0:
        return AssignmentResult((), 0.0)
    finite = np.isfinite(cost)
    adj = [np.flatnonzero(finite[r]).tolist() for r in range(k)]
    match = hopcroft_karp(adj, k)
    if any(c == -1 for c in match):
        # Complete the maximum matching arbitrarily; the cost is inf anyway.
        free_cols = iter(sorted(set(range(k)) - set(match)))
        row_to_col = [c if c != -1 else next(free_cols) for c in match]
        pairs = tuple((M.labels[r], M.labels[c]) for r, c in enumerate(row_to_col))
        return AssignmentResult(pairs, INF)

    row_to_col, du, dv = _hungarian(cost)
    reduced = cost - du[:, None] - dv[None, :]
    scale = np.maximum(1.0, np.abs(np.where(finite, cost, 0.0)))
    is_tight = finite & (np.abs(reduced) <= TIGHT_TOL * scale)
    tight = [np.flatnonzero(is_tight[r]).tolist() for r in range(k)]
    row_to_col = _lex_smallest(tight, [int(c) for c in row_to_col])

    pairs = tuple((M.labels[r], M.labels[c]) for r, c in enumerate(row_to_col))
    total = cost_sum(float(cost[r, c]) for r, c in enumerate(row_to_col))
    return AssignmentResult(pairs, total)


def extract_cycles(R: AssignmentResult, order: Sequence[Hashable] | None = None) -> list[list]:
    """Split the permutation of ``R`` into disjoint cycles.

    Each cycle starts at its smallest label (by position in ``order``, or by
    natural ordering when no order is given); cycles are listed by that label.
    """
    succ = dict(R.pairs)
    if order is None:
        key = lambda lab: lab  # noqa: E731
    else:
        pos = {lab: k for k, lab in enumerate(order)}
        key = pos.__getitem__
    cycles = []
    seen = set()
    for start in sorted(succ, key=key):
        if start in seen:
            continue
        cyc = []
        v = start
        while v not in seen:
            seen.add(v)
            cyc.append(v)
            v = succ[v]
        cycles.append(cyc)
    return cycles
