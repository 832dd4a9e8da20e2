"""Structural patterns, cost tables, instances and selections.

Costs are plain Python floats. ``math.inf`` plays the role of the extended
value: IEEE addition already saturates (``x + inf == inf``) and orders every
finite value below it, and no operation here ever subtracts costs, so
``inf - inf`` cannot arise. Integer-valued costs keep every sum exact.

All indices exposed by this module are 1-based.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    IndexOutOfRange,
    InfiniteIOCost,
    NegativeCost,
    ValidationError,
)

INF = math.inf

Pair = tuple[int, int]


def cost_sum(values: Iterable[float]) -> float:
    """Saturating sum of non-negative extended costs."""
    total = 0.0
    for v in values:
        total += v
        if total == INF:
            return INF
    return total


@dataclass(frozen=True)
class SparsityPattern:
    """Binary matrix stored as the set of its nonzero (row, col) positions."""

    rows: int
    cols: int
    nonzeros: frozenset[Pair] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionMismatch(f"negative shape {self.rows}x{self.cols}")
        nz = frozenset((int(i), int(j)) for i, j in self.nonzeros)
        for i, j in nz:
            if not (1 <= i <= self.rows and 1 <= j <= self.cols):
                raise IndexOutOfRange(
                    f"nonzero ({i},{j}) outside a {self.rows}x{self.cols} pattern"
                )
        object.__setattr__(self, "nonzeros", nz)

    @classmethod
    def from_dense(cls, matrix: Sequence[Sequence[Any]] | np.ndarray) -> "SparsityPattern":
        arr = np.asarray(matrix)
        if arr.ndim != 2:
            raise DimensionMismatch("dense pattern must be two-dimensional")
        rows, cols = arr.shape
        nz = {(int(i) + 1, int(j) + 1) for i, j in zip(*np.nonzero(arr))}
        return cls(rows, cols, frozenset(nz))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "SparsityPattern":
        return cls(rows, cols, frozenset())

    @classmethod
    def identity(cls, n: int) -> "SparsityPattern":
        return cls(n, n, frozenset((i, i) for i in range(1, n + 1)))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __contains__(self, pos: Pair) -> bool:
        return pos in self.nonzeros

    def __len__(self) -> int:
        return len(self.nonzeros)

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.rows, self.cols), dtype=bool)
        for i, j in self.nonzeros:
            out[i - 1, j - 1] = True
        return out

    def transpose(self) -> "SparsityPattern":
        return SparsityPattern(self.cols, self.rows, frozenset((j, i) for i, j in self.nonzeros))

    @property
    def T(self) -> "SparsityPattern":
        return self.transpose()

    def keep_cols(self, cols: Iterable[int]) -> "SparsityPattern":
        """Zero every column not listed; the shape is unchanged."""
        keep = set(cols)
        return SparsityPattern(
            self.rows, self.cols, frozenset(p for p in self.nonzeros if p[1] in keep)
        )

    def keep_rows(self, rows: Iterable[int]) -> "SparsityPattern":
        keep = set(rows)
        return SparsityPattern(
            self.rows, self.cols, frozenset(p for p in self.nonzeros if p[0] in keep)
        )

    def nonzero_cols(self) -> set[int]:
        return {j for _, j in self.nonzeros}

    def nonzero_rows(self) -> set[int]:
        return {i for i, _ in self.nonzeros}

    def sorted_nonzeros(self) -> list[Pair]:
        return sorted(self.nonzeros)


@dataclass(frozen=True)
class Instance:
    """Plant patterns together with the input, output and feedback cost tables.

    ``cost_f[i-1][j-1]`` is the cost of feeding output ``j`` to input ``i``;
    ``inf`` marks a link that is not available. Use :func:`validate_instance`
    to check the invariants.
    """

    A: SparsityPattern
    B: SparsityPattern
    C: SparsityPattern
    cost_u: tuple[float, ...]
    cost_y: tuple[float, ...]
    cost_f: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "cost_u", tuple(float(c) for c in self.cost_u))
        object.__setattr__(self, "cost_y", tuple(float(c) for c in self.cost_y))
        object.__setattr__(
            self, "cost_f", tuple(tuple(float(c) for c in row) for row in self.cost_f)
        )

    @property
    def n(self) -> int:
        return self.A.rows

    @property
    def p(self) -> int:
        return self.B.cols

    @property
    def m(self) -> int:
        return self.C.rows

    def feedback_cost(self, i: int, j: int) -> float:
        return self.cost_f[i - 1][j - 1]

    def finite_pairs(self) -> list[Pair]:
        """All (input, output) pairs with a finite feedback cost, sorted."""
        return [
            (i + 1, j + 1)
            for i, row in enumerate(self.cost_f)
            for j, c in enumerate(row)
            if c != INF
        ]

    def full_feedback(self) -> SparsityPattern:
        """Information pattern allowing every link with finite cost."""
        return SparsityPattern(self.p, self.m, frozenset(self.finite_pairs()))

    def with_costs(self, cost_u=None, cost_y=None, cost_f=None) -> "Instance":
        return Instance(
            self.A,
            self.B,
            self.C,
            self.cost_u if cost_u is None else cost_u,
            self.cost_y if cost_y is None else cost_y,
            self.cost_f if cost_f is None else cost_f,
        )

    def scaled(self, factor: float) -> "Instance":
        return self.with_costs(
            [c * factor for c in self.cost_u],
            [c * factor for c in self.cost_y],
            [[c * factor for c in row] for row in self.cost_f],
        )


@dataclass(frozen=True)
class Selection:
    """Chosen inputs ``I``, outputs ``J`` and feedback links ``F`` (pairs ``(i, j)``)."""

    inputs: frozenset[int] = frozenset()
    outputs: frozenset[int] = frozenset()
    feedback: frozenset[Pair] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "inputs", frozenset(int(i) for i in self.inputs))
        object.__setattr__(self, "outputs", frozenset(int(j) for j in self.outputs))
        object.__setattr__(
            self, "feedback", frozenset((int(i), int(j)) for i, j in self.feedback)
        )
        for i, j in self.feedback:
            if i not in self.inputs or j not in self.outputs:
                raise ValidationError(
                    f"feedback link ({i},{j}) uses an unselected input or output"
                )

    @classmethod
    def from_feedback(cls, feedback: Iterable[Pair]) -> "Selection":
        """Selection whose inputs and outputs are exactly those touched by ``feedback``."""
        fb = frozenset(feedback)
        return cls(frozenset(i for i, _ in fb), frozenset(j for _, j in fb), fb)

    def feedback_pattern(self, p: int, m: int) -> SparsityPattern:
        return SparsityPattern(p, m, self.feedback)


def validate_instance(inst: Instance) -> Instance:
    """Return ``inst`` unchanged if it is well formed, else raise the first violation."""
    n, p, m = inst.n, inst.p, inst.m
    if n < 1:
        raise DimensionMismatch("the state dimension must be at least 1")
    if inst.A.cols != n:
        raise DimensionMismatch(f"A is {inst.A.rows}x{inst.A.cols}, expected square")
    if inst.B.rows != n:
        raise DimensionMismatch(f"B has {inst.B.rows} rows, expected {n}")
    if inst.C.cols != n:
        raise DimensionMismatch(f"C has {inst.C.cols} columns, expected {n}")
    if len(inst.cost_u) != p:
        raise DimensionMismatch(f"cost_u has length {len(inst.cost_u)}, B has {p} columns")
    if len(inst.cost_y) != m:
        raise DimensionMismatch(f"cost_y has length {len(inst.cost_y)}, C has {m} rows")
    if len(inst.cost_f) != p or any(len(row) != m for row in inst.cost_f):
        raise DimensionMismatch(f"cost_f must be {p}x{m}")
    for name, values in (("cost_u", inst.cost_u), ("cost_y", inst.cost_y)):
        for k, c in enumerate(values, 1):
            if math.isnan(c) or c < 0:
                raise NegativeCost(f"{name}[{k}] = {c} is not a non-negative number")
            if c == INF:
                raise InfiniteIOCost(f"{name}[{k}] is infinite; only feedback costs may be")
    for i, row in enumerate(inst.cost_f, 1):
        for j, c in enumerate(row, 1):
            if math.isnan(c) or c < 0:
                raise NegativeCost(f"cost_f[{i}][{j}] = {c} is not a non-negative number")
    return inst


def validate_selection(inst: Instance, sel: Selection) -> Selection:
    for i in sel.inputs:
        if not 1 <= i <= inst.p:
            raise IndexOutOfRange(f"input {i} outside 1..{inst.p}")
    for j in sel.outputs:
        if not 1 <= j <= inst.m:
            raise IndexOutOfRange(f"output {j} outside 1..{inst.m}")
    return sel


def selection_cost(inst: Instance, sel: Selection) -> float:
    return cost_sum(
        [inst.cost_u[i - 1] for i in sorted(sel.inputs)]
        + [inst.cost_y[j - 1] for j in sorted(sel.outputs)]
        + [inst.feedback_cost(i, j) for i, j in sorted(sel.feedback)]
    )


def closed_loop_patterns(
    inst: Instance, sel: Selection
) -> tuple[SparsityPattern, SparsityPattern, SparsityPattern, SparsityPattern]:
    """Patterns (A, B(I), C(J), K(F)) with unselected columns/rows zeroed out.

    Shapes are kept at full size; an unselected input or output simply has no
    incident edges, which is equivalent to removing it.
    """
    return (
        inst.A,
        inst.B.keep_cols(sel.inputs),
        inst.C.keep_rows(sel.outputs),
        sel.feedback_pattern(inst.p, inst.m),
    )


# -- JSON ---------------------------------------------------------------------


def _parse_cost(value: Any, allow_inf: bool) -> float:
    if value is None or (isinstance(value, str) and value.lower() in ("inf", "infinity")):
        if not allow_inf:
            raise InfiniteIOCost("only feedback costs may be infinite")
        return INF
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(f"cost {value!r} is not a number")
    return float(value)


def _dump_cost(value: float) -> float | int | None:
    if value == INF:
        return None
    return int(value) if float(value).is_integer() else value


def _pattern(rows: int, cols: int, entries: Any, name: str) -> SparsityPattern:
    try:
        nz = frozenset((int(i), int(j)) for i, j in entries)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"{name} must be a list of [row, col] pairs") from exc
    try:
        return SparsityPattern(rows, cols, nz)
    except IndexOutOfRange as exc:
        raise IndexOutOfRange(f"{name}: {exc}") from None


def instance_from_dict(data: dict) -> Instance:
    try:
        n, p, m = int(data["n"]), int(data["p"]), int(data["m"])
        inst = Instance(
            A=_pattern(n, n, data.get("A", []), "A"),
            B=_pattern(n, p, data.get("B", []), "B"),
            C=_pattern(m, n, data.get("C", []), "C"),
            cost_u=[_parse_cost(c, False) for c in data["cost_u"]],
            cost_y=[_parse_cost(c, False) for c in data["cost_y"]],
            cost_f=[[_parse_cost(c, True) for c in row] for row in data["cost_f"]],
        )
    except KeyError as exc:
        raise ValidationError(f"missing field {exc.args[0]!r}") from None
    return validate_instance(inst)


def patterns_from_dict(data: dict) -> tuple[SparsityPattern, SparsityPattern, SparsityPattern]:
    """Only the A, B, C patterns of an instance file; cost tables may be absent."""
    try:
        n = int(data["n"])
    except KeyError:
        raise ValidationError("missing field 'n'") from None
    p, m = int(data.get("p", 0)), int(data.get("m", 0))
    return (
        _pattern(n, n, data.get("A", []), "A"),
        _pattern(n, p, data.get("B", []), "B"),
        _pattern(m, n, data.get("C", []), "C"),
    )


def instance_to_dict(inst: Instance) -> dict:
    return {
        "n": inst.n,
        "p": inst.p,
        "m": inst.m,
        "A": [list(e) for e in inst.A.sorted_nonzeros()],
        "B": [list(e) for e in inst.B.sorted_nonzeros()],
        "C": [list(e) for e in inst.C.sorted_nonzeros()],
        "cost_u": [_dump_cost(c) for c in inst.cost_u],
        "cost_y": [_dump_cost(c) for c in inst.cost_y],
        "cost_f": [[_dump_cost(c) for c in row] for row in inst.cost_f],
    }


def selection_from_dict(data: dict) -> Selection:
    try:
        return Selection(
            frozenset(data.get("inputs", [])),
            frozenset(data.get("outputs", [])),
            frozenset(tuple(e) for e in data.get("feedback", [])),
        )
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ValidationError):
            raise
        raise ValidationError(f"malformed selection: {exc}") from None


def selection_to_dict(sel: Selection, cost: float | None = None) -> dict:
    out: dict[str, Any] = {
        "inputs": sorted(sel.inputs),
        "outputs": sorted(sel.outputs),
        "feedback": [list(e) for e in sorted(sel.feedback)],
    }
    if cost is not None:
        out["cost"] = "inf" if cost == INF else _dump_cost(cost)
    return out


def load_instance(path: str | Path) -> Instance:
    with open(path) as fh:
        return instance_from_dict(json.load(fh))


def save_instance(inst: Instance, path: str | Path) -> None:
    with open(path, "w") as fh:
        json.dump(instance_to_dict(inst), fh, indent=1)
        fh.write("\n")


def load_selection(path: str | Path) -> Selection:
    with open(path) as fh:
        return selection_from_dict(json.load(fh))
