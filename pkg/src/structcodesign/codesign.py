"""Minimum-cost co-design of inputs, outputs and feedback links for irreducible plants.

Two cost matrices drive the solver. The state matrix has a zero wherever
``x_i -> x_j`` is an edge; if it admits a finite assignment the states are
already covered by disjoint cycles and a single cheapest (input, output,
link) triple closes a feedback loop. Otherwise the extended matrix over
``x, u, y`` labels is solved, and every finite assignment corresponds to a
cycle family whose ``u``/``y`` members are exactly the selection.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .analysis import selection_has_no_sfms
from .assignment import AssignmentResult, LabeledCostMatrix, solve_assignment
from .errors import Infeasible, NotIrreducible, NotSquare
from .graph import Vertex, is_irreducible
from .model import (
    INF,
    Instance,
    Selection,
    SparsityPattern,
    selection_cost,
    selection_to_dict,
    validate_instance,
)

log = logging.getLogger(__name__)

INFEASIBLE_MSG = "there is no feasible information pattern"


class Branch(str, enum.Enum):
    SINGLE_TRIPLE = "SingleTriple"
    FULL_ASSIGNMENT = "FullAssignment"
    EXHAUSTIVE = "Exhaustive"


@dataclass
class SolveReport:
    selection: Selection
    total_cost: float
    branch: Branch
    assignment: AssignmentResult | None = None
    verified: bool = False
    candidates_evaluated: int | None = None

    def as_dict(self) -> dict:
        out = selection_to_dict(self.selection, self.total_cost)
        out["branch"] = self.branch.value
        out["verified"] = self.verified
        if self.candidates_evaluated is not None:
            out["candidates_evaluated"] = self.candidates_evaluated
        return out


def labels_for(n: int, p: int, m: int) -> tuple[Vertex, ...]:
    return (
        tuple(Vertex("x", i) for i in range(1, n + 1))
        + tuple(Vertex("u", i) for i in range(1, p + 1))
        + tuple(Vertex("y", j) for j in range(1, m + 1))
    )


def build_cost_CA(A: SparsityPattern) -> LabeledCostMatrix:
    """State cost matrix, stored so that row ``x_i``, column ``x_j`` is finite iff ``x_i -> x_j``."""
    if A.rows != A.cols:
        raise NotSquare(f"A is {A.rows}x{A.cols}")
    n = A.rows
    entries = np.full((n, n), INF)
    for i, j in A.nonzeros:
        entries[j - 1, i - 1] = 0.0
    return LabeledCostMatrix(labels_for(n, 0, 0), entries)


def build_cost_Cstar(inst: Instance) -> LabeledCostMatrix:
    validate_instance(inst)
    n, p, m = inst.n, inst.p, inst.m
    uo, yo = n, n + p
    H = np.full((n + p + m, n + p + m), INF)
    for i, j in inst.A.nonzeros:  # x_j -> x_i
        H[j - 1, i - 1] = 0.0
    for i, j in inst.B.nonzeros:  # u_j -> x_i
        H[uo + j - 1, i - 1] = inst.cost_u[j - 1]
    for i, j in inst.C.nonzeros:  # x_j -> y_i
        H[j - 1, yo + i - 1] = inst.cost_y[i - 1]
    for i in range(p):
        for j in range(m):  # y_j -> u_i
            H[yo + j, uo + i] = inst.cost_f[i][j]
    for k in range(uo, n + p + m):
        H[k, k] = 0.0
    return LabeledCostMatrix(labels_for(n, p, m), H)


def _cheapest_triple(inst: Instance) -> tuple[int, int] | None:
    """Cheapest (i, j) able to close a loop through the states; ties go to the smallest pair."""
    in_ok = inst.B.nonzero_cols()
    out_ok = inst.C.nonzero_rows()
    best, best_pair = INF, None
    for i in sorted(in_ok):
        for j in sorted(out_ok):
            c = inst.cost_u[i - 1] + inst.cost_y[j - 1] + inst.cost_f[i - 1][j - 1]
            if c < best:
                best, best_pair = c, (i, j)
    return best_pair


def selection_from_assignment(R: AssignmentResult) -> Selection:
    inputs, outputs, feedback = set(), set(), set()
    for a, b in R.pairs:
        if a.kind == "u" and b.kind == "x":
            inputs.add(a.index)
        elif a.kind == "x" and b.kind == "y":
            outputs.add(b.index)
        elif a.kind == "y" and b.kind == "u":
            feedback.add((b.index, a.index))
    return Selection(frozenset(inputs), frozenset(outputs), frozenset(feedback))


def solve_codesign(inst: Instance) -> SolveReport:
    """Cheapest selection leaving the closed loop free of structurally fixed modes.

    Raises :class:`NotIrreducible` for reducible dynamics (use the oracle
    instead) and :class:`Infeasible` when no selection works.
    """
    validate_instance(inst)
    if not is_irreducible(inst.A):
        raise NotIrreducible(
            "the dynamics pattern is not irreducible; the polynomial solver does not "
            "apply (the exhaustive oracle does)"
        )

    M1 = solve_assignment(build_cost_CA(inst.A))
    if M1.finite:
        pair = _cheapest_triple(inst)
        if pair is None:
            raise Infeasible(f"{INFEASIBLE_MSG}: no finite input/output/link triple")
        i, j = pair
        sel = Selection(frozenset({i}), frozenset({j}), frozenset({pair}))
        report = SolveReport(sel, selection_cost(inst, sel), Branch.SINGLE_TRIPLE)
    else:
        M2 = solve_assignment(build_cost_Cstar(inst))
        if not M2.finite:
            raise Infeasible(f"{INFEASIBLE_MSG}: the extended assignment has no finite solution")
        sel = selection_from_assignment(M2)
        report = SolveReport(sel, selection_cost(inst, sel), Branch.FULL_ASSIGNMENT, M2)

    report.verified = bool(selection_has_no_sfms(inst, sel))
    if not report.verified:
        log.warning("returned selection failed the fixed-mode check: %s", sel)
    return report


def io_instance(A: SparsityPattern, B: SparsityPattern, cost_u: Sequence[float]) -> Instance:
    """Embedding for input selection: every state measured for free, every link free."""
    n, p = A.rows, B.cols
    return Instance(A, B, SparsityPattern.identity(n), cost_u, [0.0] * n, [[0.0] * n for _ in range(p)])


def solve_io(
    A: SparsityPattern, B: SparsityPattern, cost_u: Sequence[float]
) -> tuple[frozenset[int], float]:
    """Cheapest input subset making ``(A, B(I))`` structurally controllable."""
    report = solve_codesign(io_instance(A, B, cost_u))
    inputs = report.selection.inputs
    return inputs, float(sum(cost_u[i - 1] for i in sorted(inputs)))


def cc_instance(
    A: SparsityPattern, B: SparsityPattern, C: SparsityPattern, cost_f
) -> Instance:
    """Embedding for control-configuration selection: inputs and outputs cost nothing."""
    return Instance(A, B, C, [0.0] * B.cols, [0.0] * C.rows, cost_f)


def solve_cc(
    A: SparsityPattern, B: SparsityPattern, C: SparsityPattern, cost_f
) -> tuple[frozenset[tuple[int, int]], float]:
    """Cheapest set of feedback links leaving ``(A, B, C, K(F))`` free of SFMs."""
    report = solve_codesign(cc_instance(A, B, C, cost_f))
    return report.selection.feedback, report.total_cost
