"""Exhaustive reference solvers for small instances.

``brute_force_codesign`` works for any dynamics pattern, reducible or not,
and its running time grows as 2^(number of finite links).

Only feedback sets ``F`` are enumerated; inputs and outputs are the ones
``F`` touches. An input with no incoming link has no incoming edge at all,
so it lies on no cycle and in no nontrivial SCC; dropping it keeps both
fixed-mode conditions and never raises the cost (outputs likewise). Each
candidate's cost is cheap to compute, so candidates are visited best-first
and the first one that passes the fixed-mode test is optimal. The test is
monotone in ``F``, so when the full link set fails the instance is
infeasible and nothing else is tried.
"""

from __future__ import annotations

import itertools
from typing import Hashable

from .analysis import selection_has_no_sfms
from .assignment import AssignmentResult, LabeledCostMatrix
from .codesign import INFEASIBLE_MSG, Branch, SolveReport
from .errors import Infeasible, TooLarge
from .model import INF, Instance, Selection, cost_sum, validate_instance

MAX_PAIRS = 12
MAX_IO = 8
MAX_ASSIGNMENT = 8


def brute_force_codesign(
    inst: Instance, max_pairs: int = MAX_PAIRS, max_io: int = MAX_IO
) -> SolveReport:
    validate_instance(inst)
    if inst.p * inst.m > max_pairs or inst.p + inst.m > max_io:
        raise TooLarge(
            f"p*m = {inst.p * inst.m} (cap {max_pairs}), p+m = {inst.p + inst.m} (cap {max_io})"
        )
    pairs = inst.finite_pairs()
    evaluated = 1
    if not pairs or not selection_has_no_sfms(inst, Selection.from_feedback(pairs)):
        raise Infeasible(f"{INFEASIBLE_MSG}: even the full link set leaves fixed modes")

    candidates = []
    for mask in range(1, 1 << len(pairs)):
        F = tuple(pr for k, pr in enumerate(pairs) if mask >> k & 1)
        ins = sorted({i for i, _ in F})
        outs = sorted({j for _, j in F})
        cost = cost_sum(
            [inst.cost_u[i - 1] for i in ins]
            + [inst.cost_y[j - 1] for j in outs]
            + [inst.feedback_cost(i, j) for i, j in F]
        )
        candidates.append((cost, len(F), F))
    candidates.sort()

    for cost, _, F in candidates:
        sel = Selection.from_feedback(F)
        evaluated += 1
        if selection_has_no_sfms(inst, sel):
            return SolveReport(sel, cost, Branch.EXHAUSTIVE, verified=True,
                               candidates_evaluated=evaluated)
    # unreachable: the full link set is itself a candidate and passed above
    raise AssertionError("full link set passed but no candidate did")


def brute_force_assignment(M: LabeledCostMatrix, max_size: int = MAX_ASSIGNMENT) -> AssignmentResult:
    """Minimum over all k! permutations; the first optimum in lexicographic order wins."""
    k = M.size
    if k > max_size:
        raise TooLarge(f"{k}x{k} matrix exceeds the cap of {max_size}")
    cost = M.entries
    best, best_perm = INF, None
    for perm in itertools.permutations(range(k)):
        total = 0.0
        for r in range(k):
            total += cost[r, perm[r]]
            if total >= best:
                break
        else:
            best, best_perm = total, perm
    if best_perm is None:
        best_perm = tuple(range(k))
    labels: tuple[Hashable, ...] = M.labels
    pairs = tuple((labels[r], labels[c]) for r, c in enumerate(best_perm))
    return AssignmentResult(pairs, best if k else 0.0)

