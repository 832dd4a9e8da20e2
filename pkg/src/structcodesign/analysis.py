"""Structural feasibility predicates: fixed modes, controllability, observability."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DimensionMismatch
from .graph import (
    SystemDigraph,
    Vertex,
    build_digraph,
    hopcroft_karp,
    reachable_ids,
    scc_ids,
    spanning_cycle_family,
)
from .model import Instance, Selection, SparsityPattern, closed_loop_patterns


@dataclass
class SFMReport:
    """Outcome of the structurally-fixed-mode test.

    ``failed`` is ``None`` on success, otherwise ``"a"`` (some state is not in
    an SCC holding a feedback edge) or ``"b"`` (no disjoint cycle family
    covers the states). On success ``sccs`` lists the components that hold
    the states and ``cycles`` one covering cycle family.
    """

    ok: bool
    failed: str | None = None
    digraph: SystemDigraph | None = field(default=None, repr=False)
    sccs: list[set[Vertex]] = field(default_factory=list)
    feedback_edges: list[tuple[Vertex, Vertex]] = field(default_factory=list)
    cycles: list[list[Vertex]] = field(default_factory=list)
    uncovered_states: list[Vertex] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok

    def certificate_edges(self) -> set[tuple[Vertex, Vertex]]:
        """Edges of the cycle family plus the feedback edges inside state SCCs."""
        out = set(self.feedback_edges)
        for cyc in self.cycles:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                out.add((a, b))
        return out

    def as_dict(self) -> dict:
        return {
            "no_sfms": self.ok,
            "failed_condition": self.failed,
            "state_sccs": [sorted(str(v) for v in sorted(c)) for c in self.sccs],
            "feedback_edges": [[str(a), str(b)] for a, b in self.feedback_edges],
            "cycles": [[str(v) for v in c] for c in self.cycles],
            "uncovered_states": [str(v) for v in self.uncovered_states],
        }


def condition_a(D: SystemDigraph) -> tuple[bool, list[list[int]], list[tuple[int, int]]]:
    """Every state lies in an SCC containing some y -> u edge (both ends inside).

    Returns the verdict, the SCCs that hold states, and the y -> u edges
    found inside those SCCs.
    """
    comps = scc_ids(D.adj)
    comp_of = [0] * len(D)
    for k, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = k
    has_fb = [False] * len(comps)
    fb_edges = []
    y0 = D.n + D.p
    for yv in range(y0, len(D)):
        for uv in D.adj[yv]:
            if comp_of[yv] == comp_of[uv]:
                has_fb[comp_of[yv]] = True
                fb_edges.append((yv, uv))
    state_comps = sorted({comp_of[s] for s in D.state_ids})
    ok = all(has_fb[k] for k in state_comps)
    fb_edges = [e for e in fb_edges if comp_of[e[0]] in state_comps]
    return ok, [sorted(comps[k]) for k in state_comps], fb_edges


def has_no_sfms(
    A: SparsityPattern, B: SparsityPattern, C: SparsityPattern, K: SparsityPattern
) -> SFMReport:
    D = build_digraph(A, B, C, K)
    ok_a, comps, fb = condition_a(D)
    report = SFMReport(ok=False, digraph=D)
    report.sccs = [{D.label(v) for v in comp} for comp in comps]
    report.feedback_edges = [(D.label(a), D.label(b)) for a, b in sorted(fb)]
    if not ok_a:
        report.failed = "a"
        report.uncovered_states = sorted(
            D.label(s) for comp in comps for s in comp if s < D.n
        )
        return report
    cycles = spanning_cycle_family(D)
    if cycles is None:
        report.failed = "b"
        return report
    report.ok = True
    report.cycles = cycles
    return report


def selection_has_no_sfms(inst: Instance, sel: Selection) -> SFMReport:
    return has_no_sfms(*closed_loop_patterns(inst, sel))


def _generic_rank_full(A: SparsityPattern, B: SparsityPattern) -> bool:
    """Whether [A B] has a matching covering every row."""
    n, p = A.rows, B.cols
    adj: list[list[int]] = [[] for _ in range(n)]
    for i, j in A.nonzeros:
        adj[i - 1].append(j - 1)
    for i, j in B.nonzeros:
        adj[i - 1].append(n + j - 1)
    for lst in adj:
        lst.sort()
    return all(c != -1 for c in hopcroft_karp(adj, n + p))


def is_structurally_controllable(A: SparsityPattern, B: SparsityPattern) -> bool:
    """Input accessibility of every state plus generic rank n of ``[A B]``."""
    if A.rows != A.cols or B.rows != A.rows:
        raise DimensionMismatch(f"A is {A.rows}x{A.cols}, B is {B.rows}x{B.cols}")
    D = build_digraph(A, B)
    seen = reachable_ids(D.adj, range(D.n, D.n + D.p))
    if any(s not in seen for s in D.state_ids):
        return False
    return _generic_rank_full(A, B)


def is_structurally_observable(A: SparsityPattern, C: SparsityPattern) -> bool:
    if A.rows != A.cols or C.cols != A.rows:
        raise DimensionMismatch(f"A is {A.rows}x{A.cols}, C is {C.rows}x{C.cols}")
    return is_structurally_controllable(A.transpose(), C.transpose())
