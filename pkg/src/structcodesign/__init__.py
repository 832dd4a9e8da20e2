"""Minimum-cost actuator, sensor and feedback-link co-design for structural LTI systems."""

from importlib.resources import files

from .analysis import (
    SFMReport,
    has_no_sfms,
    is_structurally_controllable,
    is_structurally_observable,
    selection_has_no_sfms,
)
from .assignment import AssignmentResult, LabeledCostMatrix, extract_cycles, solve_assignment
from .codesign import (
    Branch,
    SolveReport,
    build_cost_CA,
    build_cost_Cstar,
    solve_cc,
    solve_codesign,
    solve_io,
)
from .errors import (
    CodesignError,
    DimensionMismatch,
    Infeasible,
    InfiniteIOCost,
    IndexOutOfRange,
    InvalidSpec,
    NegativeCost,
    NotIrreducible,
    NotSquare,
    TooLarge,
    UnknownVertex,
    ValidationError,
)
from .generator import GenSpec, generate
from .graph import (
    BipartiteGraph,
    SystemDigraph,
    Vertex,
    build_digraph,
    has_spanning_cycle_family,
    is_irreducible,
    max_bipartite_matching,
    reachable_from,
    strongly_connected_components,
)
from .model import (
    INF,
    Instance,
    Selection,
    SparsityPattern,
    load_instance,
    selection_cost,
    validate_instance,
)
from .oracle import brute_force_assignment, brute_force_codesign

__version__ = "0.1.0"


def bundled_instance_path(name: str) -> str:
    """Path of a bundled instance file, e.g. ``"example1"``."""
    return str(files(__package__) / "data" / f"{name}.json")
