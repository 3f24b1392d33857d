"""Controllability of conjunctive Boolean control networks.

Quick start::

    from cbn_control import parse_cbn, check_controllability, synthesize

    net = parse_cbn("X1 = ?\\nX2 = ?\\nX3 = X1 & X2\\n")
    check_controllability(net).controllable      # True
    synthesize(net, (0, 0, 0), (0, 1, 1))        # steers any state to 011
"""

__version__ = "0.1.0"

from .analysis import (
    ControllabilityVerdict,
    DepthMap,
    Reason,
    check_controllability,
    decompose_controlled_paths,
    fill_depth,
    format_path,
    has_property_p,
    is_dag,
)
from .errors import (
    CBNError,
    ConstantUpdateError,
    LayeringViolation,
    NotControllableError,
    NotDAGError,
    ParseError,
    SearchBudgetExceeded,
    TooLargeError,
)
from .minctrl import (
    MinControlResult,
    decision_min_controls,
    greedy_control_set,
    minimal_control_set,
)
from .model import (
    CBN,
    CBCN,
    DependencyGraph,
    NodeClass,
    UndirectedGraph,
    as_cbcn,
    build_dependency_graph,
    classify_node,
    dbn_to_cbn,
    format_cbn,
    parse_cbn,
    parse_edge_list,
    to_dot,
)
from .oracle import (
    StateGraph,
    min_dominating_set,
    oracle_controllable,
    shortest_steering,
    state_graph,
)
from .reduction import (
    ReductionInstance,
    ReductionResult,
    build_reduction,
    solve_dominating_via_controllability,
    three_layer_controllable,
)
from .synthesis import plan_synthesis, simulate, step, synthesize
