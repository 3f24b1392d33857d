"""Dominating set as minimal controllability of a three-layer CBN.

Every edge ``{u, v}`` of the source graph becomes a variable ``E<u>_<v>``
with a self loop that feeds ``V<u>`` and ``V<v>``; every vertex ``v`` becomes
a variable ``V<v>`` that is the AND of its incident edge variables.  The edge
variables must all be controlled; the vertex variables that also need a
control form a minimum dominating set.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import CBNError, LayeringViolation
from .minctrl import DEFAULT_MAX_N, minimal_control_set
from .model import CBN, CBCN, UndirectedGraph, as_cbcn, build_dependency_graph
from .oracle import is_dominating

__all__ = [
    "ReductionInstance",
    "ReductionResult",
    "build_reduction",
    "solve_dominating_via_controllability",
    "three_layer_controllable",
]


@dataclass(frozen=True)
class ReductionInstance:
    """Produced CBN plus the map back to the source graph.

    Variables ``1..|E|`` are edge nodes (layer 2) in sorted edge order; the
    following variables are vertex nodes (layer 3) in vertex order.
    Isolated vertices accepted with ``isolated="force"`` get no variable and
    are listed in ``forced``.
    """

    graph: UndirectedGraph
    cbn: CBN
    edge_of: dict[int, tuple[int, int]]
    vertex_of: dict[int, int]
    forced: tuple[int, ...] = ()

    @property
    def layer2(self) -> frozenset[int]:
        return frozenset(self.edge_of)

    @property
    def layer3(self) -> frozenset[int]:
        return frozenset(self.vertex_of)

    def node_of_vertex(self, v: int) -> int:
        return next(i for i, u in self.vertex_of.items() if u == v)

    def with_controls(self, controls: Iterable[int]) -> CBCN:
        return CBCN.from_cbn(self.cbn, controls)


def build_reduction(g: UndirectedGraph, isolated: str = "reject") -> ReductionInstance:
    """Build the three-layer CBN of ``g``.

    An isolated vertex would become a variable without inputs, i.e. a
    constant update.  With ``isolated="reject"`` (default) such graphs raise
    ``ValueError``; with ``"force"`` the vertex is left out of the network
    and added to every dominating set.
    """
    if isolated not in ("reject", "force"):
        raise ValueError("isolated must be 'reject' or 'force'")
    lonely = g.isolated_vertices()
    if lonely and isolated == "reject":
        names = ", ".join(g.vertex_name(v) for v in lonely)
        raise ValueError(
            f"isolated vertices {names} would get a constant update; "
            "pass isolated='force' to put them in the dominating set directly"
        )
    edge_of = {k: e for k, e in enumerate(g.edges, start=1)}
    kept = [v for v in g.vertices if v not in set(lonely)]
    vertex_of = {len(edge_of) + k: v for k, v in enumerate(kept, start=1)}
    incident: dict[int, set[int]] = {v: set() for v in kept}
    for k, (u, v) in edge_of.items():
        incident[u].add(k)
        incident[v].add(k)
    sets = [frozenset({k}) for k in edge_of]
    sets += [frozenset(incident[v]) for v in kept]
    names = [f"E{u}_{v}" for u, v in edge_of.values()] + [f"V{v}" for v in kept]
    return ReductionInstance(g, CBN(tuple(sets), tuple(names)), edge_of, vertex_of, tuple(lonely))


@dataclass(frozen=True)
class ReductionResult:
    control_set: tuple[int, ...]
    dominating_set: tuple[int, ...]
    decision: Optional[bool]

    @property
    def gamma(self) -> int:
        return len(self.dominating_set)

    @property
    def total_controls(self) -> int:
        return len(self.control_set)

    def to_record(self) -> dict:
        return {
            "Y": [UndirectedGraph.vertex_name(v) for v in self.dominating_set],
            "gamma": self.gamma,
            "total_controls": self.total_controls,
            "decision": self.decision,
        }


def solve_dominating_via_controllability(
    g: UndirectedGraph,
    k: Optional[int] = None,
    isolated: str = "reject",
    max_tests: Optional[int] = None,
    max_n: int = DEFAULT_MAX_N,
) -> ReductionResult:
    """Minimum dominating set of ``g`` read off a minimum control set of its reduction.

    Raises:
        SearchBudgetExceeded: propagated from the exact control-set search.
    """
    inst = build_reduction(g, isolated)
    result = minimal_control_set(inst.cbn, max_tests=max_tests, max_n=max_n)
    controls = set(result.control_set)
    if not inst.layer2 <= controls:
        raise CBNError("an edge node was left uncontrolled")
    chosen = sorted([inst.vertex_of[i] for i in controls if i in inst.vertex_of] + list(inst.forced))
    if not is_dominating(g, chosen):
        raise CBNError(f"extracted set {chosen} does not dominate the graph")
    if len(result.control_set) != len(g.edges) + len(chosen) - len(inst.forced):
        raise CBNError("control count differs from |E| + |Y|")
    decision = None if k is None else len(chosen) <= k
    return ReductionResult(result.control_set, tuple(chosen), decision)


def three_layer_controllable(
    net: CBN | CBCN, layer2: Iterable[int], layer3: Iterable[int]
) -> bool:
    """Controllability of a three-layer CBCN from its layer structure alone.

    Layer 1 holds the generators, each attached to its own layer-2 node;
    all arcs between state variables go from layer 2 to layer 3.  The
    network is controllable iff every layer-3 node has a layer-2 in-neighbor
    of out-degree one.  A controlled node tagged as layer 3 has lost its
    in-arcs, so it is regarded as a layer-2 node with its own generator.

    Raises:
        LayeringViolation: if the tags do not describe such a network.
    """
    net = as_cbcn(net)
    layer2, layer3 = frozenset(layer2), frozenset(layer3)
    if layer2 & layer3:
        raise LayeringViolation("a node is tagged with two layers")
    if layer2 | layer3 != frozenset(range(1, net.n + 1)):
        raise LayeringViolation("layers must cover all variables")
    if not layer2 <= net.controlled:
        missing = sorted(layer2 - net.controlled)
        raise LayeringViolation(f"layer-2 nodes without their own control: {missing}")
    second = layer2 | (layer3 & net.controlled)
    third = layer3 - net.controlled
    g = build_dependency_graph(net)
    for v, w in g.arcs():
        if g.is_generator(v):
            continue
        if v not in second or w not in third:
            raise LayeringViolation(f"arc {g.label(v)} -> {g.label(w)} is not from layer 2 to layer 3")
    return all(
        any(len(g.out_nbrs[v]) == 1 for v in g.in_nbrs[w]) for w in sorted(third)
    )
