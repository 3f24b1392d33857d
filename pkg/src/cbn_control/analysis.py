"""Controllability test and controlled-path decomposition of CBCN dependency graphs.

A CBCN is controllable iff its dependency graph is acyclic and every simple
node has a generator or a channel among its in-neighbors (property P).
Both checks are linear in the size of the graph.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Optional

from .errors import NotControllableError, NotDAGError
from .model import CBN, CBCN, DependencyGraph, build_dependency_graph

__all__ = [
    "ControllabilityVerdict",
    "DepthMap",
    "Reason",
    "check_controllability",
    "decompose_controlled_paths",
    "fill_depth",
    "format_path",
    "has_property_p",
    "is_dag",
]

Path = tuple[int, ...]


class Reason(enum.Enum):
    OK = "ok"
    NOT_DAG = "not_dag"
    PROPERTY_P_VIOLATION = "property_p_violation"


@dataclass(frozen=True)
class ControllabilityVerdict:
    """Outcome of :func:`check_controllability`.

    ``witness`` is a cycle (first node repeated at the end) for ``NOT_DAG``,
    a single simple node for ``PROPERTY_P_VIOLATION`` and empty otherwise.
    """

    controllable: bool
    reason: Reason
    witness: tuple[int, ...] = ()
    witness_names: tuple[str, ...] = ()

    def __post_init__(self):
        if self.controllable != (self.reason is Reason.OK):
            raise ValueError("reason must be OK exactly when controllable")

    def to_record(self) -> dict:
        return {
            "controllable": self.controllable,
            "reason": self.reason.value,
            "witness": list(self.witness_names),
        }

    def describe(self) -> str:
        if self.controllable:
            return "controllable"
        if self.reason is Reason.NOT_DAG:
            return "not controllable: cycle " + " -> ".join(self.witness_names)
        return (
            f"not controllable: {self.witness_names[0]} has no generator "
            "or channel among its in-neighbors"
        )


def is_dag(g: DependencyGraph) -> tuple[bool, list[int]]:
    """Return ``(True, topological order)`` or ``(False, cycle)``.

    Depth-first search with roots and successors visited in ascending id
    order; the cycle closed by the first back edge is reported, with its
    first node repeated at the end.
    """
    state = dict.fromkeys(g.in_nbrs, 0)  # 0 new, 1 on stack, 2 done
    postorder = []
    for root in sorted(state):
        if state[root]:
            continue
        state[root] = 1
        stack = [(root, iter(g.out_nbrs[root]))]
        trail = [root]
        while stack:
            v, successors = stack[-1]
            for w in successors:
                if state[w] == 0:
                    state[w] = 1
                    stack.append((w, iter(g.out_nbrs[w])))
                    trail.append(w)
                    break
                if state[w] == 1:
                    return False, trail[trail.index(w):] + [w]
            else:
                stack.pop()
                trail.pop()
                state[v] = 2
                postorder.append(v)
    postorder.reverse()
    return True, postorder


def has_property_p(g: DependencyGraph) -> tuple[bool, Optional[int]]:
    """Every simple node must be the sole out-neighbor of a generator or channel.

    Returns ``(True, None)`` or ``(False, lowest violating simple node)``.
    """
    marked = set()
    for v, out in g.out_nbrs.items():
        # generators always have out-degree 1; a simple node qualifies unless it is its own target
        if len(out) == 1 and out[0] != v:
            marked.add(out[0])
    for v in g.simple_nodes:
        if v not in marked:
            return False, v
    return True, None


def _verdict(g: DependencyGraph) -> ControllabilityVerdict:
    acyclic, seq = is_dag(g)
    if not acyclic:
        return ControllabilityVerdict(
            False, Reason.NOT_DAG, tuple(seq), tuple(g.label(v) for v in seq)
        )
    ok, bad = has_property_p(g)
    if not ok:
        return ControllabilityVerdict(
            False, Reason.PROPERTY_P_VIOLATION, (bad,), (g.label(bad),)
        )
    return ControllabilityVerdict(True, Reason.OK)


def check_controllability(net: CBN | CBCN | DependencyGraph) -> ControllabilityVerdict:
    """Decide controllability from the dependency graph alone."""
    g = net if isinstance(net, DependencyGraph) else build_dependency_graph(net)
    return _verdict(g)


def decompose_controlled_paths(g: DependencyGraph) -> list[Path]:
    """Split all nodes of ``g`` into disjoint controlled paths.

    Starting from each uncovered simple node (lowest id first) the builder
    walks backwards through channels, choosing the lowest-id channel, until
    it reaches a generator or a node already on a path.  In the latter case
    that node is necessarily the last one of its path and the new chain is
    appended to it.

    Paths are returned sorted by generator id.

    Raises:
        NotControllableError: if ``g`` is cyclic or violates property P.
    """
    verdict = _verdict(g)
    if not verdict.controllable:
        raise NotControllableError(verdict.describe(), verdict)

    owner: dict[int, list[int]] = {}
    paths: list[list[int]] = []
    for v in g.simple_nodes:
        if v in owner:
            continue
        chain = deque([v])
        cnode = v
        while True:
            channel = next((u for u in g.in_nbrs[cnode] if g.is_channel(u)), None)
            if channel is None:
                gen = next(u for u in g.in_nbrs[cnode] if g.is_generator(u))
                # a generator's only successor is cnode, which is uncovered
                assert gen not in owner
                chain.appendleft(gen)
                path = list(chain)
                paths.append(path)
                break
            if channel in owner:
                path = owner[channel]
                assert path[-1] == channel
                path.extend(chain)
                break
            chain.appendleft(channel)
            cnode = channel
        for u in chain:
            owner[u] = path
    return sorted((tuple(p) for p in paths), key=lambda p: p[0])


def format_path(g: DependencyGraph, path: Path) -> str:
    return " -> ".join(g.label(v) for v in path)


@dataclass(frozen=True)
class DepthMap:
    """Fill depth of every node: generators 0, others 1 + max over in-neighbors.

    Feeding ones to every generator sets node ``v`` to one from time
    ``depth[v]`` on, whatever the initial state; ``tau`` is the largest depth
    of a simple node.
    """

    depth: dict[int, int]
    tau: int

    def __getitem__(self, v: int) -> int:
        return self.depth[v]


def fill_depth(g: DependencyGraph) -> DepthMap:
    acyclic, order = is_dag(g)
    if not acyclic:
        raise NotDAGError(
            "fill depth is undefined on a cyclic graph: "
            + " -> ".join(g.label(v) for v in order)
        )
    depth: dict[int, int] = {}
    for v in order:
        preds = g.in_nbrs[v]
        depth[v] = 1 + max(depth[u] for u in preds) if preds else 0
    tau = max((depth[v] for v in g.simple_nodes), default=0)
    return DepthMap(depth, tau)
