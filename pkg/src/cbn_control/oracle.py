"""Brute-force ground truth on the full state space.

The state graph of a CBCN has one vertex per state (packed little-endian,
bit ``i - 1`` = ``X_i``) and one arc per (state, control word) pair.  A
control word packs a control vector the same way: bit ``k`` is the input of
the ``k``-th controlled variable in ascending index order.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

import numpy as np

from .errors import TooLargeError
from .model import CBN, CBCN, UndirectedGraph, as_cbcn, bits_to_str, int_to_state, state_to_int

__all__ = [
    "DEFAULT_MAX_BITS",
    "DEFAULT_MAX_VERTICES",
    "DominatingSetResult",
    "StateGraph",
    "is_dominating",
    "max_oracle_bits",
    "min_dominating_set",
    "oracle_controllable",
    "shortest_steering",
    "state_graph",
]

DEFAULT_MAX_BITS = 20
DEFAULT_MAX_VERTICES = 25
MAX_BITS_ENV = "CBN_CONTROL_MAX_ORACLE_BITS"


def max_oracle_bits() -> int:
    """State-graph size guard (``n + |I|``), overridable through the environment."""
    value = os.environ.get(MAX_BITS_ENV)
    return int(value) if value else DEFAULT_MAX_BITS


@dataclass(frozen=True, eq=False)
class StateGraph:
    """Transition table ``successors[state, control_word] -> next state``."""

    n: int
    controls: tuple[int, ...]
    successors: np.ndarray

    @property
    def n_states(self) -> int:
        return self.successors.shape[0]

    @property
    def n_controls(self) -> int:
        return self.successors.shape[1]

    def successor(self, state: int, word: int) -> int:
        return int(self.successors[state, word])

    def control_vector(self, word: int) -> tuple[int, ...]:
        return int_to_state(word, len(self.controls))

    def arcs(self) -> Iterator[tuple[int, int, int]]:
        for s in range(self.n_states):
            for w in range(self.n_controls):
                yield s, w, int(self.successors[s, w])

    def to_dot(self) -> str:
        """DOT text; states are written as bit strings with X1 leftmost."""
        lines = ["digraph states {"]
        for s in range(self.n_states):
            label = bits_to_str(int_to_state(s, self.n))
            targets = sorted({int(t) for t in self.successors[s]})
            for t in targets:
                words = [w for w in range(self.n_controls) if self.successors[s, w] == t]
                ctrl = ",".join(bits_to_str(self.control_vector(w)) for w in words)
                attr = f' [label="{ctrl}"]' if self.controls else ""
                lines.append(f'  "{label}" -> "{bits_to_str(int_to_state(t, self.n))}"{attr};')
        lines.append("}")
        return "\n".join(lines) + "\n"


def state_graph(net: CBN | CBCN, max_bits: Optional[int] = None) -> StateGraph:
    """Build the full transition table.

    Raises:
        TooLargeError: if ``n + |I|`` exceeds ``max_bits``.
    """
    net = as_cbcn(net)
    n, controls = net.n, net.controls
    limit = max_oracle_bits() if max_bits is None else max_bits
    if n + len(controls) > limit:
        raise TooLargeError(
            f"state graph needs {n + len(controls)} bits, limit is {limit}"
        )
    states = np.arange(1 << n, dtype=np.int64)
    base = np.zeros(1 << n, dtype=np.int64)
    for i in range(1, n + 1):
        if i in net.controlled:
            continue
        mask = 0
        for j in net.update_sets[i - 1]:
            mask |= 1 << (j - 1)
        base |= ((states & mask) == mask).astype(np.int64) << (i - 1)
    words = np.arange(1 << len(controls), dtype=np.int64)
    forced = np.zeros(1 << len(controls), dtype=np.int64)
    for k, i in enumerate(controls):
        forced |= ((words >> k) & 1) << (i - 1)
    return StateGraph(n, controls, base[:, None] | forced[None, :])


def _forward_closure(succ: np.ndarray, start: int) -> np.ndarray:
    seen = np.zeros(succ.shape[0], dtype=bool)
    seen[start] = True
    frontier = np.array([start])
    while frontier.size:
        nxt = np.unique(succ[frontier].ravel())
        frontier = nxt[~seen[nxt]]
        seen[frontier] = True
    return seen


def _backward_closure(succ: np.ndarray, target: int) -> np.ndarray:
    seen = np.zeros(succ.shape[0], dtype=bool)
    seen[target] = True
    while True:
        grown = seen | seen[succ].any(axis=1)
        if np.array_equal(grown, seen):
            return seen
        seen = grown


def oracle_controllable(net: CBN | CBCN | StateGraph, max_bits: Optional[int] = None) -> bool:
    """True iff the state graph is strongly connected.

    Every state must be reachable from state 0 and must reach state 0.
    """
    sg = net if isinstance(net, StateGraph) else state_graph(net, max_bits)
    succ = sg.successors
    return bool(_forward_closure(succ, 0).all() and _backward_closure(succ, 0).all())


def shortest_steering(
    net: CBN | CBCN | StateGraph,
    a: Sequence[int],
    b: Sequence[int],
    max_bits: Optional[int] = None,
) -> Optional[list[tuple[int, ...]]]:
    """Minimum-length control sequence from ``a`` to ``b``, or ``None`` if unreachable.

    Breadth-first search; among shortest sequences the one found first when
    states and control words are scanned in ascending order is returned.
    """
    sg = net if isinstance(net, StateGraph) else state_graph(net, max_bits)
    if len(a) != sg.n or len(b) != sg.n:
        raise ValueError("state length does not match the network")
    src, dst = state_to_int(a), state_to_int(b)
    succ = sg.successors
    n_words = succ.shape[1]
    parent = np.full(succ.shape[0], -1, dtype=np.int64)
    via = np.full(succ.shape[0], -1, dtype=np.int64)
    seen = np.zeros(succ.shape[0], dtype=bool)
    seen[src] = True
    frontier = np.array([src], dtype=np.int64)
    while frontier.size and not seen[dst]:
        targets = succ[frontier].ravel()
        origins = np.repeat(frontier, n_words)
        words = np.tile(np.arange(n_words), frontier.size)
        fresh = ~seen[targets]
        targets, origins, words = targets[fresh], origins[fresh], words[fresh]
        frontier, first = np.unique(targets, return_index=True)
        parent[frontier] = origins[first]
        via[frontier] = words[first]
        seen[frontier] = True
    if not seen[dst]:
        return None
    seq = []
    s = dst
    while s != src:
        seq.append(sg.control_vector(int(via[s])))
        s = int(parent[s])
    seq.reverse()
    return seq


# -- dominating sets ----------------------------------------------------------


@dataclass(frozen=True)
class DominatingSetResult:
    dominating_set: tuple[int, ...]
    decision: Optional[bool] = None

    @property
    def gamma(self) -> int:
        return len(self.dominating_set)


def is_dominating(g: UndirectedGraph, subset) -> bool:
    chosen = set(subset)
    adj = g.adjacency()
    return all(v in chosen or adj[v] & chosen for v in g.vertices)


def min_dominating_set(
    g: UndirectedGraph, k: Optional[int] = None, max_vertices: int = DEFAULT_MAX_VERTICES
) -> DominatingSetResult:
    """Exact minimum dominating set by enumeration in increasing cardinality.

    Isolated vertices belong to every dominating set and are included up
    front.  Within a cardinality, candidate sets are tried in lexicographic
    order, so the lexicographically smallest minimum set is returned.

    Raises:
        TooLargeError: if the graph has more than ``max_vertices`` vertices.
    """
    if g.n_vertices > max_vertices:
        raise TooLargeError(f"{g.n_vertices} vertices, exact search limit is {max_vertices}")
    adj = g.adjacency()
    closed = {v: (1 << (v - 1)) | sum(1 << (u - 1) for u in adj[v]) for v in g.vertices}
    everything = (1 << g.n_vertices) - 1
    forced = [v for v in g.vertices if not adj[v]]
    covered = 0
    for v in forced:
        covered |= closed[v]
    candidates = [v for v in g.vertices if adj[v]]
    for size in range(len(candidates) + 1):
        for combo in itertools.combinations(candidates, size):
            mask = covered
            for v in combo:
                mask |= closed[v]
            if mask == everything:
                best = tuple(sorted(forced + list(combo)))
                decision = None if k is None else len(best) <= k
                return DominatingSetResult(best, decision)
    raise AssertionError("the full vertex set always dominates")
