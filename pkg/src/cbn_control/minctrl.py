"""Minimum sets of variables to control so that a CBN becomes controllable.

Exact search enumerates candidate sets by increasing cardinality and tests
each with the polynomial controllability check.  Every variable with a self
loop is controlled up front: controlling a node is the only way to remove
its in-arcs, and a self loop is a cycle.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from typing import Optional

from .analysis import ControllabilityVerdict, check_controllability
from .errors import SearchBudgetExceeded, TooLargeError
from .model import CBN, CBCN, build_dependency_graph

__all__ = [
    "DEFAULT_MAX_N",
    "MinControlResult",
    "decision_min_controls",
    "greedy_control_set",
    "minimal_control_set",
]

DEFAULT_MAX_N = 30


@dataclass(frozen=True)
class MinControlResult:
    control_set: tuple[int, ...]
    verdict: ControllabilityVerdict
    exact: bool
    elapsed: float = 0.0
    tested_count: int = 0

    @property
    def cardinality(self) -> int:
        return len(self.control_set)

    def to_record(self, names=None, timing=True) -> dict:
        record = {
            "indices": list(self.control_set),
            "cardinality": self.cardinality,
            "exact": self.exact,
            "tested_count": self.tested_count,
        }
        if names is not None:
            record["names"] = [names[i - 1] for i in self.control_set]
        if timing:
            record["elapsed"] = self.elapsed
        return record


def _test(cbn, controls):
    return check_controllability(CBCN.from_cbn(cbn, controls))


def _search(cbn, limit, max_tests, max_n):
    """Exact search over sets of size <= limit; returns (result or None, tests run)."""
    start = time.perf_counter()
    mandatory = tuple(cbn.self_loops())
    optional = [i for i in range(1, cbn.n + 1) if i not in set(mandatory)]
    if len(optional) > max_n:
        raise TooLargeError(
            f"{len(optional)} variables without self loop, exact search limit is {max_n}"
        )
    tested = 0
    for extra in range(len(optional) + 1):
        if len(mandatory) + extra > limit:
            return None, tested
        for combo in itertools.combinations(optional, extra):
            if max_tests is not None and tested >= max_tests:
                best = greedy_control_set(cbn)
                raise SearchBudgetExceeded(
                    f"gave up after {tested} tests at cardinality {len(mandatory) + extra}; "
                    f"best known set has {best.cardinality}",
                    upper_bound=best.control_set,
                    tested_count=tested,
                )
            controls = tuple(sorted(mandatory + combo))
            tested += 1
            verdict = _test(cbn, controls)
            if verdict.controllable:
                elapsed = time.perf_counter() - start
                return MinControlResult(controls, verdict, True, elapsed, tested), tested
    raise AssertionError("controlling every variable is always feasible")


def minimal_control_set(
    cbn: CBN, max_tests: Optional[int] = None, max_n: int = DEFAULT_MAX_N
) -> MinControlResult:
    """Lexicographically smallest minimum-cardinality control set.

    Raises:
        TooLargeError: if more than ``max_n`` variables lack a self loop
            (self-loop variables are fixed and cost nothing to search).
        SearchBudgetExceeded: after ``max_tests`` controllability tests; the
            exception carries the greedy set as an upper bound.
    """
    result, _ = _search(cbn, cbn.n, max_tests, max_n)
    return result


def decision_min_controls(
    cbn: CBN, k: int, max_tests: Optional[int] = None, max_n: int = DEFAULT_MAX_N
) -> bool:
    """Is there a control set of size at most ``k``?  Only sizes up to ``k`` are searched."""
    result, _ = _search(cbn, k, max_tests, max_n)
    return result is not None


def _violations(g) -> int:
    """Nodes lying on some cycle plus simple nodes without a generator or channel in-neighbor."""
    on_cycle = set()
    for comp in _cyclic_components(g):
        on_cycle |= comp
    marked = set()
    for v, out in g.out_nbrs.items():
        if len(out) == 1 and out[0] != v:
            marked.add(out[0])
    return len(on_cycle) + sum(1 for v in g.simple_nodes if v not in marked)


def _cyclic_components(g):
    """Strongly connected components that contain a cycle (iterative Tarjan)."""
    index, low = {}, {}
    on_stack, stack, found = set(), [], []
    counter = 0
    for root in sorted(g.in_nbrs):
        if root in index:
            continue
        work = [(root, iter(g.out_nbrs[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(g.out_nbrs[w])))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.add(w)
                    if w == v:
                        break
                if len(comp) > 1 or v in g.out_nbrs[v]:
                    found.append(comp)
    return found


def greedy_control_set(cbn: CBN) -> MinControlResult:
    """Feasible, not necessarily minimum, control set.

    Starts from the self-loop variables and repeatedly adds the variable
    whose control leaves the fewest violations (cycle members plus property P
    failures), lowest index on ties, until the network is controllable.
    """
    start = time.perf_counter()
    chosen = set(cbn.self_loops())
    tested = 0
    while True:
        tested += 1
        verdict = _test(cbn, chosen)
        if verdict.controllable:
            break
        best, best_score = None, None
        for i in range(1, cbn.n + 1):
            if i in chosen:
                continue
            tested += 1
            score = _violations(build_dependency_graph(CBCN.from_cbn(cbn, chosen | {i})))
            if best_score is None or score < best_score:
                best, best_score = i, score
        chosen.add(best)
    elapsed = time.perf_counter() - start
    return MinControlResult(tuple(sorted(chosen)), verdict, False, elapsed, tested)
