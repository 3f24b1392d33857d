"""Simulation of CBCN dynamics and construction of steering control sequences.

A control vector holds one bit per controlled variable, in ascending index
order.  A control sequence is a list of control vectors for times 0..T-1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .analysis import DepthMap, decompose_controlled_paths, fill_depth
from .model import CBN, CBCN, as_cbcn, build_dependency_graph

__all__ = [
    "SynthesisPlan",
    "plan_synthesis",
    "simulate",
    "step",
    "synthesize",
]

State = tuple[int, ...]
ControlVector = tuple[int, ...]


def step(net: CBN | CBCN, x: Sequence[int], u: Sequence[int] = ()) -> State:
    """One synchronous update: controlled variables copy ``u``, the rest AND their inputs."""
    net = as_cbcn(net)
    controls = net.controls
    if len(x) != net.n:
        raise ValueError(f"state has {len(x)} bits, network has {net.n} variables")
    if len(u) != len(controls):
        raise ValueError(f"control vector has {len(u)} bits, expected {len(controls)}")
    column = {i: k for k, i in enumerate(controls)}
    nxt = []
    for i in range(1, net.n + 1):
        if i in column:
            nxt.append(1 if u[column[i]] else 0)
        else:
            nxt.append(1 if all(x[j - 1] for j in net.update_sets[i - 1]) else 0)
    return tuple(nxt)


def simulate(
    net: CBN | CBCN, x0: Sequence[int], seq: Sequence[Sequence[int]]
) -> list[State]:
    """Trajectory ``x(0), ..., x(T)`` under the control sequence ``seq``."""
    x = tuple(x0)
    if len(x) != as_cbcn(net).n:
        raise ValueError("initial state has wrong length")
    trajectory = [x]
    for u in seq:
        x = step(net, x, u)
        trajectory.append(x)
    return trajectory


@dataclass(frozen=True)
class SynthesisPlan:
    """Shift-register schedule for a controllable CBCN.

    Attributes:
        paths: controlled-path decomposition of the dependency graph.
        depths: fill depths; ``depths.tau`` is the length of the all-ones phase.
        horizon: ``tau + max(path_lengths)``.
        path_lengths: number of simple nodes on each path.
        targets: target bits of each path's simple nodes, generator side first.
    """

    paths: list[tuple[int, ...]]
    depths: DepthMap
    horizon: int
    path_lengths: tuple[int, ...]
    targets: tuple[tuple[int, ...], ...]


def plan_synthesis(net: CBN | CBCN, b: Sequence[int]) -> SynthesisPlan:
    net = as_cbcn(net)
    if len(b) != net.n:
        raise ValueError("target state has wrong length")
    g = build_dependency_graph(net)
    paths = decompose_controlled_paths(g)
    depths = fill_depth(g)
    lengths = tuple(len(p) - 1 for p in paths)
    horizon = depths.tau + max(lengths, default=0)
    targets = tuple(tuple(b[v - 1] for v in p[1:]) for p in paths)
    return SynthesisPlan(paths, depths, horizon, lengths, targets)


def synthesize(net: CBN | CBCN, a: Sequence[int], b: Sequence[int]) -> list[ControlVector]:
    """Control sequence steering any initial state to ``b``.

    Every generator first feeds ones, which after ``tau`` steps leaves all
    variables at one.  Each path then behaves as a shift register: the
    generator of a path with simple nodes ``x_1..x_L`` feeds ``b(x_r)`` at
    time ``T - r``.  Zeros only travel along paths because every node except
    the last of a path has a single out-neighbor, and the last nodes stay at
    one until time ``T``.  The result does not depend on ``a``.

    Raises:
        NotControllableError: if the network is not controllable.
    """
    net = as_cbcn(net)
    if len(a) != net.n:
        raise ValueError("initial state has wrong length")
    plan = plan_synthesis(net, b)
    T = plan.horizon
    column = {i: k for k, i in enumerate(net.controls)}
    seq = [[1] * len(column) for _ in range(T)]
    for path, bits in zip(plan.paths, plan.targets):
        col = column[path[0] - net.n]
        for r, bit in enumerate(bits, start=1):
            seq[T - r][col] = bit
    return [tuple(u) for u in seq]
