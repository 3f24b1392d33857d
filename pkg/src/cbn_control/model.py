"""Conjunctive Boolean networks, their control versions and dependency graphs.

Variables are numbered 1..n throughout.  In a dependency graph the simple
node of ``X_i`` has id ``i`` and the generator (control input) attached to a
controlled ``X_i`` has id ``n + i``.

States are tuples of 0/1 of length n, ``state[i - 1]`` being the value of
``X_i``.  When a state is packed into an integer, bit ``i - 1`` holds ``X_i``
(little-endian).
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import ConstantUpdateError, ParseError

__all__ = [
    "CBN",
    "CBCN",
    "DependencyGraph",
    "NodeClass",
    "UndirectedGraph",
    "as_cbcn",
    "bits_to_str",
    "build_dependency_graph",
    "classify_node",
    "complement_state",
    "dbn_to_cbn",
    "format_cbn",
    "format_edge_list",
    "int_to_state",
    "parse_bits",
    "parse_cbn",
    "parse_edge_list",
    "state_to_int",
    "to_dot",
]

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_XNAME_RE = re.compile(r"X([1-9][0-9]*)\Z")
_CONSTANTS = {"0", "1", "true", "false", "True", "False", "TRUE", "FALSE"}


def default_names(n):
    return tuple(f"X{i}" for i in range(1, n + 1))


def _check_sets(update_sets, n, allow_empty=()):
    for i, inputs in enumerate(update_sets, start=1):
        if not inputs and i not in allow_empty:
            raise ConstantUpdateError(
                f"X{i} has a constant update function; control it instead"
            )
        for j in inputs:
            if not 1 <= j <= n:
                raise ValueError(f"input index {j} of X{i} outside 1..{n}")


@dataclass(frozen=True)
class CBN:
    """Conjunctive Boolean network ``X_i(k+1) = AND_{j in update_sets[i-1]} X_j(k)``.

    Args:
        update_sets: for every variable, the (non-empty) set of variable
            indices that appear in its update function.
        names: optional display names, one per variable.
    """

    update_sets: tuple[frozenset[int], ...]
    names: tuple[str, ...] = ()

    def __post_init__(self):
        sets = tuple(frozenset(s) for s in self.update_sets)
        object.__setattr__(self, "update_sets", sets)
        names = tuple(self.names) if self.names else default_names(len(sets))
        if len(names) != len(sets):
            raise ValueError("one name per variable required")
        object.__setattr__(self, "names", names)
        _check_sets(sets, len(sets))

    @property
    def n(self) -> int:
        return len(self.update_sets)

    def inputs(self, i: int) -> frozenset[int]:
        return self.update_sets[i - 1]

    def self_loops(self) -> list[int]:
        return [i for i in range(1, self.n + 1) if i in self.update_sets[i - 1]]


@dataclass(frozen=True)
class CBCN:
    """A CBN in which the variables in ``controlled`` follow free inputs.

    For a controlled variable the base update is ignored; it may be empty
    (as when parsed from a ``X<i> = ?`` line).
    """

    update_sets: tuple[frozenset[int], ...]
    controlled: frozenset[int] = field(default_factory=frozenset)
    names: tuple[str, ...] = ()

    def __post_init__(self):
        sets = tuple(frozenset(s) for s in self.update_sets)
        object.__setattr__(self, "update_sets", sets)
        controlled = frozenset(self.controlled)
        object.__setattr__(self, "controlled", controlled)
        names = tuple(self.names) if self.names else default_names(len(sets))
        if len(names) != len(sets):
            raise ValueError("one name per variable required")
        object.__setattr__(self, "names", names)
        for i in controlled:
            if not 1 <= i <= len(sets):
                raise ValueError(f"controlled index {i} outside 1..{len(sets)}")
        _check_sets(sets, len(sets), allow_empty=controlled)

    @classmethod
    def from_cbn(cls, cbn: CBN, controlled: Iterable[int] = ()) -> CBCN:
        return cls(cbn.update_sets, frozenset(controlled), cbn.names)

    @property
    def n(self) -> int:
        return len(self.update_sets)

    @property
    def controls(self) -> tuple[int, ...]:
        """Controlled indices in ascending order (the column order of controls)."""
        return tuple(sorted(self.controlled))

    def inputs(self, i: int) -> frozenset[int]:
        return self.update_sets[i - 1]

    @property
    def base(self) -> CBN:
        """The uncontrolled network; fails if a controlled variable has no base update."""
        return CBN(self.update_sets, self.names)


def as_cbcn(net: CBN | CBCN) -> CBCN:
    if isinstance(net, CBCN):
        return net
    return CBCN.from_cbn(net)


class NodeClass(enum.Flag):
    """Node classes of a dependency graph.

    ``DIRECTLY_CONTROLLED`` and ``CHANNEL`` can be combined on the same
    simple node; ``PLAIN_SIMPLE`` marks a simple node that is neither.
    """

    GENERATOR = enum.auto()
    DIRECTLY_CONTROLLED = enum.auto()
    CHANNEL = enum.auto()
    PLAIN_SIMPLE = enum.auto()


def _generator_name(name):
    m = _XNAME_RE.match(name)
    return f"U{m.group(1)}" if m else f"U_{name}"


@dataclass(frozen=True, eq=False)
class DependencyGraph:
    """Dependency graph of a CBCN.

    ``in_nbrs`` and ``out_nbrs`` map every node id to a sorted tuple of
    neighbor ids.
    """

    n: int
    controls: tuple[int, ...]
    in_nbrs: dict[int, tuple[int, ...]]
    out_nbrs: dict[int, tuple[int, ...]]
    names: tuple[str, ...]

    @property
    def simple_nodes(self) -> range:
        return range(1, self.n + 1)

    @property
    def generators(self) -> tuple[int, ...]:
        return tuple(self.n + i for i in self.controls)

    @property
    def nodes(self) -> list[int]:
        return list(self.simple_nodes) + list(self.generators)

    def __contains__(self, v) -> bool:
        return v in self.in_nbrs

    def __len__(self) -> int:
        return len(self.in_nbrs)

    def is_generator(self, v: int) -> bool:
        return v > self.n

    def generator_of(self, i: int) -> int:
        return self.n + i

    def arcs(self) -> Iterator[tuple[int, int]]:
        for v in sorted(self.out_nbrs):
            for w in self.out_nbrs[v]:
                yield v, w

    def arc_count(self) -> int:
        return sum(len(w) for w in self.out_nbrs.values())

    def is_channel(self, v: int) -> bool:
        out = self.out_nbrs[v]
        return v <= self.n and len(out) == 1 and out[0] != v

    def label(self, v: int) -> str:
        if v > self.n:
            return _generator_name(self.names[v - self.n - 1])
        return self.names[v - 1]


def build_dependency_graph(net: CBN | CBCN) -> DependencyGraph:
    """Arc ``j -> i`` whenever X_j feeds X_i; a controlled node keeps only its generator arc."""
    net = as_cbcn(net)
    n = net.n
    controlled = net.controlled
    out: dict[int, list[int]] = {v: [] for v in range(1, n + 1)}
    ins: dict[int, tuple[int, ...]] = {}
    for i in net.controls:
        out[n + i] = [i]
        ins[n + i] = ()
    for i in range(1, n + 1):
        if i in controlled:
            ins[i] = (n + i,)
        else:
            src = tuple(sorted(net.update_sets[i - 1]))
            ins[i] = src
            for j in src:
                out[j].append(i)
    return DependencyGraph(
        n=n,
        controls=net.controls,
        in_nbrs=ins,
        out_nbrs={v: tuple(w) for v, w in out.items()},
        names=net.names,
    )


def classify_node(g: DependencyGraph, v: int) -> NodeClass:
    if v not in g:
        raise KeyError(f"unknown node id {v}")
    if g.is_generator(v):
        return NodeClass.GENERATOR
    cls = NodeClass(0)
    if g.in_nbrs[v] and g.is_generator(g.in_nbrs[v][0]):
        cls |= NodeClass.DIRECTLY_CONTROLLED
    if g.is_channel(v):
        cls |= NodeClass.CHANNEL
    return cls or NodeClass.PLAIN_SIMPLE


def to_dot(g: DependencyGraph, name: str = "dependency") -> str:
    """DOT text of the graph; generators are drawn as boxes."""
    lines = [f"digraph {name} {{"]
    for v in g.simple_nodes:
        lines.append(f'  "{g.label(v)}";')
    for v in g.generators:
        lines.append(f'  "{g.label(v)}" [shape=box];')
    for v, w in g.arcs():
        lines.append(f'  "{g.label(v)}" -> "{g.label(w)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- text format ------------------------------------------------------------


def _parse_definitions(text, op):
    """Return ``[(lhs, terms | None, lineno)]``; ``None`` marks a controlled variable."""
    foreign = {"&": "|", "|": "&"}[op]
    defs = []
    seen = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.count("=") != 1:
            raise ParseError("expected '<variable> = <expression>'", lineno)
        lhs, rhs = (part.strip() for part in line.split("="))
        if not _NAME_RE.match(lhs):
            raise ParseError(f"bad variable name {lhs!r}", lineno)
        if lhs in seen:
            raise ParseError(
                f"duplicate definition of {lhs} (first on line {seen[lhs]})", lineno
            )
        seen[lhs] = lineno
        if rhs == "?":
            if op != "&":
                raise ParseError("control marker '?' is not allowed here", lineno)
            defs.append((lhs, None, lineno))
            continue
        if not rhs:
            raise ConstantUpdateError(
                f"{lhs} has an empty update function; update functions must not be constant",
                lineno,
            )
        if foreign in rhs:
            raise ParseError(f"mixed operators: only {op!r} may appear", lineno)
        terms = [t.strip() for t in rhs.split(op)]
        for t in terms:
            if t in _CONSTANTS:
                raise ConstantUpdateError(
                    f"{lhs} uses the literal constant {t}; update functions must not be constant",
                    lineno,
                )
            if not _NAME_RE.match(t):
                raise ParseError(f"bad term {t!r} in update of {lhs}", lineno)
        defs.append((lhs, terms, lineno))
    if not defs:
        raise ParseError("no variables defined")
    return defs


def _resolve(defs):
    """Map names to indices and build update sets; returns (sets, controlled, names)."""
    xmode = all(_XNAME_RE.match(lhs) for lhs, _, _ in defs)
    if xmode:
        index = {lhs: int(_XNAME_RE.match(lhs).group(1)) for lhs, _, _ in defs}
        n = max(index.values())
        missing = sorted(set(range(1, n + 1)) - set(index.values()))
        if missing:
            raise ParseError(f"X{missing[0]} has no definition")
        names = default_names(n)
    else:
        index = {lhs: k for k, (lhs, _, _) in enumerate(defs, start=1)}
        n = len(defs)
        names = tuple(lhs for lhs, _, _ in defs)
    sets: list[frozenset[int]] = [frozenset()] * n
    controlled = set()
    for lhs, terms, lineno in defs:
        i = index[lhs]
        if terms is None:
            controlled.add(i)
            continue
        inputs = set()
        for t in terms:
            if t in index:
                inputs.add(index[t])
            elif xmode and _XNAME_RE.match(t):
                raise ParseError(f"index of {t} out of range 1..{n}", lineno)
            else:
                raise ParseError(f"undefined variable {t}", lineno)
        sets[i - 1] = frozenset(inputs)
    return tuple(sets), frozenset(controlled), names


def parse_cbn(text: str) -> CBN | CBCN:
    """Parse the line-oriented network format.

    Each line is ``X<i> = X<j> & X<k> ...`` or ``X<i> = ?`` for a controlled
    variable; ``#`` starts a comment.  Variables named ``X<i>`` are indexed
    by their number; any other identifiers are indexed in order of
    definition.  Returns a :class:`CBN` when no variable is controlled and a
    :class:`CBCN` otherwise.
    """
    sets, controlled, names = _resolve(_parse_definitions(text, "&"))
    if controlled:
        return CBCN(sets, controlled, names)
    return CBN(sets, names)


def dbn_to_cbn(text: str) -> CBN:
    """Read a disjunctive network (pure OR updates) as the CBN with the same wiring.

    By De Morgan, ``not X_i(k+1) = AND_j not X_j(k)``, so the OR-network
    started in ``s`` follows the complement of the returned CBN's trajectory
    started in ``complement_state(s)``.  Controllability verdicts carry over
    unchanged.
    """
    sets, _, names = _resolve(_parse_definitions(text, "|"))
    return CBN(sets, names)


def format_cbn(net: CBN | CBCN) -> str:
    net = as_cbcn(net)
    lines = []
    for i in range(1, net.n + 1):
        lhs = net.names[i - 1]
        if i in net.controlled:
            lines.append(f"{lhs} = ?")
        else:
            rhs = " & ".join(net.names[j - 1] for j in sorted(net.update_sets[i - 1]))
            lines.append(f"{lhs} = {rhs}")
    return "\n".join(lines) + "\n"


# -- states -----------------------------------------------------------------


def state_to_int(state: Sequence[int]) -> int:
    return sum(1 << k for k, bit in enumerate(state) if bit)


def int_to_state(code: int, n: int) -> tuple[int, ...]:
    return tuple((code >> k) & 1 for k in range(n))


def parse_bits(text: str, width: int | None = None) -> tuple[int, ...]:
    """``"011"`` -> ``(0, 1, 1)``; leftmost character is the first variable."""
    text = text.strip()
    if any(c not in "01" for c in text):
        raise ValueError(f"not a bit string: {text!r}")
    if width is not None and len(text) != width:
        raise ValueError(f"expected {width} bits, got {len(text)} in {text!r}")
    return tuple(int(c) for c in text)


def bits_to_str(bits: Iterable[int]) -> str:
    return "".join("1" if b else "0" for b in bits)


def complement_state(state: Sequence[int]) -> tuple[int, ...]:
    return tuple(1 - b for b in state)


# -- undirected graphs --------------------------------------------------------


@dataclass(frozen=True)
class UndirectedGraph:
    """Simple undirected graph on vertices 1..n_vertices; edges stored as ``(u, v)`` with ``u < v``."""

    n_vertices: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        normalized = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-edge on vertex {u}")
            if not (1 <= u <= self.n_vertices and 1 <= v <= self.n_vertices):
                raise ValueError(f"edge ({u}, {v}) outside 1..{self.n_vertices}")
            e = (min(u, v), max(u, v))
            if e in normalized:
                raise ValueError(f"duplicate edge {e}")
            normalized.add(e)
        object.__setattr__(self, "edges", tuple(sorted(normalized)))

    @property
    def vertices(self) -> range:
        return range(1, self.n_vertices + 1)

    def neighbors(self, v: int) -> set[int]:
        return {b if a == v else a for a, b in self.edges if v in (a, b)}

    def adjacency(self) -> dict[int, set[int]]:
        adj: dict[int, set[int]] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def isolated_vertices(self) -> list[int]:
        return [v for v, nb in self.adjacency().items() if not nb]

    @staticmethod
    def vertex_name(v: int) -> str:
        return f"v{v}"


def parse_edge_list(text: str) -> UndirectedGraph:
    """Parse ``p <|V|> <|E|>`` followed by ``u v`` edge lines (vertices 1..|V|)."""
    header = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 3 or parts[0] != "p":
                raise ParseError("first line must be 'p <|V|> <|E|>'", lineno)
            try:
                header = (int(parts[1]), int(parts[2]))
            except ValueError:
                raise ParseError("vertex and edge counts must be integers", lineno) from None
            continue
        if len(parts) != 2:
            raise ParseError("edge lines must be 'u v'", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError("vertex ids must be integers", lineno) from None
        edges.append((u, v, lineno))
    if header is None:
        raise ParseError("missing 'p <|V|> <|E|>' header")
    n_vertices, n_edges = header
    if len(edges) != n_edges:
        raise ParseError(f"header announces {n_edges} edges, found {len(edges)}")
    seen = set()
    for u, v, lineno in edges:
        if u == v:
            raise ParseError(f"self-edge on vertex {u}", lineno)
        if not (1 <= u <= n_vertices and 1 <= v <= n_vertices):
            raise ParseError(f"vertex outside 1..{n_vertices}", lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(f"duplicate edge {u} {v}", lineno)
        seen.add(key)
    return UndirectedGraph(n_vertices, tuple(seen))


def format_edge_list(g: UndirectedGraph) -> str:
    lines = [f"p {g.n_vertices} {len(g.edges)}"]
    lines += [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"
