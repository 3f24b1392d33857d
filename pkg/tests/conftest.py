import itertools

import pytest

from cbn_control.model import CBCN, CBN, parse_cbn, parse_edge_list


def nonempty_subsets(n):
    idx = range(1, n + 1)
    return [frozenset(c) for r in range(1, n + 1) for c in itertools.combinations(idx, r)]


def all_cbns(n):
    """Every CBN on n variables (no constant updates)."""
    for sets in itertools.product(nonempty_subsets(n), repeat=n):
        yield CBN(sets)


def all_cbcns(n):
    """Every (CBN, control subset) pair on n variables."""
    subsets = [frozenset(c) for r in range(n + 1) for c in itertools.combinations(range(1, n + 1), r)]
    for cbn in all_cbns(n):
        for controls in subsets:
            yield CBCN.from_cbn(cbn, controls)


def all_states(n):
    return list(itertools.product((0, 1), repeat=n))


@pytest.fixture
def eq5():
    return parse_cbn("X1 = ?\nX2 = ?\nX3 = X1 & X2\n")


@pytest.fixture
def example1():
    return parse_cbn("X1 = X2\nX2 = X1 & X2\n")


@pytest.fixture
def example1_controlled():
    return parse_cbn("X1 = X2\nX2 = ?\n")


@pytest.fixture
def fig1_graph():
    return parse_edge_list("p 4 3\n1 3\n2 3\n3 4\n")


PETERSEN_EDGES = [
    (1, 2), (2, 3), (3, 4), (4, 5), (1, 5),
    (1, 6), (2, 7), (3, 8), (4, 9), (5, 10),
    (6, 8), (8, 10), (7, 10), (7, 9), (6, 9),
]


@pytest.fixture
def petersen():
    text = "p 10 15\n" + "\n".join(f"{u} {v}" for u, v in PETERSEN_EDGES)
    return parse_edge_list(text)
