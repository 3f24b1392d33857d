import itertools
import random

import pytest

from cbn_control.analysis import check_controllability
from cbn_control.errors import SearchBudgetExceeded, TooLargeError
from cbn_control.minctrl import decision_min_controls, greedy_control_set, minimal_control_set
from cbn_control.model import CBCN, CBN, parse_edge_list
from cbn_control.oracle import oracle_controllable
from cbn_control.reduction import build_reduction

from conftest import all_cbns


def brute_force_minimum(cbn, feasible):
    for size in range(cbn.n + 1):
        for subset in itertools.combinations(range(1, cbn.n + 1), size):
            if feasible(CBCN.from_cbn(cbn, subset)):
                return subset


def by_check(net):
    return check_controllability(net).controllable


def cycle(n):
    return CBN([{i % n + 1} for i in range(1, n + 1)])


def test_example1(example1):
    result = minimal_control_set(example1)
    assert result.control_set == (2,)
    assert result.exact
    assert result.verdict.controllable
    assert not by_check(CBCN.from_cbn(example1, ()))
    assert not by_check(CBCN.from_cbn(example1, (1,)))


def test_fig1_reduction():
    inst = build_reduction(parse_edge_list("p 4 3\n1 3\n2 3\n3 4"))
    result = minimal_control_set(inst.cbn)
    assert [inst.cbn.names[i - 1] for i in result.control_set] == ["E1_3", "E2_3", "E3_4", "V3"]
    assert decision_min_controls(inst.cbn, 4)
    assert not decision_min_controls(inst.cbn, 3)


def test_self_loop():
    assert minimal_control_set(CBN([{1}])).control_set == (1,)


def test_decision_example1(example1):
    assert decision_min_controls(example1, 1)
    assert not decision_min_controls(example1, 0)


def test_budget_exceeded_carries_upper_bound():
    net = cycle(6)
    net = CBN(list(net.update_sets[:3]) + [{1, 2, 3}, {4}, {4}])
    with pytest.raises(SearchBudgetExceeded) as info:
        minimal_control_set(net, max_tests=1)
    bound = info.value.upper_bound
    assert by_check(CBCN.from_cbn(net, bound))


def test_size_guard():
    with pytest.raises(TooLargeError):
        minimal_control_set(cycle(8), max_n=5)


@pytest.mark.parametrize("n", range(2, 7))
def test_cycles(n):
    assert minimal_control_set(cycle(n)).cardinality == 1
    assert greedy_control_set(cycle(n)).control_set == (1,)


def test_greedy_examples(example1):
    assert greedy_control_set(example1).control_set == (2,)
    inst = build_reduction(parse_edge_list("p 4 3\n1 3\n2 3\n3 4"))
    greedy = greedy_control_set(inst.cbn)
    assert greedy.cardinality == 4
    assert not greedy.exact


@pytest.mark.parametrize("n", [1, 2, 3])
def test_exact_against_oracle_brute_force(n):
    for cbn in all_cbns(n):
        best = brute_force_minimum(cbn, oracle_controllable)
        result = minimal_control_set(cbn)
        assert result.cardinality == len(best)
        assert result.control_set == best


def test_exact_n4_exhaustive():
    for cbn in all_cbns(4):
        result = minimal_control_set(cbn)
        assert result.verdict.controllable
        assert result.cardinality == len(brute_force_minimum(cbn, by_check))


def test_greedy_feasible_and_never_smaller():
    rng = random.Random(2)
    for _ in range(400):
        n = rng.randint(1, 7)
        cbn = CBN([frozenset(rng.sample(range(1, n + 1), rng.randint(1, min(n, 3)))) for _ in range(n)])
        greedy = greedy_control_set(cbn)
        exact = minimal_control_set(cbn)
        assert by_check(CBCN.from_cbn(cbn, greedy.control_set))
        assert greedy.cardinality >= exact.cardinality


def test_monotonicity_spot_check():
    rng = random.Random(4)
    for _ in range(300):
        n = rng.randint(1, 7)
        cbn = CBN([frozenset(rng.sample(range(1, n + 1), rng.randint(1, n))) for _ in range(n)])
        base = set(minimal_control_set(cbn).control_set)
        extra = base | {i for i in range(1, n + 1) if rng.random() < 0.5}
        assert by_check(CBCN.from_cbn(cbn, extra))


def test_record(example1):
    record = minimal_control_set(example1).to_record(example1.names, timing=False)
    assert record == {"indices": [2], "cardinality": 1, "exact": True, "tested_count": 1, "names": ["X2"]}
