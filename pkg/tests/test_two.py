from fractions import Fraction as F
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reclaim import bounds, two
from reclaim.generators import gen_random
from reclaim.model import Instance, validate_schedule

from conftest import zigzag, one_sided, full_pads

HALVES = Instance.build(12, 2, [(0, 4)], [(8, 12)])


def test_evaluate_pair_disjoint_halves():
    for p, qq, k in product((1, 2), (1, 2), (0, 1)):
        res = two.evaluate_pair(HALVES, two.PairChoice(1, 1, p, qq, k))
        assert res.makespan == 6
        assert validate_schedule(HALVES, res.schedule) == []


def test_evaluate_pair_all_to_left():
    inst = full_pads()
    best = min(two.evaluate_pair(inst, two.PairChoice(1, 2, p, qq, k)).makespan
               for p, qq, k in product((1, 2), (1, 2), (0, 1)))
    assert best == 20


def test_evaluate_pair_rejects_bad_pair():
    with pytest.raises(ValueError):
        two.evaluate_pair(HALVES, two.PairChoice(2, 1))
    with pytest.raises(ValueError):
        two.evaluate_pair(HALVES, two.PairChoice(1, 1, p=3))


def test_best_contiguous_unimodal_examples():
    res = two.best_contiguous_unimodal(zigzag())
    assert res.makespan == F(76, 5)
    assert validate_schedule(zigzag(), res.schedule) == []
    assert two.best_contiguous_unimodal(one_sided()).makespan == F(38, 9)
    assert two.best_contiguous_unimodal(Instance.build(7, 3)).makespan == 0


def test_two_approximation_examples():
    assert two.two_approximation(full_pads()).makespan == 20
    res = two.two_approximation(zigzag())
    assert res.makespan == F(112, 5) <= 2 * bounds.preemptive_bounds(zigzag()).k_star
    assert two.two_approximation(Instance.build(7, 3)).makespan == 0


def test_pair_bounds_match_simulation_without_clash():
    # disjoint halves: the reclaimers never meet, so the schedule time is max(F, G)
    choice = two.PairChoice(1, 1)
    f, g = two.pair_bounds(HALVES, choice)[:2]
    assert max(f, g) == two.evaluate_pair(HALVES, choice).makespan == 6


instances = st.builds(lambda seed, n, L, s: gen_random(seed, n, L, s),
                      st.integers(0, 10 ** 6), st.integers(0, 8), st.integers(4, 20),
                      st.sampled_from([1, 2, 3, F(3, 2), 5]))


@settings(max_examples=120, deadline=None)
@given(instances)
def test_approximation_within_twice_bound(inst):
    res = two.two_approximation(inst)
    assert validate_schedule(inst, res.schedule) == []
    assert res.makespan <= 2 * bounds.preemptive_bounds(inst).k_star


@settings(max_examples=80, deadline=None)
@given(instances)
def test_unimodal_between_bound_and_approximation(inst):
    res = two.best_contiguous_unimodal(inst)
    assert validate_schedule(inst, res.schedule) == []
    assert bounds.preemptive_bounds(inst).k_star <= res.makespan <= two.two_approximation(inst).makespan
