import itertools

import pytest

from anmdesign import io
from anmdesign.errors import PreconditionError
from anmdesign.game import classify_benefits, derive_targets, is_psne_ineq
from anmdesign.generators import (
    gen_3partition_reduction,
    gen_feasibility_reduction,
    gen_knapsack_reduction,
    gen_random,
)
from anmdesign.oracles import brute_anm_binary, milp_anm_binary
from anmdesign.problem import Mode

# frozen from exhaustive triple search; sums divisible by m so "no" is not trivial
YES_3P = [[5, 6, 7], [5, 6, 7, 5, 6, 7], [5, 5, 6, 6, 7, 7, 5, 8, 5]]
NO_3P = [[4, 4, 4, 4, 4, 6], [6, 6, 6, 6, 6, 8], [5, 5, 5, 5, 7, 7, 7, 8, 8]]


def test_knapsack_reduction_structure():
    p = gen_knapsack_reduction([2, 3], [1, 2], 3, 2)
    der = derive_targets(p.inst, p.target)
    assert der.theta == (3, 0, 0)
    assert der.delta_minus[1:] == (2, 3)
    assert [a.edges for a in p.actions] == [((0, 1),), ((0, 2),)]
    assert p.budget == 2 and p.alt_in.directed


def test_knapsack_reduction_examples():
    res = brute_anm_binary(gen_knapsack_reduction([2, 3], [1, 2], 3, 2))
    assert res.cost == 2
    assert brute_anm_binary(gen_knapsack_reduction([2, 3], [1, 2], 0, 0)).cost == 0
    assert brute_anm_binary(gen_knapsack_reduction([2, 3], [1, 2], 6, 100)) is None


def test_knapsack_reduction_rejects_negative():
    with pytest.raises(PreconditionError):
        gen_knapsack_reduction([1], [-1], 1, 1)


def test_3partition_structure():
    p = gen_3partition_reduction([5, 6, 7])
    der = derive_targets(p.inst, p.target)
    eps = 1 / 8
    assert der.theta == pytest.approx((18 + eps - 5, 18 + eps - 6, 18 + eps - 7, 18))
    assert der.delta_minus == pytest.approx((5, 6, 7, eps))
    assert p.alt_in.edges == frozenset({(0, 1), (0, 2), (1, 2)})
    assert {a.cost for a in p.actions} == {1.0} and p.budget == 3


def test_3partition_bounds_are_strict():
    # s = 12: 3 and 6 sit on the window's edges, allowed only by the weak bounds
    with pytest.raises(PreconditionError):
        gen_3partition_reduction([3, 3, 6])
    gen_feasibility_reduction([3, 3, 6])
    with pytest.raises(PreconditionError):
        gen_3partition_reduction([1, 2])


def test_3partition_single_triple_costs_three():
    assert brute_anm_binary(gen_3partition_reduction([5, 6, 7])).cost == 3


@pytest.mark.parametrize("numbers", YES_3P)
def test_3partition_yes(numbers):
    m = len(numbers) // 3
    assert milp_anm_binary(gen_3partition_reduction(numbers)).cost <= 3 * m


@pytest.mark.parametrize("numbers", NO_3P)
def test_3partition_no(numbers):
    m = len(numbers) // 3
    res = milp_anm_binary(gen_3partition_reduction(numbers))
    assert res is None or res.cost > 3 * m


def test_feasibility_reduction():
    p = gen_feasibility_reduction([1, 1, 1])
    assert p.target == (0, 0, 0, 1)
    assert all(a.cost == 0 for a in p.actions)
    assert brute_anm_binary(p) is not None
    assert milp_anm_binary(gen_feasibility_reduction([4, 4, 4, 4, 4, 4])) is not None
    assert milp_anm_binary(gen_feasibility_reduction([3, 3, 3, 5, 5, 5])) is None
    with pytest.raises(PreconditionError):
        gen_feasibility_reduction([1, 1, 5])


def test_random_is_deterministic():
    for mode in ("matrix", "directed", "undirected"):
        a = io.emit_problem(gen_random(7, 0.4, "general", mode, 11))
        assert a == io.emit_problem(gen_random(7, 0.4, "general", mode, 11))
        assert a != io.emit_problem(gen_random(7, 0.4, "general", mode, 12))


def test_random_density_zero():
    for seed in range(20):
        p = gen_random(5, 0.0, "general", "directed", seed)
        assert p.inst.graph.edges() == [] and p.actions == ()
        theta = derive_targets(p.inst, p.target).theta
        expected = all(t <= 0 if x else t >= 0 for x, t in zip(p.target, theta))
        assert is_psne_ineq(p.inst, p.alt_in, p.target) == expected


def test_random_usl_class():
    for seed in range(10):
        p = gen_random(6, 0.5, "usl", "undirected", seed)
        assert classify_benefits(p.inst).kind == "usl"


def test_random_menus_cover_h():
    p = gen_random(6, 0.5, "general", "undirected", 4)
    assert sorted(a.edges[0] for a in p.actions) == p.inst.graph.edges()
    p = gen_random(6, 0.5, "general", "directed", 4)
    ordered = [(i, j) for i, j in itertools.permutations(range(6), 2) if p.inst.graph.has_edge(i, j)]
    assert sorted(a.edges[0] for a in p.actions) == ordered


def test_generated_instances_parse():
    for seed in range(20):
        for cls in ("general", "polynomial", "usl"):
            for mode in ("matrix", "directed", "undirected"):
                p = gen_random(5, 0.5, cls, mode, seed, mode=Mode.FRACTIONAL)
                assert io.parse_problem(io.emit_problem(p)) == p


def test_random_argument_checks():
    with pytest.raises(ValueError):
        gen_random(0, 0.5)
    with pytest.raises(ValueError):
        gen_random(3, 1.5)
    with pytest.raises(ValueError):
        gen_random(3, 0.5, "cubic")
