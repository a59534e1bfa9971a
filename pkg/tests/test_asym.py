import pytest

from anmdesign.asym import decompose, solve_asym
from anmdesign.errors import ModeError
from anmdesign.game import BnpgInstance, StrategicGraph, UniformAltruism, UslBenefit, is_psne_ineq
from anmdesign.generators import gen_knapsack_reduction
from anmdesign.knapsack import Item
from anmdesign.oracles import brute_anm_binary
from anmdesign.problem import Action, AnmProblem, Mode, Status

from instances import clique, random_family, three_clique_asym


def test_all_resolved_costs_nothing():
    inst = BnpgInstance(clique(3), (UslBenefit(0, 2, 1),) * 3, (1, 1, 2))
    alt = UniformAltruism(3, (), 1.0, directed=True)
    p = AnmProblem(inst, alt, (1, 1, 1), (Action(((0, 1),), 1, 5.0),))
    assert all(s.resolved for s in decompose(p))
    for strategy in ("weight", "value", "fptas"):
        assert solve_asym(p, strategy).total_cost == 0


def test_three_clique_subproblem():
    sub = decompose(three_clique_asym())[0]
    assert sub.direction == "add" and sub.phi == 0
    assert sub.knapsack.demand == pytest.approx(1.4)
    assert sub.knapsack.items == (Item((0, 1), 1.0, 1.0), Item((0, 2), 1.0, 1.0))


@pytest.mark.parametrize("strategy", ["weight", "value", "fptas"])
def test_three_clique_cost(strategy):
    sol = solve_asym(three_clique_asym(), strategy)
    assert sol.total_cost == 2
    assert sol.spend == (1, 1, 0, 0, 0, 0)
    assert brute_anm_binary(three_clique_asym()).cost == 2


def test_fptas_status_carries_ratio():
    sol = solve_asym(three_clique_asym(), "fptas", eps=0.25)
    assert sol.status is Status.APPROXIMATE and sol.ratio_bound == 1.25


def test_non_investor_removal_demand():
    inst = BnpgInstance(clique(3), (UslBenefit(0, 0, 1),) * 3, (0.5, 0.0, 0.0))
    alt = UniformAltruism(3, [(0, 1), (0, 2)], 1.0, directed=True)
    acts = (Action(((0, 1),), -1, 2.0), Action(((0, 2),), -1, 3.0))
    p = AnmProblem(inst, alt, (0, 1, 1), acts)
    sub = decompose(p)[0]
    assert sub.direction == "remove" and sub.phi == 2
    assert sub.knapsack.demand == pytest.approx(1.5)
    sol = solve_asym(p)
    assert sol.spend == (1, 1) and sol.total_cost == 5
    assert sol.alt_out.edges == frozenset()


def test_infeasible_agent_reported():
    inst = BnpgInstance(clique(2), (UslBenefit(0, 0, 1),) * 2, (3.0, 0.0))
    alt = UniformAltruism(2, (), 1.0, directed=True)
    p = AnmProblem(inst, alt, (1, 1), (Action(((0, 1),), 1, 1.0),))
    sol = solve_asym(p)
    assert not sol.feasible and sol.certificate == (0,)
    assert brute_anm_binary(p) is None


def test_mode_errors():
    p = three_clique_asym()
    with pytest.raises(ModeError):
        decompose(p.with_mode(Mode.FRACTIONAL))
    und = AnmProblem(p.inst, UniformAltruism(3, (), 1.0, directed=False), p.target, ())
    with pytest.raises(ModeError):
        solve_asym(und)


def test_decimal_costs_scale():
    base = three_clique_asym()
    acts = tuple(Action(a.edges, 1, c) for a, c in zip(base.actions, (0.35, 1.25, 2, 2, 2, 2)))
    p = AnmProblem(base.inst, base.alt_in, base.target, acts)
    assert solve_asym(p, "weight").total_cost == pytest.approx(1.6)


def test_knapsack_reduction_cost():
    p = gen_knapsack_reduction([2, 3], [1, 2], 3, 2)
    sol = solve_asym(p)
    assert sol.total_cost == 2 and sol.within_budget


def test_agent_permutation_keeps_subproblem_weights():
    for p in random_family(15, n=5, density=0.6, benefit="general", alt_mode="directed"):
        perm = [4, 2, 0, 3, 1]
        inv = {old: new for new, old in enumerate(perm)}
        graph = StrategicGraph.from_edges(5, [(inv[i], inv[j]) for i, j in p.inst.graph.edges()])
        # table columns follow the degree, which permutation preserves
        inst = BnpgInstance(graph, tuple(p.inst.benefits[k] for k in perm), tuple(p.inst.costs[k] for k in perm))
        alt = UniformAltruism(5, [(inv[i], inv[j]) for i, j in p.alt_in.edges], 1.0, directed=True)
        acts = tuple(Action(((inv[a.edges[0][0]], inv[a.edges[0][1]]),), a.sign, a.cost) for a in p.actions)
        q = AnmProblem(inst, alt, tuple(p.target[k] for k in perm), acts)
        s1, s2 = solve_asym(p), solve_asym(q)
        assert s1.feasible == s2.feasible
        if s1.feasible:
            assert s1.total_cost == pytest.approx(s2.total_cost)


def test_exact_strategies_match_oracle():
    fam = random_family(60, n=5, density=0.6, benefit="polynomial", alt_mode="directed", seed0=1000)
    for p in fam:
        ref = brute_anm_binary(p)
        for strategy in ("weight", "value"):
            sol = solve_asym(p, strategy)
            assert sol.feasible == (ref is not None)
            if ref is not None:
                assert sol.total_cost == ref.cost
                assert is_psne_ineq(p.inst, sol.alt_out, p.target)
