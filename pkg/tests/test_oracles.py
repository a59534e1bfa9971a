import itertools

import pytest

from anmdesign.errors import CapExceeded
from anmdesign.game import (
    BnpgInstance,
    StrategicGraph,
    UniformAltruism,
    UslBenefit,
    WeightedAltruism,
    is_psne_ineq,
)
from anmdesign.generators import gen_random
from anmdesign.knapsack import CoverKnapsack
from anmdesign.matching import MatchingGraph
from anmdesign.ndds import NddsInstance
from anmdesign.oracles import (
    OracleBudget,
    brute_anm_binary,
    brute_cover_knapsack,
    brute_mcpm,
    brute_ndds,
    brute_psne_enum,
    milp_anm_binary,
)
from anmdesign.problem import AnmProblem

from instances import random_family, three_clique_asym, two_clique


def test_no_actions():
    inst = two_clique()
    ok = UniformAltruism(2, [(0, 1)], 1.0, directed=False)
    assert brute_anm_binary(AnmProblem(inst, ok, (1, 1), ())).cost == 0
    empty = UniformAltruism(2, (), 1.0, directed=False)
    assert brute_anm_binary(AnmProblem(inst, empty, (1, 1), ())) is None


def test_three_clique_oracle():
    res = brute_anm_binary(three_clique_asym())
    assert res.cost == 2 and res.spend == (1, 1, 0, 0, 0, 0)


def test_isolated_agent_psne_set():
    for cost, expected in ((0.5, [(1,)]), (1.0, [(0,), (1,)]), (1.5, [(0,)])):
        inst = BnpgInstance(StrategicGraph(1, ((),)), (UslBenefit(0, 1, 0),), (cost,))
        assert brute_psne_enum(inst, WeightedAltruism(1, ())) == expected


def test_empty_h_psne_set_is_a_product():
    inst = BnpgInstance(StrategicGraph(3, ((), (), ())), (UslBenefit(0, 1, 0),) * 3, (0.5, 1.0, 2.0))
    alt = WeightedAltruism(3, [(0, 1, 3.0), (2, 0, 1.0)])
    options = [(1,), (0, 1), (0,)]
    assert brute_psne_enum(inst, alt) == list(itertools.product(*options))


def test_enumerated_profiles_pass_inequalities():
    for seed in range(20):
        p = gen_random(6, 0.5, "general", "undirected", seed)
        for prof in brute_psne_enum(p.inst, p.alt_in):
            assert is_psne_ineq(p.inst, p.alt_in, prof)


def test_small_oracles():
    assert brute_cover_knapsack(CoverKnapsack((), 0)).weight == 0
    nd = NddsInstance(3, frozenset({(0, 1)}), {}, ((1, 1), (1, 1), (0, 0)))
    assert brute_ndds(nd).cost == 0
    g = MatchingGraph(4, ((0, 1, 1.0), (1, 2, 2.0), (2, 3, 1.0), (3, 0, 2.0)))
    assert brute_mcpm(g).cost == 2


def test_caps_are_enforced():
    p = gen_random(8, 1.0, "general", "directed", 0)
    with pytest.raises(CapExceeded):
        brute_anm_binary(p)
    with pytest.raises(CapExceeded):
        brute_mcpm(MatchingGraph(14, ()))
    with pytest.raises(CapExceeded):
        brute_anm_binary(three_clique_asym(), OracleBudget(actions=5))


def test_env_caps_only_tighten(monkeypatch):
    monkeypatch.setenv("ANM_ORACLE_CAPS", "actions=5,agents=99")
    caps = OracleBudget.from_env()
    assert caps.actions == 5 and caps.agents == 20
    with pytest.raises(CapExceeded):
        brute_anm_binary(three_clique_asym())
    monkeypatch.setenv("ANM_ORACLE_CAPS", "bogus=1")
    with pytest.raises(ValueError):
        OracleBudget.from_env()


def test_milp_agrees_with_enumeration():
    for p in random_family(25, n=5, density=0.6, benefit="general", alt_mode="matrix", seed0=40):
        ref, got = brute_anm_binary(p), milp_anm_binary(p)
        assert (ref is None) == (got is None)
        if ref is not None:
            assert got.cost == pytest.approx(ref.cost)

