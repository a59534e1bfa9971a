import json
from dataclasses import replace

import pytest

from anmdesign import io
from anmdesign.errors import SchemaError, ValidationError
from anmdesign.game import BnpgInstance
from anmdesign.generators import gen_random
from anmdesign.lp import solve_fractional
from anmdesign.problem import Mode, Solution, Status

from instances import three_clique_asym, two_clique_lp

ONE_AGENT = {
    "n": 1,
    "strategic_edges": [],
    "benefits": [{"type": "usl", "h0": 0, "h1": 1, "b": 0}],
    "costs": [0.5],
    "altruism": {"type": "matrix", "entries": []},
    "target": [1],
    "actions": [],
    "mode": "binary",
}


def doc(**changes):
    return json.dumps({**ONE_AGENT, **changes})


def test_minimal_instance_parses():
    p = io.parse_problem(doc())
    assert p.n == 1 and p.actions == () and p.mode is Mode.BINARY
    assert p.budget is None


def test_asymmetric_strategic_adjacency_names_pair():
    text = doc(
        n=3,
        strategic_edges=[[0, 1], [1, 0], [1, 2]],
        benefits=[{"type": "usl", "h0": 0, "h1": 1, "b": 0}] * 3,
        costs=[1, 1, 1],
        target=[1, 1, 1],
    )
    with pytest.raises(ValidationError, match=r"pair \(1, 2\)"):
        io.parse_problem(text)


def test_decreasing_row_rejected():
    text = doc(
        n=2,
        strategic_edges=[[0, 1]],
        benefits=[{"type": "table", "rows": [[2, 1], [3, 3]]}] * 2,
        costs=[1, 1],
        target=[1, 1],
    )
    with pytest.raises(ValidationError, match=r"benefits\[0\].*decreases"):
        io.parse_problem(text)


@pytest.mark.parametrize(
    "text, where",
    [
        ("{not json", "JSON"),
        (json.dumps({k: v for k, v in ONE_AGENT.items() if k != "costs"}), "costs"),
        (doc(target=[2]), "target"),
        (doc(mode="integer"), "mode"),
        (doc(altruism={"type": "matrix", "entries": [[0, 1]]}), "altruism"),
    ],
)
def test_schema_errors_name_field(text, where):
    with pytest.raises(SchemaError, match=where):
        io.parse_problem(text)


def test_negative_matrix_weight_rejected():
    text = doc(n=2, strategic_edges=[[0, 1]], benefits=[ONE_AGENT["benefits"][0]] * 2,
               costs=[1, 1], target=[1, 1], altruism={"type": "matrix", "entries": [[0, 1, -1]]})
    with pytest.raises(ValidationError, match=r"\(0, 1\)"):
        io.parse_problem(text)


def test_graph_mode_sign_must_match_presence():
    text = doc(
        n=2,
        strategic_edges=[[0, 1]],
        benefits=[ONE_AGENT["benefits"][0]] * 2,
        costs=[1, 1],
        target=[1, 1],
        altruism={"type": "graph", "directed": True, "a": 1, "edges": [[0, 1]]},
        actions=[{"edges": [[0, 1]], "sign": 1, "cost": 1}],
    )
    with pytest.raises(ValidationError, match=r"actions\[0\]"):
        io.parse_problem(text)


def test_infeasible_solution_has_no_spend():
    assert io.emit_solution(Solution.infeasible([3])) == '{\n  "status": "infeasible"\n}\n'


def test_zero_cost_solution():
    p = three_clique_asym()
    inst = BnpgInstance(p.inst.graph, p.inst.benefits, (0.0, 0.0, 0.0))
    p = replace(p, inst=inst, mode=Mode.FRACTIONAL)
    data = json.loads(io.emit_solution(solve_fractional(p)))
    assert data["total_cost"] == 0 and data["spend"] == [0] * 6


def test_solution_round_trip():
    sol = solve_fractional(two_clique_lp())
    back = io.parse_solution(io.emit_solution(sol), 2)
    assert back == sol
    assert back.status is Status.OPTIMAL


@pytest.mark.parametrize("mode", ["matrix", "directed", "undirected"])
def test_problem_round_trip_and_determinism(mode):
    for seed in range(10):
        p = gen_random(6, 0.5, "general", mode, seed, mode=Mode.FRACTIONAL)
        text = io.emit_problem(p)
        assert io.parse_problem(text) == p
        assert io.emit_problem(io.parse_problem(text)) == text
        assert io.emit_problem(gen_random(6, 0.5, "general", mode, seed, mode=Mode.FRACTIONAL)) == text


def test_budget_round_trip_and_bytes_input():
    p = io.parse_problem(doc(budget=2.5).encode())
    assert p.budget == 2.5
    assert json.loads(io.emit_problem(p))["budget"] == 2.5


def test_fmt():
    assert io.fmt(0.1 + 0.2) == 0.3
    assert str(io.fmt(-0.0)) == "0.0"
