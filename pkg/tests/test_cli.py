import io as stdio
import json
import subprocess
import sys
from dataclasses import replace

import pytest

from anmdesign import io
from anmdesign.cli import run
from anmdesign.generators import gen_random

from instances import three_clique_asym, two_clique_lp, two_clique_sym


def call(*argv):
    out = stdio.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture
def write(tmp_path):
    def _write(problem_or_text, name="p.json"):
        path = tmp_path / name
        text = problem_or_text if isinstance(problem_or_text, str) else io.emit_problem(problem_or_text)
        path.write_text(text)
        return str(path)

    return _write


def test_solve_frac_two_clique(write):
    code, out = call("solve-frac", "--input", write(two_clique_lp()))
    data = json.loads(out)
    assert code == 0
    assert data["spend"] == [0.5] and data["total_cost"] == 1.0 and data["status"] == "optimal"


def test_solve_frac_relaxes_binary_input(write):
    code, out = call("solve-frac", "--input", write(three_clique_asym()))
    assert code == 0 and json.loads(out)["total_cost"] == pytest.approx(1.4)
    code, _ = call("solve-frac", "--mode", "binary", "--input", write(three_clique_asym()))
    assert code == 4


def test_check_eq(write):
    code, out = call("check-eq", "--input", write(two_clique_sym()))
    verdict = json.loads(out)
    assert code == 1 and verdict["psne"] is False
    assert [v["agent"] for v in verdict["violations"]] == [0, 1]
    assert verdict["violations"][0]["slack"] == 0.5
    p = two_clique_sym()
    done = replace(p, alt_in=p.alt_in.toggled([(0, 1)]), actions=())
    code, out = call("check-eq", "--input", write(done))
    assert code == 0 and json.loads(out) == {"psne": True, "violations": []}


def test_fptas_against_oracle(write):
    path = write(three_clique_asym())
    code, out = call("solve-asym", "--strategy", "fptas", "--eps", "0.1", "--input", path)
    approx = json.loads(out)
    assert code == 0 and approx["status"] == "approximate" and approx["ratio_bound"] == 1.1
    code, out = call("oracle", "anm", "--input", path)
    exact = json.loads(out)
    assert code == 0 and approx["total_cost"] <= 1.1 * exact["total_cost"]


def test_sym_commands(write):
    path = write(two_clique_sym())
    code, out = call("solve-sym-usl", "--input", path)
    assert code == 0 and json.loads(out)["total_cost"] == 3
    code, out = call("solve-sym-approx", "--input", path)
    assert code == 0 and json.loads(out)["ratio_bound"] == 2.2


def test_oracle_psne(write):
    code, out = call("oracle", "psne", "--input", write(two_clique_sym()))
    assert code == 0 and json.loads(out) == {"profiles": [[0, 0]]}


def test_exit_codes(write, capsys):
    assert call("solve-asym", "--input", write("{oops"))[0] == 3
    assert call("solve-asym", "--input", write(two_clique_sym()))[0] == 4
    big = gen_random(8, 1.0, "general", "directed", 0)
    assert call("oracle", "anm", "--input", write(big))[0] == 4
    assert call("gen", "3partition", "--numbers", "1,1,5")[0] == 3
    assert "error" in capsys.readouterr().err


def test_infeasible_exit(write):
    p = two_clique_sym()
    code, out = call("solve-sym-usl", "--input", write(replace(p, actions=())))
    assert code == 2 and json.loads(out) == {"status": "infeasible"}


def test_tolerance_flag(write):
    p = two_clique_sym()
    assert call("check-eq", "--input", write(p))[0] == 1
    assert call("check-eq", "--tolerance", "0.6", "--input", write(p))[0] == 0


def test_gen_is_deterministic_and_parses():
    a = call("gen", "random", "--n", "7", "--seed", "5", "--altruism-mode", "undirected")[1]
    b = call("gen", "random", "--n", "7", "--seed", "5", "--altruism-mode", "undirected")[1]
    assert a == b and io.parse_problem(a).n == 7
    code, out = call("gen", "knapsack", "--values", "2,3", "--weights", "1,2", "--C", "3", "--W", "2")
    assert code == 0 and io.parse_problem(out).budget == 2
    assert io.parse_problem(call("gen", "feasibility", "--numbers", "1,1,1")[1]).n == 4


def test_output_is_byte_identical(write):
    path = write(gen_random(6, 0.5, "general", "matrix", 2))
    assert call("solve-frac", "--input", path) == call("solve-frac", "--input", path)


def test_bench_smoke():
    code, out = call("bench", "solvers", "--sizes", "6")
    rows = json.loads(out)["solvers"]
    assert code == 0 and {r["n"] for r in rows} == {6}


def test_console_script_reads_stdin():
    text = io.emit_problem(two_clique_lp())
    proc = subprocess.run(
        [sys.executable, "-m", "anmdesign", "solve-frac"], input=text, capture_output=True, text=True
    )
    assert proc.returncode == 0, proc.stderr
    assert json.loads(proc.stdout)["total_cost"] == 1.0
    assert "optimal" in proc.stderr
