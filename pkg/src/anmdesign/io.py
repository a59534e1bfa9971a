"""Canonical JSON format for problems and solutions.

Output is deterministic: keys sorted, floats rounded to 12 significant
digits, so equal inputs give byte-identical text.
"""

from __future__ import annotations

import json
from typing import Any

import jsonschema

from .errors import SchemaError, ValidationError
from .game import (
    AltruismNetwork,
    BnpgInstance,
    StrategicGraph,
    TableBenefit,
    UniformAltruism,
    UslBenefit,
    WeightedAltruism,
)
from .problem import Action, AnmProblem, Mode, Solution, Status

_num = {"type": "number"}
_pair = {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2}

_ALTRUISM = {
    "oneOf": [
        {
            "type": "object",
            "required": ["type", "entries"],
            "properties": {
                "type": {"const": "matrix"},
                "entries": {
                    "type": "array",
                    "items": {
                        "type": "array",
                        "prefixItems": [{"type": "integer"}, {"type": "integer"}, _num],
                        "minItems": 3,
                        "maxItems": 3,
                    },
                },
            },
            "additionalProperties": False,
        },
        {
            "type": "object",
            "required": ["type", "directed", "a", "edges"],
            "properties": {
                "type": {"const": "graph"},
                "directed": {"type": "boolean"},
                "a": _num,
                "edges": {"type": "array", "items": _pair},
            },
            "additionalProperties": False,
        },
    ]
}

PROBLEM_SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": [
        "n", "strategic_edges", "benefits", "costs", "altruism", "target", "actions", "mode",
    ],
    "properties": {
        "n": {"type": "integer", "minimum": 0},
        "strategic_edges": {"type": "array", "items": _pair},
        "benefits": {
            "type": "array",
            "items": {
                "oneOf": [
                    {
                        "type": "object",
                        "required": ["type", "rows"],
                        "properties": {
                            "type": {"const": "table"},
                            "rows": {
                                "type": "array",
                                "items": {"type": "array", "items": _num, "minItems": 1},
                                "minItems": 2,
                                "maxItems": 2,
                            },
                        },
                        "additionalProperties": False,
                    },
                    {
                        "type": "object",
                        "required": ["type", "h0", "h1", "b"],
                        "properties": {
                            "type": {"const": "usl"}, "h0": _num, "h1": _num, "b": _num,
                        },
                        "additionalProperties": False,
                    },
                ]
            },
        },
        "costs": {"type": "array", "items": _num},
        "altruism": _ALTRUISM,
        "target": {"type": "array", "items": {"enum": [0, 1]}},
        "actions": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["edges", "sign", "cost"],
                "properties": {
                    "edges": {"type": "array", "items": _pair},
                    "sign": {"enum": [1, -1]},
                    "cost": _num,
                },
                "additionalProperties": False,
            },
        },
        "mode": {"enum": ["fractional", "binary"]},
        "budget": _num,
    },
    "additionalProperties": False,
}

SOLUTION_SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": ["status"],
    "properties": {
        "status": {"enum": [s.value for s in Status]},
        "spend": {"type": "array", "items": _num},
        "total_cost": _num,
        "ratio_bound": _num,
        "within_budget": {"type": "boolean"},
        "altruism": _ALTRUISM,
    },
    "additionalProperties": False,
}


def _load(text: str | bytes, schema: dict) -> dict:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise SchemaError(f"input is not UTF-8: {exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"malformed JSON: {exc}") from None
    validator = jsonschema.Draft202012Validator(schema)
    err = jsonschema.exceptions.best_match(validator.iter_errors(data))
    if err is not None:
        where = "/".join(str(p) for p in err.absolute_path) or "<root>"
        raise SchemaError(f"{where}: {err.message}")
    return data


def _parse_altruism(n: int, data: dict) -> AltruismNetwork:
    if data["type"] == "matrix":
        for i, j, w in data["entries"]:
            if w < 0:
                raise ValidationError("weight must be >= 0", f"altruism pair ({i}, {j})")
        return WeightedAltruism(n, ((i, j, w) for i, j, w in data["entries"]))
    return UniformAltruism(n, data["edges"], data["a"], data["directed"])


def parse_problem(text: str | bytes) -> AnmProblem:
    data = _load(text, PROBLEM_SCHEMA)
    n = data["n"]
    graph = StrategicGraph.from_edges(n, data["strategic_edges"])
    benefits = []
    for entry in data["benefits"]:
        if entry["type"] == "usl":
            benefits.append(UslBenefit(float(entry["h0"]), float(entry["h1"]), float(entry["b"])))
        else:
            r0, r1 = entry["rows"]
            benefits.append(TableBenefit((tuple(map(float, r0)), tuple(map(float, r1)))))
    inst = BnpgInstance(graph, tuple(benefits), tuple(float(c) for c in data["costs"]))
    alt = _parse_altruism(n, data["altruism"])
    actions = tuple(
        Action(tuple((int(i), int(j)) for i, j in a["edges"]), int(a["sign"]), float(a["cost"]))
        for a in data["actions"]
    )
    budget = data.get("budget")
    return AnmProblem(
        inst,
        alt,
        tuple(data["target"]),
        actions,
        Mode(data["mode"]),
        None if budget is None else float(budget),
    )


def fmt(x: float) -> float:
    """Round to 12 significant digits; normalises ``-0.0``."""
    return float(f"{float(x):.12g}") + 0.0


def _dump(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def altruism_to_json(alt: AltruismNetwork) -> dict:
    if isinstance(alt, UniformAltruism):
        return {
            "type": "graph",
            "directed": alt.directed,
            "a": fmt(alt.a),
            "edges": [list(e) for e in sorted(alt.edges)],
        }
    return {"type": "matrix", "entries": [[i, j, fmt(w)] for i, j, w in alt.entries()]}


def problem_to_json(problem: AnmProblem) -> dict:
    inst = problem.inst
    benefits = []
    for g in inst.benefits:
        if isinstance(g, UslBenefit):
            benefits.append({"type": "usl", "h0": fmt(g.h0), "h1": fmt(g.h1), "b": fmt(g.b)})
        else:
            benefits.append({"type": "table", "rows": [[fmt(v) for v in r] for r in g.rows]})
    out = {
        "n": inst.n,
        "strategic_edges": [list(e) for e in inst.graph.edges()],
        "benefits": benefits,
        "costs": [fmt(c) for c in inst.costs],
        "altruism": altruism_to_json(problem.alt_in),
        "target": list(problem.target),
        "actions": [
            {"edges": [list(e) for e in a.edges], "sign": a.sign, "cost": fmt(a.cost)}
            for a in problem.actions
        ],
        "mode": problem.mode.value,
    }
    if problem.budget is not None:
        out["budget"] = fmt(problem.budget)
    return out


def emit_problem(problem: AnmProblem) -> str:
    return _dump(problem_to_json(problem))


def solution_to_json(sol: Solution) -> dict:
    if sol.status is Status.INFEASIBLE:
        return {"status": sol.status.value}
    out: dict[str, Any] = {
        "status": sol.status.value,
        "spend": [fmt(s) for s in sol.spend],
        "total_cost": fmt(sol.total_cost),
        "altruism": altruism_to_json(sol.alt_out),
    }
    if sol.ratio_bound is not None:
        out["ratio_bound"] = fmt(sol.ratio_bound)
    if sol.within_budget is not None:
        out["within_budget"] = sol.within_budget
    return out


def emit_solution(sol: Solution) -> str:
    return _dump(solution_to_json(sol))


def parse_solution(text: str | bytes, n: int) -> Solution:
    """Inverse of :func:`emit_solution`; ``n`` sizes the altruism network."""
    data = _load(text, SOLUTION_SCHEMA)
    status = Status(data["status"])
    if status is Status.INFEASIBLE:
        return Solution.infeasible()
    for key in ("spend", "total_cost", "altruism"):
        if key not in data:
            raise SchemaError(f"{key}: required for a feasible solution")
    alt = data["altruism"]
    if alt["type"] == "matrix":
        alt_out: AltruismNetwork = WeightedAltruism(n, ((i, j, w) for i, j, w in alt["entries"]))
    else:
        alt_out = UniformAltruism(n, alt["edges"], alt["a"], alt["directed"])
    return Solution(
        status,
        tuple(float(s) for s in data["spend"]),
        float(data["total_cost"]),
        alt_out,
        data.get("ratio_bound"),
        data.get("within_budget"),
    )
