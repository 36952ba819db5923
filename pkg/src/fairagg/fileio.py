"""JSON schemas for problems, rules, and reports.

Files are plain JSON with a ``schema_version`` field.  Numbers are decimal
doubles; probabilities are validated at 1e-12 when a problem is parsed.
Serialization is deterministic (sorted keys, ``repr``-shortest floats), so
reports written from identical runs are byte-identical.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Mapping

from fairagg.errors import ParseError
from fairagg.model import (
    Act,
    Belief,
    Individual,
    Problem,
    StatePartition,
    ValueFunction,
    validate_problem,
)
from fairagg.rules import AggregationRule, rule_from_descriptor

SCHEMA_VERSION = 1


def problem_to_dict(problem: Problem, acts: Mapping[str, Act] | None = None) -> dict:
    d = {
        "schema_version": SCHEMA_VERSION,
        "outcomes": list(problem.outcomes),
        "partition": list(problem.partition.cells),
        "individuals": [
            {
                "values": {x: ind.value[x] for x in problem.outcomes},
                "belief": {c: ind.belief[c] for c in problem.partition.cells},
            }
            for ind in problem.individuals
        ],
    }
    if acts is not None:
        d["acts"] = {name: dict(act.assignment) for name, act in acts.items()}
    return d


def problem_from_dict(d: Mapping) -> tuple[Problem, dict[str, Act]]:
    """Parse the problem-file schema; raises ParseError on malformed input."""
    try:
        outcomes = tuple(str(x) for x in d["outcomes"])
        cells = tuple(str(c) for c in d["partition"])
        individuals = tuple(
            Individual(
                value=ValueFunction({str(k): float(v) for k, v in ind["values"].items()}),
                belief=Belief({str(k): float(v) for k, v in ind["belief"].items()}),
            )
            for ind in d["individuals"]
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed problem file: {exc!r}") from exc
    problem = Problem(outcomes=outcomes, partition=StatePartition(cells), individuals=individuals)
    acts: dict[str, Act] = {}
    for name, assignment in (d.get("acts") or {}).items():
        try:
            acts[str(name)] = Act({str(c): str(x) for c, x in assignment.items()})
        except (TypeError, AttributeError) as exc:
            raise ParseError(f"malformed act {name!r}: {exc!r}") from exc
    return problem, acts


def act_to_dict(act: Act) -> dict:
    return dict(act.assignment)


def act_from_dict(d: Mapping) -> Act:
    return Act({str(c): str(x) for c, x in d.items()})


def rule_to_dict(rule: AggregationRule) -> dict:
    d = {"schema_version": SCHEMA_VERSION}
    d.update(rule.descriptor())
    return d


def rule_from_dict(d: Mapping) -> AggregationRule:
    try:
        return rule_from_descriptor(d)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed rule file: {exc!r}") from exc


def dumps(payload) -> str:
    """Deterministic JSON text: sorted keys, newline-terminated."""
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def save_json(path: str | Path, payload) -> None:
    Path(path).write_text(dumps(payload), encoding="utf-8")


def load_json(path: str | Path):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read JSON from {path}: {exc}") from exc


def load_problem_file(path: str | Path) -> tuple[Problem, dict[str, Act]]:
    problem, acts = problem_from_dict(load_json(path))
    issues = validate_problem(problem)
    if issues:
        msgs = "; ".join(f"{v.code}: {v.message}" for v in issues)
        raise ParseError(f"problem file {path} failed validation: {msgs}")
    return problem, acts


def load_rule_file(path: str | Path) -> AggregationRule:
    return rule_from_dict(load_json(path))
