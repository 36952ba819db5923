"""Partition refinement and act mixing.

The state space is represented by a finite partition, so events with
prescribed probabilities cannot be carved out of thin air.  Two constructions
stand in for nonatomicity:

* proportional refinement, which splits a cell into two children carrying a
  common fraction of every individual's mass, and
* fresh designed-probability problems, which build a small partition whose
  designated event has any requested probability vector.

Together these realize every mixture used downstream: coin-toss events (every
individual assigns them probability 1/2), binary acts ``x on E, y elsewhere``,
and pseudo-mixed acts that every individual perceives as an objective
``alpha : 1 - alpha`` randomization between an act and a constant outcome.
Mixing two arbitrary non-constant acts is deliberately unsupported.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from fairagg.errors import (
    FractionOutOfRange,
    InvalidProbability,
    PartitionMismatch,
    UnknownCell,
    UnknownOutcome,
)
from fairagg.model import Act, Belief, Individual, Problem, StatePartition, ValueFunction


@dataclass(frozen=True)
class RefinementMap:
    """A refined problem plus the child -> parent cell bookkeeping.

    Children of each parent cell carry exactly the parent's mass for every
    individual; outcomes and value functions are untouched, so normalized
    profiles of lifted acts are preserved.  ``kept`` maps each split parent to
    the child holding the split fraction ``t`` of its mass.
    """

    parent: Mapping[str, str]
    kept: Mapping[str, str]
    problem: Problem
    source: Problem

    def children_of(self, cell: str) -> tuple[str, ...]:
        return tuple(c for c in self.problem.partition.cells if self.parent[c] == cell)


def _child_labels(taken: set[str], cell: str) -> tuple[str, str]:
    a, b = f"{cell}:a", f"{cell}:b"
    while a in taken or b in taken:
        a, b = a + "'", b + "'"
    return a, b


def _split(problem: Problem, fractions: Mapping[str, float]) -> RefinementMap:
    """Split every cell in ``fractions`` in two; the first child keeps that fraction."""
    cells = problem.partition.cells
    taken = set(cells)
    new_cells: list[str] = []
    parent: dict[str, str] = {}
    kept: dict[str, str] = {}
    pair: dict[str, tuple[str, str]] = {}
    for c in cells:
        if c in fractions:
            a, b = _child_labels(taken, c)
            taken.update((a, b))
            new_cells += [a, b]
            parent[a] = c
            parent[b] = c
            kept[c] = a
            pair[c] = (a, b)
        else:
            new_cells.append(c)
            parent[c] = c

    individuals = []
    for ind in problem.individuals:
        mass: dict[str, float] = {}
        for c in cells:
            if c in fractions:
                t = fractions[c]
                a, b = pair[c]
                mass[a] = t * ind.belief[c]
                mass[b] = (1.0 - t) * ind.belief[c]
            else:
                mass[c] = ind.belief[c]
        individuals.append(Individual(value=ind.value, belief=Belief(mass)))

    refined = Problem(
        outcomes=problem.outcomes,
        partition=StatePartition(tuple(new_cells)),
        individuals=tuple(individuals),
    )
    return RefinementMap(parent=parent, kept=kept, problem=refined, source=problem)


def refine_proportional(problem: Problem, cell: str, t: float) -> RefinementMap:
    """Split ``cell`` into two children holding fractions ``t`` and ``1 - t``
    of every individual's mass.  ``t`` must lie strictly between 0 and 1."""
    if cell not in problem.cell_index:
        raise UnknownCell(f"no cell named {cell!r}")
    if not (0.0 < t < 1.0):
        raise FractionOutOfRange(f"split fraction must be in (0, 1), got {t!r}")
    return _split(problem, {cell: t})


def lift_act(rmap: RefinementMap, act: Act) -> Act:
    """Carry an act on the parent partition to the refined one.

    Each child inherits its parent's outcome, so the normalized profile is
    unchanged (mass conservation).
    """
    if set(act.assignment) != set(rmap.source.partition.cells):
        raise PartitionMismatch("act does not cover exactly the parent partition")
    return Act({c: act.assignment[p] for c, p in rmap.parent.items()})


def coin_toss_event(problem: Problem) -> tuple[RefinementMap, frozenset[str]]:
    """Split every cell in half and collect one child per cell.

    Every individual assigns the returned event probability 1/2: halving a
    double is exact, so the event mass is exactly half the total belief mass.
    """
    rmap = _split(problem, {c: 0.5 for c in problem.partition.cells})
    return rmap, frozenset(rmap.kept.values())


def binary_act(problem: Problem, x: str, event: Iterable[str], y: str) -> Act:
    """The act equal to ``x`` on ``event`` and ``y`` elsewhere."""
    for outcome in (x, y):
        if outcome not in problem.outcome_index:
            raise UnknownOutcome(f"{outcome!r} is not a feasible outcome")
    ev = frozenset(event)
    unknown = ev - set(problem.partition.cells)
    if unknown:
        raise UnknownCell(f"event contains unknown cells {sorted(unknown)}")
    return Act({c: (x if c in ev else y) for c in problem.partition.cells})


def pseudo_mixed_act(
    problem: Problem, f: Act, x: str, alpha: float
) -> tuple[RefinementMap, Act]:
    """Build the act all individuals perceive as ``alpha f + (1 - alpha) x``.

    Every cell is split with fraction ``alpha``; the act keeps ``f``'s outcome
    on the alpha-children and pays ``x`` on the rest.  Induced outcome
    probabilities scale accordingly: each outcome ``y != x`` keeps
    ``alpha * p_i(f^-1(y))`` and ``x`` absorbs the remaining ``1 - alpha``.
    The per-cell split is one canonical choice among many; nothing downstream
    depends on which version of the mixed act is produced.
    """
    if not (0.0 < alpha < 1.0):
        raise FractionOutOfRange(f"mixing weight must be in (0, 1), got {alpha!r}")
    if x not in problem.outcome_index:
        raise UnknownOutcome(f"{x!r} is not a feasible outcome")
    problem.act_outcome_indices(f)  # validate f before refining
    rmap = _split(problem, {c: alpha for c in problem.partition.cells})
    return rmap, mixed_act_on(rmap, f, x)


def mixed_act_on(rmap: RefinementMap, f: Act, x: str) -> Act:
    """Mix ``f`` with constant ``x`` on an existing refinement.

    Lets several acts be mixed inside one refined problem, which is what
    independence-style comparisons need: both mixed acts then live in the
    same problem.
    """
    if x not in rmap.problem.outcome_index:
        raise UnknownOutcome(f"{x!r} is not a feasible outcome")
    if set(f.assignment) != set(rmap.source.partition.cells):
        raise PartitionMismatch("act does not cover exactly the parent partition")
    assignment = {}
    for child in rmap.problem.partition.cells:
        par = rmap.parent[child]
        if par not in rmap.kept or rmap.kept[par] == child:
            assignment[child] = f.assignment[par]
        else:
            assignment[child] = x
    return Act(assignment)


def problem_with_event(
    n: int,
    outcomes: Sequence[str],
    values: Sequence[Mapping[str, float] | ValueFunction],
    q: Sequence[float],
) -> tuple[Problem, frozenset[str]]:
    """Build a two-cell problem in which individual ``i`` believes the first
    cell has probability exactly ``q[i]``.

    ``values`` supplies one value function per individual over ``outcomes``.
    """
    if len(values) != n or len(q) != n:
        raise InvalidProbability("values and q must have one entry per individual")
    qa = np.asarray(q, dtype=np.float64)
    if qa.size != n or np.any(qa < 0.0) or np.any(qa > 1.0):
        raise InvalidProbability(f"event probabilities must lie in [0, 1], got {q!r}")
    individuals = []
    for i in range(n):
        v = values[i] if isinstance(values[i], ValueFunction) else ValueFunction(dict(values[i]))
        individuals.append(
            Individual(value=v, belief=Belief({"E": float(qa[i]), "Ec": float(1.0 - qa[i])}))
        )
    prob = Problem(
        outcomes=tuple(outcomes),
        partition=StatePartition(("E", "Ec")),
        individuals=tuple(individuals),
    )
    return prob, frozenset({"E"})


def problem_with_two_events(
    outcomes: Sequence[str],
    values: Sequence[Mapping[str, float] | ValueFunction],
    u: Sequence[float],
    v: Sequence[float],
) -> tuple[Problem, frozenset[str], frozenset[str]]:
    """Build a four-cell problem with events ``E``, ``F`` such that individual
    ``i`` assigns them probabilities ``u[i]`` and ``v[i]`` respectively.

    Cell masses are ``c1 = max(0, u + v - 1)``, ``c2 = u - c1``,
    ``c3 = v - c1``, ``c4 = 1 - u - v + c1`` with ``E = {c1, c2}`` and
    ``F = {c1, c3}``; all four are nonnegative for any u, v in [0, 1].
    """
    ua = np.asarray(u, dtype=np.float64)
    va = np.asarray(v, dtype=np.float64)
    n = len(values)
    if ua.size != n or va.size != n:
        raise InvalidProbability("u and v must have one entry per individual")
    for arr in (ua, va):
        if np.any(arr < 0.0) or np.any(arr > 1.0):
            raise InvalidProbability("event probabilities must lie in [0, 1]")
    individuals = []
    for i in range(n):
        ui, vi = float(ua[i]), float(va[i])
        c1 = max(0.0, ui + vi - 1.0)
        mass = {
            "c1": c1,
            "c2": ui - c1,
            "c3": vi - c1,
            "c4": max(0.0, (1.0 - ui - vi) + c1),
        }
        val = values[i] if isinstance(values[i], ValueFunction) else ValueFunction(dict(values[i]))
        individuals.append(Individual(value=val, belief=Belief(mass)))
    prob = Problem(
        outcomes=tuple(outcomes),
        partition=StatePartition(("c1", "c2", "c3", "c4")),
        individuals=tuple(individuals),
    )
    return prob, frozenset({"c1", "c2"}), frozenset({"c1", "c3"})
