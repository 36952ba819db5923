"""Core data model: outcomes, beliefs, value functions, acts, and SEU evaluation.

A problem bundles a finite set of feasible outcomes, a finite labeled state
partition, and one (value function, belief) pair per individual.  Acts map
partition cells to outcomes.  Every individual evaluates an act by subjective
expected utility; social rules consume the profile of 0-1 normalized expected
utilities, which rescales each value function so its best feasible outcome is
worth 1 and its worst is worth 0.

All objects are immutable after construction and every operation here is pure,
so values can be shared freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

import numpy as np

from fairagg.errors import (
    ConstantValueFunction,
    UnknownCell,
    UnknownOutcome,
)

# Probability/normalization identities are enforced at this tolerance;
# derived quantities (scores, recovered sets) use the looser one.
TOL_PROB = 1e-12
TOL_DERIVED = 1e-9


@dataclass(frozen=True)
class ValueFunction:
    """Payoff assigned to each feasible outcome, prior to normalization.

    Attributes:
        values: outcome label -> real payoff.  Must cover every feasible
            outcome of the problem it is used in and take at least two
            distinct values there.
    """

    values: Mapping[str, float]

    def __getitem__(self, outcome: str) -> float:
        try:
            return self.values[outcome]
        except KeyError:
            raise UnknownOutcome(f"value function is not defined on {outcome!r}") from None


@dataclass(frozen=True)
class Belief:
    """Subjective probability mass over the partition cells.

    Masses must be nonnegative, cover every cell, and sum to one within
    ``TOL_PROB``.
    """

    mass: Mapping[str, float]

    def __getitem__(self, cell: str) -> float:
        try:
            return self.mass[cell]
        except KeyError:
            raise UnknownCell(f"belief has no mass entry for cell {cell!r}") from None

    def event_probability(self, cells: Iterable[str]) -> float:
        return float(sum(self[c] for c in cells))


@dataclass(frozen=True)
class Individual:
    """One member of society: a value function paired with a belief."""

    value: ValueFunction
    belief: Belief


@dataclass(frozen=True)
class StatePartition:
    """Ordered, uniquely-labeled cells standing in for the state space."""

    cells: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "cells", tuple(self.cells))

    def __contains__(self, cell: str) -> bool:
        return cell in self.cells

    def __len__(self) -> int:
        return len(self.cells)


@dataclass(frozen=True)
class Act:
    """A state-contingent alternative: one outcome per partition cell."""

    assignment: Mapping[str, str]

    def __getitem__(self, cell: str) -> str:
        try:
            return self.assignment[cell]
        except KeyError:
            raise UnknownCell(f"act does not cover cell {cell!r}") from None

    def outcomes_used(self) -> frozenset[str]:
        return frozenset(self.assignment.values())


@dataclass(frozen=True)
class Violation:
    """One structured diagnostic from ``validate_problem``."""

    code: str
    message: str
    subject: str = ""


@dataclass(frozen=True)
class Problem:
    """A collective choice problem: feasible outcomes, partition, individuals.

    Numeric work happens on cached numpy matrices indexed by the fixed
    outcome/cell orders, so repeated evaluation of acts is cheap.
    """

    outcomes: tuple[str, ...]
    partition: StatePartition
    individuals: tuple[Individual, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "outcomes", tuple(self.outcomes))
        object.__setattr__(self, "individuals", tuple(self.individuals))

    @property
    def n(self) -> int:
        return len(self.individuals)

    @cached_property
    def outcome_index(self) -> dict[str, int]:
        return {x: k for k, x in enumerate(self.outcomes)}

    @cached_property
    def cell_index(self) -> dict[str, int]:
        return {c: k for k, c in enumerate(self.partition.cells)}

    @cached_property
    def values_matrix(self) -> np.ndarray:
        """Raw payoffs, shape (n, |X|)."""
        rows = []
        for ind in self.individuals:
            rows.append([ind.value[x] for x in self.outcomes])
        return np.asarray(rows, dtype=np.float64)

    @cached_property
    def beliefs_matrix(self) -> np.ndarray:
        """Cell masses, shape (n, |cells|)."""
        rows = []
        for ind in self.individuals:
            rows.append([ind.belief[c] for c in self.partition.cells])
        return np.asarray(rows, dtype=np.float64)

    @cached_property
    def normalized_values_matrix(self) -> np.ndarray:
        """0-1 normalized payoffs, shape (n, |X|).

        Raises ConstantValueFunction if some individual's payoffs do not
        spread over at least two values on the feasible set.
        """
        raw = self.values_matrix
        lo = raw.min(axis=1, keepdims=True)
        hi = raw.max(axis=1, keepdims=True)
        flat = np.nonzero((hi - lo).ravel() == 0.0)[0]
        if flat.size:
            raise ConstantValueFunction(
                f"individual {int(flat[0])} has a constant value function on X"
            )
        return (raw - lo) / (hi - lo)

    def act_outcome_indices(self, act: Act) -> np.ndarray:
        """Column index of the outcome each cell receives, in cell order."""
        idx = np.empty(len(self.partition), dtype=np.intp)
        for k, cell in enumerate(self.partition.cells):
            outcome = act[cell]
            try:
                idx[k] = self.outcome_index[outcome]
            except KeyError:
                raise UnknownOutcome(
                    f"act assigns unknown outcome {outcome!r} to cell {cell!r}"
                ) from None
        if len(act.assignment) != len(self.partition):
            extra = set(act.assignment) - set(self.partition.cells)
            raise UnknownCell(f"act references cells outside the partition: {sorted(extra)}")
        return idx

    def constant_act(self, outcome: str) -> Act:
        if outcome not in self.outcome_index:
            raise UnknownOutcome(f"{outcome!r} is not a feasible outcome")
        return Act({c: outcome for c in self.partition.cells})


def normalize_values(problem: Problem, i: int) -> ValueFunction:
    """Return individual ``i``'s value function rescaled to attain 0 and 1 on X.

    The rescaling is the unique positive affine transform with min 0 and max 1
    over the feasible set; it preserves the ranking of outcomes.
    """
    row = problem.values_matrix[i]
    lo, hi = float(row.min()), float(row.max())
    if hi == lo:
        raise ConstantValueFunction(f"individual {i} has a constant value function on X")
    return ValueFunction({x: (problem.individuals[i].value[x] - lo) / (hi - lo) for x in problem.outcomes})


def seu(problem: Problem, i: int, act: Act) -> float:
    """Subjective expected utility of ``act`` for individual ``i`` (raw payoffs)."""
    idx = problem.act_outcome_indices(act)
    return float(problem.beliefs_matrix[i] @ problem.values_matrix[i, idx])


def normalized_seu(problem: Problem, i: int, act: Act) -> float:
    """Expected utility of ``act`` under individual ``i``'s 0-1 normalized payoffs."""
    idx = problem.act_outcome_indices(act)
    return float(problem.beliefs_matrix[i] @ problem.normalized_values_matrix[i, idx])


def normalized_profile(problem: Problem, act: Act) -> np.ndarray:
    """Vector of normalized expected utilities, one entry per individual, in [0, 1]^n."""
    idx = problem.act_outcome_indices(act)
    per_cell = problem.normalized_values_matrix[:, idx]
    return (problem.beliefs_matrix * per_cell).sum(axis=1)


def induced_distribution(problem: Problem, act: Act) -> np.ndarray:
    """Per-individual probability each outcome is realized, shape (n, |X|)."""
    idx = problem.act_outcome_indices(act)
    dist = np.zeros((problem.n, len(problem.outcomes)))
    for k, j in enumerate(idx):
        dist[:, j] += problem.beliefs_matrix[:, k]
    return dist


def validate_problem(problem: Problem) -> list[Violation]:
    """Check every structural invariant; return diagnostics instead of raising."""
    out: list[Violation] = []
    if len(problem.outcomes) < 2:
        out.append(Violation("TooFewOutcomes", "at least two feasible outcomes are required"))
    if len(set(problem.outcomes)) != len(problem.outcomes):
        out.append(Violation("DuplicateOutcome", "outcome labels must be unique"))
    if any(not x for x in problem.outcomes):
        out.append(Violation("EmptyOutcomeLabel", "outcome labels must be non-empty"))
    cells = problem.partition.cells
    if len(cells) < 1:
        out.append(Violation("EmptyPartition", "the partition needs at least one cell"))
    if len(set(cells)) != len(cells):
        out.append(Violation("DuplicateCell", "cell labels must be unique"))
    if problem.n < 2:
        out.append(Violation("TooFewIndividuals", "at least two individuals are required"))

    for i, ind in enumerate(problem.individuals):
        who = f"individual {i}"
        missing = [x for x in problem.outcomes if x not in ind.value.values]
        if missing:
            out.append(Violation("MissingValue", f"value function omits {missing}", who))
            continue
        vals = [ind.value[x] for x in problem.outcomes]
        if problem.outcomes and max(vals) == min(vals):
            out.append(Violation("ConstantValues", "value function is constant on X", who))
        missing_cells = [c for c in cells if c not in ind.belief.mass]
        if missing_cells:
            out.append(Violation("MissingBeliefCell", f"belief omits cells {missing_cells}", who))
            continue
        masses = [ind.belief[c] for c in cells]
        if any(m < 0 for m in masses):
            out.append(Violation("NegativeMass", "belief has a negative cell mass", who))
        if abs(sum(masses) - 1.0) > TOL_PROB:
            out.append(
                Violation("BeliefNotNormalized", f"belief masses sum to {sum(masses)!r}", who)
            )
    return out
