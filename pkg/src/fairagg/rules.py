"""The aggregation-rule zoo behind one comparator/score interface.

Score-based rules map an act's vector of normalized expected utilities to a
real number; two acts compare by score with a strict/indifferent threshold of
``SCORE_TOL`` (configurable per rule).  The lexicographic minimum rule has no
score and compares sorted utility vectors exactly, with no tolerance: adding
one would break transitivity.

Weight sets are polytopes given by their vertices.  The minimum (or maximum)
of a linear function over a polytope is attained at a vertex, so scores are
exact vertex scans rather than numeric optimization.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np

from fairagg.errors import (
    ComparatorOnly,
    EmptyWeightSet,
    InvalidWeight,
    NotGrounded,
)
from fairagg.model import Act, Problem, normalized_profile

SCORE_TOL = 1e-12
WEIGHT_TOL = 1e-12


class Ordering(enum.Enum):
    """Outcome of comparing two acts."""

    FirstStrict = "first_strict"
    Indifferent = "indifferent"
    SecondStrict = "second_strict"

    def flipped(self) -> "Ordering":
        if self is Ordering.FirstStrict:
            return Ordering.SecondStrict
        if self is Ordering.SecondStrict:
            return Ordering.FirstStrict
        return self


def _check_weight(mu: Sequence[float]) -> tuple[float, ...]:
    w = tuple(float(x) for x in mu)
    if not w:
        raise InvalidWeight("weight vector is empty")
    if any(x < 0.0 for x in w):
        raise InvalidWeight(f"weights must be nonnegative, got {w}")
    if abs(sum(w) - 1.0) > WEIGHT_TOL:
        raise InvalidWeight(f"weights must sum to 1, got sum {sum(w)!r}")
    return w


@dataclass(frozen=True)
class WeightSet:
    """Convex polytope of individual weights, held by its vertices."""

    vertices: tuple[tuple[float, ...], ...]
    full_simplex: bool = False

    def __post_init__(self) -> None:
        verts = tuple(_check_weight(v) for v in self.vertices)
        if not verts:
            raise EmptyWeightSet("a weight set needs at least one vertex")
        lengths = {len(v) for v in verts}
        if len(lengths) != 1:
            raise InvalidWeight("all vertices must share one dimension")
        if len(set(verts)) != len(verts):
            raise InvalidWeight("vertices must be pairwise distinct")
        object.__setattr__(self, "vertices", verts)

    @classmethod
    def simplex(cls, n: int) -> "WeightSet":
        eye = tuple(tuple(1.0 if j == i else 0.0 for j in range(n)) for i in range(n))
        return cls(vertices=eye, full_simplex=True)

    @property
    def n(self) -> int:
        return len(self.vertices[0])

    @property
    def matrix(self) -> np.ndarray:
        return np.asarray(self.vertices, dtype=np.float64)


@dataclass(frozen=True)
class CostFunction:
    """Finitely many (weight vector, penalty) candidates with minimum penalty 0."""

    candidates: tuple[tuple[tuple[float, ...], float], ...]

    def __post_init__(self) -> None:
        cands = tuple((_check_weight(mu), float(p)) for mu, p in self.candidates)
        if not cands:
            raise NotGrounded("a cost function needs at least one candidate")
        penalties = [p for _, p in cands]
        if any(p < 0.0 for p in penalties):
            raise NotGrounded(f"penalties must be nonnegative, got {penalties}")
        if min(penalties) > WEIGHT_TOL:
            raise NotGrounded(f"minimum penalty must be 0, got {min(penalties)!r}")
        object.__setattr__(self, "candidates", cands)

    @property
    def weights_matrix(self) -> np.ndarray:
        return np.asarray([mu for mu, _ in self.candidates], dtype=np.float64)

    @property
    def penalties(self) -> np.ndarray:
        return np.asarray([p for _, p in self.candidates], dtype=np.float64)


class AggregationRule:
    """Common interface: ``compare`` two acts, or ``evaluate`` one (score rules).

    Subclasses either implement ``score_profile`` (score-based) or override
    ``compare_profiles`` (comparator-only).  ``profile_only`` marks rules whose
    verdicts depend on nothing but the normalized utility profile.
    """

    kind: str = "abstract"
    has_score: bool = True
    profile_only: bool = True
    score_tol: float = SCORE_TOL

    @property
    def comparator_only(self) -> bool:
        return not self.has_score

    def score_profile(self, u: np.ndarray, problem: Problem | None = None) -> float:
        raise NotImplementedError

    def evaluate(self, problem: Problem, act: Act) -> float:
        if not self.has_score:
            raise ComparatorOnly(f"{self.kind} ranks acts but has no numeric score")
        return self.score_profile(normalized_profile(problem, act), problem)

    def compare_profiles(
        self, u: np.ndarray, v: np.ndarray, problem: Problem | None = None
    ) -> Ordering:
        du = self.score_profile(u, problem) - self.score_profile(v, problem)
        if du > self.score_tol:
            return Ordering.FirstStrict
        if du < -self.score_tol:
            return Ordering.SecondStrict
        return Ordering.Indifferent

    def compare(self, problem: Problem, f: Act, g: Act) -> Ordering:
        return self.compare_profiles(
            normalized_profile(problem, f), normalized_profile(problem, g), problem
        )

    def descriptor(self) -> dict:
        return {"kind": self.kind}

    def __repr__(self) -> str:  # pragma: no cover - debugging nicety
        return f"<{type(self).__name__} {self.descriptor()}>"


@dataclass(frozen=True, repr=False)
class RelativeFairRule(AggregationRule):
    """Score: smallest weighted sum of normalized utilities over a weight polytope."""

    weight_set: WeightSet
    kind: str = "relative_fair"
    has_score: bool = True
    profile_only: bool = True
    score_tol: float = SCORE_TOL

    def score_profile(self, u: np.ndarray, problem: Problem | None = None) -> float:
        return float(np.min(self.weight_set.matrix @ np.asarray(u, dtype=np.float64)))

    def descriptor(self) -> dict:
        return {
            "kind": self.kind,
            "vertices": [list(v) for v in self.weight_set.vertices],
            "full_simplex": self.weight_set.full_simplex,
        }


@dataclass(frozen=True, repr=False)
class RelativeUtilitarianRule(AggregationRule):
    """Score: fixed-weight sum of normalized utilities."""

    weights: tuple[float, ...]
    kind: str = "relative_utilitarian"
    has_score: bool = True
    profile_only: bool = True
    score_tol: float = SCORE_TOL

    def score_profile(self, u: np.ndarray, problem: Problem | None = None) -> float:
        return float(np.dot(self.weights, u))

    def descriptor(self) -> dict:
        return {"kind": self.kind, "weight": list(self.weights)}


@dataclass(frozen=True, repr=False)
class RelativeMaximinRule(AggregationRule):
    """Score: the worst-off individual's normalized utility."""

    kind: str = "relative_maximin"
    has_score: bool = True
    profile_only: bool = True
    score_tol: float = SCORE_TOL

    def score_profile(self, u: np.ndarray, problem: Problem | None = None) -> float:
        return float(np.min(u))


def leximin_key(u: Sequence[float]) -> tuple[float, ...]:
    """Non-decreasing rearrangement of a utility vector; permutation-invariant."""
    return tuple(sorted(float(x) for x in u))


@dataclass(frozen=True, repr=False)
class RelativeLeximinRule(AggregationRule):
    """Lexicographic refinement of the maximin rule; comparator only.

    Sorted utility vectors compare entry by entry on exact floating-point
    values.  No tolerance is applied: a tolerant lexicographic order would
    not be transitive.
    """

    kind: str = "relative_leximin"
    has_score: bool = False
    profile_only: bool = True
    score_tol: float = SCORE_TOL

    def compare_profiles(
        self, u: np.ndarray, v: np.ndarray, problem: Problem | None = None
    ) -> Ordering:
        ku, kv = leximin_key(u), leximin_key(v)
        if ku > kv:
            return Ordering.FirstStrict
        if ku < kv:
            return Ordering.SecondStrict
        return Ordering.Indifferent


@dataclass(frozen=True, repr=False)
class VariationalRule(AggregationRule):
    """Score: minimum over candidates of weighted sum plus that weight's penalty."""

    cost: CostFunction
    kind: str = "variational"
    has_score: bool = True
    profile_only: bool = True
    score_tol: float = SCORE_TOL

    def score_profile(self, u: np.ndarray, problem: Problem | None = None) -> float:
        vals = self.cost.weights_matrix @ np.asarray(u, dtype=np.float64) + self.cost.penalties
        return float(np.min(vals))

    def descriptor(self) -> dict:
        return {
            "kind": self.kind,
            "candidates": [
                {"weight": list(mu), "penalty": p} for mu, p in self.cost.candidates
            ],
        }


@dataclass(frozen=True, repr=False)
class IndifferenceRule(AggregationRule):
    """Every act scores 0; all comparisons come out indifferent."""

    kind: str = "indifference"
    has_score: bool = True
    profile_only: bool = True
    score_tol: float = SCORE_TOL

    def score_profile(self, u: np.ndarray, problem: Problem | None = None) -> float:
        return 0.0


@dataclass(frozen=True, repr=False)
class ParityRule(AggregationRule):
    """Equal-weight utilitarian when |X| is odd, maximin when |X| is even.

    The verdict depends on the size of the feasible set, so adding an outcome
    nobody ranks first or last can still flip rankings.
    """

    kind: str = "parity"
    has_score: bool = True
    profile_only: bool = False
    score_tol: float = SCORE_TOL

    def score_profile(self, u: np.ndarray, problem: Problem | None = None) -> float:
        if problem is None:
            raise ValueError("parity rule needs the problem to count outcomes")
        u = np.asarray(u, dtype=np.float64)
        if len(problem.outcomes) % 2 == 1:
            return float(u.mean())
        return float(u.min())


@dataclass(frozen=True, repr=False)
class MaxWeightRule(AggregationRule):
    """Score: largest weighted sum over the polytope, favoring the better-off."""

    weight_set: WeightSet
    kind: str = "max_weight"
    has_score: bool = True
    profile_only: bool = True
    score_tol: float = SCORE_TOL

    def score_profile(self, u: np.ndarray, problem: Problem | None = None) -> float:
        return float(np.max(self.weight_set.matrix @ np.asarray(u, dtype=np.float64)))

    def descriptor(self) -> dict:
        return {
            "kind": self.kind,
            "vertices": [list(v) for v in self.weight_set.vertices],
        }


@dataclass(frozen=True, repr=False)
class NashRule(AggregationRule):
    """Score: product of all normalized utilities."""

    kind: str = "nash"
    has_score: bool = True
    profile_only: bool = True
    score_tol: float = SCORE_TOL

    def score_profile(self, u: np.ndarray, problem: Problem | None = None) -> float:
        return float(np.prod(np.asarray(u, dtype=np.float64)))


@dataclass(frozen=True, repr=False)
class BeliefWeightedUtilitarianRule(AggregationRule):
    """Utilitarian rule whose weights move with the belief profile.

    Individual ``i`` gets weight proportional to ``0.1 + p_i(E0)`` where the
    reference event ``E0`` is, by convention, the problem's first cell (an
    explicit cell tuple can be supplied instead).  The offset keeps every
    weight strictly positive, and the map is continuous in the beliefs.
    """

    reference_event: tuple[str, ...] | None = None
    kind: str = "belief_weighted_utilitarian"
    has_score: bool = True
    profile_only: bool = False
    score_tol: float = SCORE_TOL

    def weights_for(self, problem: Problem) -> np.ndarray:
        if self.reference_event is None:
            cells = (problem.partition.cells[0],)
        else:
            cells = self.reference_event
        idx = [problem.cell_index[c] for c in cells]
        raw = 0.1 + problem.beliefs_matrix[:, idx].sum(axis=1)
        return raw / raw.sum()

    def score_profile(self, u: np.ndarray, problem: Problem | None = None) -> float:
        if problem is None:
            raise ValueError("belief-weighted rule needs the problem's beliefs")
        return float(self.weights_for(problem) @ np.asarray(u, dtype=np.float64))

    def descriptor(self) -> dict:
        d: dict = {"kind": self.kind}
        if self.reference_event is not None:
            d["reference_event"] = list(self.reference_event)
        return d


# ---------------------------------------------------------------------------
# constructors mirroring the operation names
# ---------------------------------------------------------------------------


def relative_fair_rule(weight_set: WeightSet | Sequence[Sequence[float]]) -> RelativeFairRule:
    if not isinstance(weight_set, WeightSet):
        weight_set = WeightSet(tuple(tuple(v) for v in weight_set))
    return RelativeFairRule(weight_set=weight_set)


def relative_utilitarian_rule(mu: Sequence[float]) -> RelativeUtilitarianRule:
    return RelativeUtilitarianRule(weights=_check_weight(mu))


def relative_maximin_rule() -> RelativeMaximinRule:
    return RelativeMaximinRule()


def relative_leximin_rule() -> RelativeLeximinRule:
    return RelativeLeximinRule()


def variational_rule(cost: CostFunction | Sequence[tuple[Sequence[float], float]]) -> VariationalRule:
    if not isinstance(cost, CostFunction):
        cost = CostFunction(tuple((tuple(mu), float(p)) for mu, p in cost))
    return VariationalRule(cost=cost)


def indifference_rule() -> IndifferenceRule:
    return IndifferenceRule()


def parity_rule() -> ParityRule:
    return ParityRule()


def max_weight_rule(weight_set: WeightSet | Sequence[Sequence[float]]) -> MaxWeightRule:
    if not isinstance(weight_set, WeightSet):
        weight_set = WeightSet(tuple(tuple(v) for v in weight_set))
    return MaxWeightRule(weight_set=weight_set)


def belief_weighted_utilitarian_rule(
    reference_event: Sequence[str] | None = None,
) -> BeliefWeightedUtilitarianRule:
    ev = tuple(reference_event) if reference_event is not None else None
    return BeliefWeightedUtilitarianRule(reference_event=ev)


def evaluate(rule: AggregationRule, problem: Problem, act: Act) -> float:
    """Numeric score of an act; raises ComparatorOnly for score-free rules."""
    return rule.evaluate(problem, act)


def compare(rule: AggregationRule, problem: Problem, f: Act, g: Act) -> Ordering:
    """Rank two acts of one problem."""
    return rule.compare(problem, f, g)


def rule_from_descriptor(d: Mapping) -> AggregationRule:
    """Rebuild a rule from its descriptor (the rule-file schema)."""
    kind = d.get("kind")
    if kind == "relative_fair":
        if d.get("full_simplex"):
            n = len(d["vertices"][0]) if d.get("vertices") else int(d["n"])
            return relative_fair_rule(WeightSet.simplex(n))
        return relative_fair_rule(d["vertices"])
    if kind == "relative_utilitarian":
        return relative_utilitarian_rule(d["weight"])
    if kind == "relative_maximin":
        return relative_maximin_rule()
    if kind == "relative_leximin":
        return relative_leximin_rule()
    if kind == "variational":
        return variational_rule([(c["weight"], c["penalty"]) for c in d["candidates"]])
    if kind == "indifference":
        return indifference_rule()
    if kind == "parity":
        return parity_rule()
    if kind == "max_weight":
        return max_weight_rule(d["vertices"])
    if kind == "nash":
        return NashRule()
    if kind == "belief_weighted_utilitarian":
        return belief_weighted_utilitarian_rule(d.get("reference_event"))
    raise InvalidWeight(f"unknown rule kind {kind!r}")


def nash_rule() -> NashRule:
    return NashRule()
