"""Randomized axiom auditing with reproducible witnesses.

Each checker decides one axiom for one rule by bounded search: canonical probe
instances are injected into the trial stream first, then seeded random trials
run until a violation is found or the budget is exhausted.  Verdicts are
one-sided: ``violated`` comes with a witness that replays deterministically,
while ``no_violation_found`` is only a statement about the sampled scale.

Numeric discipline: premises are required to hold with a margin
(``PREMISE_MARGIN``) that is far above the rules' strict/indifferent score
threshold, and comparisons whose score gap falls in the ambiguous band between
the two are skipped rather than asserted.  This keeps the searches free of
floating-point false positives without weakening any mathematically strict
claim.

Per-trial randomness derives from ``(seed, axiom, trial index)``, so runs are
reproducible and trials can be distributed across threads (capped by the
``FAIRAGG_THREADS`` environment variable) without changing any verdict.
"""

from __future__ import annotations

import dataclasses
import os
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from fairagg import fileio
from fairagg.mixing import (
    binary_act,
    coin_toss_event,
    lift_act,
    mixed_act_on,
    problem_with_event,
    problem_with_two_events,
    pseudo_mixed_act,
)
from fairagg.model import (
    Act,
    Belief,
    Individual,
    Problem,
    StatePartition,
    ValueFunction,
    normalized_profile,
)
from fairagg.errors import NotInessential
from fairagg.rules import AggregationRule, Ordering
from fairagg.welfare import rule_welfare

DEFAULT_SEED = 1729  # documented default for every randomized command
PREMISE_MARGIN = 1e-9  # strict premises must clear this gap
DYADIC_DENOM = 1 << 20  # belief masses are integers over this power of two

AXIOMS = (
    "pareto",
    "strong_pareto",
    "continuity",
    "iie",
    "wpm",
    "spm",
    "belief_irrelevance",
    "rci",
    "ci",
    "wrci",
    "anonymity",
    "separability",
    "saa",
)

THEOREM1_AXIOMS = ("pareto", "continuity", "iie", "wpm", "belief_irrelevance", "rci")


@dataclass(frozen=True)
class GeneratorConfig:
    """Shape of random problem instances plus the search budget.

    ``fixed`` (a serialized problem) pins the base problem instead of drawing
    one per trial; checkers that construct their own designed-event problems
    ignore it.
    """

    n: int = 2
    n_outcomes: int = 4
    n_cells: int = 3
    value_mode: str = "iid"  # "iid" | "common_values"
    belief_mode: str = "iid"  # "iid" | "common_beliefs" | "designed_event"
    trials: int = 1000
    seed: int = DEFAULT_SEED
    fixed: dict | None = None

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


@dataclass(frozen=True)
class AxiomReport:
    """Verdict of one (axiom, rule) audit."""

    axiom: str
    rule: dict
    status: str  # "no_violation_found" | "violated"
    witness: dict | None
    trials: int
    seed: int
    config: dict

    @property
    def violated(self) -> bool:
        return self.status == "violated"

    def to_dict(self) -> dict:
        return {
            "axiom": self.axiom,
            "rule": self.rule,
            "status": self.status,
            "witness": self.witness,
            "trials": self.trials,
            "seed": self.seed,
            "config": self.config,
        }


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("FAIRAGG_THREADS", "1")))
    except ValueError:
        return 1


def _rng(seed: int, axiom: str, index: int) -> np.random.Generator:
    return np.random.default_rng((seed, zlib.crc32(axiom.encode()), index))


# ---------------------------------------------------------------------------
# instance generation
# ---------------------------------------------------------------------------


def _dyadic_masses(rng: np.random.Generator, m: int) -> list[float]:
    """Random probability vector whose entries are exact multiples of 2^-20.

    Exactness matters: sums, halvings, and event masses then round-trip
    through double arithmetic with zero error.
    """
    if m == 1:
        return [1.0]
    cuts = np.sort(rng.choice(DYADIC_DENOM - 1, size=m - 1, replace=False) + 1)
    bounds = np.concatenate(([0], cuts, [DYADIC_DENOM]))
    return [float(int(d)) / DYADIC_DENOM for d in np.diff(bounds)]


def _value_draw(rng: np.random.Generator, outcomes: Sequence[str]) -> ValueFunction:
    for _ in range(100):
        vals = rng.uniform(0.0, 1.0, len(outcomes))
        if vals.max() - vals.min() >= 0.05:
            return ValueFunction({x: float(v) for x, v in zip(outcomes, vals)})
    raise RuntimeError("could not draw a non-constant value function")


def _gen_problem(config: GeneratorConfig, rng: np.random.Generator) -> Problem:
    if config.fixed is not None:
        problem, _ = fileio.problem_from_dict(config.fixed)
        return problem
    outcomes = tuple(f"x{i}" for i in range(config.n_outcomes))
    if config.belief_mode == "designed_event":
        cells = ("s0", "s1")
    else:
        cells = tuple(f"s{i}" for i in range(config.n_cells))

    if config.value_mode == "common_values":
        shared = _value_draw(rng, outcomes)
        values = [shared] * config.n
    elif config.value_mode == "iid":
        values = [_value_draw(rng, outcomes) for _ in range(config.n)]
    else:
        raise ValueError(f"unknown value_mode {config.value_mode!r}")

    if config.belief_mode == "common_beliefs":
        shared_mass = _dyadic_masses(rng, len(cells))
        beliefs = [Belief(dict(zip(cells, shared_mass)))] * config.n
    elif config.belief_mode == "designed_event":
        qs = [float(int(rng.integers(1, DYADIC_DENOM))) / DYADIC_DENOM for _ in range(config.n)]
        beliefs = [Belief({"s0": q, "s1": 1.0 - q}) for q in qs]
    elif config.belief_mode == "iid":
        beliefs = [Belief(dict(zip(cells, _dyadic_masses(rng, len(cells))))) for _ in range(config.n)]
    else:
        raise ValueError(f"unknown belief_mode {config.belief_mode!r}")

    individuals = tuple(Individual(value=v, belief=b) for v, b in zip(values, beliefs))
    return Problem(outcomes=outcomes, partition=StatePartition(cells), individuals=individuals)


def gen_problem(config: GeneratorConfig, seed: int | None = None) -> Problem:
    """Draw one valid problem; a fixed (config, seed) pair reproduces it bit for bit."""
    rng = np.random.default_rng(config.seed if seed is None else seed)
    return _gen_problem(config, rng)


def sample_act(problem: Problem, rng: np.random.Generator) -> Act:
    k = len(problem.outcomes)
    return Act(
        {c: problem.outcomes[int(rng.integers(k))] for c in problem.partition.cells}
    )


def gen_inessential_expansion(
    problem: Problem,
    seed: int | None = None,
    new_values: Sequence[float] | None = None,
) -> Problem:
    """Add one outcome that no individual ranks strictly best or worst.

    The new payoff for individual ``i`` is drawn inside (or supplied within)
    the closed interval of their existing payoffs, so each 0-1 normalization
    is untouched and preferences over existing acts cannot move.
    """
    rng = np.random.default_rng(DEFAULT_SEED if seed is None else seed)
    label = f"x{len(problem.outcomes)}"
    while label in problem.outcomes:
        label += "'"
    raw = problem.values_matrix
    lo, hi = raw.min(axis=1), raw.max(axis=1)
    if new_values is None:
        lam = rng.uniform(0.0, 1.0, problem.n)
        new_vals = lo + lam * (hi - lo)
    else:
        new_vals = np.asarray(new_values, dtype=np.float64)
        if new_vals.size != problem.n:
            raise NotInessential("need one new payoff per individual")
        if np.any(new_vals < lo) or np.any(new_vals > hi):
            raise NotInessential(
                "new outcome would change somebody's best or worst outcome"
            )

    shared = len({id(ind.value) for ind in problem.individuals}) == 1
    if shared and np.all(new_vals == new_vals[0]):
        vf = ValueFunction(
            {**{x: problem.individuals[0].value[x] for x in problem.outcomes}, label: float(new_vals[0])}
        )
        individuals = tuple(Individual(value=vf, belief=ind.belief) for ind in problem.individuals)
    else:
        individuals = tuple(
            Individual(
                value=ValueFunction(
                    {**{x: ind.value[x] for x in problem.outcomes}, label: float(nv)}
                ),
                belief=ind.belief,
            )
            for ind, nv in zip(problem.individuals, new_vals)
        )
    return Problem(
        outcomes=problem.outcomes + (label,),
        partition=problem.partition,
        individuals=individuals,
    )


# ---------------------------------------------------------------------------
# assessment predicates (one per axiom); return a witness dict or None
# ---------------------------------------------------------------------------


def _ordering_name(o: Ordering) -> str:
    return o.value


def _witness_two_acts(problem: Problem, f: Act, g: Act, **aux) -> dict:
    return {
        "problem": fileio.problem_to_dict(problem),
        "acts": {"f": fileio.act_to_dict(f), "g": fileio.act_to_dict(g)},
        "aux": aux,
    }


def _common_normalized_values(problem: Problem) -> bool:
    m = problem.normalized_values_matrix
    return bool(np.all(m == m[0]))


def _score_gap_ambiguous(rule: AggregationRule, problem: Problem, f: Act, g: Act) -> bool:
    """True when the score gap sits between 'indifferent' and a robust margin."""
    if not rule.has_score:
        return False
    gap = abs(rule.evaluate(problem, f) - rule.evaluate(problem, g))
    return 0.5 * rule.score_tol < gap <= PREMISE_MARGIN


def _assess_pareto(rule: AggregationRule, problem: Problem, f: Act, g: Act) -> dict | None:
    uf = normalized_profile(problem, f)
    ug = normalized_profile(problem, g)
    order = rule.compare(problem, f, g)
    for ua, ub, want in ((uf, ug, Ordering.FirstStrict), (ug, uf, Ordering.SecondStrict)):
        if np.all(ua >= ub + PREMISE_MARGIN) and order != want:
            return _witness_two_acts(
                problem, f, g,
                premise="unanimous_strict", direction=want.value,
                profiles={"f": list(uf), "g": list(ug)}, ordering=_ordering_name(order),
            )
        if np.all(ua >= ub) and order == want.flipped():
            return _witness_two_acts(
                problem, f, g,
                premise="unanimous_weak", direction=want.value,
                profiles={"f": list(uf), "g": list(ug)}, ordering=_ordering_name(order),
            )
    return None


def _assess_strong_pareto(rule: AggregationRule, problem: Problem, f: Act, g: Act) -> dict | None:
    uf = normalized_profile(problem, f)
    ug = normalized_profile(problem, g)
    order = rule.compare(problem, f, g)
    if np.all(uf >= ug) and np.any(uf >= ug + PREMISE_MARGIN) and order != Ordering.FirstStrict:
        return _witness_two_acts(
            problem, f, g, premise="weak_plus_one_strict",
            profiles={"f": list(uf), "g": list(ug)}, ordering=_ordering_name(order),
        )
    if np.all(ug >= uf) and np.any(ug >= uf + PREMISE_MARGIN) and order != Ordering.SecondStrict:
        return _witness_two_acts(
            problem, f, g, premise="weak_plus_one_strict_reversed",
            profiles={"f": list(uf), "g": list(ug)}, ordering=_ordering_name(order),
        )
    return None


def _assess_iie(
    rule: AggregationRule, problem: Problem, expanded: Problem, f: Act, g: Act
) -> dict | None:
    if _score_gap_ambiguous(rule, problem, f, g):
        return None
    before = rule.compare(problem, f, g)
    after = rule.compare(expanded, f, g)
    if before != after:
        w = _witness_two_acts(
            problem, f, g,
            before=_ordering_name(before), after=_ordering_name(after),
        )
        w["expanded_problem"] = fileio.problem_to_dict(expanded)
        return w
    return None


def _assess_wpm(rule: AggregationRule, problem: Problem, x: str, y: str) -> dict | None:
    rmap, event = coin_toss_event(problem)
    refined = rmap.problem
    mix = binary_act(refined, x, event, y)
    against_x = rule.compare(refined, mix, refined.constant_act(x))
    against_y = rule.compare(refined, mix, refined.constant_act(y))
    if against_x == Ordering.SecondStrict and against_y == Ordering.SecondStrict:
        return {
            "problem": fileio.problem_to_dict(problem),
            "acts": {"mix": fileio.act_to_dict(mix)},
            "aux": {
                "x": x, "y": y, "event": sorted(event),
                "vs_x": against_x.value, "vs_y": against_y.value,
                "refined_problem": fileio.problem_to_dict(refined),
            },
        }
    return None


def _assess_spm(
    rule: AggregationRule, problem: Problem, event: frozenset[str], x: str, y: str
) -> dict | None:
    ux = normalized_profile(problem, problem.constant_act(x))
    uy = normalized_profile(problem, problem.constant_act(y))
    if np.any(np.abs(ux - uy) <= PREMISE_MARGIN):
        return None  # degenerate mix coordinate; nothing credible to assert
    mix = binary_act(problem, x, event, y)
    against_x = rule.compare(problem, mix, problem.constant_act(x))
    against_y = rule.compare(problem, mix, problem.constant_act(y))
    if against_x == Ordering.SecondStrict and against_y == Ordering.SecondStrict:
        return {
            "problem": fileio.problem_to_dict(problem),
            "acts": {"mix": fileio.act_to_dict(mix)},
            "aux": {
                "x": x, "y": y, "event": sorted(event),
                "vs_x": against_x.value, "vs_y": against_y.value,
            },
        }
    return None


def _assess_belief_irrelevance(
    rule: AggregationRule, problem_a: Problem, problem_b: Problem
) -> dict | None:
    for i, x in enumerate(problem_a.outcomes):
        for y in problem_a.outcomes[i + 1:]:
            fa, ga = problem_a.constant_act(x), problem_a.constant_act(y)
            fb, gb = problem_b.constant_act(x), problem_b.constant_act(y)
            if _score_gap_ambiguous(rule, problem_a, fa, ga) or _score_gap_ambiguous(
                rule, problem_b, fb, gb
            ):
                continue
            in_a = rule.compare(problem_a, fa, ga)
            in_b = rule.compare(problem_b, fb, gb)
            if in_a != in_b:
                return {
                    "problem": fileio.problem_to_dict(problem_a),
                    "problem_b": fileio.problem_to_dict(problem_b),
                    "acts": {"x": x, "y": y},
                    "aux": {"in_a": in_a.value, "in_b": in_b.value},
                }
    return None


def _assess_rci(
    rule: AggregationRule,
    problem: Problem,
    f: Act,
    g: Act,
    x: str,
    alpha: float,
    require_common: bool = True,
) -> dict | None:
    if require_common and not _common_normalized_values(problem):
        return None
    rmap, f_mix = pseudo_mixed_act(problem, f, x, alpha)
    g_mix = mixed_act_on(rmap, g, x)
    refined = rmap.problem
    lf, lg = lift_act(rmap, f), lift_act(rmap, g)
    if _score_gap_ambiguous(rule, refined, lf, lg):
        return None
    base = rule.compare(refined, lf, lg)
    mixed = rule.compare(refined, f_mix, g_mix)
    if base != mixed:
        return _witness_two_acts(
            problem, f, g,
            x=x, alpha=alpha, base=base.value, mixed=mixed.value,
        )
    return None


def _assess_ci(
    rule: AggregationRule, problem: Problem, f: Act, g: Act, x: str, alpha: float
) -> dict | None:
    return _assess_rci(rule, problem, f, g, x, alpha, require_common=False)


def _assess_wrci(
    rule: AggregationRule,
    problem: Problem,
    f: Act,
    g: Act,
    x: str,
    y: str,
    alpha: float,
) -> dict | None:
    if not _common_normalized_values(problem):
        return None
    rmap, f_mx = pseudo_mixed_act(problem, f, x, alpha)
    g_mx = mixed_act_on(rmap, g, x)
    f_my = mixed_act_on(rmap, f, y)
    g_my = mixed_act_on(rmap, g, y)
    refined = rmap.problem
    if _score_gap_ambiguous(rule, refined, f_mx, g_mx) or _score_gap_ambiguous(
        rule, refined, f_my, g_my
    ):
        return None
    with_x = rule.compare(refined, f_mx, g_mx)
    with_y = rule.compare(refined, f_my, g_my)
    if with_x != with_y:
        return _witness_two_acts(
            problem, f, g,
            x=x, y=y, alpha=alpha, with_x=with_x.value, with_y=with_y.value,
        )
    return None


def _permute_problem(problem: Problem, perm: Sequence[int]) -> Problem:
    individuals = tuple(problem.individuals[p] for p in perm)
    return Problem(outcomes=problem.outcomes, partition=problem.partition, individuals=individuals)


def _assess_anonymity(
    rule: AggregationRule, problem: Problem, f: Act, g: Act, perm: Sequence[int]
) -> dict | None:
    permuted = _permute_problem(problem, perm)
    if _score_gap_ambiguous(rule, problem, f, g) or _score_gap_ambiguous(
        rule, permuted, f, g
    ):
        return None
    original = rule.compare(problem, f, g)
    after = rule.compare(permuted, f, g)
    if original != after:
        return _witness_two_acts(
            problem, f, g,
            perm=[int(p) for p in perm], original=original.value, permuted=after.value,
        )
    return None


def _assess_separability(
    rule: AggregationRule,
    problem_a: Problem,
    problem_b: Problem,
    f: Act,
    g: Act,
    outside: Sequence[int],
) -> dict | None:
    # premise: outsiders exactly indifferent between f and g under both profiles
    for prob in (problem_a, problem_b):
        uf = normalized_profile(prob, f)
        ug = normalized_profile(prob, g)
        if any(uf[j] != ug[j] for j in outside):
            return None
    if _score_gap_ambiguous(rule, problem_a, f, g) or _score_gap_ambiguous(
        rule, problem_b, f, g
    ):
        return None
    in_a = rule.compare(problem_a, f, g)
    in_b = rule.compare(problem_b, f, g)
    if in_a != in_b:
        w = _witness_two_acts(
            problem_a, f, g,
            outside=[int(j) for j in outside], in_a=in_a.value, in_b=in_b.value,
        )
        w["problem_b"] = fileio.problem_to_dict(problem_b)
        return w
    return None


def _assess_saa(rule: AggregationRule, problem: Problem, f: Act, x: str) -> dict | None:
    if not _common_normalized_values(problem):
        return None
    cx = problem.constant_act(x)
    ux = normalized_profile(problem, cx)
    uf = normalized_profile(problem, f)
    if not np.any(ux >= uf + PREMISE_MARGIN):
        return None  # nobody credibly vetoes the uncertain act
    order = rule.compare(problem, cx, f)
    if order != Ordering.FirstStrict:
        return {
            "problem": fileio.problem_to_dict(problem),
            "acts": {"f": fileio.act_to_dict(f)},
            "aux": {
                "x": x,
                "profiles": {"x": list(ux), "f": list(uf)},
                "ordering": order.value,
            },
        }
    return None


# ---------------------------------------------------------------------------
# canonical probe instances injected ahead of random search
# ---------------------------------------------------------------------------

_BEST_WORST = ValueFunction({"best": 1.0, "worst": 0.0})


def _two_event_problem(u: Sequence[float], v: Sequence[float]) -> tuple[Problem, Act, Act]:
    """Common-value problem with acts whose profiles are exactly u and v."""
    n = len(u)
    prob, ef, eg = problem_with_two_events(("best", "worst"), [_BEST_WORST] * n, u, v)
    return prob, binary_act(prob, "best", ef, "worst"), binary_act(prob, "best", eg, "worst")


def _opposed_two_outcome_problem(p1: float = 0.5, p2: float = 0.5) -> Problem:
    """Two individuals with exactly opposite tastes over two outcomes."""
    return Problem(
        outcomes=("x", "y"),
        partition=StatePartition(("s0", "s1")),
        individuals=(
            Individual(ValueFunction({"x": 1.0, "y": 0.0}), Belief({"s0": p1, "s1": 1.0 - p1})),
            Individual(ValueFunction({"x": 0.0, "y": 1.0}), Belief({"s0": p2, "s1": 1.0 - p2})),
        ),
    )


def _golden_payloads(axiom: str, rule: AggregationRule) -> list[tuple]:
    """Fixed probe instances for an axiom, fed through the same assessors.

    They encode hand-checked violation patterns for the counterexample rules;
    on rules that satisfy the axiom they are just extra deterministic trials.
    """
    if axiom == "pareto":
        shared = ValueFunction({"lo": 0.0, "hi": 1.0})
        prob = Problem(
            outcomes=("lo", "hi"),
            partition=StatePartition(("s0", "s1")),
            individuals=(
                Individual(shared, Belief({"s0": 0.5, "s1": 0.5})),
                Individual(shared, Belief({"s0": 0.25, "s1": 0.75})),
            ),
        )
        return [(prob, prob.constant_act("hi"), prob.constant_act("lo"))]
    if axiom == "strong_pareto":
        prob, f, g = _two_event_problem([0.5, 1.0], [0.5, 0.5])
        return [(prob, f, g)]
    if axiom == "iie":
        shared = ValueFunction({"x0": 0.0, "x1": 1.0, "x2": 0.4})
        prob = Problem(
            outcomes=("x0", "x1", "x2"),
            partition=StatePartition(("s0", "s1")),
            individuals=(
                Individual(shared, Belief({"s0": 0.9, "s1": 1.0 - 0.9})),
                Individual(shared, Belief({"s0": 0.05, "s1": 0.95})),
            ),
        )
        f = Act({"s0": "x1", "s1": "x0"})  # profile (0.9, 0.05)
        g = prob.constant_act("x2")  # profile (0.4, 0.4)
        expanded = gen_inessential_expansion(prob, new_values=[0.5, 0.5])
        return [(prob, expanded, f, g)]
    if axiom == "wpm":
        return [(_opposed_two_outcome_problem(), "x", "y")]
    if axiom == "spm":
        prob, event = problem_with_event(
            2,
            ("x", "y"),
            [ValueFunction({"x": 1.0, "y": 0.0}), ValueFunction({"x": 0.0, "y": 1.0})],
            [0.1, 0.9],
        )
        return [(prob, event, "x", "y")]
    if axiom == "belief_irrelevance":
        return [(_opposed_two_outcome_problem(0.9, 0.1), _opposed_two_outcome_problem(0.1, 0.9))]
    if axiom == "rci":
        prob, f, g = _two_event_problem([0.5, 0.5], [0.9, 0.2])
        return [(prob, f, g, "best", 0.5)]
    if axiom == "ci":
        # heterogeneous tastes: the second individual's values are flipped, so
        # the constant outcome "best" realizes the skewed vector (1, 0)
        flipped = ValueFunction({"best": 0.0, "worst": 1.0})
        payloads = []
        for ef, eg, x in (
            ([0.4, 0.8], [0.5, 0.5], "best"),  # catches min-style rules
            ([0.9, 0.1], [0.35, 0.35], "worst"),  # catches interior weight polytopes
        ):
            # ef/eg are the target profiles; individual 2's event masses invert
            u = [ef[0], 1.0 - ef[1]]
            v = [eg[0], 1.0 - eg[1]]
            prob, f, g = _two_event_problem(u, v)
            ind = prob.individuals
            prob = Problem(
                outcomes=prob.outcomes,
                partition=prob.partition,
                individuals=(ind[0], Individual(flipped, ind[1].belief)),
            )
            payloads.append((prob, f, g, x, 0.5))
        return payloads
    if axiom == "wrci":
        prob, f, g = _two_event_problem([0.5, 0.5], [0.9, 0.2])
        return [(prob, f, g, "best", "worst", 0.5)]
    if axiom == "anonymity":
        prob = _opposed_two_outcome_problem()
        return [(prob, prob.constant_act("x"), prob.constant_act("y"), (1, 0))]
    if axiom == "separability":
        prob_a, f, g = _two_event_problem([0.5, 0.7, 0.9], [0.6, 0.4, 0.9])
        prob_b, _, _ = _two_event_problem([0.5, 0.7, 0.2], [0.6, 0.4, 0.2])
        return [(prob_a, prob_b, f, g, (2,))]
    if axiom == "saa":
        shared = ValueFunction({"best": 1.0, "worst": 0.0, "mid": 0.5})
        payloads = []
        for q in ([0.98, 0.48], [0.48, 0.98], [0.9, 0.45], [0.98, 0.98, 0.48]):
            prob, event = problem_with_event(len(q), ("best", "worst", "mid"), [shared] * len(q), q)
            f = binary_act(prob, "best", event, "worst")
            payloads.append((prob, f, "mid"))
        return payloads
    return []


# ---------------------------------------------------------------------------
# checkers
# ---------------------------------------------------------------------------


def _search(
    axiom: str,
    rule: AggregationRule,
    config: GeneratorConfig,
    assess: Callable[..., dict | None],
    random_payload: Callable[[np.random.Generator], tuple | None],
) -> AxiomReport:
    """Injected probes first, then seeded random trials, possibly threaded."""
    witness = None
    executed = 0
    for k, payload in enumerate(_golden_payloads(axiom, rule)):
        executed += 1
        w = assess(rule, *payload)
        if w is not None:
            w["source"] = f"injected:{k}"
            witness = w
            break

    if witness is None:

        def run_trial(idx: int) -> dict | None:
            rng = _rng(config.seed, axiom, idx)
            payload = random_payload(rng)
            if payload is None:
                return None
            w = assess(rule, *payload)
            if w is not None:
                w["source"] = f"trial:{idx}"
            return w

        workers = _workers()
        if workers <= 1:
            for idx in range(config.trials):
                executed += 1
                w = run_trial(idx)
                if w is not None:
                    witness = w
                    break
        else:
            chunk = max(1, config.trials // (workers * 4))
            found: list[tuple[int, dict]] = []
            with ThreadPoolExecutor(max_workers=workers) as pool:
                for start in range(0, config.trials, chunk):
                    idxs = range(start, min(start + chunk, config.trials))
                    for idx, w in zip(idxs, pool.map(run_trial, idxs)):
                        if w is not None:
                            found.append((idx, w))
                    if found:
                        break
            if found:
                first_idx, witness = min(found)
                executed += first_idx + 1
            else:
                executed += config.trials

    return AxiomReport(
        axiom=axiom,
        rule=rule.descriptor(),
        status="violated" if witness is not None else "no_violation_found",
        witness=witness,
        trials=executed,
        seed=config.seed,
        config=config.to_dict(),
    )


def check_pareto(rule: AggregationRule, config: GeneratorConfig) -> AxiomReport:
    def payload(rng):
        prob = _gen_problem(config, rng)
        return prob, sample_act(prob, rng), sample_act(prob, rng)

    return _search("pareto", rule, config, _assess_pareto, payload)


def check_strong_pareto(rule: AggregationRule, config: GeneratorConfig) -> AxiomReport:
    def payload(rng):
        prob = _gen_problem(config, rng)
        return prob, sample_act(prob, rng), sample_act(prob, rng)

    return _search("strong_pareto", rule, config, _assess_strong_pareto, payload)


def _rule_arity(rule: AggregationRule) -> int | None:
    """Number of individuals a rule's parameters commit it to, if any."""
    d = rule.descriptor()
    if d.get("vertices"):
        return len(d["vertices"][0])
    if d.get("weight"):
        return len(d["weight"])
    if d.get("candidates"):
        return len(d["candidates"][0]["weight"])
    return None


def check_continuity_witness(rule: AggregationRule) -> AxiomReport:
    """Constructive continuity test.

    Runs a fixed sequence of acts whose profiles converge to (0.5, 1, ...)
    while a rival act sits at (0.5, 0.5, ...): a rule that rejects every
    element of the sequence but strictly accepts the limit is discontinuous
    (this is the lexicographic rule's signature).  Score-based rules are
    additionally scanned for jumps along random utility segments; finding
    none is evidence, not proof, and is reported as such.
    """
    n = _rule_arity(rule) or 2
    rival = [0.5] * n
    tail = [1.0] * (n - 1)
    ts = list(range(2, 65))
    prefers_g_throughout = True
    for t in ts:
        prob, f_t, g = _two_event_problem([0.5 - 1.0 / t] + tail, rival)
        if rule.compare(prob, f_t, g) == Ordering.FirstStrict:
            prefers_g_throughout = False
            break
    witness = None
    executed = len(ts)
    if prefers_g_throughout:
        prob, f_lim, g = _two_event_problem([0.5] + tail, rival)
        if rule.compare(prob, f_lim, g) == Ordering.FirstStrict:
            witness = {
                "construction": "limit_flip",
                "sequence_profiles": [[0.5 - 1.0 / t] + tail for t in ts],
                "rival_profile": rival,
                "limit_profile": [0.5] + tail,
                "note": "rule weakly rejects every f_t yet strictly accepts the limit",
            }

    if witness is None and rule.has_score:
        psi = rule_welfare(rule, n, via_probe=not rule.profile_only)
        rng = _rng(DEFAULT_SEED, "continuity", 0)
        for seg in range(100):
            executed += 1
            u0 = rng.uniform(0.0, 1.0, n)
            u1 = rng.uniform(0.0, 1.0, n)
            vals = [psi(u0 + s * (u1 - u0)) for s in np.linspace(0.0, 1.0, 101)]
            jumps = np.abs(np.diff(vals))
            if jumps.max() > 0.2:
                witness = {
                    "construction": "segment_jump",
                    "segment": {"u0": list(u0), "u1": list(u1)},
                    "max_jump": float(jumps.max()),
                    "segment_index": seg,
                }
                break

    return AxiomReport(
        axiom="continuity",
        rule=rule.descriptor(),
        status="violated" if witness is not None else "no_violation_found",
        witness=witness,
        trials=executed,
        seed=DEFAULT_SEED,
        config={},
    )


def check_iie(rule: AggregationRule, config: GeneratorConfig) -> AxiomReport:
    def payload(rng):
        prob = _gen_problem(config, rng)
        expanded = gen_inessential_expansion(prob, seed=int(rng.integers(2**32)))
        return prob, expanded, sample_act(prob, rng), sample_act(prob, rng)

    return _search("iie", rule, config, _assess_iie, payload)


def check_wpm(rule: AggregationRule, config: GeneratorConfig) -> AxiomReport:
    def payload(rng):
        prob = _gen_problem(config, rng)
        x, y = rng.choice(len(prob.outcomes), size=2, replace=False)
        return prob, prob.outcomes[int(x)], prob.outcomes[int(y)]

    return _search("wpm", rule, config, _assess_wpm, payload)


def check_spm(rule: AggregationRule, config: GeneratorConfig) -> AxiomReport:
    def payload(rng):
        outcomes = tuple(f"x{i}" for i in range(config.n_outcomes))
        if config.value_mode == "common_values":
            values = [_value_draw(rng, outcomes)] * config.n
        else:
            values = [_value_draw(rng, outcomes) for _ in range(config.n)]
        q = rng.uniform(0.01, 0.99, config.n)
        prob, event = problem_with_event(config.n, outcomes, values, q)
        x, y = rng.choice(len(outcomes), size=2, replace=False)
        return prob, event, outcomes[int(x)], outcomes[int(y)]

    return _search("spm", rule, config, _assess_spm, payload)


def check_belief_irrelevance(rule: AggregationRule, config: GeneratorConfig) -> AxiomReport:
    def payload(rng):
        prob = _gen_problem(config, rng)
        cells = prob.partition.cells
        prob_b = Problem(
            outcomes=prob.outcomes,
            partition=prob.partition,
            individuals=tuple(
                Individual(
                    value=ind.value,
                    belief=Belief(dict(zip(cells, _dyadic_masses(rng, len(cells))))),
                )
                for ind in prob.individuals
            ),
        )
        return prob, prob_b

    return _search("belief_irrelevance", rule, config, _assess_belief_irrelevance, payload)


def _common_values_config(config: GeneratorConfig) -> GeneratorConfig:
    if config.value_mode == "common_values":
        return config
    return dataclasses.replace(config, value_mode="common_values")


def check_rci(rule: AggregationRule, config: GeneratorConfig) -> AxiomReport:
    config = _common_values_config(config)

    def payload(rng):
        prob = _gen_problem(config, rng)
        x = prob.outcomes[int(rng.integers(len(prob.outcomes)))]
        alpha = float(rng.uniform(0.05, 0.95))
        return prob, sample_act(prob, rng), sample_act(prob, rng), x, alpha

    return _search("rci", rule, config, _assess_rci, payload)


def check_ci(rule: AggregationRule, config: GeneratorConfig) -> AxiomReport:
    def payload(rng):
        prob = _gen_problem(config, rng)
        x = prob.outcomes[int(rng.integers(len(prob.outcomes)))]
        alpha = float(rng.uniform(0.05, 0.95))
        return prob, sample_act(prob, rng), sample_act(prob, rng), x, alpha

    return _search("ci", rule, config, _assess_ci, payload)


def check_wrci(rule: AggregationRule, config: GeneratorConfig) -> AxiomReport:
    config = _common_values_config(config)

    def payload(rng):
        prob = _gen_problem(config, rng)
        xi, yi = rng.choice(len(prob.outcomes), size=2, replace=False)
        alpha = float(rng.uniform(0.05, 0.95))
        return (
            prob,
            sample_act(prob, rng),
            sample_act(prob, rng),
            prob.outcomes[int(xi)],
            prob.outcomes[int(yi)],
            alpha,
        )

    return _search("wrci", rule, config, _assess_wrci, payload)


def check_anonymity(rule: AggregationRule, config: GeneratorConfig) -> AxiomReport:
    def payload(rng):
        prob = _gen_problem(config, rng)
        perm = tuple(int(p) for p in rng.permutation(prob.n))
        return prob, sample_act(prob, rng), sample_act(prob, rng), perm

    return _search("anonymity", rule, config, _assess_anonymity, payload)


def check_separability(rule: AggregationRule, config: GeneratorConfig) -> AxiomReport:
    n = max(3, config.n)

    def payload(rng):
        size_s = int(rng.integers(1, n))
        members = rng.permutation(n)
        inside = sorted(int(i) for i in members[:size_s])
        outside = sorted(int(i) for i in members[size_s:])
        u = np.empty(n)
        v = np.empty(n)
        u[inside] = rng.uniform(0.0, 1.0, len(inside))
        v[inside] = rng.uniform(0.0, 1.0, len(inside))
        w_a, w_b = rng.uniform(0.0, 1.0, 2)
        u[outside] = w_a
        v[outside] = w_a
        prob_a, f, g = _two_event_problem(list(u), list(v))
        u[outside] = w_b
        v[outside] = w_b
        prob_b, _, _ = _two_event_problem(list(u), list(v))
        return prob_a, prob_b, f, g, tuple(outside)

    return _search("separability", rule, config, _assess_separability, payload)


def check_saa(rule: AggregationRule, config: GeneratorConfig) -> AxiomReport:
    config = _common_values_config(config)

    def payload(rng):
        prob = _gen_problem(config, rng)
        x = prob.outcomes[int(rng.integers(len(prob.outcomes)))]
        return prob, sample_act(prob, rng), x

    return _search("saa", rule, config, _assess_saa, payload)


CHECKERS: dict[str, Callable[[AggregationRule, GeneratorConfig], AxiomReport]] = {
    "pareto": check_pareto,
    "strong_pareto": check_strong_pareto,
    "iie": check_iie,
    "wpm": check_wpm,
    "spm": check_spm,
    "belief_irrelevance": check_belief_irrelevance,
    "rci": check_rci,
    "ci": check_ci,
    "wrci": check_wrci,
    "anonymity": check_anonymity,
    "separability": check_separability,
    "saa": check_saa,
}


def run_axiom_check(rule: AggregationRule, axiom: str, config: GeneratorConfig) -> AxiomReport:
    if axiom == "continuity":
        return check_continuity_witness(rule)
    try:
        return CHECKERS[axiom](rule, config)
    except KeyError:
        raise ValueError(f"unknown axiom {axiom!r}") from None


# ---------------------------------------------------------------------------
# witness replay
# ---------------------------------------------------------------------------


def replay_witness(rule: AggregationRule, axiom: str, witness: dict) -> bool:
    """Re-run a stored witness through its assessor; True when it still violates."""
    if axiom == "continuity":
        report = check_continuity_witness(rule)
        return report.violated

    problem, _ = fileio.problem_from_dict(witness["problem"])
    acts = {k: fileio.act_from_dict(v) for k, v in witness.get("acts", {}).items()}
    aux = witness.get("aux", {})
    if axiom in ("pareto", "strong_pareto"):
        assess = _assess_pareto if axiom == "pareto" else _assess_strong_pareto
        return assess(rule, problem, acts["f"], acts["g"]) is not None
    if axiom == "iie":
        expanded, _ = fileio.problem_from_dict(witness["expanded_problem"])
        return _assess_iie(rule, problem, expanded, acts["f"], acts["g"]) is not None
    if axiom == "wpm":
        return _assess_wpm(rule, problem, aux["x"], aux["y"]) is not None
    if axiom == "spm":
        return (
            _assess_spm(rule, problem, frozenset(aux["event"]), aux["x"], aux["y"])
            is not None
        )
    if axiom == "belief_irrelevance":
        problem_b, _ = fileio.problem_from_dict(witness["problem_b"])
        return _assess_belief_irrelevance(rule, problem, problem_b) is not None
    if axiom == "rci":
        return (
            _assess_rci(rule, problem, acts["f"], acts["g"], aux["x"], aux["alpha"])
            is not None
        )
    if axiom == "ci":
        return (
            _assess_ci(rule, problem, acts["f"], acts["g"], aux["x"], aux["alpha"])
            is not None
        )
    if axiom == "wrci":
        return (
            _assess_wrci(
                rule, problem, acts["f"], acts["g"], aux["x"], aux["y"], aux["alpha"]
            )
            is not None
        )
    if axiom == "anonymity":
        return (
            _assess_anonymity(rule, problem, acts["f"], acts["g"], aux["perm"])
            is not None
        )
    if axiom == "separability":
        problem_b, _ = fileio.problem_from_dict(witness["problem_b"])
        return (
            _assess_separability(rule, problem, problem_b, acts["f"], acts["g"], aux["outside"])
            is not None
        )
    if axiom == "saa":
        return _assess_saa(rule, problem, acts["f"], aux["x"]) is not None
    raise ValueError(f"unknown axiom {axiom!r}")


# ---------------------------------------------------------------------------
# matrix reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MatrixReport:
    """Each rule crossed with each axiom, plus the failure pattern."""

    axioms: tuple[str, ...]
    rows: tuple[dict, ...]
    config: dict

    def to_dict(self) -> dict:
        return {"axioms": list(self.axioms), "rows": [dict(r) for r in self.rows], "config": self.config}


def axiom_matrix(
    rules: Sequence[tuple[str, AggregationRule]],
    axioms: Sequence[str],
    config: GeneratorConfig,
    keep_witnesses: bool = False,
) -> MatrixReport:
    """Run every (rule, axiom) pair and tabulate the verdicts.

    ``rules`` pairs a display label with each rule so that several rules of
    one kind can appear side by side.
    """
    rows = []
    for label, rule in rules:
        cells = {}
        for axiom in axioms:
            report = run_axiom_check(rule, axiom, config)
            cell = {"status": report.status, "trials": report.trials}
            if keep_witnesses and report.witness is not None:
                cell["witness"] = report.witness
            cells[axiom] = cell
        rows.append(
            {
                "label": label,
                "rule": rule.descriptor(),
                "cells": cells,
                "violated": sorted(a for a, c in cells.items() if c["status"] == "violated"),
            }
        )
    return MatrixReport(axioms=tuple(axioms), rows=tuple(rows), config=config.to_dict())
