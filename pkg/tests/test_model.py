"""Core model: normalization, expected utilities, validation."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fairagg import (
    Act,
    Belief,
    Individual,
    Problem,
    StatePartition,
    ValueFunction,
    gen_problem,
    GeneratorConfig,
    normalize_values,
    normalized_profile,
    normalized_seu,
    sample_act,
    seu,
    validate_problem,
)
from fairagg.errors import ConstantValueFunction, UnknownCell, UnknownOutcome


def two_person_problem():
    return Problem(
        outcomes=("a", "b", "c"),
        partition=StatePartition(("s1", "s2")),
        individuals=(
            Individual(
                ValueFunction({"a": 0.0, "b": 2.0, "c": 4.0}),
                Belief({"s1": 0.5, "s2": 0.5}),
            ),
            Individual(
                ValueFunction({"a": 5.0, "b": 5.0, "c": 7.0}),
                Belief({"s1": 0.25, "s2": 0.75}),
            ),
        ),
    )


class TestNormalizeValues:
    def test_affine_rescale(self):
        prob = two_person_problem()
        norm = normalize_values(prob, 0)
        assert (norm["a"], norm["b"], norm["c"]) == (0.0, 0.5, 1.0)

    def test_min_attained_twice(self):
        prob = two_person_problem()
        norm = normalize_values(prob, 1)
        assert (norm["a"], norm["b"], norm["c"]) == (0.0, 0.0, 1.0)

    def test_constant_rejected(self):
        prob = Problem(
            outcomes=("a", "b"),
            partition=StatePartition(("s1",)),
            individuals=(
                Individual(ValueFunction({"a": 3.0, "b": 3.0}), Belief({"s1": 1.0})),
                Individual(ValueFunction({"a": 0.0, "b": 1.0}), Belief({"s1": 1.0})),
            ),
        )
        with pytest.raises(ConstantValueFunction):
            normalize_values(prob, 0)

    def test_attains_both_bounds_exactly(self):
        for s in range(25):
            prob = gen_problem(GeneratorConfig(n=3, seed=s))
            m = prob.normalized_values_matrix
            assert np.all(m.min(axis=1) == 0.0)
            assert np.all(m.max(axis=1) == 1.0)


class TestSeu:
    def test_two_cell_average(self):
        prob = two_person_problem()
        f = Act({"s1": "a", "s2": "c"})
        # individual 0: 0.5 * 0 + 0.5 * 4
        assert seu(prob, 0, f) == pytest.approx(2.0, abs=1e-12)

    def test_constant_act(self):
        prob = two_person_problem()
        assert seu(prob, 1, prob.constant_act("a")) == pytest.approx(5.0, abs=1e-12)

    def test_hand_sum(self):
        # p = (0.25, 0.75), payoffs (4, 8): oracle is the written-out sum
        prob = Problem(
            outcomes=("a", "b"),
            partition=StatePartition(("s1", "s2")),
            individuals=(
                Individual(ValueFunction({"a": 4.0, "b": 8.0}), Belief({"s1": 0.25, "s2": 0.75})),
                Individual(ValueFunction({"a": 0.0, "b": 1.0}), Belief({"s1": 0.5, "s2": 0.5})),
            ),
        )
        f = Act({"s1": "a", "s2": "b"})
        expected = 0.25 * 4.0 + 0.75 * 8.0
        assert expected == 7.0
        assert seu(prob, 0, f) == pytest.approx(7.0, abs=1e-12)

    def test_malformed_acts(self):
        prob = two_person_problem()
        with pytest.raises(UnknownCell):
            seu(prob, 0, Act({"s1": "a"}))
        with pytest.raises(UnknownOutcome):
            seu(prob, 0, Act({"s1": "zz", "s2": "a"}))

    @given(t=st.floats(0.0, 1.0))
    @settings(max_examples=50, deadline=None)
    def test_linear_in_belief(self, t):
        prob = gen_problem(GeneratorConfig(n=2, seed=11))
        rng = np.random.default_rng(3)
        f = sample_act(prob, rng)
        p = prob.individuals[0].belief
        q = prob.individuals[1].belief
        blended = Belief(
            {c: t * p[c] + (1 - t) * q[c] for c in prob.partition.cells}
        )
        prob_blend = Problem(
            outcomes=prob.outcomes,
            partition=prob.partition,
            individuals=(
                Individual(prob.individuals[0].value, blended),
                prob.individuals[1],
            ),
        )
        prob_q = Problem(
            outcomes=prob.outcomes,
            partition=prob.partition,
            individuals=(
                Individual(prob.individuals[0].value, q),
                prob.individuals[1],
            ),
        )
        lhs = seu(prob_blend, 0, f)
        rhs = t * seu(prob, 0, f) + (1 - t) * seu(prob_q, 0, f)
        assert lhs == pytest.approx(rhs, abs=1e-12)


class TestNormalizedSeu:
    def test_best_and_worst_constants(self):
        prob = two_person_problem()
        assert normalized_seu(prob, 0, prob.constant_act("c")) == 1.0
        assert normalized_seu(prob, 0, prob.constant_act("a")) == 0.0

    def test_even_mixture(self):
        prob = two_person_problem()
        f = Act({"s1": "c", "s2": "a"})  # best/worst for individual 0 at 50/50
        assert normalized_seu(prob, 0, f) == pytest.approx(0.5, abs=1e-12)

    @given(
        alpha=st.floats(0.01, 100.0),
        beta=st.floats(-50.0, 50.0),
    )
    @settings(max_examples=60, deadline=None)
    def test_affine_invariance(self, alpha, beta):
        prob = gen_problem(GeneratorConfig(n=2, n_outcomes=5, seed=21))
        rng = np.random.default_rng(5)
        f = sample_act(prob, rng)
        ind = prob.individuals[0]
        rescaled = ValueFunction(
            {x: alpha * ind.value[x] + beta for x in prob.outcomes}
        )
        prob2 = Problem(
            outcomes=prob.outcomes,
            partition=prob.partition,
            individuals=(Individual(rescaled, ind.belief), prob.individuals[1]),
        )
        assert normalized_seu(prob2, 0, f) == pytest.approx(
            normalized_seu(prob, 0, f), abs=1e-12
        )


class TestNormalizedProfile:
    def test_unanimous_best_and_worst(self):
        shared = ValueFunction({"lo": 0.0, "hi": 1.0})
        prob = Problem(
            outcomes=("lo", "hi"),
            partition=StatePartition(("s1",)),
            individuals=(
                Individual(shared, Belief({"s1": 1.0})),
                Individual(shared, Belief({"s1": 1.0})),
            ),
        )
        assert np.array_equal(normalized_profile(prob, prob.constant_act("hi")), [1.0, 1.0])
        assert np.array_equal(normalized_profile(prob, prob.constant_act("lo")), [0.0, 0.0])

    def test_componentwise_oracle(self):
        # individual 0: 50/50 between worst and best -> 0.5
        # individual 1: act pays an outcome normalized to 0.3 for sure -> 0.3
        prob = Problem(
            outcomes=("a", "b", "z"),
            partition=StatePartition(("s1", "s2")),
            individuals=(
                Individual(
                    ValueFunction({"a": 0.0, "b": 1.0, "z": 0.0}),
                    Belief({"s1": 0.5, "s2": 0.5}),
                ),
                Individual(
                    ValueFunction({"a": 0.3, "b": 1.0, "z": 0.0}),
                    Belief({"s1": 1.0, "s2": 0.0}),
                ),
            ),
        )
        f = Act({"s1": "a", "s2": "b"})
        oracle = [
            sum(
                prob.individuals[i].belief[c]
                * normalize_values(prob, i)[f[c]]
                for c in prob.partition.cells
            )
            for i in range(2)
        ]
        profile = normalized_profile(prob, f)
        assert profile == pytest.approx(oracle, abs=1e-12)
        assert profile == pytest.approx([0.5, 0.3], abs=1e-12)

    def test_always_in_unit_box(self):
        for s in range(30):
            prob = gen_problem(GeneratorConfig(n=4, seed=100 + s))
            rng = np.random.default_rng(s)
            for _ in range(5):
                u = normalized_profile(prob, sample_act(prob, rng))
                assert np.all(u >= 0.0) and np.all(u <= 1.0)


class TestValidateProblem:
    def test_well_formed(self):
        assert validate_problem(two_person_problem()) == []

    def test_belief_not_normalized(self):
        prob = Problem(
            outcomes=("a", "b"),
            partition=StatePartition(("s1", "s2")),
            individuals=(
                Individual(ValueFunction({"a": 0.0, "b": 1.0}), Belief({"s1": 0.4, "s2": 0.5})),
                Individual(ValueFunction({"a": 0.0, "b": 1.0}), Belief({"s1": 0.5, "s2": 0.5})),
            ),
        )
        assert any(v.code == "BeliefNotNormalized" for v in validate_problem(prob))

    def test_too_few_outcomes(self):
        prob = Problem(
            outcomes=("a",),
            partition=StatePartition(("s1",)),
            individuals=(
                Individual(ValueFunction({"a": 0.0}), Belief({"s1": 1.0})),
                Individual(ValueFunction({"a": 0.0}), Belief({"s1": 1.0})),
            ),
        )
        codes = {v.code for v in validate_problem(prob)}
        assert "TooFewOutcomes" in codes

    def test_constant_values_flagged(self):
        prob = Problem(
            outcomes=("a", "b"),
            partition=StatePartition(("s1",)),
            individuals=(
                Individual(ValueFunction({"a": 1.0, "b": 1.0}), Belief({"s1": 1.0})),
                Individual(ValueFunction({"a": 0.0, "b": 1.0}), Belief({"s1": 1.0})),
            ),
        )
        assert any(v.code == "ConstantValues" for v in validate_problem(prob))
