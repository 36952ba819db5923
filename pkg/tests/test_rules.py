"""The rule zoo: scores, comparators, and their structural invariants."""

import numpy as np
import pytest

from fairagg import (
    CostFunction,
    GeneratorConfig,
    Ordering,
    WeightSet,
    belief_weighted_utilitarian_rule,
    compare,
    evaluate,
    gen_problem,
    indifference_rule,
    leximin_key,
    max_weight_rule,
    nash_rule,
    normalized_profile,
    parity_rule,
    relative_fair_rule,
    relative_leximin_rule,
    relative_maximin_rule,
    relative_utilitarian_rule,
    rule_from_descriptor,
    sample_act,
    variational_rule,
)
from fairagg.errors import ComparatorOnly, EmptyWeightSet, InvalidWeight, NotGrounded


def test_weight_set_validation():
    with pytest.raises(EmptyWeightSet):
        WeightSet(())
    with pytest.raises(InvalidWeight):
        WeightSet(((0.5, 0.6),))
    with pytest.raises(InvalidWeight):
        WeightSet(((-0.1, 1.1),))
    with pytest.raises(InvalidWeight):
        WeightSet(((0.5, 0.5), (0.5, 0.5)))


class TestScoreExamples:
    def test_relative_fair_singleton_is_weighted_sum(self):
        rule = relative_fair_rule(((0.5, 0.5),))
        assert rule.score_profile(np.array([0.3, 0.7])) == pytest.approx(0.5, abs=1e-15)

    def test_relative_fair_full_simplex_is_min(self):
        rule = relative_fair_rule(WeightSet.simplex(2))
        assert rule.score_profile(np.array([0.3, 0.7])) == 0.3

    def test_relative_fair_two_vertex_oracle(self):
        # oracle: dense sampling over the segment between the two vertices
        rule = relative_fair_rule(((0.3, 0.7), (0.7, 0.3)))
        u = np.array([1.0, 0.0])
        lam = np.linspace(0.0, 1.0, 20001)
        hull = np.outer(lam, (0.3, 0.7)) + np.outer(1 - lam, (0.7, 0.3))
        dense_min = float((hull @ u).min())
        assert dense_min == pytest.approx(0.3, abs=1e-9)
        assert rule.score_profile(u) == pytest.approx(dense_min, abs=1e-9)

    def test_maximin(self):
        rule = relative_maximin_rule()
        assert rule.score_profile(np.array([0.3, 0.7])) == 0.3
        assert rule.score_profile(np.array([0.4, 0.4, 0.4])) == 0.4

    def test_utilitarian_matches_singleton_fair(self):
        rng = np.random.default_rng(0)
        mu = (0.25, 0.75)
        ru = relative_utilitarian_rule(mu)
        rf = relative_fair_rule((mu,))
        for _ in range(1000):
            u = rng.uniform(0, 1, 2)
            assert abs(ru.score_profile(u) - rf.score_profile(u)) <= 1e-12

    def test_variational_exhaustive_oracle(self):
        cost = CostFunction((((1.0, 0.0), 0.2), ((0.0, 1.0), 0.0), ((0.5, 0.5), 0.0)))
        rule = variational_rule(cost)
        u = np.array([0.1, 0.9])
        candidates = [1.0 * 0.1 + 0.2, 0.9 + 0.0, 0.5 * 0.1 + 0.5 * 0.9]
        assert min(candidates) == pytest.approx(0.3, abs=1e-15)
        assert rule.score_profile(u) == pytest.approx(0.3, abs=1e-15)

    def test_variational_groundedness(self):
        with pytest.raises(NotGrounded):
            variational_rule([((1.0, 0.0), 0.2), ((0.0, 1.0), 0.1)])

    def test_variational_zero_penalties_match_relative_fair(self):
        verts = ((0.2, 0.8), (0.6, 0.4), (0.5, 0.5))
        vr = variational_rule([(v, 0.0) for v in verts])
        rf = relative_fair_rule(verts)
        rng = np.random.default_rng(1)
        for _ in range(1000):
            u = rng.uniform(0, 1, 2)
            assert abs(vr.score_profile(u) - rf.score_profile(u)) <= 1e-12

    def test_max_weight(self):
        rule = max_weight_rule(((0.3, 0.7), (0.7, 0.3)))
        assert rule.score_profile(np.array([1.0, 0.0])) == pytest.approx(0.7, abs=1e-15)
        mix = rule.score_profile(np.array([0.5, 0.5]))
        assert mix == pytest.approx(0.5, abs=1e-15)  # the coin-toss mix drops below 0.7

    def test_nash(self):
        rule = nash_rule()
        assert rule.score_profile(np.array([0.5, 0.5])) == 0.25
        assert rule.score_profile(np.array([0.0, 0.9])) == 0.0

    def test_nash_mixing_reversal_numbers(self):
        # the restricted-independence failure, by direct product evaluation
        rule = nash_rule()
        f, g = np.array([0.5, 0.5]), np.array([0.9, 0.2])
        assert rule.score_profile(f) == pytest.approx(0.25) and rule.score_profile(
            g
        ) == pytest.approx(0.18)
        fm, gm = 0.5 * f + 0.5, 0.5 * g + 0.5
        assert rule.score_profile(fm) == pytest.approx(0.5625)
        assert rule.score_profile(gm) == pytest.approx(0.57)
        assert rule.score_profile(f) > rule.score_profile(g)
        assert rule.score_profile(fm) < rule.score_profile(gm)

    def test_indifference(self):
        rule = indifference_rule()
        prob = gen_problem(GeneratorConfig(seed=3))
        rng = np.random.default_rng(3)
        f, g = sample_act(prob, rng), sample_act(prob, rng)
        assert rule.compare(prob, f, g) is Ordering.Indifferent
        assert rule.evaluate(prob, f) == 0.0

    def test_parity_switches_on_outcome_count(self):
        rule = parity_rule()
        u = np.array([0.9, 0.1])
        odd = gen_problem(GeneratorConfig(n_outcomes=3, seed=4))
        even = gen_problem(GeneratorConfig(n_outcomes=4, seed=4))
        assert rule.score_profile(u, odd) == pytest.approx(0.5)
        assert rule.score_profile(u, even) == pytest.approx(0.1)

    def test_belief_weighted_weights(self):
        prob = gen_problem(GeneratorConfig(seed=5, belief_mode="designed_event"))
        rule = belief_weighted_utilitarian_rule()
        w = rule.weights_for(prob)
        p = prob.beliefs_matrix[:, 0]
        expected = (0.1 + p) / (0.1 + p).sum()
        assert w == pytest.approx(expected, abs=1e-15)
        assert w.sum() == pytest.approx(1.0, abs=1e-12)


class TestLeximin:
    def test_key_sorts(self):
        assert leximin_key((0.7, 0.2, 0.5)) == (0.2, 0.5, 0.7)
        assert leximin_key((0.3, 0.3)) == (0.3, 0.3)

    def test_key_permutation_invariant(self):
        rng = np.random.default_rng(6)
        for _ in range(200):
            u = rng.uniform(0, 1, 4)
            assert leximin_key(u) == leximin_key(u[rng.permutation(4)])

    def test_compare_examples(self):
        rule = relative_leximin_rule()
        assert rule.compare_profiles(np.array([0.2, 0.5]), np.array([0.2, 0.4])) is Ordering.FirstStrict
        assert rule.compare_profiles(np.array([0.5, 1.0]), np.array([0.5, 0.5])) is Ordering.FirstStrict
        assert rule.compare_profiles(np.array([0.3, 0.6]), np.array([0.6, 0.3])) is Ordering.Indifferent

    def test_refines_maximin(self):
        maximin = relative_maximin_rule()
        leximin = relative_leximin_rule()
        rng = np.random.default_rng(7)
        for _ in range(2000):
            u, v = rng.uniform(0, 1, 3), rng.uniform(0, 1, 3)
            mm = maximin.compare_profiles(u, v)
            lx = leximin.compare_profiles(u, v)
            if mm is not Ordering.Indifferent and abs(u.min() - v.min()) > 1e-12:
                assert lx is mm
            if lx is Ordering.Indifferent:
                assert leximin_key(u) == leximin_key(v)

    def test_no_score(self):
        prob = gen_problem(GeneratorConfig(seed=8))
        with pytest.raises(ComparatorOnly):
            evaluate(relative_leximin_rule(), prob, prob.constant_act("x0"))


class TestCompareContract:
    RULES = [
        relative_fair_rule(((0.3, 0.7), (0.7, 0.3))),
        relative_utilitarian_rule((0.5, 0.5)),
        relative_maximin_rule(),
        relative_leximin_rule(),
        nash_rule(),
        max_weight_rule(((0.3, 0.7), (0.7, 0.3))),
        variational_rule([((0.5, 0.5), 0.0), ((1.0, 0.0), 0.1)]),
    ]

    def test_antisymmetric_and_transitive_on_samples(self):
        rng = np.random.default_rng(9)
        prob = gen_problem(GeneratorConfig(n=2, seed=9))
        acts = [sample_act(prob, rng) for _ in range(8)]
        for rule in self.RULES:
            for f in acts:
                for g in acts:
                    o1, o2 = rule.compare(prob, f, g), rule.compare(prob, g, f)
                    assert o1 is o2.flipped()
            for f in acts:
                for g in acts:
                    for h in acts:
                        if (
                            rule.compare(prob, f, g) is not Ordering.SecondStrict
                            and rule.compare(prob, g, h) is not Ordering.SecondStrict
                        ):
                            assert rule.compare(prob, f, h) is not Ordering.SecondStrict

    def test_compare_consistent_with_evaluate(self):
        prob = gen_problem(GeneratorConfig(n=2, seed=10))
        rng = np.random.default_rng(10)
        f, g = sample_act(prob, rng), sample_act(prob, rng)
        for rule in self.RULES:
            if not rule.has_score:
                continue
            d = evaluate(rule, prob, f) - evaluate(rule, prob, g)
            order = compare(rule, prob, f, g)
            if d > 1e-12:
                assert order is Ordering.FirstStrict
            elif d < -1e-12:
                assert order is Ordering.SecondStrict
            else:
                assert order is Ordering.Indifferent

    def test_maximin_vs_profiles(self):
        prob = gen_problem(GeneratorConfig(seed=11))
        rng = np.random.default_rng(11)
        f, g = sample_act(prob, rng), sample_act(prob, rng)
        uf, ug = normalized_profile(prob, f), normalized_profile(prob, g)
        expected = (
            Ordering.FirstStrict
            if uf.min() > ug.min() + 1e-12
            else Ordering.SecondStrict
            if ug.min() > uf.min() + 1e-12
            else Ordering.Indifferent
        )
        assert compare(relative_maximin_rule(), prob, f, g) is expected


class TestPolytopeMinimum:
    def test_vertex_scan_matches_dense_sampling(self):
        # low Dirichlet concentration piles samples near the hull's vertices,
        # so the sampled minimum brackets the vertex scan from above
        rng = np.random.default_rng(12)
        for n, k in ((2, 3), (3, 4), (4, 6)):
            verts = rng.dirichlet(np.ones(n), size=k)
            rule = relative_fair_rule([tuple(v) for v in verts])
            u = rng.uniform(0, 1, n)
            vertex_min = rule.score_profile(u)
            lam = rng.dirichlet(np.full(k, 0.05), size=10_000)
            sampled = (lam @ verts) @ u
            assert sampled.min() >= vertex_min - 1e-9
            assert sampled.min() <= vertex_min + 1e-3


class TestDescriptorRoundTrip:
    def test_all_kinds(self):
        rules = [
            relative_fair_rule(((0.3, 0.7), (0.7, 0.3))),
            relative_utilitarian_rule((0.4, 0.6)),
            relative_maximin_rule(),
            relative_leximin_rule(),
            variational_rule([((0.5, 0.5), 0.0), ((1.0, 0.0), 0.25)]),
            indifference_rule(),
            parity_rule(),
            max_weight_rule(((0.2, 0.8), (0.9, 0.1))),
            nash_rule(),
            belief_weighted_utilitarian_rule(),
        ]
        rng = np.random.default_rng(13)
        prob = gen_problem(GeneratorConfig(seed=13))
        f, g = sample_act(prob, rng), sample_act(prob, rng)
        for rule in rules:
            clone = rule_from_descriptor(rule.descriptor())
            assert clone.descriptor() == rule.descriptor()
            assert clone.compare(prob, f, g) is rule.compare(prob, f, g)
