"""Aggregation of individual preferences over uncertain prospects.

The package models collective choice problems in which each individual holds
a payoff function over outcomes and a subjective belief over a finite state
partition.  It provides:

* the core model (``model``): acts, 0-1 normalization, expected utilities;
* mixing constructions (``mixing``): refinements, coin-toss events,
  pseudo-mixed acts, designed-probability problems;
* an aggregation-rule zoo (``rules``) behind one compare/score interface;
* welfare-function analysis (``welfare``): property checks and recovery of a
  rule's weight polytope from black-box score probes;
* a randomized axiom-audit harness (``harness``) with reproducible witnesses;
* a batch CLI (``cli``) plus JSON schemas (``fileio``).
"""

from fairagg.model import (
    Act,
    Belief,
    Individual,
    Problem,
    StatePartition,
    ValueFunction,
    Violation,
    induced_distribution,
    normalize_values,
    normalized_profile,
    normalized_seu,
    seu,
    validate_problem,
)
from fairagg.mixing import (
    RefinementMap,
    binary_act,
    coin_toss_event,
    lift_act,
    mixed_act_on,
    problem_with_event,
    problem_with_two_events,
    pseudo_mixed_act,
    refine_proportional,
)
from fairagg.rules import (
    AggregationRule,
    CostFunction,
    Ordering,
    WeightSet,
    belief_weighted_utilitarian_rule,
    compare,
    evaluate,
    indifference_rule,
    leximin_key,
    max_weight_rule,
    nash_rule,
    parity_rule,
    relative_fair_rule,
    relative_leximin_rule,
    relative_maximin_rule,
    relative_utilitarian_rule,
    rule_from_descriptor,
    variational_rule,
)
from fairagg.welfare import (
    PropertyVerdict,
    RecoveredWeightSet,
    WelfareFunction,
    check_homogeneous,
    check_monotone,
    check_quasiconcave,
    check_symmetric,
    check_translation_invariant,
    hausdorff_distance,
    probe_act,
    property_profile,
    psi_of_rule,
    recheck_property,
    recover_weight_set,
    rule_welfare,
)
from fairagg.harness import (
    AXIOMS,
    DEFAULT_SEED,
    THEOREM1_AXIOMS,
    AxiomReport,
    GeneratorConfig,
    MatrixReport,
    axiom_matrix,
    check_anonymity,
    check_belief_irrelevance,
    check_ci,
    check_continuity_witness,
    check_iie,
    check_pareto,
    check_rci,
    check_saa,
    check_separability,
    check_spm,
    check_strong_pareto,
    check_wpm,
    check_wrci,
    gen_inessential_expansion,
    gen_problem,
    replay_witness,
    run_axiom_check,
    sample_act,
)

__version__ = "0.1.0"
