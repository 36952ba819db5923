"""The counterexample gallery: six rules, six axioms, one failure each.

Six rules each satisfy all but one of the core axioms (Pareto, continuity,
invariance under inessential expansion, preference for coin-toss mixing,
belief irrelevance, restricted independence); the gallery pins every rule to
its designated failure, keeps the replayable witness, and tabulates the
welfare-function property matrix alongside.  Everything is seeded, so repeated
runs produce byte-identical reports.
"""

from __future__ import annotations

from fairagg.harness import (
    DEFAULT_SEED,
    THEOREM1_AXIOMS,
    GeneratorConfig,
    axiom_matrix,
    run_axiom_check,
)
from fairagg.rules import (
    AggregationRule,
    belief_weighted_utilitarian_rule,
    indifference_rule,
    max_weight_rule,
    nash_rule,
    parity_rule,
    relative_fair_rule,
    relative_leximin_rule,
    relative_maximin_rule,
    relative_utilitarian_rule,
)
from fairagg.welfare import property_profile, rule_welfare

EXAMPLE_VERTICES = ((0.3, 0.7), (0.7, 0.3))

# each counterexample rule with the single axiom it is built to break
DESIGNATED_FAILURES = (
    ("indifference", "pareto"),
    ("relative_leximin", "continuity"),
    ("parity", "iie"),
    ("max_weight", "wpm"),
    ("belief_weighted_utilitarian", "belief_irrelevance"),
    ("nash", "rci"),
)


def gallery_rules() -> list[tuple[str, AggregationRule]]:
    return [
        ("relative_fair", relative_fair_rule(EXAMPLE_VERTICES)),
        ("indifference", indifference_rule()),
        ("relative_leximin", relative_leximin_rule()),
        ("parity", parity_rule()),
        ("max_weight", max_weight_rule(EXAMPLE_VERTICES)),
        ("belief_weighted_utilitarian", belief_weighted_utilitarian_rule()),
        ("nash", nash_rule()),
    ]


def _rule_by_label(label: str) -> AggregationRule:
    for name, rule in gallery_rules():
        if name == label:
            return rule
    raise KeyError(label)


def psi_matrix_rules() -> list[tuple[str, AggregationRule]]:
    return [
        ("relative_maximin", relative_maximin_rule()),
        ("utilitarian_equal", relative_utilitarian_rule((0.5, 0.5))),
        ("utilitarian_asymmetric", relative_utilitarian_rule((0.9, 0.1))),
        ("nash", nash_rule()),
        ("max_weight", max_weight_rule(EXAMPLE_VERTICES)),
        ("relative_fair", relative_fair_rule(EXAMPLE_VERTICES)),
    ]


def build_gallery(
    seed: int = DEFAULT_SEED, trials: int = 400, psi_samples: int = 2000
) -> dict[str, dict]:
    """All gallery payloads keyed by output file stem."""
    config = GeneratorConfig(trials=trials, seed=seed)
    files: dict[str, dict] = {}

    matrix = axiom_matrix(gallery_rules(), THEOREM1_AXIOMS, config)
    files["counterexample_matrix"] = matrix.to_dict()

    for label, axiom in DESIGNATED_FAILURES:
        report = run_axiom_check(_rule_by_label(label), axiom, config)
        files[f"witness_{label}"] = report.to_dict()

    psi_rows = {}
    for label, rule in psi_matrix_rules():
        psi = rule_welfare(rule, 2, via_probe=False, seed=seed)
        profile = property_profile(psi, samples=psi_samples, seed=seed)
        psi_rows[label] = {
            "rule": rule.descriptor(),
            "properties": {tag: verdict.to_dict() for tag, verdict in profile.items()},
            "holds": sorted(t for t, v in profile.items() if not v.violated),
        }
    files["psi_property_matrix"] = {
        "samples": psi_samples,
        "seed": seed,
        "rows": psi_rows,
    }
    return files
