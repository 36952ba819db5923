"""Batch front end.

Subcommands: ``evaluate``, ``compare``, ``axioms``, ``recover``, ``gallery``,
``gen``.  Exit codes follow one contract everywhere: 0 for success (and for
audits that found no violation), 1 when an audit found a violation, 2 on
parse/validation errors.  Randomized commands take ``--seed`` and default to
the documented constant 1729; reports embed their configuration for replay.
The ``FAIRAGG_THREADS`` environment variable caps trial parallelism.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from fairagg import fileio
from fairagg.errors import FairaggError, ParseError
from fairagg.gallery import build_gallery
from fairagg.harness import (
    AXIOMS,
    DEFAULT_SEED,
    THEOREM1_AXIOMS,
    GeneratorConfig,
    gen_problem,
    run_axiom_check,
    sample_act,
)
from fairagg.rules import leximin_key
from fairagg.welfare import hausdorff_distance, recover_weight_set, rule_welfare

import numpy as np


def _config_from_args(args) -> GeneratorConfig:
    fixed = None
    if getattr(args, "problem", None):
        problem, _ = fileio.load_problem_file(args.problem)
        fixed = fileio.problem_to_dict(problem)
    return GeneratorConfig(
        n=args.n,
        n_outcomes=args.outcomes,
        n_cells=args.cells,
        value_mode=args.value_mode,
        belief_mode=args.belief_mode,
        trials=args.trials,
        seed=args.seed,
        fixed=fixed,
    )


def cmd_evaluate(args) -> int:
    problem, acts = fileio.load_problem_file(args.problem)
    rule = fileio.load_rule_file(args.rule)
    names = args.acts or sorted(acts)
    missing = [name for name in names if name not in acts]
    if missing:
        raise ParseError(f"unknown act names: {missing}")
    if not names:
        raise ParseError("the problem file defines no acts")

    from fairagg.model import normalized_profile

    rows = []
    for name in names:
        if rule.has_score:
            key = rule.evaluate(problem, acts[name])
            display = f"{key:.12g}"
        else:
            key = leximin_key(normalized_profile(problem, acts[name]))
            display = "(" + ", ".join(f"{v:.12g}" for v in key) + ")"
        rows.append((name, key, display))
    rows.sort(key=lambda r: r[1], reverse=True)
    width = max(len(name) for name, _, _ in rows)
    header = "score" if rule.has_score else "sorted utilities"
    print(f"{'act'.ljust(width)}  {header}")
    for name, _, display in rows:
        print(f"{name.ljust(width)}  {display}")
    ranking = []
    for i, (name, key, _) in enumerate(rows):
        if i and rows[i - 1][1] == key:
            ranking.append(f"= {name}")
        elif i:
            ranking.append(f"> {name}")
        else:
            ranking.append(name)
    print("ranking:", " ".join(ranking))
    return 0


def cmd_compare(args) -> int:
    problem, acts = fileio.load_problem_file(args.problem)
    rule = fileio.load_rule_file(args.rule)
    for name in (args.first, args.second):
        if name not in acts:
            raise ParseError(f"unknown act name: {name}")
    order = rule.compare(problem, acts[args.first], acts[args.second])
    print(order.value)
    return 0


def cmd_axioms(args) -> int:
    rule = fileio.load_rule_file(args.rule)
    config = _config_from_args(args)
    axiom_list = args.axioms.split(",") if args.axioms else list(THEOREM1_AXIOMS)
    unknown = [a for a in axiom_list if a not in AXIOMS]
    if unknown:
        raise ParseError(f"unknown axioms: {unknown} (choose from {list(AXIOMS)})")
    reports = [run_axiom_check(rule, axiom, config) for axiom in axiom_list]
    payload = {
        "schema_version": fileio.SCHEMA_VERSION,
        "rule": rule.descriptor(),
        "config": config.to_dict(),
        "reports": [r.to_dict() for r in reports],
    }
    if args.out:
        fileio.save_json(args.out, payload)
    width = max(len(r.axiom) for r in reports)
    for r in reports:
        print(f"{r.axiom.ljust(width)}  {r.status}  ({r.trials} trials)")
    return 1 if any(r.violated for r in reports) else 0


def cmd_recover(args) -> int:
    rule = fileio.load_rule_file(args.rule)
    desc = rule.descriptor()
    n = args.n or (len(desc["vertices"][0]) if desc.get("vertices") else None) or (
        len(desc["weight"]) if desc.get("weight") else None
    ) or 2
    psi = rule_welfare(rule, n, via_probe=True)
    recovered = recover_weight_set(psi, grid=args.grid, seed=args.seed)
    payload = recovered.to_dict()
    payload["schema_version"] = fileio.SCHEMA_VERSION
    payload["rule"] = desc
    if desc.get("vertices"):
        payload["hausdorff_to_rule_vertices"] = hausdorff_distance(
            [tuple(v) for v in desc["vertices"]], recovered
        )
    if args.out:
        fileio.save_json(args.out, payload)
    verts = payload["vertices"]
    print(f"halfspaces: {len(payload['halfspaces'])}")
    if verts is not None:
        for v in verts:
            print("vertex:", ", ".join(f"{x:.6f}" for x in v))
    if "hausdorff_to_rule_vertices" in payload:
        print(f"hausdorff distance to rule vertices: {payload['hausdorff_to_rule_vertices']:.3g}")
    return 0


def cmd_gallery(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    files = build_gallery(seed=args.seed, trials=args.trials)
    for stem, payload in sorted(files.items()):
        fileio.save_json(out / f"{stem}.json", payload)
        print(f"wrote {out / (stem + '.json')}")
    return 0


def cmd_gen(args) -> int:
    config = GeneratorConfig(
        n=args.n,
        n_outcomes=args.outcomes,
        n_cells=args.cells,
        value_mode=args.value_mode,
        belief_mode=args.belief_mode,
        seed=args.seed,
    )
    problem = gen_problem(config)
    rng = np.random.default_rng(args.seed)
    acts = {f"act{i}": sample_act(problem, rng) for i in range(args.acts)}
    payload = fileio.problem_to_dict(problem, acts)
    if args.out:
        fileio.save_json(args.out, payload)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(fileio.dumps(payload))
    return 0


def _add_generator_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, default=2, help="number of individuals")
    p.add_argument("--outcomes", type=int, default=4, help="number of feasible outcomes")
    p.add_argument("--cells", type=int, default=3, help="partition cells")
    p.add_argument(
        "--value-mode", default="iid", choices=["iid", "common_values"], dest="value_mode"
    )
    p.add_argument(
        "--belief-mode",
        default="iid",
        choices=["iid", "common_beliefs", "designed_event"],
        dest="belief_mode",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fairagg",
        description="Evaluate acts under aggregation rules, audit axioms, recover weight sets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("evaluate", help="score/rank named acts from a problem file")
    p.add_argument("problem", help="problem JSON file")
    p.add_argument("rule", help="rule JSON file")
    p.add_argument("acts", nargs="*", help="act names (default: all)")
    p.set_defaults(fn=cmd_evaluate)

    p = sub.add_parser("compare", help="compare two named acts")
    p.add_argument("problem")
    p.add_argument("rule")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(fn=cmd_compare)

    p = sub.add_parser("axioms", help="audit axioms against a rule")
    p.add_argument("rule", help="rule JSON file")
    p.add_argument("--problem", help="optional fixed problem file used as the search base")
    p.add_argument("--axioms", help=f"comma-separated subset of {','.join(AXIOMS)}")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out", help="write the report collection to this JSON file")
    _add_generator_flags(p)
    p.set_defaults(fn=cmd_axioms)

    p = sub.add_parser("recover", help="rebuild a rule's weight set from its scores")
    p.add_argument("rule", help="rule JSON file")
    p.add_argument("--grid", type=int, default=1000, help="number of probe directions")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--n", type=int, default=0, help="override the number of individuals")
    p.add_argument("--out", help="write the recovered set to this JSON file")
    p.set_defaults(fn=cmd_recover)

    p = sub.add_parser("gallery", help="regenerate the counterexample gallery")
    p.add_argument("--out", default="gallery", help="output directory")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--trials", type=int, default=400)
    p.set_defaults(fn=cmd_gallery)

    p = sub.add_parser("gen", help="generate a random problem file")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--acts", type=int, default=2, help="number of random acts to attach")
    p.add_argument("--out", help="output file (default: stdout)")
    _add_generator_flags(p)
    p.set_defaults(fn=cmd_gen)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except FairaggError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
