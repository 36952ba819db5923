"""Welfare functions extracted from rules, their properties, and weight-set recovery.

A score-based rule induces a map from normalized utility vectors to scores:
feed the rule a probe problem whose act realizes exactly the requested
utility vector and read off the score.  Probe problems use two common-value
outcomes (one best, one worst) and a designed event, so the act's normalized
profile equals the requested vector to the last bit.

Property checks (monotone, quasiconcave, homogeneous, translation-invariant,
symmetric) are randomized searches that either produce a re-checkable witness
or report that no violation was found at the sampled scale.  Continuity is
deliberately not a checkable tag here: sampling cannot refute it, so
discontinuities are only ever demonstrated constructively (see the axiom
harness).

Weight-set recovery inverts the score map of min-of-weighted-sums rules.
Each probed direction ``u`` yields a supporting halfspace ``mu . u >= psi(u)``
for the weight polytope; intersecting them inside the simplex gives an outer
approximation that converges as the grid refines.  For two and three
individuals the intersection is carried out in closed form, and the direction
grid is adaptively enriched where the support function has kinks (the edge
normals of the polytope), which makes the recovered vertices sharp rather
than grid-limited.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from fairagg.errors import ComparatorOnly, InvalidVector, NotSupportFunction
from fairagg.mixing import binary_act, coin_toss_event, lift_act, problem_with_event
from fairagg.model import Act, Problem, ValueFunction
from fairagg.rules import AggregationRule, WeightSet

PROPERTY_TOL = 1e-9
MIN_GAP = 1e-3  # componentwise gap used when sampling dominating pairs

PROPERTY_TAGS = (
    "monotone",
    "quasiconcave",
    "homogeneous",
    "translation_invariant",
    "symmetric",
)


@dataclass(frozen=True)
class WelfareFunction:
    """A score map over utility vectors, calibrated so constants map to themselves.

    ``fn`` is the raw evaluator; calibration applies ``(fn(u) - offset)/scale``
    so the all-zeros vector maps to 0 and the all-ones vector to 1 whenever the
    raw anchors differ.
    """

    fn: Callable[[np.ndarray], float]
    n: int
    offset: float = 0.0
    scale: float = 1.0
    label: str = ""

    def __call__(self, u: Sequence[float] | np.ndarray) -> float:
        arr = np.asarray(u, dtype=np.float64)
        return (self.fn(arr) - self.offset) / self.scale


def as_welfare(fn: Callable[[np.ndarray], float], n: int, label: str = "") -> WelfareFunction:
    """Wrap a raw callable without calibration."""
    return WelfareFunction(fn=fn, n=n, label=label)


def probe_act(u: Sequence[float], beliefs_mode: str = "two_cell") -> tuple[Problem, Act]:
    """A problem and act whose normalized profile equals ``u`` exactly.

    All individuals share one value function with a best outcome worth 1 and a
    worst worth 0; the act pays the best outcome on an event individual ``i``
    believes has probability ``u[i]``.  ``beliefs_mode`` picks the partition
    shape: ``"two_cell"`` is the designed event itself, ``"refined"`` splits
    each cell in half first (same profile, different belief profile), which is
    useful when two realizations of the same vector are needed.
    """
    arr = np.asarray(u, dtype=np.float64)
    if arr.ndim != 1 or arr.size < 1:
        raise InvalidVector(f"expected a flat utility vector, got shape {arr.shape}")
    if np.any(arr < 0.0) or np.any(arr > 1.0):
        raise InvalidVector(f"probe vector must lie in [0, 1]^n, got {list(arr)}")
    n = arr.size
    shared = ValueFunction({"best": 1.0, "worst": 0.0})
    problem, event = problem_with_event(n, ("best", "worst"), [shared] * n, arr)
    act = binary_act(problem, "best", event, "worst")
    if beliefs_mode == "two_cell":
        return problem, act
    if beliefs_mode == "refined":
        rmap, _ = coin_toss_event(problem)
        return rmap.problem, lift_act(rmap, act)
    raise ValueError(f"unknown beliefs_mode {beliefs_mode!r}")


def psi_of_rule(
    rule: AggregationRule, u: Sequence[float], beliefs_mode: str = "two_cell"
) -> float:
    """Score the rule assigns to a probe act realizing ``u``."""
    if not rule.has_score:
        raise ComparatorOnly(f"{rule.kind} has no numeric score to probe")
    problem, act = probe_act(u, beliefs_mode)
    return rule.evaluate(problem, act)


def rule_welfare(
    rule: AggregationRule,
    n: int,
    *,
    via_probe: bool = True,
    beliefs_mode: str = "two_cell",
    verify_points: int = 32,
    seed: int = 0,
) -> WelfareFunction:
    """Calibrated welfare function of a score-based rule.

    With ``via_probe`` the evaluator routes every call through a probe
    problem (fully black-box).  Without it, profile-only rules are scored
    directly on the vector, which is much faster for bulk sampling; the
    shortcut is cross-checked against the probe path on ``verify_points``
    random vectors before being accepted.
    """
    if not rule.has_score:
        raise ComparatorOnly(f"{rule.kind} has no numeric score to probe")
    if via_probe or not rule.profile_only:
        raw: Callable[[np.ndarray], float] = lambda u: psi_of_rule(rule, u, beliefs_mode)
    else:
        raw = lambda u: rule.score_profile(u)
        rng = np.random.default_rng(seed)
        for _ in range(verify_points):
            u = rng.uniform(0.0, 1.0, n)
            if abs(raw(u) - psi_of_rule(rule, u, beliefs_mode)) > 1e-12:
                raise AssertionError(
                    "direct profile scoring disagrees with probe evaluation"
                )
    zero = raw(np.zeros(n))
    one = raw(np.ones(n))
    scale = one - zero
    if not (scale > 1e-9):
        # degenerate rule (e.g. constant score): leave the raw values alone
        return WelfareFunction(fn=raw, n=n, offset=0.0, scale=1.0, label=rule.kind)
    return WelfareFunction(fn=raw, n=n, offset=zero, scale=scale, label=rule.kind)


# ---------------------------------------------------------------------------
# property checks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PropertyVerdict:
    """Result of one sampled property check, with a re-checkable witness."""

    prop: str
    status: str  # "no_violation_found" | "violated"
    witness: dict | None
    samples: int

    @property
    def violated(self) -> bool:
        return self.status == "violated"

    def to_dict(self) -> dict:
        return {
            "property": self.prop,
            "status": self.status,
            "witness": self.witness,
            "samples": self.samples,
        }


def _verdict(prop: str, witness: dict | None, samples: int) -> PropertyVerdict:
    status = "violated" if witness is not None else "no_violation_found"
    return PropertyVerdict(prop=prop, status=status, witness=witness, samples=samples)


def check_monotone(psi: WelfareFunction, samples: int = 10_000, seed: int = 0) -> PropertyVerdict:
    """Search for a dominating pair the function fails to rank strictly higher.

    Pairs satisfy ``u >> v`` with componentwise gap at least ``MIN_GAP``; a
    credible strict increase must exceed ``PROPERTY_TOL``.
    """
    rng = np.random.default_rng(seed)
    n = psi.n
    probes = [(np.ones(n), np.zeros(n))]
    count = 0
    while count < samples:
        if probes:
            u, v = probes.pop()
        else:
            v = rng.uniform(0.0, 1.0, n) * (1.0 - MIN_GAP)
            u = v + rng.uniform(MIN_GAP, 1.0 - v)
        count += 1
        pu, pv = psi(u), psi(v)
        if pu - pv <= PROPERTY_TOL:
            return _verdict(
                "monotone",
                {"u": list(u), "v": list(v), "psi_u": pu, "psi_v": pv},
                count,
            )
    return _verdict("monotone", None, count)


def check_quasiconcave(
    psi: WelfareFunction, samples: int = 10_000, seed: int = 0
) -> PropertyVerdict:
    """Search for a midpoint scored below both endpoints."""
    rng = np.random.default_rng(seed)
    n = psi.n
    probes = [
        (np.eye(n)[i], np.eye(n)[j], 0.5) for i in range(n) for j in range(i + 1, n)
    ]
    count = 0
    while count < samples:
        if probes:
            u, v, t = probes.pop()
        else:
            u = rng.uniform(0.0, 1.0, n)
            v = rng.uniform(0.0, 1.0, n)
            t = rng.uniform(0.01, 0.99)
        count += 1
        mid = t * u + (1.0 - t) * v
        pm, pu, pv = psi(mid), psi(u), psi(v)
        if pm < min(pu, pv) - PROPERTY_TOL:
            return _verdict(
                "quasiconcave",
                {"u": list(u), "v": list(v), "t": float(t), "psi_mid": pm, "psi_u": pu, "psi_v": pv},
                count,
            )
    return _verdict("quasiconcave", None, count)


def check_homogeneous(
    psi: WelfareFunction, samples: int = 10_000, seed: int = 0
) -> PropertyVerdict:
    """Search for ``psi(alpha u) != alpha psi(u)`` with both points in the box."""
    rng = np.random.default_rng(seed)
    n = psi.n
    probes = [(np.full(n, 0.5), 0.5), (np.full(n, 0.5), 1.5), (np.zeros(n), 0.5)]
    count = 0
    while count < samples:
        if probes:
            u, alpha = probes.pop()
        else:
            u = rng.uniform(0.0, 1.0, n)
            top = 1.0 / max(float(u.max()), 1e-9)
            alpha = rng.uniform(0.05, min(top, 2.0))
        count += 1
        scaled = alpha * u
        if scaled.max() > 1.0:
            continue
        gap = psi(scaled) - alpha * psi(u)
        if abs(gap) > PROPERTY_TOL:
            return _verdict(
                "homogeneous",
                {"u": list(u), "alpha": float(alpha), "gap": float(gap)},
                count,
            )
    return _verdict("homogeneous", None, count)


def check_translation_invariant(
    psi: WelfareFunction, samples: int = 10_000, seed: int = 0
) -> PropertyVerdict:
    """Search for ``psi(u + c 1) != psi(u) + c`` with both points in the box."""
    rng = np.random.default_rng(seed)
    n = psi.n
    probes = [(np.full(n, 0.5), 0.2), (np.full(n, 0.5), -0.3)]
    count = 0
    while count < samples:
        if probes:
            u, c = probes.pop()
        else:
            u = rng.uniform(0.0, 1.0, n)
            lo, hi = -float(u.min()), 1.0 - float(u.max())
            c = rng.uniform(lo, hi)
        count += 1
        shifted = u + c
        if shifted.min() < 0.0 or shifted.max() > 1.0:
            continue
        gap = psi(shifted) - (psi(u) + c)
        if abs(gap) > PROPERTY_TOL:
            return _verdict(
                "translation_invariant",
                {"u": list(u), "c": float(c), "gap": float(gap)},
                count,
            )
    return _verdict("translation_invariant", None, count)


def check_symmetric(
    psi: WelfareFunction, samples: int = 10_000, seed: int = 0
) -> PropertyVerdict:
    """Search for a permutation of coordinates that changes the score."""
    rng = np.random.default_rng(seed)
    n = psi.n
    base = np.zeros(n)
    base[0] = 1.0
    probes = [(base, np.roll(np.arange(n), 1))]
    count = 0
    while count < samples:
        if probes:
            u, perm = probes.pop()
        else:
            u = rng.uniform(0.0, 1.0, n)
            perm = rng.permutation(n)
        count += 1
        gap = psi(u) - psi(u[perm])
        if abs(gap) > PROPERTY_TOL:
            return _verdict(
                "symmetric",
                {"u": list(u), "perm": [int(p) for p in perm], "gap": float(gap)},
                count,
            )
    return _verdict("symmetric", None, count)


_CHECKERS = {
    "monotone": check_monotone,
    "quasiconcave": check_quasiconcave,
    "homogeneous": check_homogeneous,
    "translation_invariant": check_translation_invariant,
    "symmetric": check_symmetric,
}


def property_profile(
    psi: WelfareFunction, samples: int = 10_000, seed: int = 0
) -> dict[str, PropertyVerdict]:
    """Run all five property checks and collect the verdicts."""
    return {tag: _CHECKERS[tag](psi, samples, seed) for tag in PROPERTY_TAGS}


def recheck_property(psi: WelfareFunction, verdict: PropertyVerdict) -> bool:
    """Replay a stored witness; True when the violation reproduces."""
    if verdict.witness is None:
        return False
    w = verdict.witness
    if verdict.prop == "monotone":
        return psi(w["u"]) - psi(w["v"]) <= PROPERTY_TOL
    if verdict.prop == "quasiconcave":
        u, v, t = np.asarray(w["u"]), np.asarray(w["v"]), w["t"]
        return psi(t * u + (1 - t) * v) < min(psi(u), psi(v)) - PROPERTY_TOL
    if verdict.prop == "homogeneous":
        u, a = np.asarray(w["u"]), w["alpha"]
        return abs(psi(a * u) - a * psi(u)) > PROPERTY_TOL
    if verdict.prop == "translation_invariant":
        u, c = np.asarray(w["u"]), w["c"]
        return abs(psi(u + c) - (psi(u) + c)) > PROPERTY_TOL
    if verdict.prop == "symmetric":
        u, perm = np.asarray(w["u"]), np.asarray(w["perm"], dtype=int)
        return abs(psi(u) - psi(u[perm])) > PROPERTY_TOL
    raise ValueError(f"unknown property {verdict.prop!r}")


# ---------------------------------------------------------------------------
# weight-set recovery
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RecoveredWeightSet:
    """Outer approximation of a weight polytope from support-function probes.

    ``halfspaces`` lists pairs ``(u, bound)`` meaning ``mu . u >= bound``.
    ``vertices`` is the explicit intersection inside the simplex (dimensions
    2 and 3 only).  Every stored halfspace is satisfied by every vertex up to
    a 1e-9 slack.
    """

    n: int
    halfspaces: tuple[tuple[tuple[float, ...], float], ...]
    vertices: tuple[tuple[float, ...], ...] | None
    meta: dict = field(default_factory=dict)

    def weight_set(self) -> WeightSet:
        """Clean the recovered vertices into a valid WeightSet."""
        if self.vertices is None:
            raise ValueError("no explicit vertices were recovered (n > 3)")
        cleaned = []
        for v in self.vertices:
            arr = np.clip(np.asarray(v, dtype=np.float64), 0.0, None)
            arr = arr / arr.sum()
            cleaned.append(tuple(float(x) for x in arr))
        # drop near-duplicates
        unique: list[tuple[float, ...]] = []
        for v in cleaned:
            if all(max(abs(a - b) for a, b in zip(v, w)) > 1e-12 for w in unique):
                unique.append(v)
        return WeightSet(tuple(unique))

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "halfspaces": [{"u": list(u), "bound": b} for u, b in self.halfspaces],
            "vertices": None if self.vertices is None else [list(v) for v in self.vertices],
            "meta": self.meta,
        }


def _plane_basis(n: int) -> np.ndarray:
    """Orthonormal basis of the sum-zero subspace (rows), for n = 3."""
    b1 = np.array([1.0, -1.0, 0.0]) / math.sqrt(2.0)
    b2 = np.array([1.0, 1.0, -2.0]) / math.sqrt(6.0)
    return np.vstack([b1, b2])


def _direction_from_angle(theta: float) -> np.ndarray:
    """Map an essential-circle angle to a box direction touching 0 and 1."""
    B = _plane_basis(3)
    w = math.cos(theta) * B[0] + math.sin(theta) * B[1]
    return (w - w.min()) / (w.max() - w.min())


def _angle_constraint(u: np.ndarray, bound: float) -> tuple[float, float] | None:
    """Convert ``mu . u >= bound`` to plane form ``P . w_hat >= h`` (n = 3)."""
    B = _plane_basis(3)
    w = u - u.mean()
    x, y = float(B[0] @ w), float(B[1] @ w)
    norm = math.hypot(x, y)
    if norm < 1e-12:
        return None
    theta = math.atan2(y, x)
    h = (bound - float(u.mean())) / norm
    return theta, h


def _clip_polygon(
    poly: list[tuple[float, float]], nx: float, ny: float, h: float, slack: float = 1e-9
) -> list[tuple[float, float]]:
    """Keep the part of a convex polygon with ``p . n >= h - slack``."""
    if not poly:
        return poly
    out: list[tuple[float, float]] = []
    m = len(poly)
    for i in range(m):
        a = poly[i]
        b = poly[(i + 1) % m]
        da = a[0] * nx + a[1] * ny - (h - slack)
        db = b[0] * nx + b[1] * ny - (h - slack)
        if da >= 0.0:
            out.append(a)
        if (da > 0.0 > db) or (da < 0.0 < db):
            t = da / (da - db)
            out.append((a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])))
    return out


def recover_weight_set(
    psi: WelfareFunction,
    grid: int = 1000,
    *,
    seed: int = 0,
    refine: bool = True,
) -> RecoveredWeightSet:
    """Rebuild the weight polytope of a min-of-weighted-sums welfare function.

    The function must pass sampled homogeneity and translation-invariance
    checks first (NotSupportFunction otherwise).  Each grid direction ``u`` in
    the unit box contributes the supporting halfspace ``mu . u >= psi(u)``;
    the recovered set is their intersection with the simplex, always an outer
    approximation of the true polytope.  With ``refine`` the grid is enriched
    at detected support-function kinks, pinning edge normals to near machine
    precision (n = 3).
    """
    pre_h = check_homogeneous(psi, samples=250, seed=seed)
    pre_t = check_translation_invariant(psi, samples=250, seed=seed + 1)
    if pre_h.violated or pre_t.violated:
        failed = [v.prop for v in (pre_h, pre_t) if v.violated]
        raise NotSupportFunction(f"pre-checks failed: {failed}")

    n = psi.n
    halfspaces: list[tuple[tuple[float, ...], float]] = []

    def add(u: np.ndarray) -> float:
        bound = psi(u)
        halfspaces.append((tuple(float(x) for x in u), float(bound)))
        return bound

    for i in range(n):
        e = np.zeros(n)
        e[i] = 1.0
        add(e)

    meta: dict = {"grid": grid, "seed": seed, "refined_probes": 0}

    if n == 2:
        k = max(2, (grid - n) // 2)
        for s in np.linspace(0.0, 1.0, k):
            add(np.array([1.0, float(s)]))
            add(np.array([float(s), 1.0]))
        lo, hi = 0.0, 1.0
        for (u0, u1), b in halfspaces:
            if u0 > u1:
                lo = max(lo, (b - u1) / (u0 - u1))
            elif u0 < u1:
                hi = min(hi, (b - u1) / (u0 - u1))
        if lo > hi:  # numeric fuzz on a singleton
            lo = hi = 0.5 * (lo + hi)
        verts = [(lo, 1.0 - lo)]
        if hi - lo > 1e-12:
            verts.append((hi, 1.0 - hi))
        return RecoveredWeightSet(
            n=2, halfspaces=tuple(halfspaces), vertices=tuple(verts), meta=meta
        )

    if n == 3:
        per_axis = max(2, int(math.sqrt(max(grid - n, 6) / 6.0)))
        lattice = np.linspace(0.0, 1.0, per_axis)
        for axis in range(3):
            for side in (0.0, 1.0):
                for a in lattice:
                    for b in lattice:
                        u = np.empty(3)
                        u[axis] = side
                        u[(axis + 1) % 3] = a
                        u[(axis + 2) % 3] = b
                        add(u)
        if refine:
            meta["refined_probes"] = _refine_kinks(psi, halfspaces, add)
        vertices = _vertices_from_halfspaces_3d(halfspaces)
        return RecoveredWeightSet(
            n=3, halfspaces=tuple(halfspaces), vertices=tuple(vertices), meta=meta
        )

    # n >= 4: halfspaces only (explicit vertex enumeration is out of scope)
    rng = np.random.default_rng(seed)
    for _ in range(max(0, grid - n)):
        add(rng.uniform(0.0, 1.0, n))
    return RecoveredWeightSet(n=n, halfspaces=tuple(halfspaces), vertices=None, meta=meta)


def _angle_table(
    halfspaces: list[tuple[tuple[float, ...], float]]
) -> list[tuple[float, float]]:
    """Deduplicated, sorted (angle, plane bound) constraints for n = 3."""
    table: dict[float, float] = {}
    for u, b in halfspaces:
        conv = _angle_constraint(np.asarray(u), b)
        if conv is None:
            continue
        theta, h = conv
        key = round(theta, 12)
        if key not in table or h > table[key]:
            table[key] = h
    return sorted(table.items())


def _support_point(t1: float, h1: float, t2: float, h2: float) -> tuple[float, float] | None:
    """Solve ``p . w(t_i) = h_i`` for the touching point of two support lines."""
    det = math.cos(t1) * math.sin(t2) - math.sin(t1) * math.cos(t2)
    if abs(det) < 1e-6:
        return None
    px = (h1 * math.sin(t2) - h2 * math.sin(t1)) / det
    py = (h2 * math.cos(t1) - h1 * math.cos(t2)) / det
    return px, py


def _refine_kinks(
    psi: WelfareFunction,
    halfspaces: list[tuple[tuple[float, ...], float]],
    add: Callable[[np.ndarray], float],
    rounds: int = 2,
    cluster_tol: float = 1e-7,
) -> int:
    """Probe the support function at its kink angles (edge normals), n = 3.

    Consecutive probe pairs whose support lines touch the same polytope vertex
    solve to the same point; runs of equal points delimit the vertices, and
    the crossing angle between two neighboring vertices is where an edge's own
    supporting halfspace lives.  Probing exactly there makes the halfspace
    intersection reproduce the edge, not an overshoot.
    """
    added = 0
    for _ in range(rounds):
        angles = _angle_table(halfspaces)
        if len(angles) < 3:
            break
        pts: list[tuple[float, tuple[float, float]]] = []
        for (t1, h1), (t2, h2) in zip(angles, angles[1:] + angles[:1]):
            p = _support_point(t1, h1, t2, h2)
            if p is not None:
                pts.append((t1, p))
        if not pts:
            break
        # group consecutive equal support points into runs (same vertex)
        runs: list[list[tuple[float, tuple[float, float]]]] = [[pts[0]]]
        for item in pts[1:]:
            prev = runs[-1][-1][1]
            if math.hypot(item[1][0] - prev[0], item[1][1] - prev[1]) < cluster_tol:
                runs[-1].append(item)
            else:
                runs.append([item])
        if len(runs) > 1:
            first, last = runs[0][0][1], runs[-1][-1][1]
            if math.hypot(first[0] - last[0], first[1] - last[1]) < cluster_tol:
                runs[0] = runs.pop() + runs[0]
        if len(runs) < 2:
            break  # single vertex: nothing to refine
        reps = [run[len(run) // 2][1] for run in runs]
        new_any = False
        for r in range(len(runs)):
            va = reps[r]
            vb = reps[(r + 1) % len(runs)]
            dx, dy = va[0] - vb[0], va[1] - vb[1]
            if math.hypot(dx, dy) < cluster_tol:
                continue
            theta = math.atan2(dx, -dy)  # solves (va - vb) . (cos, sin) = 0
            for cand in (theta, theta + math.pi, theta - math.pi):
                if -math.pi <= cand <= math.pi:
                    add(_direction_from_angle(cand))
                    added += 1
                    new_any = True
        if not new_any:
            break
    return added


def _vertices_from_halfspaces_3d(
    halfspaces: list[tuple[tuple[float, ...], float]]
) -> list[tuple[float, float, float]]:
    """Intersect the probe halfspaces with the simplex; return polygon vertices."""
    B = _plane_basis(3)
    center = np.full(3, 1.0 / 3.0)
    # simplex corners in plane coordinates
    poly = [tuple((np.eye(3)[i] - center) @ B.T) for i in range(3)]
    for theta, h in _angle_table(halfspaces):
        poly = _clip_polygon(poly, math.cos(theta), math.sin(theta), h)
        if not poly:
            break
    if not poly:  # degenerate (numeric collapse of a singleton)
        angles = _angle_table(halfspaces)
        best: tuple[float, float] | None = None
        for (t1, h1), (t2, h2) in zip(angles, angles[1:]):
            p = _support_point(t1, h1, t2, h2)
            if p is not None:
                best = p
                break
        poly = [best] if best is not None else [(0.0, 0.0)]
    verts = []
    for x, y in poly:
        mu = center + x * B[0] + y * B[1]
        verts.append(tuple(float(v) for v in mu))
    # dedupe within tolerance, preserving order (clip slack leaves ~1e-9 fuzz)
    out: list[tuple[float, float, float]] = []
    for v in verts:
        if all(max(abs(a - b) for a, b in zip(v, w)) > 5e-9 for w in out):
            out.append(v)
    return out


# ---------------------------------------------------------------------------
# Hausdorff distance between small convex sets
# ---------------------------------------------------------------------------


def _vertex_array(obj) -> np.ndarray:
    if isinstance(obj, WeightSet):
        return obj.matrix
    if isinstance(obj, RecoveredWeightSet):
        if obj.vertices is None:
            raise ValueError("recovered set has no explicit vertices")
        return np.asarray(obj.vertices, dtype=np.float64)
    return np.asarray(list(obj), dtype=np.float64)


def _convex_hull_2d(points: np.ndarray) -> np.ndarray:
    """Monotone-chain convex hull; returns hull vertices in CCW order."""
    pts = sorted(map(tuple, points))
    if len(pts) <= 2:
        return np.asarray(pts)

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: list[tuple[float, float]] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[tuple[float, float]] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return np.asarray(lower[:-1] + upper[:-1])


def _point_segment_distance(p: np.ndarray, a: np.ndarray, b: np.ndarray) -> float:
    d = b - a
    denom = float(d @ d)
    if denom == 0.0:
        return float(np.linalg.norm(p - a))
    t = float(np.clip((p - a) @ d / denom, 0.0, 1.0))
    return float(np.linalg.norm(p - (a + t * d)))


def _dist_point_to_hull(p: np.ndarray, verts: np.ndarray) -> float:
    """Euclidean distance from a point to the convex hull of ``verts``."""
    if np.any(np.all(verts == p, axis=1)):
        return 0.0
    if verts.shape[0] == 1:
        return float(np.linalg.norm(p - verts[0]))
    base = verts[0]
    D = verts - base
    _, s, Vt = np.linalg.svd(D, full_matrices=False)
    rank = int(np.sum(s > 1e-10))
    if rank == 0:
        return float(np.linalg.norm(p - base))
    if rank == 1:
        axis = Vt[0]
        ts = D @ axis
        pt = float((p - base) @ axis)
        perp = (p - base) - pt * axis
        clamped = min(max(pt, float(ts.min())), float(ts.max()))
        return float(math.hypot(np.linalg.norm(perp), pt - clamped))
    basis = Vt[:2]
    coords = D @ basis.T
    pc = (p - base) @ basis.T
    perp = (p - base) - basis.T @ pc
    hull = _convex_hull_2d(coords)
    inside = True
    m = len(hull)
    for i in range(m):
        a, b = hull[i], hull[(i + 1) % m]
        cr = (b[0] - a[0]) * (pc[1] - a[1]) - (b[1] - a[1]) * (pc[0] - a[0])
        if cr < -1e-12:
            inside = False
            break
    if inside and m >= 3:
        d2d = 0.0
    else:
        d2d = min(
            _point_segment_distance(pc, hull[i], hull[(i + 1) % m]) for i in range(m)
        )
    return float(math.hypot(np.linalg.norm(perp), d2d))


def hausdorff_distance(a, b) -> float:
    """Symmetric Hausdorff distance between two convex weight sets.

    Accepts WeightSet, RecoveredWeightSet, or plain vertex sequences.  Both
    arguments are treated as the convex hulls of their vertices; the maximum
    over one hull's vertices of the distance to the other hull realizes the
    one-sided distances because point-to-convex-set distance is convex.
    """
    va, vb = _vertex_array(a), _vertex_array(b)
    d_ab = max(_dist_point_to_hull(p, vb) for p in va)
    d_ba = max(_dist_point_to_hull(p, va) for p in vb)
    return max(d_ab, d_ba)
