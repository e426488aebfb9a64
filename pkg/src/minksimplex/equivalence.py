"""Machine checks for families of equivalent center conditions.

Each verify function evaluates every condition of one equivalence
family independently and reports the verdict vector.  The families are
theorems, so on sound input the verdicts must agree (all true or all
false); a mixed vector is evidence of an implementation bug, never of
the geometry, and the report says which conditions disagreed.

Campaign ids ("41", "42", "43", "44", "r41") are opaque labels fixed
by the command-line contract.

Exact polytopal instances give exact verdicts; smooth-ball instances
are evaluated at a relative tolerance of 1e-7 and their reports are
labeled "numeric".
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from .centers import exspheres, facet_bisector, incenter
from .config import EPS_EQUIV
from .construct import equilateral_triangle, quasiregular_simplex
from .errors import DegenerateInputError
from .linalg import Vec
from .norms import UnitBall, dual_ball, is_radon, isoperimetrix
from .scalars import EXACT, Rat
from .simplex import Simplex

EXACT_MODE = "exact"
NUMERIC_MODE = "numeric"


@dataclass(frozen=True)
class EquivalenceReport:
    family: str
    conditions: tuple
    verdicts: tuple
    mode: str
    fingerprint: dict
    witnesses: dict = field(default_factory=dict)

    @property
    def agreement(self) -> bool:
        return len(set(self.verdicts)) <= 1

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "conditions": list(self.conditions),
            "verdicts": list(self.verdicts),
            "agreement": self.agreement,
            "mode": self.mode,
            "fingerprint": self.fingerprint,
            "witnesses": self.witnesses,
        }


def _scalar_str(x) -> str:
    return repr(float(x)) if isinstance(x, float) else str(x)


def fingerprint(simplex: Simplex, ball: UnitBall, seed=None) -> dict:
    if ball.mode == EXACT:
        ball_part = {
            "kind": ball.kind,
            "vertices": [[_scalar_str(c) for c in v.coords] for v in ball.vertices],
        }
    else:
        ball_part = {"kind": ball.kind, "p": ball.p}
    return {
        "dimension": simplex.dim,
        "simplex": [[_scalar_str(c) for c in v.coords] for v in simplex.vertices],
        "ball": ball_part,
        "seed": seed,
    }


def _all_equal(values, mode: str) -> bool:
    vals = list(values)
    if mode == EXACT:
        return all(v == vals[0] for v in vals[1:])
    fs = [float(v) for v in vals]
    scale = max(max(abs(f) for f in fs), 1e-30)
    return max(fs) - min(fs) <= EPS_EQUIV * scale


def _points_equal(a: Vec, b: Vec, mode: str) -> bool:
    if mode == EXACT:
        return a == b
    scale = max(max(abs(float(c)) for c in (*a.coords, *b.coords)), 1.0)
    return all(
        abs(float(x) - float(y)) <= EPS_EQUIV * scale
        for x, y in zip(a.coords, b.coords)
    )


def _same_hyperplane(h1, h2, mode: str) -> bool:
    if mode == EXACT:
        return h1.same_set(h2)
    n1, n2 = h1.normal.to_float(), h2.normal.to_float()
    s1 = max((sum(float(c) ** 2 for c in n1.coords)) ** 0.5, 1e-30)
    s2 = max((sum(float(c) ** 2 for c in n2.coords)) ** 0.5, 1e-30)
    for sign in (1.0, -1.0):
        if all(
            abs(float(a) / s1 - sign * float(b) / s2) <= EPS_EQUIV
            for a, b in zip(n1.coords, n2.coords)
        ) and abs(float(h1.offset) / s1 - sign * float(h2.offset) / s2) <= EPS_EQUIV * max(
            abs(float(h1.offset)) / s1, 1.0
        ):
            return True
    return False


# -- individual conditions -------------------------------------------


def equal_heights(simplex: Simplex, ball: UnitBall):
    hs = simplex.heights(ball)
    return _all_equal(hs, ball.mode), [_scalar_str(h) for h in hs]


def equal_medians(simplex: Simplex, ball: UnitBall):
    ms = simplex.median_lengths(ball)
    return _all_equal(ms, ball.mode), [_scalar_str(m) for m in ms]


def equal_side_gauges(simplex: Simplex, ball: UnitBall):
    ss = simplex.side_lengths(ball)
    return _all_equal(ss, ball.mode), [_scalar_str(s) for s in ss]


def centroid_is_incenter(simplex: Simplex, ball: UnitBall):
    inc = incenter(simplex, ball)
    ok = _points_equal(inc.center, simplex.centroid, ball.mode)
    return ok, {
        "incenter": [_scalar_str(c) for c in inc.center.coords],
        "centroid": [_scalar_str(c) for c in simplex.centroid.coords],
    }


def equal_exradii(simplex: Simplex, ball: UnitBall):
    exs = exspheres(simplex, ball)
    radii = []
    for i in range(simplex.dim + 1):
        e = exs[i]
        if e is None:
            return False, {"missing_pattern": i}
        radii.append(e.radius)
    return _all_equal(radii, ball.mode), [_scalar_str(r) for r in radii]


def quasi_medial_hyperplanes_are_bisectors(simplex: Simplex, ball: UnitBall):
    """Set coincidence of the quasi-medial hyperplanes with the interior
    facet bisectors.  Both families contain the shared ridge of their
    facet pair, which pins the matching pairwise."""
    mismatches = []
    for (i, j), qm in simplex.quasi_medial_hyperplanes().items():
        bis = facet_bisector(simplex, ball, i, j)
        if not _same_hyperplane(qm, bis, ball.mode):
            mismatches.append([i, j])
    return not mismatches, {"mismatched_pairs": mismatches}


def is_reduced_triangle(simplex: Simplex, ball: UnitBall):
    """Planar reducedness, decided by the equal-heights characterization
    and audited by a necessary condition: pulling any vertex toward the
    opposite side must strictly shrink the minimal width.  The audit
    cannot prove reducedness; it guards against inverted logic."""
    if simplex.dim != 2:
        raise DegenerateInputError("reducedness check is planar")
    eq, hs = equal_heights(simplex, ball)
    if not eq:
        return False, {"heights": hs}
    w0 = simplex.min_width(ball)
    for delta in (Rat(1, 8), Rat(1, 16)):
        for i in range(3):
            shrunk = simplex.shrink_vertex(i, delta)
            w1 = shrunk.min_width(ball)
            if not w1 < w0:
                return False, {
                    "audit_failure": {
                        "vertex": i,
                        "delta": str(delta),
                        "width_before": _scalar_str(w0),
                        "width_after": _scalar_str(w1),
                    }
                }
    return True, {"heights": hs, "min_width": _scalar_str(w0)}


def quasiregular(simplex: Simplex, ball: UnitBall):
    g = simplex.centroid
    gs = [ball.gauge(v - g) for v in simplex.vertices]
    return _all_equal(gs, ball.mode), [_scalar_str(x) for x in gs]


# -- report assembly -------------------------------------------------


def _report(family, named_conditions, simplex, ball, seed) -> EquivalenceReport:
    labels, verdicts, payloads = [], [], {}
    for label, fn in named_conditions:
        verdict, payload = fn()
        labels.append(label)
        verdicts.append(verdict)
        payloads[label] = payload
    report = EquivalenceReport(
        family=family,
        conditions=tuple(labels),
        verdicts=tuple(verdicts),
        mode=EXACT_MODE if ball.mode == EXACT else NUMERIC_MODE,
        fingerprint=fingerprint(simplex, ball, seed),
        witnesses=payloads if len(set(verdicts)) > 1 else {},
    )
    return report


def verify_equal_heights_family(simplex: Simplex, ball: UnitBall, seed=None) -> EquivalenceReport:
    """Six conditions equivalent to the heights of the simplex being
    equal; three live on the simplex itself, three on its centroid-dual
    in the dual norm."""
    dual_T = simplex.dual_simplex()
    dual_B = dual_ball(ball)
    conds = [
        ("equal-heights", lambda: equal_heights(simplex, ball)),
        ("quasi-medial-are-bisectors", lambda: quasi_medial_hyperplanes_are_bisectors(simplex, ball)),
        ("centroid-is-incenter", lambda: centroid_is_incenter(simplex, ball)),
        ("equal-exradii", lambda: equal_exradii(simplex, ball)),
        ("dual-equal-medians", lambda: equal_medians(dual_T, dual_B)),
        ("dual-quasiregular", lambda: quasiregular(dual_T, dual_B)),
    ]
    return _report("41", conds, simplex, ball, seed)


def verify_quasiregular_family(simplex: Simplex, ball: UnitBall, seed=None) -> EquivalenceReport:
    """Six conditions equivalent to the centroid being a circumcenter;
    the mirror family of verify_equal_heights_family under duality."""
    dual_T = simplex.dual_simplex()
    dual_B = dual_ball(ball)
    conds = [
        ("quasiregular", lambda: quasiregular(simplex, ball)),
        ("equal-medians", lambda: equal_medians(simplex, ball)),
        ("dual-equal-heights", lambda: equal_heights(dual_T, dual_B)),
        ("dual-quasi-medial-are-bisectors", lambda: quasi_medial_hyperplanes_are_bisectors(dual_T, dual_B)),
        ("dual-centroid-is-incenter", lambda: centroid_is_incenter(dual_T, dual_B)),
        ("dual-equal-exradii", lambda: equal_exradii(dual_T, dual_B)),
    ]
    return _report("43", conds, simplex, ball, seed)


DUALITY_PERMUTATION = (5, 4, 0, 1, 2, 3)


def duality_bridge_holds(simplex: Simplex, ball: UnitBall) -> bool:
    """The quasiregular family evaluated on the centroid-dual pair must
    reproduce the equal-heights family verdicts, reindexed; exact
    because the double dual is the centered simplex itself."""
    primal = verify_equal_heights_family(simplex, ball)
    mirrored = verify_quasiregular_family(simplex.dual_simplex(), dual_ball(ball))
    return all(
        mirrored.verdicts[k] == primal.verdicts[DUALITY_PERMUTATION[k]]
        for k in range(6)
    )


def verify_reduced_family(simplex: Simplex, ball: UnitBall, seed=None) -> EquivalenceReport:
    """Planar: reduced <=> equal heights <=> equilateral in the
    isoperimetrix norm."""
    if simplex.dim != 2:
        raise DegenerateInputError("this family is planar")
    iso = isoperimetrix(ball)
    conds = [
        ("reduced", lambda: is_reduced_triangle(simplex, ball)),
        ("equal-heights", lambda: equal_heights(simplex, ball)),
        ("equilateral-in-isoperimetrix", lambda: equal_side_gauges(simplex, iso)),
    ]
    return _report("42", conds, simplex, ball, seed)


def verify_median_triangle_families(simplex: Simplex, ball: UnitBall, seed=None):
    """Planar pair of families relating a triangle and its median
    triangle, with reducedness read in the isoperimetrix norm."""
    if simplex.dim != 2:
        raise DegenerateInputError("this family is planar")
    tm = simplex.median_triangle()
    iso = isoperimetrix(ball)
    first = [
        ("quasiregular", lambda: quasiregular(simplex, ball)),
        ("median-triangle-equilateral", lambda: equal_side_gauges(tm, ball)),
        ("median-triangle-reduced-in-isoperimetrix", lambda: is_reduced_triangle(tm, iso)),
        ("median-triangle-equal-heights-in-isoperimetrix", lambda: equal_heights(tm, iso)),
    ]
    second = [
        ("equilateral", lambda: equal_side_gauges(simplex, ball)),
        ("median-triangle-quasiregular", lambda: quasiregular(tm, ball)),
        ("reduced-in-isoperimetrix", lambda: is_reduced_triangle(simplex, iso)),
        ("equal-heights-in-isoperimetrix", lambda: equal_heights(simplex, iso)),
    ]
    return (
        _report("44a", first, simplex, ball, seed),
        _report("44b", second, simplex, ball, seed),
    )


def verify_radon_collapse(simplex: Simplex, ball: UnitBall, seed=None) -> EquivalenceReport:
    """In a Radon plane the isoperimetrix is homothetic to the ball, so
    the median-triangle conditions collapse into the single norm."""
    if simplex.dim != 2:
        raise DegenerateInputError("this family is planar")
    if not is_radon(ball):
        raise DegenerateInputError("ball is not Radon")
    tm = simplex.median_triangle()
    conds = [
        ("quasiregular", lambda: quasiregular(simplex, ball)),
        ("median-triangle-equilateral", lambda: equal_side_gauges(tm, ball)),
        ("median-triangle-reduced", lambda: is_reduced_triangle(tm, ball)),
        ("median-triangle-centroid-is-incenter", lambda: centroid_is_incenter(tm, ball)),
    ]
    return _report("r41", conds, simplex, ball, seed)


# -- instance generators ---------------------------------------------


def _seeded_boundary_point(ball: UnitBall, rng: random.Random) -> Vec:
    d = ball.dim
    while True:
        coords = [rng.randint(-9, 9) for _ in range(d)]
        if any(coords):
            break
    if ball.mode == EXACT:
        v = Vec([Rat(c) for c in coords])
        return v / ball.gauge(v)
    v = Vec([float(c) for c in coords])
    return v / float(ball.gauge(v))


def _seeded_placement(simplex: Simplex, rng: random.Random, mode: str) -> Simplex:
    d = simplex.dim
    scale = Rat(rng.randint(1, 5), rng.randint(1, 3))
    shift = Vec([Rat(rng.randint(-8, 8), rng.choice((1, 2, 4))) for _ in range(d)])
    if mode != EXACT:
        scale = float(scale)
        shift = shift.to_float()
    return simplex.scale(scale).translate(shift)


def planted_generator(kind: str, ball: UnitBall, d: int, seed: int) -> Simplex:
    """Deterministic generator of simplices satisfying a named
    condition exactly: "ag_quasiregular" via the inscribed construction,
    "equal_heights" via the centroid-dual of an inscribed construction
    in the dual norm, "equilateral" (planar) via the unit-distance
    chord walk."""
    if ball.dim != d:
        raise DegenerateInputError("ball dimension mismatch")
    rng = random.Random(("plant", kind, d, seed).__repr__())
    if kind == "ag_quasiregular":
        anchor = _seeded_boundary_point(ball, rng)
        built = quasiregular_simplex(ball, anchor=anchor)
        return _seeded_placement(built.simplex, rng, ball.mode)
    if kind == "equal_heights":
        dual = dual_ball(ball)
        anchor = _seeded_boundary_point(dual, rng)
        built = quasiregular_simplex(dual, anchor=anchor)
        return _seeded_placement(built.simplex.dual_simplex(), rng, ball.mode)
    if kind == "equilateral":
        if d != 2:
            raise DegenerateInputError("equilateral planting is planar")
        anchor = _seeded_boundary_point(ball, rng)
        tri = equilateral_triangle(ball, anchor=anchor)
        return _seeded_placement(tri, rng, ball.mode)
    raise ValueError(f"unknown planted kind: {kind}")


def random_simplex(d: int, seed, span: int = 4, denominators=(2, 3, 6)) -> Simplex:
    """Random rational simplex with vertices in [-span, span]^d."""
    rng = random.Random(("random-simplex", d, seed).__repr__())
    while True:
        vertices = [
            Vec([Rat(rng.randint(-span * 6, span * 6), rng.choice(denominators)) for _ in range(d)])
            for _ in range(d + 1)
        ]
        try:
            return Simplex(vertices)
        except (DegenerateInputError, ValueError):
            continue


def random_negative(
    d: int,
    seed,
    reject: Callable[[Simplex], bool],
    attempts: int = 64,
) -> Simplex:
    """Random simplex rejected and resampled while `reject` holds, so a
    negative-branch label stays trustworthy."""
    for k in range(attempts):
        cand = random_simplex(d, (seed, k))
        if not reject(cand):
            return cand
    raise DegenerateInputError("could not sample a negative instance")


# -- campaigns --------------------------------------------------------


@dataclass(frozen=True)
class CampaignOutcome:
    family: str
    reports: tuple
    disagreements: tuple

    @property
    def all_agree(self) -> bool:
        return not self.disagreements


def _campaign_spec(family: str):
    if family == "41":
        return ("equal_heights",), lambda T, B, s: [verify_equal_heights_family(T, B, s)]
    if family == "42":
        return ("equal_heights",), lambda T, B, s: [verify_reduced_family(T, B, s)]
    if family == "43":
        return ("ag_quasiregular",), lambda T, B, s: [verify_quasiregular_family(T, B, s)]
    if family == "44":
        return (
            ("ag_quasiregular", "equilateral"),
            lambda T, B, s: list(verify_median_triangle_families(T, B, s)),
        )
    if family == "r41":
        return ("ag_quasiregular",), lambda T, B, s: [verify_radon_collapse(T, B, s)]
    raise ValueError(f"unknown family: {family}")


def verify_family(family: str, simplex: Simplex, ball: UnitBall, seed=None) -> list:
    """All reports of one family on a single instance (families produce
    one report each, except the median-triangle pair)."""
    _, verify = _campaign_spec(family)
    return verify(simplex, ball, seed)


def run_campaign(family: str, ball: UnitBall, trials: int, seed: int) -> CampaignOutcome:
    """Alternates planted-positive and rejected-random-negative
    instances; every report's verdicts must agree.  Trials are evaluated
    in index order so outcomes are reproducible byte for byte."""
    kinds, verify = _campaign_spec(family)
    d = ball.dim
    reports = []
    disagreements = []
    for t in range(trials):
        trial_seed = (seed, family, t)
        if t % 2 == 0:
            kind = kinds[(t // 2) % len(kinds)]
            instance = planted_generator(kind, ball, d, trial_seed.__repr__())
        else:
            def any_condition(T: Simplex) -> bool:
                return any(any(r.verdicts) for r in verify(T, ball, None))

            instance = random_negative(d, trial_seed, any_condition)
        for report in verify(instance, ball, repr(trial_seed)):
            reports.append(report)
            if not report.agreement:
                disagreements.append(report)
    return CampaignOutcome(family, tuple(reports), tuple(disagreements))
