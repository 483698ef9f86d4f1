"""Worked examples as executable cases, random instance generators and theorem harnesses.

Every harness is seeded; a failure records the seed and enough of the instance
to reproduce it.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .covering import convex_normal_at, grid_values, pair_convex_normal
from .errors import GenerationBudgetExceeded, UnknownExample
from .fan import edge_hypothesis, phi, phi_table, refines
from .geometry import (
    Polytope,
    affine_rank,
    as_rational,
    hull,
    minkowski_sum,
    polytope_contained,
    scale,
)
from .lattice import g_set, idp_pair, idp_single, lattice_points, lemmaA_holds, sumset

F = Fraction

# ---------------------------------------------------------------------------
# named polytopes


def simplex2() -> Polytope:
    return hull([(0, 0), (1, 0), (0, 1)])


def unit_square() -> Polytope:
    return hull([(0, 0), (1, 0), (0, 1), (1, 1)])


def unit_cube() -> Polytope:
    return hull([(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)])


def rectangle_07() -> Polytope:
    return hull([(0, 0), (1, 0), (0, F(7, 10)), (1, F(7, 10))])


def reeve_like_simplex() -> Polytope:
    """The lattice tetrahedron conv{0, (1,1,0), (1,0,1), (0,1,1)}, which is not IDP."""
    return hull([(0, 0, 0), (1, 1, 0), (1, 0, 1), (0, 1, 1)])


def hexagon() -> Polytope:
    return hull([(0, 0), (3, 0), (3, -2), (2, -3), (-1, -3), (-1, -1)])


def hexagon_square() -> Polytope:
    return hull([(0, 0), (2, 0), (2, -2), (0, -2)])


def skew_pair(n: int = 1, k: int = 2, l: int = 3) -> tuple[Polytope, Polytope]:
    """Two lattice triangles with incompatible fans, returned as (Q, P)."""
    Q = hull([(0, 0), (1, k), (0, 1)])
    P = hull([(0, 0), (-l, 1), (-(l - 1), 1)])
    return scale(Q, n), scale(P, n)


def interval(lo, hi) -> Polytope:
    return hull([(as_rational(lo),), (as_rational(hi),)])


# ---------------------------------------------------------------------------
# catalog


@dataclass
class ExampleCase:
    name: str
    anchor: str
    run: Callable[[], tuple[object, object]]


@dataclass
class ExampleResult:
    name: str
    anchor: str
    passed: bool
    expected: object
    actual: object
    elapsed: float


def _case_gset():
    expected = {
        (F(0), F(0)), (F(1), F(0)), (F(0), F(1)),
        (F(3, 2), F(0)), (F(1, 2), F(0)), (F(1, 2), F(1)),
        (F(0), F(3, 2)), (F(0), F(1, 2)), (F(1), F(1, 2)),
    }
    return expected, set(g_set(scale(simplex2(), F(3, 2))).points)


def _case_15_simplex_2cn():
    return True, convex_normal_at(scale(simplex2(), F(3, 2)), 2).covered


def _case_simplex_not_2cn():
    v = convex_normal_at(simplex2(), 2)
    gap = hull([(1, 0), (0, 1), (1, 1)])
    return (
        {"covered": False, "witness_in_gap": True},
        {"covered": v.covered, "witness_in_gap": v.witness is not None and gap.contains_strictly(v.witness)},
    )


def _case_p3():
    v = idp_single(reeve_like_simplex(), 2)
    return (False, (F(1), F(1), F(1))), (v.holds, v.witness)


def _case_polygons_idp():
    polys = [simplex2(), unit_square(), hexagon(), hull([(0, 0), (1, 2), (0, 1)]), hull([(0, 0), (3, 1), (1, 3)])]
    return [True] * len(polys), [idp_single(p, 4).holds for p in polys]


def _case_pair_asymmetry():
    Q, P = rectangle_07(), unit_square()
    return (True, False), (pair_convex_normal(Q, P).covered, pair_convex_normal(P, Q).covered)


def _case_simplex_pairs():
    D = simplex2()
    D15 = scale(D, F(3, 2))
    return (
        {"idp(D,D)": True, "cn(D,D)": False, "cn(1.5D,1.5D)": True},
        {
            "idp(D,D)": idp_pair(D, D).holds,
            "cn(D,D)": pair_convex_normal(D, D).covered,
            "cn(1.5D,1.5D)": pair_convex_normal(D15, D15).covered,
        },
    )


def _case_skew_pair():
    Q, P = skew_pair(1, 2, 3)
    v = idp_pair(Q, P)
    missing = lattice_points(minkowski_sum(Q, P)) - sumset(lattice_points(Q), lattice_points(P))
    return (
        {"idp": False, "convex_normal": False, "missing": {(F(-1), F(1)), (F(-1), F(2)), (F(0), F(2))}},
        {"idp": v.holds, "convex_normal": pair_convex_normal(Q, P).covered, "missing": set(missing.points)},
    )


def _case_phi_hexagon():
    P, Q = hexagon(), hexagon_square()
    img = phi(P, Q, [(-1, -1), (0, 0)])
    return (True, [(F(0), F(0))]), (refines(P, Q), Q.face_points(img))


def _case_minkowski_rectangle():
    return hull([(0, 0), (2, 0), (0, F(17, 10)), (2, F(17, 10))]), minkowski_sum(unit_square(), rectangle_07())


def _case_interval_base():
    cases = [(F(5, 2), F(3, 2)), (F(1), F(100)), (F(1, 2), F(1, 3))]
    return [True] * len(cases), [interval_base_case(q, m) for q, m in cases]


CATALOG: dict[str, ExampleCase] = {
    c.name: c
    for c in [
        ExampleCase("gset-1.5-simplex", "G-set of 3/2 times the standard triangle", _case_gset),
        ExampleCase("simplex-1.5-2cn", "3/2 times the standard triangle is 2-convex-normal", _case_15_simplex_2cn),
        ExampleCase("simplex-not-2cn", "the standard triangle is not 2-convex-normal", _case_simplex_not_2cn),
        ExampleCase("p3-not-idp", "(1,1,1) in 2P is not a sum of two lattice points of P", _case_p3),
        ExampleCase("polygons-idp", "lattice polygons have the IDP", _case_polygons_idp),
        ExampleCase("pair-asymmetry", "G(Q)+P = Q+P but G(P)+Q != P+Q for square and 7/10-rectangle", _case_pair_asymmetry),
        ExampleCase("simplex-pairs", "(D,D) has the IDP but is not convex-normal; (1.5D,1.5D) is", _case_simplex_pairs),
        ExampleCase("skew-pair-n1-k2-l3", "incompatible fans: neither IDP nor convex-normal", _case_skew_pair),
        ExampleCase("phi-hexagon", "edge (-1,-1)-(0,0) of the hexagon maps to vertex (0,0)", _case_phi_hexagon),
        ExampleCase("minkowski-rectangle", "unit square + 7/10-rectangle = [0,2] x [0,17/10]", _case_minkowski_rectangle),
        ExampleCase("interval-base-case", "intervals [0,q], [0,m] with q >= min(1, m)", _case_interval_base),
    ]
}


def run_example(name: str) -> ExampleResult:
    try:
        case = CATALOG[name]
    except KeyError:
        raise UnknownExample(f"no example named {name!r}; known: {', '.join(CATALOG)}") from None
    t0 = time.perf_counter()
    expected, actual = case.run()
    return ExampleResult(name, case.anchor, expected == actual, expected, actual, time.perf_counter() - t0)


def run_catalog(filter: str | None = None) -> list[ExampleResult]:
    names = [n for n in CATALOG if filter is None or filter in n]
    if filter is not None and not names:
        raise UnknownExample(f"no example matches {filter!r}")
    return [run_example(n) for n in names]


# ---------------------------------------------------------------------------
# intervals


def interval_base_case(q, m) -> bool:
    """Covering verdict for the interval pair ([0, m], [0, q]) through the real engine.

    The hypothesis ``q >= min(1, m)`` is not enforced; a violating input simply
    gets whatever verdict the covering check produces.
    """
    q, m = as_rational(q), as_rational(m)
    return pair_convex_normal(interval(0, m), interval(0, q)).covered


# ---------------------------------------------------------------------------
# generators


def _rand_rational(rng: random.Random, lo: int, hi: int, max_den: int) -> Fraction:
    den = rng.randint(1, max_den)
    return F(rng.randint(lo * den, hi * den), den)


def random_lattice_polytope(rng: random.Random, d: int, size: int = 3, npts: int | None = None) -> Polytope:
    """Hull of a few random integer points in [0, size]^d, retried until full-dimensional."""
    npts = npts or d + 2
    for _ in range(1000):
        pts = {tuple(rng.randint(0, size) for _ in range(d)) for _ in range(npts)}
        if len(pts) > d and affine_rank(sorted(pts)) == d:
            return hull(pts)
    raise GenerationBudgetExceeded("could not sample a full-dimensional lattice polytope")


def random_zonotope_summand(rng: random.Random, d: int, nseg: int, size: int = 2) -> list[tuple]:
    segs = []
    while len(segs) < nseg:
        u = tuple(rng.randint(-size, size) for _ in range(d))
        if any(u):
            segs.append(u)
    return segs


def _add_segments(P: Polytope, segs) -> Polytope:
    for u in segs:
        seg_pts = {tuple(v) for v in P.vertices} | {tuple(a + b for a, b in zip(v, u)) for v in P.vertices}
        P = hull(seg_pts)
    return P


_SCALES = [F(1), F(1), F(1, 2), F(2, 3), F(3, 2), F(4, 3)]


def gen_theorem_pair(seed: int, d: int = 2, size: int = 3, max_segments: int = 2,
                     max_tries: int = 100) -> tuple[Polytope, Polytope]:
    """A random rational pair (Q, P) with N(P) refining N(Q) and long enough edges.

    Q is a random lattice polytope, possibly rescaled and shifted to rational
    position; P = d*Q + (a few segments) + shift. Both hypotheses are
    re-verified before returning.
    """
    rng = random.Random(seed)
    for _ in range(max_tries):
        if d == 1:
            m = _rand_rational(rng, 0, size, 4) or F(1, 2)
            q = m + _rand_rational(rng, 0, size, 4)
            Q = interval(0, m)
            P = interval(0, q)
        else:
            Q = random_lattice_polytope(rng, d, size)
            Q = scale(Q, rng.choice(_SCALES))
            P = _add_segments(scale(Q, d), random_zonotope_summand(rng, d, rng.randint(0, max_segments)))
        Q = Q.translate([_rand_rational(rng, -2, 2, 3) for _ in range(d)])
        P = P.translate([_rand_rational(rng, -2, 2, 3) for _ in range(d)])
        if refines(P, Q) and edge_hypothesis(P, Q, d).holds:
            return Q, P
    raise GenerationBudgetExceeded(f"seed {seed}: no valid pair in {max_tries} tries")


# ---------------------------------------------------------------------------
# harnesses


@dataclass
class TrialReport:
    label: str
    trials: int = 0
    failures: list[tuple[int, str, str]] = field(default_factory=list)
    elapsed: float = 0.0
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def _describe(*polys: Polytope) -> str:
    return " | ".join(repr(p) for p in polys)


def containment_after_alignment(Q: Polytope, P: Polytope, d: int | None = None) -> bool:
    """With a vertex v of P and its image w = Phi(v) moved to 0, is Q - w inside (P - v)/d?

    Checked for every vertex v of P.
    """
    d = d or P.dim
    table = phi_table(P, Q)
    for f, img in table.assignment.items():
        if f.dim != 0:
            continue
        v = P.vertices[f.vertex_indices[0]]
        w = Q.vertices[img.vertex_indices[0]]
        Qs = Q.translate([-x for x in w])
        Ps = scale(P.translate([-x for x in v]), F(1, d))
        if not polytope_contained(Qs, Ps):
            return False
    return True


def harness_mainB(trials: int, d: int = 2, seed: int = 0) -> TrialReport:
    """Generated pairs satisfying the fan and edge hypotheses must be convex-normal."""
    rep = TrialReport(f"edge-length criterion, d={d}")
    t0 = time.perf_counter()
    for i in range(trials):
        s = seed * 1_000_003 + i
        Q, P = gen_theorem_pair(s, d)
        rep.trials += 1
        v = pair_convex_normal(Q, P)
        if not v.covered:
            rep.failures.append((s, _describe(Q, P), f"uncovered, witness {v.witness}"))
        elif d > 1 and not containment_after_alignment(Q, P, d):
            rep.failures.append((s, _describe(Q, P), "Q not inside (1/d)P after alignment"))
    rep.elapsed = time.perf_counter() - t0
    return rep


def control_pairs(seed: int = 0, n: int = 10) -> list[tuple[str, Polytope, Polytope]]:
    """Pairs violating the edge-length hypothesis: shrunk P, equal triangles, skew fans."""
    out = [("simplex-self", simplex2(), simplex2()), ("skew-1-2-3",) + skew_pair(1, 2, 3)]
    for i in range(n):
        Q, P = gen_theorem_pair(seed * 7919 + i, 2)
        out.append((f"shrunk-{i}", Q, scale(P, F(1, 4))))
    return out


def harness_controls(seed: int = 0, n: int = 10) -> TrialReport:
    """Runs the control set; here 'failures' are expected and show the checks have teeth."""
    rep = TrialReport("controls (hypotheses violated)")
    t0 = time.perf_counter()
    for name, Q, P in control_pairs(seed, n):
        rep.trials += 1
        v = pair_convex_normal(Q, P)
        if not v.covered:
            rep.failures.append((seed, name, f"uncovered, witness {v.witness}"))
    rep.elapsed = time.perf_counter() - t0
    return rep


def harness_main_lemma(P: Polytope, c_max: int, grid_denom: int | None = None) -> TrialReport:
    """If P is covered at c = 2, it must stay covered at every integer c up to c_max.

    With ``grid_denom`` the rational grid in [2, 3] is checked as well; that
    part is a finite spot check, not a proof.
    """
    rep = TrialReport(f"integer chain up to c={c_max}")
    t0 = time.perf_counter()
    if not convex_normal_at(P, 2).covered:
        rep.notes.append("excluded: not covered at c = 2")
        rep.elapsed = time.perf_counter() - t0
        return rep
    cs = [F(c) for c in range(3, c_max + 1)]
    if grid_denom:
        cs = sorted(set(cs) | set(grid_values(3, grid_denom)) - {F(2)})
        rep.notes.append(f"grid-verified on [2, 3] with denominators <= {grid_denom}")
    for c in cs:
        rep.trials += 1
        v = convex_normal_at(P, c)
        if not v.covered:
            rep.failures.append((0, repr(P), f"uncovered at c = {c}, witness {v.witness}"))
    rep.elapsed = time.perf_counter() - t0
    return rep


def harness_sum_corollary(Q_parts: list[Polytope], P: Polytope) -> bool:
    """Per-part convex-normality of (Q_i, P) must carry over to (Q_1 + ... + Q_s, P).

    Returns True when the implication holds (vacuously when a part fails).
    """
    premise, conclusion = sum_corollary_case(Q_parts, P)
    return (not premise) or conclusion


def sum_corollary_case(Q_parts: list[Polytope], P: Polytope) -> tuple[bool, bool | None]:
    """(all parts covered, sum covered); the second is None when the first is False."""
    if not all(pair_convex_normal(Qi, P).covered for Qi in Q_parts):
        return False, None
    total = Q_parts[0]
    for Qi in Q_parts[1:]:
        total = minkowski_sum(total, Qi)
    return True, pair_convex_normal(total, P).covered


def gen_sum_instance(seed: int, size: int = 2) -> tuple[list[Polytope], Polytope]:
    """Lattice parts Q_i and a rational P; about half are theorem-backed, the rest arbitrary."""
    rng = random.Random(seed)
    parts = [random_lattice_polytope(rng, 2, size) for _ in range(rng.randint(1, 3))]
    total = parts[0]
    for Qi in parts[1:]:
        total = minkowski_sum(total, Qi)
    factor = rng.choice([F(1), F(2), F(3, 2)])
    P = _add_segments(scale(total, factor), random_zonotope_summand(rng, 2, rng.randint(0, 1)))
    P = P.translate([_rand_rational(rng, -1, 1, 2) for _ in range(2)])
    return parts, P


def harness_sum(instances: int, seed: int = 0, max_tries: int = 2000) -> TrialReport:
    """Collect ``instances`` cases whose parts are all covered and check the sum."""
    rep = TrialReport("sums of convex-normal parts")
    t0 = time.perf_counter()
    s = seed * 1_000_003
    tries = 0
    while rep.trials < instances:
        if tries >= max_tries:
            raise GenerationBudgetExceeded(f"only {rep.trials} qualifying instances in {max_tries} tries")
        parts, P = gen_sum_instance(s)
        premise, conclusion = sum_corollary_case(parts, P)
        if premise:
            rep.trials += 1
            if not conclusion:
                rep.failures.append((s, _describe(*parts, P), "sum not covered"))
        s += 1
        tries += 1
    rep.elapsed = time.perf_counter() - t0
    return rep


def gen_lemmaA_case(seed: int) -> tuple[Polytope, Fraction]:
    rng = random.Random(seed)
    d = rng.choice([2, 2, 3])
    P = random_lattice_polytope(rng, d, 2 if d == 3 else 3)
    r = rng.choice([F(1, 2), F(1), F(3, 2), F(2), F(7, 3), _rand_rational(rng, 0, 3, 5)])
    return P, r if r > 0 else F(1, 3)


def harness_lemmaA(trials: int, seed: int = 0) -> TrialReport:
    rep = TrialReport("G(rP) + G(P) inside G((r+1)P)")
    t0 = time.perf_counter()
    for i in range(trials):
        s = seed * 1_000_003 + i
        P, r = gen_lemmaA_case(s)
        rep.trials += 1
        if not lemmaA_holds(P, r):
            rep.failures.append((s, f"{P!r}, r={r}", "sumset not contained"))
    rep.elapsed = time.perf_counter() - t0
    return rep


def gen_main_lemma_polygon(seed: int) -> Polytope:
    """A random lattice polygon, doubled so that it is usually covered at c = 2."""
    rng = random.Random(seed)
    return scale(random_lattice_polytope(rng, 2, 2), rng.choice([1, 2]))


def harness_main_lemma_random(count: int, c_max: int = 6, grid_denom: int = 3,
                              seed: int = 0, max_tries: int = 500) -> TrialReport:
    """Run :func:`harness_main_lemma` on ``count`` random polygons that pass at c = 2."""
    rep = TrialReport(f"integer chain up to c={c_max} on {count} polygons")
    t0 = time.perf_counter()
    s = seed * 1_000_003
    used = 0
    for _ in range(max_tries):
        if used == count:
            break
        P = gen_main_lemma_polygon(s)
        sub = harness_main_lemma(P, c_max, grid_denom)
        if sub.trials:
            used += 1
            rep.trials += sub.trials
            rep.failures.extend((s, d, msg) for _, d, msg in sub.failures)
        s += 1
    else:
        raise GenerationBudgetExceeded(f"only {used} qualifying polygons")
    rep.notes.append(
        f"{count} polygons; integer c up to {c_max} and grid-verified on [2, 3] with "
        f"denominators <= {grid_denom}; rational c off the grid is not claimed"
    )
    rep.elapsed = time.perf_counter() - t0
    return rep
