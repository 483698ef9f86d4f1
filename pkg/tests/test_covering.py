import logging
import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from convnormal.covering import (
    ConvexCell,
    CoverVerdict,
    convex_normal_at,
    cover_translates,
    grid_values,
    intersect,
    is_covered,
    k_convex_normal,
    pair_convex_normal,
    split,
    subtract,
    witness_is_sound,
)
from convnormal.errors import DimensionMismatch, NonPositiveScale, NotLatticePolytope
from convnormal.geometry import Halfspace, hull, minkowski_sum, scale, volume
from convnormal.paperlab import interval_base_case, rectangle_07, simplex2, skew_pair, unit_square

from conftest import polytopes, rationals


def cells_volume(cells):
    return sum((c.volume() for c in cells), F(0))


def sample_points(T, n, rng, den=7):
    lo, hi = T.bounding_box()
    pts = []
    while len(pts) < n:
        p = tuple(F(rng.randint(int(a * den) - 1, int(b * den) + 1), den) for a, b in zip(lo, hi))
        if T.contains(p):
            pts.append(p)
    return pts


def in_union(p, translates):
    return any(U.contains(tuple(a - b for a, b in zip(p, g))) for g, U in translates)


class TestCells:
    def test_cell_round_trip(self):
        T = scale(simplex2(), 2)
        c = ConvexCell.from_polytope(T)
        assert c.to_polytope() == T
        assert ConvexCell(T.facets, T.vertices).vertices == T.vertices
        assert c.centroid() == (F(2, 3), F(2, 3))
        assert c.bounds() == ((0, 0), (2, 2))

    def test_split(self):
        c = ConvexCell.from_polytope(unit_square())
        below, above = split(c, Halfspace((1, 0), F(1, 3)))
        assert below.vertices == ((0, 0), (0, 1), (F(1, 3), 0), (F(1, 3), 1))
        assert above.volume() == F(2, 3)
        # a cut missing the cell leaves it on one side
        below, above = split(c, Halfspace((1, 1), F(5)))
        assert above is None and below.vertices == c.vertices

    def test_subtract_golden(self):
        T = ConvexCell.from_polytope(scale(simplex2(), 2))
        pieces = subtract(T, simplex2())
        assert cells_volume(pieces) == F(3, 2)
        assert intersect(T, simplex2()).to_polytope() == simplex2()

    def test_subtract_disjoint_and_full(self):
        T = ConvexCell.from_polytope(unit_square())
        far = unit_square().translate((5, 5))
        assert [c.vertices for c in subtract(T, far)] == [T.vertices]
        assert subtract(T, scale(unit_square(), 2).translate((-1, -1))) == []
        # touching along an edge removes nothing of positive volume
        assert cells_volume(subtract(T, unit_square().translate((1, 0)))) == 1


class TestGoldens:
    def test_scaled_simplex_is_2cn(self):
        assert convex_normal_at(scale(simplex2(), F(3, 2)), 2).covered

    def test_simplex_not_2cn(self):
        v = convex_normal_at(simplex2(), 2)
        assert not v.covered
        assert v.witness == (F(2, 3), F(2, 3))
        assert [c.vertices for c in v.residual_cells] == [((0, 1), (1, 0), (1, 1))]

    def test_pair_asymmetry(self):
        assert pair_convex_normal(rectangle_07(), unit_square()).covered
        v = pair_convex_normal(unit_square(), rectangle_07())
        assert not v.covered
        assert v.witness == (1, F(17, 20))

    def test_skew_pair(self):
        Q, P = skew_pair(1, 2, 3)
        v = pair_convex_normal(Q, P)
        assert not v.covered
        assert v.witness == (-2, F(4, 3))
        assert witness_is_sound(minkowski_sum(Q, P), cover_translates(Q, P), v.witness)

    @pytest.mark.parametrize("q,m", [(F(5, 2), F(3, 2)), (1, 100), (F(1, 2), F(1, 3)), (1, 1), (F(3, 2), 1)])
    def test_intervals(self, q, m):
        assert interval_base_case(q, m)

    def test_interval_too_short(self):
        # q below min(1, m) leaves a gap
        assert not interval_base_case(F(1, 2), 2)
        assert not interval_base_case(F(3, 4), 1)


class TestVerdictApi:
    def test_scale_bounds(self, caplog):
        with pytest.raises(NonPositiveScale):
            convex_normal_at(simplex2(), 1)
        with caplog.at_level(logging.WARNING):
            v = convex_normal_at(scale(simplex2(), 2), F(3, 2))
        assert v.notes and "below 2" in v.notes[0]
        assert caplog.records

    def test_invariants(self):
        with pytest.raises(ValueError):
            CoverVerdict(False)
        with pytest.raises(ValueError):
            CoverVerdict(True, (0, 0))
        assert not CoverVerdict(False, (0, 0))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            pair_convex_normal(simplex2(), hull([(0,), (1,)]))

    def test_grid_values(self):
        assert grid_values(3, 2) == [2, F(5, 2), 3]
        assert grid_values(F(5, 2), 3) == [2, F(7, 3), F(5, 2)]

    def test_k_convex_normal_grid(self):
        rep = k_convex_normal(scale(simplex2(), 2), 3, 2)
        assert rep.holds and [c for c, _ in rep.results] == [2, F(5, 2), 3]
        assert "finite check" in rep.claim

    def test_k_convex_normal_integer_steps(self):
        rep = k_convex_normal(scale(simplex2(), 2), 6, mode="integer-steps")
        assert rep.holds
        assert [c for c, _ in rep.results] == [2, 3]
        assert [c for c, _ in rep.inferred] == [4, 5, 6]
        with pytest.raises(NotLatticePolytope):
            k_convex_normal(scale(simplex2(), F(3, 2)), 4, mode="integer-steps")

    def test_k_convex_normal_failure(self):
        rep = k_convex_normal(simplex2(), 2)
        assert not rep.holds and rep.failures == [2]


# ---------------------------------------------------------------------------
# properties


@given(polytopes(), polytopes(max_pts=5))
def test_subtract_conserves_volume(T, U):
    cell = ConvexCell.from_polytope(T)
    pieces = subtract(cell, U)
    inner = intersect(cell, U)
    assert cells_volume(pieces) + (inner.volume() if inner else 0) == volume(T)
    for p in pieces:
        # pieces lie in T and meet U at most on their boundary
        assert all(T.contains(v) for v in p.vertices)
        assert not U.contains_strictly(p.centroid())


@given(polytopes(), st.lists(st.tuples(rationals(-2, 2, 2), rationals(-2, 2, 2)), min_size=1, max_size=6),
       polytopes(max_pts=5), st.integers(0, 10**6))
def test_cover_verdict_agrees_with_sampling(T, shifts, U, seed):
    translates = [(g, U) for g in shifts]
    v = is_covered(T, translates)
    if v.covered:
        for p in sample_points(T, 60, random.Random(seed)):
            assert in_union(p, translates)
    else:
        assert T.contains(v.witness) and not in_union(v.witness, translates)
        assert cells_volume(v.residual_cells) > 0


@given(polytopes(lattice=True, span=2))
def test_integer_induction_step(P):
    # for lattice P, being covered at c = 2 propagates to c = 3
    if convex_normal_at(P, 2).covered:
        assert convex_normal_at(P, 3).covered


@given(polytopes(span=2), polytopes(span=2))
def test_pair_witness_is_sound(Q, P):
    v = pair_convex_normal(Q, P)
    if not v.covered:
        assert witness_is_sound(minkowski_sum(Q, P), cover_translates(Q, P), v.witness)
