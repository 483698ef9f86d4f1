import math
from fractions import Fraction as F
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from convnormal.errors import (
    DimensionMismatch,
    Empty,
    EmptyInput,
    NonPositiveScale,
    NotFullDimensional,
    Unbounded,
)
from convnormal.geometry import (
    Halfspace,
    Polytope,
    as_rational,
    contains,
    facets_to_vertices,
    hull,
    lattice_length,
    minkowski_sum,
    polytope_contained,
    primitive_direction,
    scale,
    translate,
    triangulate,
    volume,
)
from convnormal.paperlab import hexagon, simplex2, unit_cube, unit_square

from conftest import polytopes, rationals


def shoelace(P):
    """Area of a polygon from its vertices in angular order (floats only for ordering)."""
    cx = sum(v[0] for v in P.vertices) / len(P.vertices)
    cy = sum(v[1] for v in P.vertices) / len(P.vertices)
    pts = sorted(P.vertices, key=lambda v: math.atan2(v[1] - cy, v[0] - cx))
    s = sum(a[0] * b[1] - a[1] * b[0] for a, b in zip(pts, pts[1:] + pts[:1]))
    return abs(s) / 2


class TestRationals:
    def test_strings_are_exact(self):
        assert as_rational("0.7") == F(7, 10)
        assert as_rational("3/2") == F(3, 2)
        assert as_rational(-4) == F(-4)

    @pytest.mark.parametrize("bad", [0.5, True, None])
    def test_rejects_floats_and_bools(self, bad):
        with pytest.raises((TypeError, ValueError)):
            as_rational(bad)

    def test_primitive_direction(self):
        assert primitive_direction((4, -6)) == ((2, -3), F(2))
        assert primitive_direction((F(1, 2), F(1, 2))) == ((1, 1), F(1, 2))


class TestHull:
    def test_triangle(self):
        T = simplex2()
        assert T.vertices == ((0, 0), (0, 1), (1, 0))
        assert [h.normal for h in T.facets] == [(-1, 0), (0, -1), (1, 1)]
        assert len(T.faces()) == 7

    def test_interior_and_duplicate_points_dropped(self):
        P = hull([(0, 0), (2, 0), (0, 2), (2, 2), (1, 1), (1, 0), (0, 0)])
        assert P == unit_square().scale(2)
        assert len(P.vertices) == 4

    def test_cube_faces(self):
        C = unit_cube()
        dims = [f.dim for f in C.faces()]
        assert (dims.count(0), dims.count(1), dims.count(2), dims.count(3)) == (8, 12, 6, 1)

    def test_hexagon(self):
        H = hexagon()
        assert len(H.vertices) == 6
        assert len(H.edges()) == 6

    def test_degenerate_inputs(self):
        with pytest.raises(EmptyInput):
            hull([])
        with pytest.raises(NotFullDimensional):
            hull([(0, 0), (1, 1), (2, 2)])
        with pytest.raises(DimensionMismatch):
            hull([(0, 0), (1, 0, 0)])

    def test_one_dimensional(self):
        I = hull([(F(1, 2),), (3,), (1,)])
        assert I.vertices == ((F(1, 2),), (F(3),))


class TestHalfspaces:
    def test_simplex_from_inequalities(self):
        hs = [Halfspace.from_coeffs((-1, 0), 0), Halfspace.from_coeffs((0, -1), 0), Halfspace.from_coeffs((2, 2), 3)]
        P = facets_to_vertices(hs)
        assert P == scale(simplex2(), F(3, 2))

    def test_redundant_inequalities_removed(self):
        hs = [Halfspace.from_coeffs(a, b) for a, b in [((1, 0), 1), ((-1, 0), 0), ((0, 1), 1), ((0, -1), 0), ((1, 1), 5)]]
        assert facets_to_vertices(hs).facets == unit_square().facets

    def test_unbounded(self):
        with pytest.raises(Unbounded):
            facets_to_vertices([Halfspace((-1, 0), F(0)), Halfspace((0, -1), F(0))])

    def test_empty(self):
        with pytest.raises(Empty):
            facets_to_vertices(
                [Halfspace((1, 0), F(0)), Halfspace((-1, 0), F(-1)), Halfspace((0, 1), F(1)), Halfspace((0, -1), F(0))]
            )

    def test_normalization(self):
        h = Halfspace.from_coeffs((F(1, 2), F(1, 3)), 1)
        assert h == Halfspace((3, 2), F(6))

    def test_constructor_cross_checks(self):
        with pytest.raises(ValueError):
            Polytope([(0, 0), (1, 0), (0, 1)], unit_square().facets)


class TestOperations:
    def test_minkowski_rectangle(self):
        R = hull([(0, 0), (1, 0), (0, F(7, 10)), (1, F(7, 10))])
        S = minkowski_sum(unit_square(), R)
        assert S == hull([(0, 0), (2, 0), (0, F(17, 10)), (2, F(17, 10))])

    def test_scale_rejects_nonpositive(self):
        for c in (0, -1, F(-1, 2)):
            with pytest.raises(NonPositiveScale):
                scale(simplex2(), c)

    def test_translate(self):
        T = translate(simplex2(), (F(1, 2), -1))
        assert T.vertices == ((F(1, 2), -1), (F(1, 2), 0), (F(3, 2), -1))

    def test_edge_lengths_match_gcd_oracle(self):
        for e in hexagon().edges():
            (x0, y0), (x1, y1) = e.endpoints
            assert e.length == math.gcd(int(x1 - x0), int(y1 - y0))
            assert lattice_length(e) == e.length
        assert sorted(e.length for e in hexagon().edges()) == [1, 1, 2, 2, 3, 3]

    def test_lattice_length_of_rational_edge(self):
        assert lattice_length(((0, 0), (F(3, 2), F(3, 4)))) == F(3, 4)

    def test_volumes(self):
        assert volume(unit_cube()) == 1
        assert volume(simplex2()) == F(1, 2)
        assert volume(hexagon()) == shoelace(hexagon())

    def test_containment(self):
        assert contains(simplex2(), (F(1, 2), F(1, 2)))
        assert not contains(simplex2(), (F(1, 2), F(2, 3)))
        assert polytope_contained(simplex2(), unit_square())
        assert not polytope_contained(unit_square(), simplex2())


# ---------------------------------------------------------------------------
# properties


@given(polytopes())
def test_hull_of_vertices_is_identity(P):
    assert hull(P.vertices) == P
    assert hull(list(P.vertices) + [tuple(sum(x) / len(P.vertices) for x in zip(*P.vertices))]) == P


@given(polytopes())
def test_dual_descriptions_round_trip(P):
    assert facets_to_vertices(P.facets) == P
    assert facets_to_vertices(P.facets).facets == P.facets


@given(polytopes(), polytopes())
def test_minkowski_matches_pairwise_hull(P, Q):
    S = minkowski_sum(P, Q)
    assert S == hull([tuple(a + b for a, b in zip(p, q)) for p, q in product(P.vertices, Q.vertices)])
    assert S == minkowski_sum(Q, P)


@given(polytopes(max_pts=5), polytopes(max_pts=5), polytopes(max_pts=5))
def test_minkowski_associative(A, B, C):
    assert minkowski_sum(minkowski_sum(A, B), C) == minkowski_sum(A, minkowski_sum(B, C))


@given(polytopes(dim=3, max_pts=6, span=2), polytopes(dim=3, max_pts=5, span=2))
def test_minkowski_3d_matches_pairwise_hull(P, Q):
    pts = [tuple(a + b for a, b in zip(p, q)) for p, q in product(P.vertices, Q.vertices)]
    assert minkowski_sum(P, Q) == hull(pts)


@given(polytopes(), rationals(1, 4).filter(lambda x: x > 0), rationals(1, 4).filter(lambda x: x > 0))
def test_scale_composition_and_convexity(P, a, b):
    assert scale(scale(P, a), b) == scale(P, a * b)
    assert minkowski_sum(scale(P, a), scale(P, b)) == scale(P, a + b)


@given(polytopes(), rationals(1, 3).filter(lambda x: x > 0))
def test_volume_scales_with_dimension(P, c):
    assert volume(scale(P, c)) == c ** P.dim * volume(P)
    assert volume(P) == shoelace(P)


@given(polytopes(dim=3, max_pts=7, span=2))
def test_triangulation_independent_of_apex_choice(P):
    simplices = triangulate(P)
    assert all(len(set(s)) == 4 for s in simplices)
    assert set().union(*map(set, simplices)) == set(range(len(P.vertices)))
    # negating every coordinate reverses the vertex order and so the pulling order
    mirrored = hull([tuple(-x for x in v) for v in P.vertices])
    assert volume(mirrored) == volume(P) > 0
    assert volume(scale(P, 2)) == 8 * volume(P)


@given(polytopes(), st.tuples(rationals(), rationals()))
def test_translation_preserves_shape(P, t):
    T = translate(P, t)
    assert volume(T) == volume(P)
    assert sorted(e.length for e in T.edges()) == sorted(e.length for e in P.edges())
    assert translate(T, tuple(-x for x in t)) == P


@given(polytopes(lattice=True))
def test_edges_are_face_lattice_edges(P):
    es = P.edges()
    # polygons: as many edges as vertices, every vertex on exactly two edges
    assert len(es) == len(P.vertices)
    for v in P.vertices:
        assert sum(v in e.endpoints for e in es) == 2
