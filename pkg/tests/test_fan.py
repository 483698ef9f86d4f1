from fractions import Fraction as F

import pytest
from hypothesis import given

from convnormal.errors import DimensionMismatch, NotAVertex, NotRefining
from convnormal.fan import (
    cone_in_vertex_cone,
    edge_hypothesis,
    normal_fan,
    phi,
    phi_table,
    refines,
)
from convnormal.geometry import minkowski_sum, scale
from convnormal.paperlab import hexagon, hexagon_square, simplex2, unit_cube, unit_square

from conftest import polytopes


def test_fan_of_square():
    fan = normal_fan(unit_square())
    vc = fan.vertex_cones()
    assert len(vc) == 4
    assert vc[unit_square().vertex_index((0, 0))].generators == ((-1, 0), (0, -1))
    top = [f for f in fan.cones if f.dim == 2][0]
    assert fan.cone(top).generators == ()


def test_fan_of_cube_counts():
    fan = normal_fan(unit_cube())
    assert sum(1 for f in fan.cones if f.dim == 0) == 8
    assert all(len(c.generators) == 3 for f, c in fan.cones.items() if f.dim == 0)


def test_hexagon_refines_square():
    P, Q = hexagon(), hexagon_square()
    assert refines(P, Q)
    assert not refines(Q, P)
    with pytest.raises(DimensionMismatch):
        refines(P, unit_cube())


def test_phi_golden():
    P, Q = hexagon(), hexagon_square()
    img = phi(P, Q, [(-1, -1), (0, 0)])
    assert img.dim == 0 and Q.face_points(img) == [(0, 0)]
    assert Q.face_points(phi(P, Q, [(3, 0)])) == [(2, 0)]
    assert Q.face_points(phi(P, Q, [(0, 0), (3, 0)])) == [(0, 0), (2, 0)]


def test_phi_requires_refinement():
    with pytest.raises(NotRefining):
        phi(hexagon_square(), hexagon(), [(0, 0)])
    with pytest.raises(NotRefining):
        phi_table(simplex2(), unit_square())


def test_cone_in_vertex_cone():
    Q = hexagon_square()
    assert cone_in_vertex_cone((-1, 1), Q, (0, 0))
    assert not cone_in_vertex_cone((1, 1), Q, (0, 0))
    with pytest.raises(NotAVertex):
        cone_in_vertex_cone((1, 1), Q, (1, 1))


def test_edge_hypothesis_marks_collapsed_edges():
    rep = edge_hypothesis(hexagon(), hexagon_square(), 2)
    assert not rep.holds
    assert len(rep.collapsed) == 2
    # hexagon edges have lengths 1..3, square edges 2: every non-collapsed edge fails at factor 2
    assert {p.status for p in rep.pairs} == {"fail", "collapsed"}
    assert edge_hypothesis(hexagon(), hexagon_square(), F(1, 2)).holds
    rep = edge_hypothesis(scale(unit_square(), 3), unit_square(), 3)
    assert rep.holds and not rep.collapsed


@given(polytopes(lattice=True), polytopes(lattice=True, max_pts=4))
def test_phi_preserves_inclusions(A, B):
    # N(A + B) refines N(B) for any A, B
    P = minkowski_sum(A, B)
    assert refines(P, B)
    table = phi_table(P, B)
    for F1 in P.faces():
        for F2 in P.faces():
            if F1.issubset(F2):
                assert table(F1).issubset(table(F2))
    # a vertex of P = a + b maps to b
    for f, img in table.assignment.items():
        assert f.dim >= img.dim


@given(polytopes())
def test_refinement_is_reflexive_and_scale_invariant(P):
    assert refines(P, P)
    assert refines(scale(P, F(5, 2)), P)
    table = phi_table(P, scale(P, 2))
    for f, img in table.assignment.items():
        assert f.vertex_indices == img.vertex_indices


def _argmax(P, c):
    vals = [sum(a * x for a, x in zip(c, v)) for v in P.vertices]
    m = max(vals)
    return {v for v, x in zip(P.vertices, vals) if x == m}


@given(polytopes(lattice=True, span=2), polytopes(lattice=True, span=2, max_pts=4))
def test_refinement_agrees_with_sampled_functionals(P, Q):
    # functionals maximized at the same vertex of P must share a maximizer on Q
    groups = {}
    for c in [(a, b) for a in range(-9, 10) for b in range(-9, 10) if (a, b) != (0, 0)]:
        top = _argmax(P, c)
        if len(top) == 1:
            groups.setdefault(next(iter(top)), []).append(c)
    violated = any(
        not set.intersection(*(_argmax(Q, c) for c in cs)) for cs in groups.values()
    )
    if refines(P, Q):
        assert not violated
    if violated:
        assert not refines(P, Q)
