"""Normal fans, fan refinement and the induced map between face lattices."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DimensionMismatch, NotAVertex, NotRefining
from .geometry import Edge, Face, Polytope, _dot, as_point, as_rational


@dataclass(frozen=True)
class Cone:
    """Cone spanned by the primitive outer normals of the facets containing a face."""

    generators: tuple[tuple[int, ...], ...]

    def interior_point(self, dim: int) -> tuple[int, ...]:
        # sum of the generators lies in the relative interior; the apex for the top face
        return tuple(sum(g[i] for g in self.generators) for i in range(dim))


@dataclass(frozen=True)
class Fan:
    polytope: Polytope
    cones: dict

    def cone(self, face: Face) -> Cone:
        return self.cones[face]

    def vertex_cones(self) -> dict[int, Cone]:
        return {f.vertex_indices[0]: c for f, c in self.cones.items() if f.dim == 0}


@dataclass(frozen=True)
class FaceMap:
    source: Polytope
    target: Polytope
    assignment: dict

    def __call__(self, face: Face) -> Face:
        return self.assignment[face]


def normal_fan(P: Polytope) -> Fan:
    cones = {}
    for f in P.faces():
        members = set(f.vertex_indices)
        gens = sorted(h.normal for h, inc in zip(P.facets, P.incidence) if members <= inc)
        cones[f] = Cone(tuple(gens))
    return Fan(P, cones)


def cone_in_vertex_cone(a, Q: Polytope, w) -> bool:
    """Whether the functional ``a`` is maximized over Q at the vertex ``w``."""
    w = as_point(w)
    if w not in Q.vertices:
        raise NotAVertex(f"{w} is not a vertex of {Q}")
    a = [as_rational(x) for x in a]
    return _dot(a, w) == max(_dot(a, u) for u in Q.vertices)


def refines(P: Polytope, Q: Polytope) -> bool:
    """Does every maximal cone of N(P) sit inside some maximal cone of N(Q)?"""
    if P.dim != Q.dim:
        raise DimensionMismatch(f"dimension {P.dim} vs {Q.dim}")
    for cone in normal_fan(P).vertex_cones().values():
        if not any(
            all(cone_in_vertex_cone(g, Q, w) for g in cone.generators) for w in Q.vertices
        ):
            return False
    return True


def _argmax_face(Q: Polytope, c) -> Face:
    vals = [_dot(c, u) for u in Q.vertices]
    best = max(vals)
    idx = tuple(i for i, v in enumerate(vals) if v == best)
    for f in Q.faces():
        if f.vertex_indices == idx:
            return f
    raise AssertionError(f"argmax set {idx} is not a face")


def _resolve_face(P: Polytope, F) -> Face:
    if isinstance(F, Face):
        return F
    pts = sorted(as_point(p) for p in F)
    idx = tuple(sorted(P.vertex_index(p) for p in pts))
    for f in P.faces():
        if f.vertex_indices == idx:
            return f
    raise ValueError(f"{pts} do not span a face of {P}")


def phi(P: Polytope, Q: Polytope, F, *, _checked: bool = False) -> Face:
    """Face of Q whose normal cone is the smallest cone of N(Q) containing C_F.

    ``F`` may be a :class:`Face` of P or the list of its vertices.
    """
    if not _checked and not refines(P, Q):
        raise NotRefining("N(P) does not refine N(Q)")
    F = _resolve_face(P, F)
    gens = normal_fan(P).cone(F).generators
    c = tuple(sum(g[i] for g in gens) for i in range(P.dim))
    return _argmax_face(Q, c)


def phi_table(P: Polytope, Q: Polytope) -> FaceMap:
    if not refines(P, Q):
        raise NotRefining("N(P) does not refine N(Q)")
    fan = normal_fan(P)
    assignment = {}
    for F, cone in fan.cones.items():
        assignment[F] = _argmax_face(Q, cone.interior_point(P.dim))
    return FaceMap(P, Q, assignment)


@dataclass(frozen=True)
class EdgePair:
    edge: Edge
    image: Face
    length: Fraction
    image_length: Fraction | None
    status: str  # "pass", "fail" or "collapsed"


@dataclass
class EdgeReport:
    factor: Fraction
    pairs: list[EdgePair] = field(default_factory=list)
    note: str = (
        "edges of P whose image in Q is a vertex carry no length constraint; "
        "they are listed as 'collapsed'"
    )

    @property
    def holds(self) -> bool:
        return all(p.status != "fail" for p in self.pairs)

    @property
    def collapsed(self) -> list[EdgePair]:
        return [p for p in self.pairs if p.status == "collapsed"]


def edge_hypothesis(P: Polytope, Q: Polytope, factor) -> EdgeReport:
    """Compare each edge of P with its image edge in Q: ``len(e_P) >= factor * len(e_Q)``."""
    factor = as_rational(factor)
    table = phi_table(P, Q)
    q_edges = {e.face: e for e in Q.edges()}
    report = EdgeReport(factor)
    for e in P.edges():
        img = table(e.face)
        if img.dim == 0:
            report.pairs.append(EdgePair(e, img, e.length, None, "collapsed"))
            continue
        lq = q_edges[img].length
        status = "pass" if e.length >= factor * lq else "fail"
        report.pairs.append(EdgePair(e, img, e.length, lq, status))
    return report
