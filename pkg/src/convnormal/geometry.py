"""Exact rational polytopes in R^d.

Every polytope is stored in a canonical dual description: a lexicographically
sorted vertex list and an irredundant, sorted list of facet inequalities
``a.x <= b`` with primitive integer normals ``a`` and rational offsets ``b``.
Both descriptions are computed by brute force over d-subsets, which is fine
for the dimensions this package targets (d <= 4) and keeps every step exact.
"""
from __future__ import annotations

import math
import numbers
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .errors import (
    DimensionMismatch,
    Empty,
    EmptyInput,
    NonPositiveScale,
    NotFullDimensional,
    Unbounded,
)

Point = tuple  # tuple[Fraction, ...]

__all__ = [
    "Edge",
    "Face",
    "Halfspace",
    "Point",
    "Polytope",
    "as_point",
    "as_rational",
    "contains",
    "edges",
    "faces",
    "facets_to_vertices",
    "hull",
    "lattice_length",
    "minkowski_sum",
    "polytope_contained",
    "primitive_direction",
    "scale",
    "translate",
    "volume",
]


# ---------------------------------------------------------------------------
# scalar and vector helpers

def as_rational(value) -> Fraction:
    """Convert ``value`` to a :class:`Fraction` without any rounding.

    Accepts ints, rationals (``Fraction``, ``gmpy2.mpq``) and strings such as
    ``"3/2"``, ``"-7/10"`` or ``"0.7"``. Floats are refused because most
    decimal literals have no exact binary representation.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, numbers.Rational):
        return Fraction(int(value.numerator), int(value.denominator))
    if isinstance(value, float):
        raise TypeError(f"float {value!r} is not exact; pass a string such as '7/10'")
    if hasattr(value, "__index__"):
        return Fraction(value.__index__())
    raise TypeError(f"cannot interpret {value!r} as a rational number")


def as_point(coords: Iterable) -> Point:
    return tuple(as_rational(c) for c in coords)


def _lcm_den(values: Iterable[Fraction]) -> int:
    d = 1
    for v in values:
        d = math.lcm(d, v.denominator)
    return d


def _primitive(vec: Sequence[int]) -> tuple[int, ...]:
    g = math.gcd(*vec)
    if g == 0:
        raise ValueError("zero vector has no primitive direction")
    return tuple(x // g for x in vec)


def _sign_canonical(vec: tuple[int, ...]) -> tuple[int, ...]:
    for x in vec:
        if x:
            return vec if x > 0 else tuple(-y for y in vec)
    return vec


def primitive_direction(vec: Sequence) -> tuple[tuple[int, ...], Fraction]:
    """Split a nonzero rational vector as ``k * u`` with ``u`` primitive and ``k > 0``."""
    vec = as_point(vec)
    den = _lcm_den(vec)
    ints = [int(x * den) for x in vec]
    g = math.gcd(*ints)
    if g == 0:
        raise ValueError("zero vector has no primitive direction")
    u = tuple(x // g for x in ints)
    return u, Fraction(g, den)


def _dot(a, x):
    return sum(ai * xi for ai, xi in zip(a, x))


def _det(matrix: Sequence[Sequence[int]]) -> int:
    """Integer determinant by fraction-free Bareiss elimination."""
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _rank(rows: Sequence[Sequence]) -> int:
    """Exact rank of a small rational (or integer) matrix."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        p = m[rank][col]
        for i in range(rank + 1, len(m)):
            f = m[i][col]
            if f:
                f = f / p
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank


def affine_rank(points: Sequence[Sequence]) -> int:
    """Dimension of the affine hull of ``points`` (-1 for no points)."""
    if not points:
        return -1
    p0 = points[0]
    return _rank([[a - b for a, b in zip(p, p0)] for p in points[1:]])


def _hyperplane_normal(rows: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Integer vector orthogonal to the d-1 given integer rows (cofactor expansion)."""
    d = len(rows[0])
    out = []
    for j in range(d):
        minor = [[r[k] for k in range(d) if k != j] for r in rows]
        out.append((-1) ** j * _det(minor))
    return tuple(out)


# ---------------------------------------------------------------------------
# data types

@dataclass(frozen=True, order=True)
class Halfspace:
    """The closed halfspace ``normal . x <= offset`` with a primitive normal."""

    normal: tuple[int, ...]
    offset: Fraction

    def __post_init__(self):
        if not any(self.normal):
            raise ValueError("halfspace normal must be nonzero")
        if math.gcd(*self.normal) != 1:
            raise ValueError(f"normal {self.normal} is not primitive")

    @classmethod
    def from_coeffs(cls, normal: Sequence, offset) -> "Halfspace":
        """Normalize an arbitrary rational inequality ``normal . x <= offset``."""
        a = as_point(normal)
        b = as_rational(offset)
        den = _lcm_den(a)
        ints = [int(x * den) for x in a]
        g = math.gcd(*ints)
        if g == 0:
            raise ValueError("halfspace normal must be nonzero")
        return cls(tuple(x // g for x in ints), b * den / g)

    @property
    def dim(self) -> int:
        return len(self.normal)

    def value(self, x) -> Fraction:
        return _dot(self.normal, x)

    def contains(self, x) -> bool:
        return _dot(self.normal, x) <= self.offset

    def translate(self, t) -> "Halfspace":
        return Halfspace(self.normal, self.offset + _dot(self.normal, t))

    def __str__(self):
        return f"{list(self.normal)}.x <= {self.offset}"


@dataclass(frozen=True, order=True)
class Face:
    """A nonempty face, identified by sorted indices into the parent's vertex list."""

    dim: int
    vertex_indices: tuple[int, ...]

    def __contains__(self, index: int) -> bool:
        return index in self.vertex_indices

    def issubset(self, other: "Face") -> bool:
        return set(self.vertex_indices) <= set(other.vertex_indices)


@dataclass(frozen=True)
class Edge:
    endpoints: tuple[Point, Point]
    direction: tuple[int, ...]
    length: Fraction
    face: Face | None = None


class Polytope:
    """A full-dimensional rational polytope in canonical dual description.

    Instances are immutable. Build them with :func:`hull` or
    :func:`facets_to_vertices`; the constructor expects canonical data and
    cross-checks the two descriptions against each other.
    """

    __slots__ = ("dim", "vertices", "facets", "incidence", "_faces", "_hash")

    def __init__(self, vertices: Iterable[Point], facets: Iterable[Halfspace], *, check: bool = True):
        verts = tuple(sorted(set(as_point(v) for v in vertices)))
        fac = tuple(sorted(set(facets)))
        if not verts:
            raise EmptyInput("a polytope needs at least one vertex")
        d = len(verts[0])
        self.dim = d
        self.vertices = verts
        self.facets = fac
        self.incidence = tuple(
            frozenset(i for i, v in enumerate(verts) if h.value(v) == h.offset) for h in fac
        )
        self._faces = None
        self._hash = None
        if check:
            self._validate()

    def _validate(self):
        d = self.dim
        if any(len(v) != d for v in self.vertices) or any(h.dim != d for h in self.facets):
            raise DimensionMismatch("vertices and facets disagree on the ambient dimension")
        if affine_rank(self.vertices) != d:
            raise NotFullDimensional(f"affine hull of vertices is not R^{d}")
        for h, inc in zip(self.facets, self.incidence):
            if not all(h.contains(v) for v in self.vertices):
                raise ValueError(f"vertex outside facet {h}")
            if affine_rank([self.vertices[i] for i in sorted(inc)]) != d - 1:
                raise ValueError(f"inequality {h} is not a facet")
        for i, v in enumerate(self.vertices):
            normals = [h.normal for h, inc in zip(self.facets, self.incidence) if i in inc]
            if len(normals) < d or _rank(normals) != d:
                raise ValueError(f"{v} is not a vertex of the facet description")

    # -- basic protocol ---------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Polytope):
            return NotImplemented
        return self.vertices == other.vertices

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.vertices)
        return self._hash

    def __repr__(self):
        pts = ", ".join("(" + ", ".join(str(x) for x in v) + ")" for v in self.vertices)
        return f"Polytope(dim={self.dim}, vertices=[{pts}])"

    # -- queries ------------------------------------------------------------
    @property
    def is_lattice(self) -> bool:
        return all(x.denominator == 1 for v in self.vertices for x in v)

    def contains(self, x) -> bool:
        x = as_point(x)
        if len(x) != self.dim:
            raise DimensionMismatch(f"point of dimension {len(x)} vs polytope of dimension {self.dim}")
        return all(h.contains(x) for h in self.facets)

    def contains_strictly(self, x) -> bool:
        return all(h.value(x) < h.offset for h in self.facets)

    def bounding_box(self) -> tuple[Point, Point]:
        lo = tuple(min(v[i] for v in self.vertices) for i in range(self.dim))
        hi = tuple(max(v[i] for v in self.vertices) for i in range(self.dim))
        return lo, hi

    def vertex_index(self, point) -> int:
        return self.vertices.index(as_point(point))

    def face_points(self, face: Face) -> list[Point]:
        return [self.vertices[i] for i in face.vertex_indices]

    def faces(self) -> list[Face]:
        if self._faces is None:
            self._faces = _face_lattice(self)
        return self._faces

    def edges(self) -> list[Edge]:
        out = []
        for f in self.faces():
            if f.dim != 1:
                continue
            v, w = (self.vertices[i] for i in f.vertex_indices)
            u, k = primitive_direction(tuple(b - a for a, b in zip(v, w)))
            out.append(Edge((v, w), u, k, f))
        return out

    def translate(self, t) -> "Polytope":
        t = as_point(t)
        if len(t) != self.dim:
            raise DimensionMismatch("translation vector has the wrong dimension")
        verts = [tuple(a + b for a, b in zip(v, t)) for v in self.vertices]
        return Polytope(verts, [h.translate(t) for h in self.facets], check=False)

    def scale(self, c) -> "Polytope":
        return scale(self, c)


# ---------------------------------------------------------------------------
# constructions

def _integerize(points: Sequence[Point]) -> tuple[int, list[tuple[int, ...]]]:
    den = _lcm_den(x for p in points for x in p)
    return den, [tuple(int(x * den) for x in p) for p in points]


def _from_integer_normals(den: int, pts: list[tuple[int, ...]], normals: Iterable[tuple[int, ...]]) -> Polytope:
    """Facets of conv(pts/den) among the candidate normals (both orientations are tried)."""
    d = len(pts[0])
    facets = set()
    for n in normals:
        vals = [_dot(n, p) for p in pts]
        for sign in (1, -1):
            best = max(sign * v for v in vals)
            tight = [p for p, v in zip(pts, vals) if sign * v == best]
            if len(tight) >= d and affine_rank(tight) == d - 1:
                normal = n if sign == 1 else tuple(-x for x in n)
                facets.add(Halfspace(normal, Fraction(best, den)))
    facets = sorted(facets)
    verts = []
    for p in pts:
        normals_at = [h.normal for h in facets if _dot(h.normal, p) == h.offset * den]
        if len(normals_at) >= d and _rank(normals_at) == d:
            verts.append(tuple(Fraction(x, den) for x in p))
    return Polytope(verts, facets)


def _dedupe_check(points: Iterable) -> list[Point]:
    pts = sorted(set(as_point(p) for p in points))
    if not pts:
        raise EmptyInput("no points given")
    d = len(pts[0])
    if d == 0 or any(len(p) != d for p in pts):
        raise DimensionMismatch("points have inconsistent dimensions")
    if affine_rank(pts) != d:
        raise NotFullDimensional(f"points do not affinely span R^{d}")
    return pts


def hull(points: Iterable) -> Polytope:
    """Convex hull of a finite full-dimensional point set."""
    pts = _dedupe_check(points)
    d = len(pts[0])
    den, ipts = _integerize(pts)
    if d == 1:
        return _from_integer_normals(den, ipts, [(1,)])
    normals = set()
    for combo in combinations(range(len(ipts)), d):
        p0 = ipts[combo[0]]
        rows = [tuple(a - b for a, b in zip(ipts[i], p0)) for i in combo[1:]]
        n = _hyperplane_normal(rows)
        if any(n):
            normals.add(_sign_canonical(_primitive(n)))
    return _from_integer_normals(den, ipts, sorted(normals))


def facets_to_vertices(halfspaces: Iterable[Halfspace]) -> Polytope:
    """Vertex enumeration for a bounded, full-dimensional intersection of halfspaces."""
    hs = []
    for h in halfspaces:
        if not isinstance(h, Halfspace):
            h = Halfspace.from_coeffs(*h)
        hs.append(h)
    if not hs:
        raise Unbounded("no inequalities: the whole space is unbounded")
    d = hs[0].dim
    if any(h.dim != d for h in hs):
        raise DimensionMismatch("inequalities have inconsistent dimensions")
    tightest: dict[tuple[int, ...], Fraction] = {}
    for h in hs:
        if h.normal not in tightest or h.offset < tightest[h.normal]:
            tightest[h.normal] = h.offset
    hs = [Halfspace(a, b) for a, b in sorted(tightest.items())]
    normals = [h.normal for h in hs]

    if _rank(normals) < d:
        if _feasible_rank_deficient(hs):
            raise Unbounded("the inequalities leave a lineality direction free")
        raise Empty("the inequalities are infeasible")

    verts = set()
    for combo in combinations(hs, d):
        det = _det([h.normal for h in combo])
        if det == 0:
            continue
        x = _cramer(combo, det)
        if all(h.contains(x) for h in hs):
            verts.add(x)
    if not verts:
        raise Empty("the inequalities are infeasible")
    for combo in combinations(normals, d - 1):
        if _rank(combo) != d - 1:
            continue
        y = _hyperplane_normal(combo) if d > 1 else (1,)
        for s in (1, -1):
            ray = tuple(s * c for c in y)
            if all(_dot(a, ray) <= 0 for a in normals):
                raise Unbounded(f"recession direction {ray}")
    verts = sorted(verts)
    if affine_rank(verts) != d:
        raise NotFullDimensional(f"the feasible region is not full-dimensional in R^{d}")
    facets = [
        h for h in hs
        if affine_rank([v for v in verts if h.value(v) == h.offset]) == d - 1
    ]
    return Polytope(verts, facets)


def _cramer(rows: Sequence[Halfspace], det: int) -> Point:
    d = len(rows)
    den = _lcm_den(h.offset for h in rows)
    rhs = [int(h.offset * den) for h in rows]
    out = []
    for j in range(d):
        m = [list(h.normal) for h in rows]
        for i in range(d):
            m[i][j] = rhs[i]
        out.append(Fraction(_det(m), det * den))
    return tuple(out)


def _feasible_rank_deficient(hs: list[Halfspace]) -> bool:
    # A nonempty polyhedron contains a basic point whose coordinates are bounded
    # by a Hadamard-type bound, so adding a generous box preserves feasibility.
    d = hs[0].dim
    den = _lcm_den(h.offset for h in hs)
    amax = max(abs(x) for h in hs for x in h.normal)
    bmax = max(abs(h.offset * den) for h in hs)
    bound = Fraction((d * amax) ** d * (int(bmax) + 1) + 1, den)
    box = []
    for i in range(d):
        e = tuple(1 if j == i else 0 for j in range(d))
        box.append(Halfspace(e, bound))
        box.append(Halfspace(tuple(-x for x in e), bound))
    allh = hs + box
    for combo in combinations(allh, d):
        det = _det([h.normal for h in combo])
        if det and all(h.contains(_cramer(combo, det)) for h in allh):
            return True
    return False


def _check_same_dim(P: Polytope, Q: Polytope):
    if P.dim != Q.dim:
        raise DimensionMismatch(f"dimension {P.dim} vs {Q.dim}")


def minkowski_sum(P: Polytope, Q: Polytope) -> Polytope:
    """Minkowski sum, with facet normals drawn from the summands' faces (d <= 3)."""
    _check_same_dim(P, Q)
    sums = sorted({tuple(a + b for a, b in zip(p, q)) for p in P.vertices for q in Q.vertices})
    d = P.dim
    if d > 3:
        return hull(sums)
    den, ipts = _integerize(sums)
    normals = {_sign_canonical(h.normal) for h in P.facets + Q.facets}
    if d == 3:
        for e in P.edges():
            for f in Q.edges():
                u, w = e.direction, f.direction
                n = (u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2], u[0] * w[1] - u[1] * w[0])
                if any(n):
                    normals.add(_sign_canonical(_primitive(n)))
    return _from_integer_normals(den, ipts, sorted(normals))


def scale(P: Polytope, c) -> Polytope:
    c = as_rational(c)
    if c <= 0:
        raise NonPositiveScale(f"scale factor must be positive, got {c}")
    verts = [tuple(c * x for x in v) for v in P.vertices]
    return Polytope(verts, [Halfspace(h.normal, c * h.offset) for h in P.facets], check=False)


def translate(P: Polytope, t) -> Polytope:
    return P.translate(t)


def faces(P: Polytope) -> list[Face]:
    return P.faces()


def edges(P: Polytope) -> list[Edge]:
    return P.edges()


def lattice_length(e) -> Fraction:
    """Lattice length of an :class:`Edge` or of a pair of endpoints."""
    v, w = e.endpoints if isinstance(e, Edge) else e
    return primitive_direction(tuple(as_rational(b) - as_rational(a) for a, b in zip(v, w)))[1]


def contains(P: Polytope, x) -> bool:
    return P.contains(x)


def polytope_contained(A: Polytope, B: Polytope) -> bool:
    """True iff ``A`` is a subset of ``B`` (every vertex of A satisfies every facet of B)."""
    _check_same_dim(A, B)
    return all(h.contains(v) for v in A.vertices for h in B.facets)


def _face_lattice(P: Polytope) -> list[Face]:
    full = frozenset(range(len(P.vertices)))
    facet_sets = set(P.incidence)
    seen = {full} | facet_sets
    frontier = set(facet_sets)
    while frontier:
        nxt = set()
        for f in frontier:
            for g in facet_sets:
                h = f & g
                if h and h not in seen:
                    seen.add(h)
                    nxt.add(h)
        frontier = nxt
    out = []
    for s in seen:
        idx = tuple(sorted(s))
        out.append(Face(affine_rank([P.vertices[i] for i in idx]), idx))
    out.sort()
    return out


def _simplex_volume(pts: Sequence[Point]) -> Fraction:
    p0 = pts[0]
    rows = [[a - b for a, b in zip(p, p0)] for p in pts[1:]]
    den = _lcm_den(x for r in rows for x in r)
    det = _det([[int(x * den) for x in r] for r in rows])
    return Fraction(abs(det), den ** len(rows) * math.factorial(len(rows)))


def triangulate(P: Polytope) -> list[tuple[int, ...]]:
    """Pulling triangulation: simplices as tuples of vertex indices."""
    fl = P.faces()
    by_set = {frozenset(f.vertex_indices): f for f in fl}

    def subfacets(face):
        s = set(face.vertex_indices)
        return [g for g in fl if g.dim == face.dim - 1 and set(g.vertex_indices) <= s]

    cache = {}

    def tri(face):
        key = face.vertex_indices
        if key in cache:
            return cache[key]
        if face.dim == 0:
            res = [face.vertex_indices]
        else:
            apex = face.vertex_indices[0]
            res = []
            for g in subfacets(face):
                if apex not in g.vertex_indices:
                    res.extend(s + (apex,) for s in tri(g))
        cache[key] = res
        return res

    top = by_set[frozenset(range(len(P.vertices)))]
    return tri(top)


def volume(P: Polytope) -> Fraction:
    """Exact Euclidean volume via a pulling triangulation."""
    return sum((_simplex_volume([P.vertices[i] for i in s]) for s in triangulate(P)), Fraction(0))
