"""Exact covering of a polytope by finitely many translates.

``T`` is covered by closed translates ``g_i + P_i`` exactly when repeatedly
subtracting the translates from ``T`` leaves no full-dimensional cell: the
uncovered part of ``T`` is relatively open, so if it is nonempty it contains
a full-dimensional piece. Cells that degenerate to lower dimension are
therefore dropped without affecting the verdict.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch, NonPositiveScale, NotLatticePolytope
from .geometry import (
    Halfspace,
    Point,
    Polytope,
    _rank,
    as_point,
    as_rational,
    minkowski_sum,
    scale,
    volume,
)
from .lattice import g_set

log = logging.getLogger(__name__)


def _int_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    rank = 0
    ncols = len(m[0])
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pr = m[rank]
        p = pr[col]
        for i in range(rank + 1, len(m)):
            f = m[i][col]
            if f:
                m[i] = [p * x - f * y for x, y in zip(m[i], pr)]
        rank += 1
        if rank == len(m):
            break
    return rank


def _hom(v: Point) -> tuple[tuple[int, ...], int]:
    den = 1
    for x in v:
        den = math.lcm(den, x.denominator)
    return tuple(int(x * den) for x in v), den


def _reduce(num: list[int], den: int) -> tuple[tuple[int, ...], int]:
    g = math.gcd(den, *num)
    if g > 1:
        return tuple(x // g for x in num), den // g
    return tuple(num), den


class _IntHalfspace:
    """``a . x <= p / q`` with integer data; ``sigma`` is q*(a.x) - p scaled by the point's denominator."""

    __slots__ = ("h", "a", "p", "q")

    def __init__(self, h: Halfspace):
        self.h = h
        self.a = h.normal
        self.p = h.offset.numerator
        self.q = h.offset.denominator

    def sigma(self, hv) -> int:
        num, den = hv
        return self.q * sum(x * y for x, y in zip(self.a, num)) - self.p * den

    def flipped(self) -> "_IntHalfspace":
        return _IntHalfspace(Halfspace(tuple(-x for x in self.a), -self.h.offset))


class ConvexCell:
    """A bounded full-dimensional cell kept in both descriptions.

    ``halfspaces`` is irredundant. Vertices are stored internally as integer
    vectors over a positive integer denominator so that cutting a cell is
    pure integer arithmetic.
    """

    __slots__ = ("_ihs", "_hv", "dim", "_bounds")

    def __init__(self, halfspaces: Sequence[Halfspace], vertices: Sequence):
        self._ihs = tuple(_IntHalfspace(h) for h in halfspaces)
        self._hv = tuple(_hom(as_point(v)) for v in vertices)
        self.dim = len(self._hv[0][0])
        self._bounds = None

    @classmethod
    def _raw(cls, ihs, hv, dim) -> "ConvexCell":
        obj = cls.__new__(cls)
        obj._ihs = tuple(ihs)
        obj._hv = tuple(hv)
        obj.dim = dim
        obj._bounds = None
        return obj

    @classmethod
    def from_polytope(cls, P: Polytope) -> "ConvexCell":
        return cls._raw((_IntHalfspace(h) for h in P.facets), (_hom(v) for v in P.vertices), P.dim)

    @property
    def halfspaces(self) -> tuple[Halfspace, ...]:
        return tuple(sorted(ih.h for ih in self._ihs))

    @property
    def vertices(self) -> tuple[Point, ...]:
        return tuple(sorted(tuple(Fraction(x, den) for x in num) for num, den in self._hv))

    def to_polytope(self) -> Polytope:
        return Polytope(self.vertices, self.halfspaces)

    def centroid(self) -> Point:
        verts = self.vertices
        n = len(verts)
        return tuple(sum(v[i] for v in verts) / n for i in range(self.dim))

    def contains(self, x) -> bool:
        return all(ih.h.contains(x) for ih in self._ihs)

    def volume(self) -> Fraction:
        return volume(self.to_polytope())

    def bounds(self):
        if self._bounds is None:
            verts = self.vertices
            self._bounds = (
                tuple(min(v[i] for v in verts) for i in range(self.dim)),
                tuple(max(v[i] for v in verts) for i in range(self.dim)),
            )
        return self._bounds

    def __repr__(self):
        pts = ", ".join("(" + ", ".join(str(x) for x in v) + ")" for v in self.vertices)
        return f"ConvexCell([{pts}])"


@dataclass(frozen=True)
class CoverVerdict:
    covered: bool
    witness: Point | None = None
    residual_cells: tuple[ConvexCell, ...] = ()
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        if self.covered and (self.witness is not None or self.residual_cells):
            raise ValueError("a covered verdict carries no witness or residual cells")
        if not self.covered and self.witness is None:
            raise ValueError("an uncovered verdict needs a witness")

    def __bool__(self):
        return self.covered


def _prune(ihs, hv, d):
    keep = []
    for ih in ihs:
        tight = [v for v in hv if ih.sigma(v) == 0]
        if len(tight) < d:
            continue
        if d <= 2 or _int_rank([num + (den,) for num, den in tight]) == d:
            keep.append(ih)
    return keep


def split(cell: ConvexCell, h) -> tuple[ConvexCell | None, ConvexCell | None]:
    """Cut ``cell`` by the hyperplane of ``h``.

    Returns ``(below, above)``: the parts where ``h`` holds and where it is
    reversed. A part that is empty or lower-dimensional comes back as None.
    """
    ih = h if isinstance(h, _IntHalfspace) else _IntHalfspace(h)
    d = cell.dim
    hv = cell._hv
    s = [ih.sigma(v) for v in hv]
    if max(s) <= 0:
        return cell, None
    if min(s) >= 0:
        return None, cell
    ihs = cell._ihs
    tight = [frozenset(k for k, g in enumerate(ihs) if g.sigma(v) == 0) for v in hv]
    cross = []
    for i, si in enumerate(s):
        if si >= 0:
            continue
        ni, wi = hv[i]
        for j, sj in enumerate(s):
            if sj <= 0:
                continue
            common = tight[i] & tight[j]
            if len(common) < d - 1:
                continue
            if d > 3 and _rank([ihs[k].a for k in common]) != d - 1:
                continue
            nj, wj = hv[j]
            cross.append(_reduce([sj * x - si * y for x, y in zip(ni, nj)], sj * wi - si * wj))
    below_v = [v for v, x in zip(hv, s) if x <= 0] + cross
    above_v = [v for v, x in zip(hv, s) if x >= 0] + cross
    below = ConvexCell._raw(_prune(list(ihs) + [ih], below_v, d), below_v, d)
    above = ConvexCell._raw(_prune(list(ihs) + [ih.flipped()], above_v, d), above_v, d)
    return below, above


def _boxes_overlap(a, b) -> bool:
    (alo, ahi), (blo, bhi) = a, b
    return all(x < y2 and y < x2 for x, x2, y, y2 in zip(alo, ahi, blo, bhi))


def subtract(cell: ConvexCell, U: Polytope) -> list[ConvexCell]:
    """Full-dimensional convex pieces of the closure of ``cell - U``.

    Facet ``i`` of U contributes ``cell & {a_i x >= b_i} & {a_j x <= b_j, j < i}``;
    the pieces have pairwise disjoint interiors.
    """
    if isinstance(cell, Polytope):
        cell = ConvexCell.from_polytope(cell)
    if cell.dim != U.dim:
        raise DimensionMismatch(f"dimension {cell.dim} vs {U.dim}")
    if not _boxes_overlap(cell.bounds(), U.bounding_box()):
        return [cell]
    pieces = []
    rest = cell
    for h in U.facets:
        rest, outside = split(rest, h)
        if outside is not None:
            pieces.append(outside)
        if rest is None:
            break
    return pieces


def intersect(cell: ConvexCell, U: Polytope) -> ConvexCell | None:
    """``cell & U`` when full-dimensional, else None."""
    rest = cell
    for h in U.facets:
        rest, _ = split(rest, h)
        if rest is None:
            return None
    return rest


def _normalize_translates(translates) -> list[tuple[Point, Polytope]]:
    out = [(as_point(g), U) for g, U in translates]
    out.sort(key=lambda gu: (gu[0], gu[1].vertices))
    return out


def witness_is_sound(T: Polytope, translates, w: Point) -> bool:
    """``w`` lies in T and outside every translate ``g + U``."""
    if not T.contains(w):
        return False
    for g, U in translates:
        g = as_point(g)
        shifted = tuple(a - b for a, b in zip(w, g))
        if U.contains(shifted):
            return False
    return True


def is_covered(T: Polytope, translates: Iterable[tuple[Point, Polytope]]) -> CoverVerdict:
    """Decide whether ``T`` lies in the union of the translates ``g + U``."""
    tr = _normalize_translates(translates)
    for g, U in tr:
        if U.dim != T.dim or len(g) != T.dim:
            raise DimensionMismatch("translates must live in the dimension of the target")
    cells = [ConvexCell.from_polytope(T)]
    for g, U in tr:
        moved = U.translate(g)
        box = moved.bounding_box()
        nxt = []
        for cell in cells:
            if _boxes_overlap(cell.bounds(), box):
                nxt.extend(subtract(cell, moved))
            else:
                nxt.append(cell)
        cells = nxt
        if not cells:
            return CoverVerdict(True)
    cells.sort(key=lambda c: c.vertices)
    w = cells[0].centroid()
    if not witness_is_sound(T, tr, w):
        raise AssertionError(f"unsound witness {w}; covering engine bug")
    return CoverVerdict(False, w, tuple(cells))


def cover_translates(Q: Polytope, P: Polytope, budget: int | None = None) -> list[tuple[Point, Polytope]]:
    """The translates ``{(g, P) : g in G(Q)}`` used by every convex-normality test."""
    return [(g, P) for g in g_set(Q, budget)]


def convex_normal_at(P: Polytope, c, budget: int | None = None) -> CoverVerdict:
    """Is ``cP`` covered by ``G((c-1)P) + P``?"""
    c = as_rational(c)
    if c <= 1:
        raise NonPositiveScale(f"c must exceed 1 so that (c-1)P is a polytope, got {c}")
    notes = ()
    if c < 2:
        notes = (f"c = {c} lies below 2, outside the usual range of the definition",)
        log.warning(notes[0])
    v = is_covered(scale(P, c), cover_translates(scale(P, c - 1), P, budget))
    if notes:
        v = CoverVerdict(v.covered, v.witness, v.residual_cells, notes)
    return v


def pair_convex_normal(Q: Polytope, P: Polytope, budget: int | None = None) -> CoverVerdict:
    """Is ``Q + P`` covered by ``G(Q) + P``? Note the roles of Q and P are not symmetric."""
    if Q.dim != P.dim:
        raise DimensionMismatch(f"dimension {Q.dim} vs {P.dim}")
    return is_covered(minkowski_sum(Q, P), cover_translates(Q, P, budget))


@dataclass
class KConvexReport:
    mode: str
    k: Fraction
    denom_bound: int
    results: list[tuple[Fraction, CoverVerdict]] = field(default_factory=list)
    inferred: list[tuple[Fraction, str]] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return all(v.covered for _, v in self.results)

    @property
    def failures(self) -> list[Fraction]:
        return [c for c, v in self.results if not v.covered]

    @property
    def claim(self) -> str:
        checked = ", ".join(str(c) for c, _ in self.results)
        if self.mode == "grid":
            return (
                f"finite check: every c = p/q in [2, {self.k}] with q <= {self.denom_bound} "
                f"({checked}); values off this grid were not examined"
            )
        tail = f"; integer c up to {self.k} by induction" if self.inferred else ""
        return f"checked c in {{{checked}}}{tail}"


def grid_values(k, denom_bound: int) -> list[Fraction]:
    k = as_rational(k)
    vals = set()
    for q in range(1, denom_bound + 1):
        p = 2 * q
        while Fraction(p, q) <= k:
            vals.add(Fraction(p, q))
            p += 1
    return sorted(vals)


def k_convex_normal(P: Polytope, k, denom_bound: int = 1, mode: str = "grid",
                    budget: int | None = None) -> KConvexReport:
    """Finite verification of k-convex-normality.

    ``grid`` checks every rational c in [2, k] with denominator at most
    ``denom_bound``. ``integer-steps`` (lattice P only) checks c = 2 and c = 3;
    once c = 2 passes, each integer c > 3 follows from c - 1 by the induction
    ``G((c-2)P) + P = (c-1)P  =>  G((c-1)P) + P = cP``.
    """
    k = as_rational(k)
    if k < 2:
        raise ValueError("k must be at least 2")
    if denom_bound < 1:
        raise ValueError("denom_bound must be positive")
    report = KConvexReport(mode, k, denom_bound)
    if mode == "grid":
        for c in grid_values(k, denom_bound):
            report.results.append((c, convex_normal_at(P, c, budget)))
    elif mode == "integer-steps":
        if not P.is_lattice:
            raise NotLatticePolytope("integer-steps mode needs a lattice polytope")
        for c in (Fraction(2), Fraction(3)):
            if c <= k:
                report.results.append((c, convex_normal_at(P, c, budget)))
        if report.holds:
            for c in range(4, int(k) + 1):
                report.inferred.append(
                    (Fraction(c), f"G({c - 2}P)+P = {c - 1}P  =>  G({c - 1}P)+P = {c}P")
                )
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return report
