"""Lattice points, G-sets, sumsets and integer-decomposition checks."""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import chain
from typing import Iterable

from . import kernels
from .errors import BudgetExceeded, DimensionMismatch, NotLatticePolytope
from .geometry import Point, Polytope, as_point, as_rational, minkowski_sum, scale

DEFAULT_BUDGET = 10**7
BUDGET_ENV = "CONVNORMAL_BUDGET"


def default_budget() -> int:
    """Enumeration cap, overridable through the ``CONVNORMAL_BUDGET`` variable."""
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else DEFAULT_BUDGET


class PointSet:
    """A finite set of rational points with exact membership.

    Points are stored as integer tuples over one common denominator, the
    smallest that clears every coordinate, so equal sets always have equal
    internal representations.
    """

    __slots__ = ("dim", "denom", "_keys")

    def __init__(self, dim: int, points: Iterable = ()):
        pts = [as_point(p) for p in points]
        if any(len(p) != dim for p in pts):
            raise DimensionMismatch(f"all points must have dimension {dim}")
        den = 1
        for p in pts:
            for x in p:
                den = math.lcm(den, x.denominator)
        self.dim = dim
        self.denom = den
        self._keys = frozenset(tuple(int(x * den) for x in p) for p in pts)

    @classmethod
    def _from_keys(cls, dim: int, denom: int, keys: Iterable[tuple[int, ...]]) -> "PointSet":
        keys = frozenset(keys)
        if denom != 1:
            g = math.gcd(denom, *chain.from_iterable(keys))
            if g > 1:
                denom //= g
                keys = frozenset(tuple(x // g for x in k) for k in keys)
        obj = cls.__new__(cls)
        obj.dim = dim
        obj.denom = denom
        obj._keys = keys
        return obj

    def scaled_keys(self, denom: int) -> list[tuple[int, ...]]:
        """Points multiplied by ``denom`` (a multiple of ``self.denom``) as integer tuples."""
        f = denom // self.denom
        if f * self.denom != denom:
            raise ValueError(f"{denom} is not a multiple of {self.denom}")
        if f == 1:
            return list(self._keys)
        return [tuple(x * f for x in k) for k in self._keys]

    @property
    def points(self) -> list[Point]:
        d = self.denom
        return [tuple(Fraction(x, d) for x in k) for k in sorted(self._keys)]

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self._keys)

    def __contains__(self, p) -> bool:
        p = as_point(p)
        if len(p) != self.dim:
            return False
        key = []
        for x in p:
            y = x * self.denom
            if y.denominator != 1:
                return False
            key.append(y.numerator)
        return tuple(key) in self._keys

    def __eq__(self, other):
        if not isinstance(other, PointSet):
            return NotImplemented
        return self.dim == other.dim and self.denom == other.denom and self._keys == other._keys

    def __hash__(self):
        return hash((self.dim, self.denom, self._keys))

    def __repr__(self):
        shown = ", ".join("(" + ", ".join(str(x) for x in p) + ")" for p in self.points[:12])
        more = ", ..." if len(self) > 12 else ""
        return f"PointSet(dim={self.dim}, n={len(self)}, [{shown}{more}])"

    def _aligned(self, other: "PointSet"):
        if self.dim != other.dim:
            raise DimensionMismatch(f"dimension {self.dim} vs {other.dim}")
        den = math.lcm(self.denom, other.denom)
        return den, set(self.scaled_keys(den)), set(other.scaled_keys(den))

    def issubset(self, other: "PointSet") -> bool:
        den, a, b = self._aligned(other)
        return a <= b

    __le__ = issubset

    def __or__(self, other: "PointSet") -> "PointSet":
        den, a, b = self._aligned(other)
        return PointSet._from_keys(self.dim, den, a | b)

    def __sub__(self, other: "PointSet") -> "PointSet":
        den, a, b = self._aligned(other)
        return PointSet._from_keys(self.dim, den, a - b)

    def translate(self, t) -> "PointSet":
        t = as_point(t)
        den = self.denom
        for x in t:
            den = math.lcm(den, x.denominator)
        tk = [int(x * den) for x in t]
        return PointSet._from_keys(
            self.dim, den, (tuple(a + b for a, b in zip(k, tk)) for k in self.scaled_keys(den))
        )

    def min(self) -> Point:
        """Lexicographically smallest point."""
        k = min(self._keys)
        return tuple(Fraction(x, self.denom) for x in k)


@dataclass(frozen=True)
class IdpVerdict:
    holds: bool
    witness: Point | None
    checked_range: str

    def __post_init__(self):
        if self.holds != (self.witness is None):
            raise ValueError("a failing verdict needs a witness and a passing one must not have one")


# ---------------------------------------------------------------------------
# enumeration

def _integer_system(P: Polytope, shift: Point | None = None):
    """Rows and floored right-hand sides describing ``(P - shift) & Z^d``."""
    A, b = [], []
    for h in P.facets:
        off = h.offset if shift is None else h.offset - h.value(shift)
        A.append(list(h.normal))
        b.append(math.floor(off))
    return A, b


def _box(P: Polytope, shift: Point | None = None):
    lo, hi = P.bounding_box()
    if shift is not None:
        lo = [a - s for a, s in zip(lo, shift)]
        hi = [a - s for a, s in zip(hi, shift)]
    return [math.ceil(x) for x in lo], [math.floor(x) for x in hi]


def _candidates(lo, hi) -> int:
    n = 1
    for a, b in zip(lo, hi):
        n *= max(0, b - a + 1)
    return n


def lattice_points(P: Polytope, budget: int | None = None) -> PointSet:
    """All integer points of ``P`` by an exact scan of its integer bounding box."""
    budget = default_budget() if budget is None else budget
    lo, hi = _box(P)
    n = _candidates(lo, hi)
    if n > budget:
        raise BudgetExceeded(f"{n} candidate grid points exceed the budget of {budget}")
    A, b = _integer_system(P)
    return PointSet._from_keys(P.dim, 1, kernels.box_points(A, b, lo, hi))


def g_set(Q: Polytope, budget: int | None = None) -> PointSet:
    """Union over the vertices v of Q of the shifted lattice ``(v + Z^d) & Q``."""
    return PointSet._from_keys(Q.dim, *_g_keys(Q, budget)[:2])


def g_set_origins(Q: Polytope, budget: int | None = None) -> dict[Point, int]:
    """Map every G-set point to the index of the first vertex whose lattice contains it."""
    den, _, per_vertex = _g_keys(Q, budget)
    origin: dict[Point, int] = {}
    for idx, keys in enumerate(per_vertex):
        for k in keys:
            p = tuple(Fraction(x, den) for x in k)
            origin.setdefault(p, idx)
    return dict(sorted(origin.items()))


def _g_keys(Q: Polytope, budget):
    budget = default_budget() if budget is None else budget
    den = 1
    for v in Q.vertices:
        for x in v:
            den = math.lcm(den, x.denominator)
    boxes = [_box(Q, v) for v in Q.vertices]
    total = sum(_candidates(lo, hi) for lo, hi in boxes)
    if total > budget:
        raise BudgetExceeded(f"{total} candidate grid points exceed the budget of {budget}")
    keys: set[tuple[int, ...]] = set()
    per_vertex = []
    for v, (lo, hi) in zip(Q.vertices, boxes):
        A, b = _integer_system(Q, v)
        base = [int(x * den) for x in v]
        pts = [tuple(bi + den * zi for bi, zi in zip(base, z)) for z in kernels.box_points(A, b, lo, hi)]
        per_vertex.append(pts)
        keys.update(pts)
    return den, keys, per_vertex


def sumset(A: PointSet, B: PointSet) -> PointSet:
    """The set ``{a + b}`` of pairwise sums."""
    if A.dim != B.dim:
        raise DimensionMismatch(f"dimension {A.dim} vs {B.dim}")
    d = A.dim
    if not len(A) or not len(B):
        return PointSet(d)
    den = math.lcm(A.denom, B.denom)
    ka, kb = A.scaled_keys(den), B.scaled_keys(den)
    lo_a = [min(p[i] for p in ka) for i in range(d)]
    lo_b = [min(p[i] for p in kb) for i in range(d)]
    span = [
        max(p[i] for p in ka) - lo_a[i] + max(p[i] for p in kb) - lo_b[i] + 1 for i in range(d)
    ]
    strides = [1] * d
    for i in range(d - 2, -1, -1):
        strides[i] = strides[i + 1] * span[i + 1]

    def encode(pts, lo):
        return [sum((p[i] - lo[i]) * strides[i] for i in range(d)) for p in pts]

    keys = kernels.sum_keys(encode(ka, lo_a), encode(kb, lo_b))
    base = [a + b for a, b in zip(lo_a, lo_b)]
    out = []
    for k in keys:
        pt = []
        for i in range(d):
            q, k = divmod(k, strides[i])
            pt.append(q + base[i])
        out.append(tuple(pt))
    return PointSet._from_keys(d, den, out)


# ---------------------------------------------------------------------------
# integer decomposition

def _require_lattice(*polys: Polytope):
    for P in polys:
        if not P.is_lattice:
            raise NotLatticePolytope(f"{P} has non-integral vertices")


def idp_pair(Q: Polytope, P: Polytope, budget: int | None = None) -> IdpVerdict:
    """Does every lattice point of Q + P split as a lattice point of Q plus one of P?"""
    _require_lattice(Q, P)
    if Q.dim != P.dim:
        raise DimensionMismatch(f"dimension {Q.dim} vs {P.dim}")
    target = lattice_points(minkowski_sum(Q, P), budget)
    missing = target - sumset(lattice_points(Q, budget), lattice_points(P, budget))
    if len(missing):
        return IdpVerdict(False, missing.min(), "pair (Q, P)")
    return IdpVerdict(True, None, "pair (Q, P)")


def idp_single(P: Polytope, k_max: int | None = None, budget: int | None = None) -> IdpVerdict:
    """Stepwise IDP check: ``(j+1)P & Z^d == (jP & Z^d) + (P & Z^d)`` for j < k_max.

    Success for every j proves the decomposition property for all k <= k_max
    by induction; nothing is claimed beyond ``k_max``.
    """
    _require_lattice(P)
    if k_max is None:
        k_max = max(2, P.dim - 1)
    if k_max < 2:
        raise ValueError("k_max must be at least 2")
    base = lattice_points(P, budget)
    current = base
    for j in range(1, k_max):
        target = lattice_points(scale(P, j + 1), budget)
        missing = target - sumset(current, base)
        if len(missing):
            return IdpVerdict(False, missing.min(), f"failed at k = {j + 1} (stepwise j = {j})")
        current = target
    return IdpVerdict(True, None, f"k = 1..{k_max} (stepwise j = 1..{k_max - 1})")


def lemmaA_holds(P: Polytope, r, budget: int | None = None) -> bool:
    """Check ``G(rP) + G(P)`` is contained in ``G((r+1)P)`` for a lattice polytope P."""
    _require_lattice(P)
    r = as_rational(r)
    lhs = sumset(g_set(scale(P, r), budget), g_set(P, budget))
    return lhs.issubset(g_set(scale(P, r + 1), budget))
