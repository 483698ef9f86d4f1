"""Pure-Python implementations of the lattice kernels.

Same contracts as the compiled ``_kernels`` module, on plain Python integers,
so they also serve values too large for int64.
"""
from itertools import product


def box_points(A, b, lo, hi):
    """All integer z with lo <= z <= hi and A z <= b, in lexicographic order."""
    d = len(lo)
    if any(l > h for l, h in zip(lo, hi)):
        return []
    last = d - 1
    rows = list(zip(A, b))
    out = []
    for prefix in product(*(range(lo[j], hi[j] + 1) for j in range(last))):
        l, h = lo[last], hi[last]
        for row, bi in rows:
            s = bi - sum(row[j] * prefix[j] for j in range(last))
            a = row[last]
            if a > 0:
                h = min(h, s // a)
            elif a < 0:
                l = max(l, -(s // -a))
            elif s < 0:
                break
        else:
            out.extend(prefix + (t,) for t in range(l, h + 1))
    return out


def sum_keys(ka, kb):
    """Sorted distinct values of ka[i] + kb[j]."""
    seen = set()
    for x in ka:
        seen.update(map(x.__add__, kb))
    return sorted(seen)
