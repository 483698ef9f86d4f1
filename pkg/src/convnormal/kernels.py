"""Dispatch between the compiled lattice kernels and their Python fallback.

The compiled extension is used when it imported successfully and the values
involved fit comfortably in int64. Setting ``CONVNORMAL_PURE_PYTHON=1`` forces
the fallback (used by the benchmark and the backend-agreement tests).
"""
import os

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

_INT64_SAFE = 1 << 60
_MAX_MARK_BYTES = 1 << 28


def _use_compiled(force_python):
    if force_python is None:
        force_python = os.environ.get("CONVNORMAL_PURE_PYTHON", "") not in ("", "0")
    return _compiled is not None and not force_python


def backend():
    return "compiled" if _use_compiled(None) else "python"


def box_points(A, b, lo, hi, force_python=None):
    """Integer points of ``{z : A z <= b}`` inside the box ``[lo, hi]`` as tuples."""
    d = len(lo)
    if _use_compiled(force_python) and d > 0:
        zmax = max([abs(x) for x in lo] + [abs(x) for x in hi] + [1])
        amax = max([abs(x) for row in A for x in row] + [1])
        bmax = max([abs(x) for x in b] + [0])
        if amax * zmax * d + bmax < _INT64_SAFE:
            import numpy as np

            res = _compiled.box_points(
                np.ascontiguousarray(A, dtype=np.int64).reshape(len(A), d),
                np.ascontiguousarray(b, dtype=np.int64),
                np.ascontiguousarray(lo, dtype=np.int64),
                np.ascontiguousarray(hi, dtype=np.int64),
            )
            # column-wise conversion is much cheaper than tolist() on the 2D array
            return list(zip(*(res[:, j].tolist() for j in range(d))))
    return _kernels_py.box_points(A, b, lo, hi)


def sum_keys(ka, kb, force_python=None):
    """Sorted distinct pairwise sums of two lists of nonnegative integer keys."""
    if not ka or not kb:
        return []
    if _use_compiled(force_python):
        size = max(ka) + max(kb) + 1
        if size < _MAX_MARK_BYTES:
            import numpy as np

            mark = _compiled.sum_marks(
                np.asarray(ka, dtype=np.int64), np.asarray(kb, dtype=np.int64), size
            )
            return np.flatnonzero(mark).tolist()
    return _kernels_py.sum_keys(ka, kb)
