"""Compare the compiled lattice kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 3] [--quick]

Each workload runs under both backends; results are checked to be identical
before timings are reported.
"""
import argparse
import os
import random
import time

from convnormal import kernels
from convnormal.geometry import hull, scale
from convnormal.lattice import idp_single, lattice_points


def _time(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def workloads(quick: bool):
    n = 40 if quick else 120
    cube = [[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1], [1, 1, 1]]
    b = [n, 0, n, 0, n, 0, 3 * n // 2]
    yield f"box_points, 3D box {n}^3 with a cut", lambda fp: kernels.box_points(cube, b, [0] * 3, [n] * 3, fp)

    rng = random.Random(1)
    m = 2_000 if quick else 20_000
    ka = [rng.randrange(10**6) for _ in range(m)]
    kb = [rng.randrange(10**6) for _ in range(m // 10)]
    yield f"sum_keys, {m} x {m // 10} keys", lambda fp: kernels.sum_keys(ka, kb, fp)

    tet = hull([(0, 0, 0), (1, 1, 0), (1, 0, 1), (0, 1, 1)])
    k = 8 if quick else 24
    P = scale(tet, k)
    yield f"lattice_points, {k} x tetrahedron", lambda fp: _with_backend(fp, lambda: len(lattice_points(P)))
    yield f"idp_single k_max=3, {k} x tetrahedron", lambda fp: _with_backend(fp, lambda: idp_single(P, 3).holds)


def _with_backend(force_python, fn):
    old = os.environ.get("CONVNORMAL_PURE_PYTHON")
    os.environ["CONVNORMAL_PURE_PYTHON"] = "1" if force_python else "0"
    try:
        return fn()
    finally:
        if old is None:
            del os.environ["CONVNORMAL_PURE_PYTHON"]
        else:
            os.environ["CONVNORMAL_PURE_PYTHON"] = old


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="small sizes, for smoke testing")
    args = ap.parse_args()

    if kernels._compiled is None:
        print("compiled extension not available; only the Python backend can run")
    print(f"{'workload':45s} {'python':>10s} {'compiled':>10s} {'speedup':>8s}")
    for label, fn in workloads(args.quick):
        tp, rp = _time(lambda: fn(True), args.repeat)
        if kernels._compiled is None:
            print(f"{label:45s} {tp:10.4f} {'-':>10s} {'-':>8s}")
            continue
        tc, rc = _time(lambda: fn(False), args.repeat)
        if rp != rc:
            raise SystemExit(f"backends disagree on {label}")
        print(f"{label:45s} {tp:10.4f} {tc:10.4f} {tp / tc:7.1f}x")


if __name__ == "__main__":
    main()
