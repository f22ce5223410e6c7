"""Compare the numba and numpy float kernels used by the shadow evaluators.

    python3 benchmarks/bench_kernels.py [--points 2000] [--repeat 5]

Reports the best wall time of each backend and checks that they agree.
"""

from __future__ import annotations

import argparse
import random
import time

import numpy as np

from holocalc import _kernels, sampling, shadow
from holocalc.exterior import basis


def best_of(fn, repeat):
    fn()  # warm-up (numba compiles on first call)
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    if not _kernels.HAVE_NUMBA:
        print("numba unavailable (or disabled by HOLOCALC_DISABLE_NUMBA); nothing to compare")
        return

    rng = random.Random(args.seed)
    nrng = np.random.default_rng(args.seed)
    field = shadow.CompiledForm(sampling.form(rng, 7, 3, 3, 20, 4))
    pts = nrng.normal(size=(args.points, 7))
    k_args = (field.exps, field.coeffs, field.ptr, pts)

    n, k, l = 7, 2, 3
    left, right, dest, sign = shadow.wedge_table(n, k, l)
    a = nrng.normal(size=(args.points, len(basis(n, k))))
    b = nrng.normal(size=(args.points, len(basis(n, l))))
    w_args = (a, b, left, right, dest, sign, len(basis(n, k + l)))

    rows = []
    for name, fnp, fnb, fargs in [
        ("poly_eval", _kernels.poly_eval_numpy, _kernels.poly_eval_numba, k_args),
        ("wedge 2^3", _kernels.wedge_numpy, _kernels.wedge_numba, w_args),
    ]:
        t_np = best_of(lambda: fnp(*fargs), args.repeat)
        t_nb = best_of(lambda: fnb(*fargs), args.repeat)
        diff = float(np.abs(fnp(*fargs) - fnb(*fargs)).max())
        rows.append((name, t_np * 1e3, t_nb * 1e3, t_np / t_nb, diff))

    print(f"{'kernel':<10} {'numpy ms':>10} {'numba ms':>10} {'speedup':>8} {'max diff':>10}")
    for name, t_np, t_nb, sp, diff in rows:
        print(f"{name:<10} {t_np:>10.3f} {t_nb:>10.3f} {sp:>8.1f} {diff:>10.2e}")


if __name__ == "__main__":
    main()
