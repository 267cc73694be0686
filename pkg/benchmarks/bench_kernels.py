"""Compare the numba kernels with their pure-numpy fallbacks.

    python benchmarks/bench_kernels.py [--repeat R]

Each kernel is warmed up once (so numba compilation is excluded), then timed
as the best of R runs.  The two backends must agree to rounding.
"""
import argparse
import time

import numpy as np

from genop import _accel


def best_of(fn, repeat):
    fn()
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def torus_case(n, rng):
    u = 0.5 * np.exp(2j * np.pi * np.arange(n) / n)
    F = np.ascontiguousarray(np.exp(u[:, None] * u[None, :]) + 0.1 * rng.standard_normal((n, n)))
    ts = 0.1 * np.exp(1j * np.linspace(0, 2 * np.pi, 4, endpoint=False))
    return F, u, ts


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    rng = np.random.default_rng(0)
    print(f"{'kernel':<28}{'numpy [ms]':>12}{'numba [ms]':>12}{'speedup':>10}{'max diff':>12}")
    for n in (128, 256, 512):
        F, u, ts = torus_case(n, rng)
        a = _accel.torus_t_sum_numpy(F, u, ts)
        b = _accel.torus_t_sum_numba(F, u, ts)
        tn = best_of(lambda: _accel.torus_t_sum_numpy(F, u, ts), args.repeat)
        tb = best_of(lambda: _accel.torus_t_sum_numba(F, u, ts), args.repeat)
        print(f"{f'torus_t_sum N={n}':<28}{1e3 * tn:>12.2f}{1e3 * tb:>12.2f}{tn / tb:>10.1f}"
              f"{np.max(np.abs(a - b)):>12.1e}")
    for m in (10_000, 1_000_000):
        A = rng.standard_normal(m)
        a = _accel.power_pm_numpy(A, -0.5 + 0.3j, 1.0)
        b = _accel.power_pm_numba(A, -0.5 + 0.3j, 1.0)
        tn = best_of(lambda: _accel.power_pm_numpy(A, -0.5 + 0.3j, 1.0), args.repeat)
        tb = best_of(lambda: _accel.power_pm_numba(A, -0.5 + 0.3j, 1.0), args.repeat)
        print(f"{f'power_pm M={m}':<28}{1e3 * tn:>12.2f}{1e3 * tb:>12.2f}{tn / tb:>10.1f}"
              f"{np.max(np.abs(a - b)):>12.1e}")


if __name__ == "__main__":
    main()
