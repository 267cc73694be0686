"""Hot numeric kernels with a numba path and a pure-numpy fallback.

Set ``GENOP_PURE_NUMPY=1`` in the environment to force the numpy versions.
Both variants are always importable so tests and the benchmark can compare them.
"""
import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

_FLAG = os.environ.get("GENOP_PURE_NUMPY", "").strip().lower()
USE_NUMBA = numba is not None and _FLAG not in ("1", "true", "yes", "on")


def torus_t_sum_numpy(F, u, ts):
    """Tensor-product trapezoidal sums of F/Q on the torus for each t in ``ts``.

    ``F[j, k]`` holds f(z + u_j, z + u_k); the weight u_j u_k / N^2 already
    absorbs the (2 pi i)^-2 prefactor and d zeta = i u d theta.
    """
    n = u.shape[0]
    uu = u[:, None] * u[None, :]
    du = u[:, None] - u[None, :]
    G = F * uu
    out = np.empty(ts.shape[0], dtype=np.complex128)
    for m in range(ts.shape[0]):
        out[m] = np.sum(G / (uu + ts[m] * du))
    return out / (n * n)


def power_pm_numpy(A, mu, sign):
    """|A|^mu on {sign * A > 0}, zero elsewhere (principal real power)."""
    A = np.asarray(A, dtype=np.float64)
    out = np.zeros(A.shape, dtype=np.complex128)
    mask = sign * A > 0
    out[mask] = np.exp(mu * np.log(np.abs(A[mask])))
    return out


if numba is not None:

    @numba.njit(cache=True, nogil=True)
    def torus_t_sum_numba(F, u, ts):
        n = u.shape[0]
        out = np.empty(ts.shape[0], dtype=np.complex128)
        for m in range(ts.shape[0]):
            t = ts[m]
            acc = 0.0 + 0.0j
            for j in range(n):
                uj = u[j]
                row = 0.0 + 0.0j
                for k in range(n):
                    uk = u[k]
                    w = uj * uk
                    row += F[j, k] * w / (w + t * (uj - uk))
                acc += row
            out[m] = acc / (n * n)
        return out

    @numba.njit(cache=True, nogil=True)
    def _power_pm_flat(A, mu, sign):
        out = np.zeros(A.shape[0], dtype=np.complex128)
        for i in range(A.shape[0]):
            a = A[i]
            if sign * a > 0.0:
                out[i] = np.exp(mu * np.log(abs(a)))
        return out

    def power_pm_numba(A, mu, sign):
        A = np.ascontiguousarray(A, dtype=np.float64)
        return _power_pm_flat(A.ravel(), complex(mu), float(sign)).reshape(A.shape)

else:  # pragma: no cover
    torus_t_sum_numba = torus_t_sum_numpy
    power_pm_numba = power_pm_numpy


if USE_NUMBA:
    torus_t_sum = torus_t_sum_numba
    power_pm = power_pm_numba
else:
    torus_t_sum = torus_t_sum_numpy
    power_pm = power_pm_numpy


def backend():
    return "numba" if USE_NUMBA else "numpy"
