"""The generating operator T of the Rankin-Cohen family as a double contour integral.

    (Tf)(z, t) = (2 pi i)^-2  oint oint f(z1, z2) / Q(z1, z2; z, t) dz1 dz2

with both contours circles of radius r about z.  On the torus
|(z1 - z)(z2 - z)| = r^2 while |t (z1 - z2)| <= 2 r |t|, so |t| < r/2 keeps Q
away from zero; that bound is enforced as a precondition.
"""
from dataclasses import dataclass
from math import factorial, pi

import numpy as np

from . import _accel
from .contour import (
    DEFAULT_NODES, EPS, MAX_NODES_2D, Domain, HoloFn1, HoloFn2, _evaluate, _stable,
    cauchy_derivative, taylor_coefficients,
)
from .errors import NonConvergenceError, ParameterError, QuadratureDomainError
from .rankin_cohen import DEFAULT_MAX_ORDER, check_order, rc_brackets


def q_eval(z1, z2, z, t):
    return (z1 - z) * (z2 - z) + t * (z1 - z2)


@dataclass(frozen=True)
class GeneratingParams:
    z: complex
    t: complex
    r: float

    def __post_init__(self):
        if not self.r > 0:
            raise ParameterError(f"contour radius must be positive, got {self.r}")
        if not abs(self.t) < self.r / 2:
            raise ParameterError(f"|t| = {abs(self.t):.6g} must be < r/2 = {self.r / 2:.6g}")


def _as_holo2(f):
    return f if isinstance(f, HoloFn2) else HoloFn2(f)


def generating_values(f, z, ts, r, nodes=DEFAULT_NODES, tol=1e-12, max_nodes=MAX_NODES_2D):
    """(Tf)(z, t) for every t in ``ts`` from one set of torus samples of f."""
    f = _as_holo2(f)
    ts = np.atleast_1d(np.asarray(ts, dtype=np.complex128))
    if not r > 0:
        raise ParameterError("contour radius must be positive")
    if np.any(np.abs(ts) >= r / 2):
        raise ParameterError(f"need |t| < r/2 = {r / 2:.6g}")
    if r >= f.singular_distance(z):
        raise QuadratureDomainError("torus of radius r reaches a singularity of f")

    def level(n):
        u = r * np.exp(2j * pi * np.arange(n) / n)
        F = _evaluate(f, z + u[:, None], z + u[None, :])
        vals = _accel.torus_t_sum(np.ascontiguousarray(F), u, ts)
        # |Q| >= r^2 - 2 r |t| on the torus bounds every summand.
        qmin = r * r - 2 * r * np.max(np.abs(ts))
        return vals, np.max(np.abs(F)) * r * r / qmin

    n = nodes
    prev, _ = level(n)
    trace = [(n, prev)]
    while 2 * n <= max_nodes:
        n *= 2
        cur, bound = level(n)
        trace.append((n, cur))
        if _stable(prev, cur, tol, 1e2 * EPS * bound):
            return cur
        prev = cur
    raise NonConvergenceError("generating operator quadrature did not stabilise", trace)


def generating_apply(f, p, nodes=DEFAULT_NODES):
    """(Tf)(z, t) for GeneratingParams ``p``."""
    return complex(generating_values(f, p.z, [p.t], p.r, nodes=nodes)[0])


def series_truncation(f, z, t, L, r=None, nodes=DEFAULT_NODES, max_order=DEFAULT_MAX_ORDER):
    """sum_{l=0}^{L} t^l / l! (R_l f)(z)."""
    brackets = rc_brackets(f, z, range(L + 1), r=r, nodes=nodes, max_order=max(max_order, L))
    return complex(sum(t ** l / factorial(l) * b for l, b in enumerate(brackets)))


def t_profile(f, z, r, nodes=DEFAULT_NODES):
    """t -> (Tf)(z, t) as a HoloFn1, analytic on |t| < r/2."""
    f = _as_holo2(f)
    return HoloFn1(lambda ts: generating_values(f, z, np.ravel(ts), r, nodes=nodes).reshape(np.shape(ts)),
                   Domain(0j, r / 2))


T_FRACTION = 0.4


def recover_brackets(f, z, r, orders, t_nodes=64, nodes=DEFAULT_NODES,
                     max_order=DEFAULT_MAX_ORDER, t_fraction=T_FRACTION):
    """R_l f(z) = (d/dt)^l (Tf)(z, t) at t = 0, on the t-circle of radius t_fraction * r.

    Rounding in Tf is amplified by l!/rho^l, so the t-circle sits close to the
    |t| < r/2 limit.
    """
    orders = [check_order(l, max_order) for l in orders]
    if not 0 < t_fraction < 0.5:
        raise ParameterError("t_fraction must lie in (0, 1/2)")
    coeffs = taylor_coefficients(t_profile(f, z, r, nodes=nodes), 0j, max(orders) + 1,
                                 r=t_fraction * r, nodes=t_nodes)
    return [complex(factorial(l) * coeffs[l]) for l in orders]


def recover_bracket(f, ell, z, r, t_nodes=64, nodes=DEFAULT_NODES, max_order=DEFAULT_MAX_ORDER,
                    t_fraction=T_FRACTION):
    ell = check_order(ell, max_order)
    return cauchy_derivative(t_profile(f, z, r, nodes=nodes), 0j, ell, r=t_fraction * r, nodes=t_nodes)


def t_fourier_decay(f, z, r, count=32, nodes=DEFAULT_NODES):
    """|c_k| (r/4)^k for the Fourier coefficients of t -> Tf(z, t) on |t| = r/4."""
    rho = r / 4
    ts = rho * np.exp(2j * pi * np.arange(count) / count)
    vals = generating_values(f, z, ts, r, nodes=nodes)
    return np.abs(np.fft.fft(vals) / count)
