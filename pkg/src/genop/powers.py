"""Regularized powers t_+^mu, t_-^mu paired against analytic test functions.

<t_+^mu, phi> is continued in mu by Taylor subtraction at the origin:

    int_0^1 t^mu (phi - P_K) dt + sum_{k<=K} c_k / (mu + k + 1) + int_1^inf t^mu phi dt

with P_K the degree-K Taylor polynomial, K = max(0, ceil(-Re mu)).  The poles at
mu = -l-1 come only from the closed-form sum, so their residues are read off exactly.
The side - pairing is the side + pairing of t -> phi(-t).
"""
from dataclasses import dataclass, replace
from math import ceil, inf, pi
from typing import Callable, Optional

import numpy as np
from scipy import integrate

from . import _accel
from .contour import Domain, HoloFn1, taylor_coefficients
from .errors import DecayContractError, DomainError, NonConvergenceError, ParameterError, PoleError

SIDES = ("+", "-")
TAYLOR_EXTRA = 24


def _check_side(side):
    if side not in SIDES:
        raise ParameterError(f"side must be '+' or '-', got {side!r}")
    return side


def opposite(side):
    return "-" if _check_side(side) == "+" else "+"


def pole_index(mu, tol=0.0):
    """l if mu == -l-1 for an integer l >= 0, else None."""
    mu = complex(mu)
    if mu.imag != 0:
        return None
    k = round(-mu.real - 1)
    if k >= 0 and abs(mu.real + k + 1) <= tol:
        return int(k)
    return None


@dataclass(frozen=True)
class PowerParameter:
    mu: complex
    side: str = "+"

    def __post_init__(self):
        _check_side(self.side)
        object.__setattr__(self, "mu", complex(self.mu))


@dataclass(frozen=True)
class TestFunction1D:
    """A real-variable test function with the data the pairing needs.

    decay is ("compact", B) for phi = 0 on |t| > B, ("exp", rate) for
    |phi| <~ exp(-rate |t|), or ("alg", p) for |phi| <~ |t|^-p.
    ``germ`` evaluates the analytic continuation near 0 (defaults to ``eval``);
    ``taylor`` gives exact Taylor coefficients at 0 when known.
    """

    eval: Callable
    analytic_radius: float = inf
    decay: tuple = ("exp", 1.0)
    support: Optional[tuple] = None
    germ: Optional[Callable] = None
    taylor: Optional[tuple] = None
    name: str = ""

    def __post_init__(self):
        kind, param = self.decay
        if kind not in ("compact", "exp", "alg"):
            raise ParameterError(f"unknown decay kind {kind!r}")
        if not param > 0:
            raise ParameterError("decay parameter must be positive")
        if not self.analytic_radius > 0:
            raise ParameterError("analytic radius must be positive")

    def __call__(self, t):
        return self.eval(t)


def reflect(phi):
    """t -> phi(-t) with all metadata mirrored."""
    f, g = phi.eval, phi.germ
    return replace(
        phi,
        eval=lambda t: f(-np.asarray(t)),
        germ=None if g is None else (lambda t: g(-np.asarray(t))),
        support=None if phi.support is None else (-phi.support[1], -phi.support[0]),
        taylor=None if phi.taylor is None else tuple((-1) ** k * c for k, c in enumerate(phi.taylor)),
        name=phi.name + "(-t)" if phi.name else "",
    )


def _vanishes_near_zero(phi):
    return phi.support is not None and not (phi.support[0] < 0 < phi.support[1])


def taylor_at_zero(phi, count):
    """phi^(k)(0)/k! for k < count."""
    if phi.taylor is not None and len(phi.taylor) >= count:
        return np.asarray(phi.taylor[:count], dtype=complex)
    if _vanishes_near_zero(phi):
        # flat at 0: a compactly supported bump starting at the origin
        return np.zeros(count, dtype=complex)
    if phi.taylor is not None:
        # a polynomial: its listed coefficients are all of them
        out = np.zeros(count, dtype=complex)
        out[:len(phi.taylor)] = phi.taylor
        return out
    g = phi.germ or phi.eval
    R = phi.analytic_radius
    r = min(1.0, 0.5 * R)
    return taylor_coefficients(HoloFn1(g, Domain(0j, R)), 0j, count, r=r)


def _quad(func, a, b, **kw):
    out = integrate.quad(func, a, b, epsabs=1e-14, epsrel=1e-12, limit=400, full_output=1, **kw)
    val, err = out[0], out[1]
    if not np.isfinite(val) or err > 1e-9 * max(1.0, abs(val)):
        raise NonConvergenceError(f"adaptive quadrature error estimate {err:.3g}", [(a, b, val, err)])
    return val


def _cquad(func, a, b, **kw):
    re = _quad(lambda t: complex(func(t)).real, a, b, **kw)
    im = _quad(lambda t: complex(func(t)).imag, a, b, **kw)
    return complex(re, im)


def _scalar(phi_eval, t):
    return complex(np.asarray(phi_eval(np.float64(t))))


def _local_part(mu, phi):
    """Continued int_0^1 t^mu phi(t) dt."""
    if _vanishes_near_zero(phi):
        lo, hi = max(0.0, phi.support[0]), min(1.0, phi.support[1])
        if hi <= lo:
            return 0j
        return _cquad(lambda t: t ** mu * _scalar(phi.eval, t), lo, hi)
    K = max(0, ceil(-mu.real))
    c = taylor_at_zero(phi, K + 1 + TAYLOR_EXTRA)
    closed = sum(c[k] / (mu + k + 1) for k in range(K + 1))
    tail = c[K + 1:]
    # below t_s the remainder comes from the series, above it from phi itself
    t_s = min(0.25, phi.analytic_radius / 4)

    def remainder(t):
        if t < t_s:
            return complex(np.polyval(tail[::-1], t))
        poly = np.polyval(c[:K + 1][::-1], t)
        return (_scalar(phi.eval, t) - poly) / t ** (K + 1)

    alpha = mu.real + K + 1
    nu = mu.imag
    val = _cquad(lambda t: remainder(t) * np.exp(1j * nu * np.log(t)) if t > 0 else remainder(t),
                 0.0, 1.0, weight="alg", wvar=(alpha, 0.0))
    return val + closed


def _tail_part(mu, phi):
    """int_1^inf t^mu phi(t) dt under the declared decay."""
    kind, param = phi.decay
    upper = inf
    if phi.support is not None:
        upper = phi.support[1]
    if kind == "compact":
        upper = min(upper, param)
    if upper <= 1:
        return 0j
    if kind == "compact" or upper < inf:
        return _cquad(lambda t: t ** mu * _scalar(phi.eval, t), 1.0, upper)
    if kind == "exp":
        return _cquad(lambda t: t ** mu * _scalar(phi.eval, t), 1.0, 1.0 + 40.0 / param)
    p = param
    if mu.real >= p - 1:
        raise DecayContractError(f"Re mu = {mu.real} needs decay faster than |t|^-{p}")
    # t = 1/s: int_0^1 s^(p - mu - 2) [s^-p phi(1/s)] ds
    alpha = p - mu.real - 2
    nu = mu.imag

    def g(s):
        # s^-p phi(1/s) has a finite limit at s = 0; the rule may sample the end point
        s = max(s, 1e-12)
        return np.exp(-1j * nu * np.log(s)) * _scalar(phi.eval, 1.0 / s) * (1.0 / s) ** p

    return _cquad(g, 0.0, 1.0, weight="alg", wvar=(alpha, 0.0))


def pair_power(p, phi):
    """<t_side^mu, phi>, meromorphically continued in mu."""
    mu = complex(p.mu)
    ell = pole_index(mu)
    if ell is not None:
        raise PoleError(ell)
    if p.side == "-":
        phi = reflect(phi)
    if phi.support is not None and phi.support[1] <= 0:
        return 0j
    return complex(_local_part(mu, phi) + _tail_part(mu, phi))


def residue_at_pole(side, ell, phi):
    """res_{mu=-l-1} <t_side^mu, phi> = (+-1)^l phi^(l)(0)/l!."""
    _check_side(side)
    if int(ell) != ell or ell < 0:
        raise ParameterError("pole index must be a non-negative integer")
    ell = int(ell)
    c = taylor_at_zero(phi, ell + 1)[ell]
    return complex(c if side == "+" else (-1) ** ell * c)


def _check_lambda(lam):
    lam = complex(lam)
    if lam.imag == 0 and lam.real == round(lam.real):
        raise PoleError(max(0, int(-round(lam.real)) - 1), f"integer exponent {lam.real:g}")
    return lam


def _principal_power(w, lam):
    return np.exp(lam * np.log(complex(w)))


def beta_pairing(side, lam, w):
    """<t_side^lam, 1/(t + w)> in closed form, principal branch."""
    _check_side(side)
    lam = _check_lambda(lam)
    w = complex(w)
    if side == "+":
        if w.imag == 0 and w.real <= 0:
            raise DomainError("w on (-inf, 0] for side +")
        return complex(-pi * _principal_power(w, lam) / np.sin(pi * lam))
    if w.imag == 0 and w.real >= 0:
        raise DomainError("w on [0, inf) for side -")
    return complex(pi * _principal_power(-w, lam) / np.sin(pi * lam))


def beta_boundary(side, lam, x, approach):
    """Limit of beta_pairing(side, lam, x + approach * i0) for real x != 0, approach = +-1."""
    _check_side(side)
    lam = _check_lambda(lam)
    x = float(x)
    if x == 0:
        raise DomainError("boundary value at w = 0")
    s = 1 if approach > 0 else -1
    if side == "+":
        pw = abs(x) ** lam if x > 0 else abs(x) ** lam * np.exp(1j * s * pi * lam)
        return complex(-pi * pw / np.sin(pi * lam))
    # (-w)^lam with -w = -x - s i0
    pw = abs(x) ** lam if x < 0 else abs(x) ** lam * np.exp(-1j * s * pi * lam)
    return complex(pi * pw / np.sin(pi * lam))


def beta_jump(side, lam, x):
    """beta_pairing(x + i0) - beta_pairing(x - i0)."""
    return beta_boundary(side, lam, x, 1) - beta_boundary(side, lam, x, -1)


def boundary_value_check(lam, x, eps):
    """(w^lam at x + i eps minus w^lam at x - i eps, 2i sin(pi lam) x_-^lam)."""
    lam = _check_lambda(lam)
    x = float(x)
    if x == 0:
        raise DomainError("x must be non-zero")
    diff = _principal_power(complex(x, eps), lam) - _principal_power(complex(x, -eps), lam)
    ref = 2j * np.sin(pi * lam) * (abs(x) ** lam if x < 0 else 0.0)
    return complex(diff), complex(ref)


def kernel_argument(z1, z2, z):
    z1, z2, z = (np.asarray(v, dtype=float) for v in (z1, z2, z))
    if np.any(z1 == z2):
        raise DomainError("kernel undefined on the diagonal z1 = z2")
    return (z1 - z) * (z2 - z) / (z1 - z2)


def kernel_K(p, z1, z2, z):
    """K_side^mu = (A)_side^mu with A = (z1 - z)(z2 - z)/(z1 - z2)."""
    A = kernel_argument(z1, z2, z)
    out = _accel.power_pm(A, complex(p.mu), 1.0 if p.side == "+" else -1.0)
    return complex(out) if out.ndim == 0 else out


def kernel_factorization_residual(mu, z1, z2, z, t_probes=(0.3, -1.7, 0.45 + 0.8j)):
    """Scale-relative residual of <t_+-^mu, 1/Q> = -2 pi i/(z1 - z2) K_-+^mu.

    The left side is built from the closed Beta pairing: Q = (z1 - z2)(t + w),
    and the real-axis w is reached as the jump across the cut.
    """
    mu = complex(mu)
    z1, z2, z = float(z1), float(z2), float(z)
    if z1 == z2:
        raise DomainError("z1 = z2")
    d = z1 - z2
    w = (z1 - z) * (z2 - z) / d
    if w == 0:
        raise DomainError("w = 0 sits on both cuts")
    res = 0.0
    for t in t_probes:
        q = (z1 - z) * (z2 - z) + t * d
        res = max(res, abs(q - d * (t + w)) / (1 + abs(q)))
    for side in SIDES:
        left = beta_jump(side, mu, w) / d
        right = -2j * pi / d * kernel_K(PowerParameter(mu, opposite(side)), z1, z2, z)
        res = max(res, abs(left - right) / (1 + abs(right)))
    return float(np.max(res))


def power_on_support(t, mu, side):
    """Pointwise t_side^mu for real arrays (zero off the half-line)."""
    return _accel.power_pm(np.asarray(t, dtype=float), complex(mu), 1.0 if side == "+" else -1.0)
