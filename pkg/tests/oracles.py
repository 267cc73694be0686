"""Independent reference implementations used to freeze the golden values.

None of these share code paths with the package quadratures: brackets come from
symbolic differentiation, operator values from scipy's adaptive algebraic-weight
rules or mpmath's tanh-sinh quadrature.
"""
from math import comb, pi

import mpmath
import numpy as np
import sympy as sp
from scipy import integrate

Z1, Z2, T, TH = sp.symbols("z1 z2 t theta")


# --- brackets -----------------------------------------------------------------

SYMBOLIC_LIBRARY = {
    "z1^2 z2^2": Z1 ** 2 * Z2 ** 2,
    "z1^3 z2^1": Z1 ** 3 * Z2,
    "exp(z1 z2)": sp.exp(Z1 * Z2),
    "sin(z1) exp(-z2)": sp.sin(Z1) * sp.exp(-Z2),
    "1/((z1-2)(z2+2))": 1 / ((Z1 - 2) * (Z2 + 2)),
    "(z1-z2)/(z1^2+1)": (Z1 - Z2) / (Z1 ** 2 + 1),
    "ftilde_2+": (Z1 - Z2) ** 2 * (Z1 + sp.I) ** -3 * (Z2 + sp.I) ** -3,
    "ftilde_1-": (Z1 - Z2) * (Z1 - sp.I) ** -2 * (Z2 - sp.I) ** -2,
}


def rc_symbolic(expr, ell, z):
    """sum_j (-1)^j C(l, j)^2 d^l f/dz1^(l-j) dz2^j on the diagonal, by exact differentiation."""
    total = 0
    for j in range(ell + 1):
        d = expr
        if ell - j:
            d = sp.diff(d, Z1, ell - j)
        if j:
            d = sp.diff(d, Z2, j)
        total += (-1) ** j * comb(ell, j) ** 2 * d
    val = total.subs({Z1: sp.nsimplify(z), Z2: sp.nsimplify(z)})
    return complex(sp.N(val, 30))


def rc_lemma_symbolic(expr, ell, z):
    d = sp.diff((Z1 - Z2) ** ell * expr, Z1, ell, Z2, ell) if ell else expr
    val = d.subs({Z1: sp.nsimplify(z), Z2: sp.nsimplify(z)}) / ((-1) ** ell * sp.factorial(ell))
    return complex(sp.N(val, 30))


# --- de Sitter Laplacian ----------------------------------------------------

def eigen_ratio_symbolic(ell, sign):
    """Box f / f for f_l^+- written in (t, theta), with Box = -cosh^-1 d_t cosh d_t + cosh^-2 d_theta^2."""
    s = sp.I if sign == "+" else -sp.I
    x = sp.cosh(T) * sp.cos(TH)
    y = sp.cosh(T) * sp.sin(TH)
    f = (sp.I / (x + s * y)) ** (ell + 1)
    box = -sp.diff(sp.cosh(T) * sp.diff(f, T), T) / sp.cosh(T) + sp.diff(f, TH, 2) / sp.cosh(T) ** 2
    return sp.simplify(sp.expand_trig(sp.simplify(box / f)))


# --- symmetry breaking operator --------------------------------------------

def _alg_quad(fun, a, b, alpha, beta):
    """int_a^b fun(x) (x - a)^alpha (b - x)^beta dx for complex fun, real exponents."""
    kw = dict(weight="alg", wvar=(alpha, beta), epsabs=1e-13, epsrel=1e-11, limit=200)
    re = integrate.quad(lambda x: fun(x).real, a, b, **kw)[0]
    im = integrate.quad(lambda x: fun(x).imag, a, b, **kw)[0]
    return complex(re, im)


def _ray_interval(z, c, s, box):
    lo, hi = 0.0, np.inf
    for comp, (a, b) in zip((c, s), box):
        if comp == 0:
            if not a < z < b:
                return 0.0, 0.0
            continue
        t1, t2 = (a - z) / comp, (b - z) / comp
        lo, hi = max(lo, min(t1, t2)), min(hi, max(t1, t2))
    return lo, hi


def sbo_oracle(side, mu, f, z):
    """(T_mu^side f)(z) as an iterated adaptive integral, real mu in (-1, 0).

    Polar coordinates about (z, z): z1 - z = rho cos phi, z2 - z = rho sin phi give
    A = rho cs/(c - s) and dz1 dz2 |A|^mu/(z1 - z2) = rho^mu |cs|^mu |c - s|^(-mu-1) sign(c - s).
    The angular endpoint powers and rho^mu go into scipy's algebraic weights.
    """
    want = -1.0 if side == "+" else 1.0
    # octant boundaries: cs = 0 at multiples of pi/2, c = s at pi/4 + k pi
    edges = [k * pi / 4 for k in range(9)]
    total = 0j
    for k in range(8):
        a, b = edges[k], edges[k + 1]
        mid = 0.5 * (a + b)
        cm, sm = np.cos(mid), np.sin(mid)
        if want * cm * sm / (cm - sm) <= 0:
            continue
        al = mu if k % 2 == 0 else -mu - 1
        be = -mu - 1 if k % 2 == 0 else mu

        def radial(phi):
            c, s = np.cos(phi), np.sin(phi)
            lo, hi = _ray_interval(z, c, s, f.support)
            if not hi > lo:
                return 0j
            g = lambda r: complex(f(np.array(z + r * c), np.array(z + r * s)))  # noqa: E731
            if lo == 0.0:
                return _alg_quad(g, 0.0, hi, mu, 0.0)
            return _alg_quad(lambda r: g(r) * r ** mu, lo, hi, 0.0, 0.0)

        cache = {}

        def angular(phi, a=a, b=b, al=al, be=be):
            if phi not in cache:
                # the rule samples the end points; the smooth factor is continuous there
                phi = min(max(phi, a + 1e-13), b - 1e-13)
                c, s = np.cos(phi), np.sin(phi)
                # the endpoint factors |phi - a|^al |b - phi|^be live in the weight
                val = abs(c * s) ** mu * abs(c - s) ** (-mu - 1) * np.sign(c - s)
                val /= (phi - a) ** al * (b - phi) ** be
                cache[phi] = val * radial(phi)
            return cache[phi]
        total += _alg_quad(angular, a, b, al, be)
    return -total / (2j * pi)


# --- holographic operator and Poisson transform -----------------------------

def _mp_real_power(x, mu):
    return mpmath.power(abs(x), mu)


def holographic_oracle(side, mu, h, z1, z2, dps=20):
    """(H_mu^side h)(z1, z2) by tanh-sinh quadrature split at the kernel zeros."""
    lo, hi = h.support
    want = -1 if side == "+" else 1
    pts = sorted({lo, hi} | {p for p in (z1, z2) if lo < p < hi})
    with mpmath.workdps(dps):
        total = mpmath.mpc(0)
        for a, b in zip(pts[:-1], pts[1:]):
            mid = 0.5 * (a + b)
            if want * (z1 - mid) * (z2 - mid) / (z1 - z2) <= 0:
                continue

            def g(x):
                A = (z1 - x) * (z2 - x) / (z1 - z2)
                return complex(h(np.array(float(x)))) * _mp_real_power(A, mu)
            total += mpmath.quad(g, [a, b])
        return complex(total / (z1 - z2))


def poisson_oracle(side, lam, h, p, dps=20):
    """int h(zeta) |K(p; zeta)|^(lam/2 - 1) over {sign K matches}, K the quadratic in zeta."""
    x, y, z = p
    mu = lam / 2 - 1
    lo, hi = h.support
    want = -1 if side == "+" else 1
    roots = np.roots([-(y - z) / 2, x, (y + z) / 2]).real
    pts = sorted({lo, hi} | {float(r) for r in roots if lo < r < hi})
    K = lambda s: x * s + ((y + z) - (y - z) * s * s) / 2  # noqa: E731
    with mpmath.workdps(dps):
        total = mpmath.mpc(0)
        for a, b in zip(pts[:-1], pts[1:]):
            if want * K(0.5 * (a + b)) <= 0:
                continue
            total += mpmath.quad(lambda s: complex(h(np.array(float(s)))) * _mp_real_power(K(s), mu), [a, b])
        return complex(total)


def beta_oracle(lam, w):
    """int_0^inf t^lam/(t + w) dt with mpmath, any -1 < lam < 0 and w off (-inf, 0].

    Both halves are mapped to [0, 1] with smooth integrands: u = t^(lam + 1) on
    [0, 1] and v = t^lam on [1, inf).
    """
    with mpmath.workdps(30):
        lam, w = mpmath.mpf(lam), mpmath.mpc(w)
        a, b = 1 / (lam + 1), -1 / lam

        def pts(knot):
            # the integrand peaks where the denominator nearly vanishes
            return [0] + ([knot] if 0 < knot < 1 else []) + [1]
        head = a * mpmath.quad(lambda u: 1 / (u ** a + w), pts(abs(w) ** (1 / a)))
        tail = b * mpmath.quad(lambda v: 1 / (1 + w * v ** b), pts(abs(w) ** (-1 / b)))
        return complex(head + tail)


__all__ = [
    "SYMBOLIC_LIBRARY", "rc_symbolic", "rc_lemma_symbolic", "eigen_ratio_symbolic", "sbo_oracle",
    "holographic_oracle", "poisson_oracle", "beta_oracle",
]
