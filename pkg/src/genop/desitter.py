"""Two-dimensional de Sitter space dS^2 = {x^2 + y^2 - z^2 = 1} as the open
SL(2, R)-orbit in G/P x G/P.

Charts: ambient (x, y, z), hyperbolic (t, theta) with
(x, y, z) = (cosh t cos theta, cosh t sin theta, sinh t), and the Bruhat pair

    z1 = -(y + z)/(x + 1) = (x - 1)/(y - z),    z2 = (x + 1)/(y - z),

valid where y != z.  The group acts on points by conjugation of the traceless
matrix (x, y + z; y - z, -x) and on the Bruhat pair by Mobius maps in each slot.
"""
from dataclasses import dataclass
from functools import lru_cache
from math import factorial, pi
from typing import Callable

import numpy as np

from .contour import Domain, HoloFn2
from .errors import ChartError, ParameterError
from .powers import _check_side
from .quadrature import breakpoint_panels
from .rankin_cohen import rc_bracket

FD_STEP = 1e-3
POISSON_NODES = 32
T_PANELS = 8
FOURIER_THETA_NODES = 256
FOURIER_T_NODES = 24


@dataclass(frozen=True)
class DeSitterPoint:
    x: float
    y: float
    z: float

    def __post_init__(self):
        q = self.x ** 2 + self.y ** 2 - self.z ** 2 - 1
        if abs(q) > 1e-12 * max(1.0, self.z ** 2):
            raise ParameterError(f"point is off the quadric (residual {q:.3g})")

    @classmethod
    def from_hyperbolic(cls, t, theta):
        return cls(np.cosh(t) * np.cos(theta), np.cosh(t) * np.sin(theta), np.sinh(t))

    @classmethod
    def from_bruhat(cls, z1, z2):
        return cls(*bruhat_inverse(z1, z2))

    @property
    def ambient(self):
        return (self.x, self.y, self.z)

    @property
    def hyperbolic(self):
        return float(np.arcsinh(self.z)), float(np.arctan2(self.y, self.x) % (2 * pi))

    @property
    def chart_valid(self):
        return self.y != self.z

    @property
    def bruhat(self):
        return bruhat_chart(self.x, self.y, self.z)

    def matrix(self):
        return np.array([[self.x, self.y + self.z], [self.y - self.z, -self.x]])

    def quadric_residual(self):
        return abs(self.x ** 2 + self.y ** 2 - self.z ** 2 - 1)


def ds_from_group(g):
    """gH -> Ad(g) E_11: (x, y, z) = (ad + bc, -ab + cd, -ab - cd)."""
    a, b, c, d = g.a, g.b, g.c, g.d
    return DeSitterPoint(a * d + b * c, -a * b + c * d, -a * b - c * d)


def ad_matrix(g):
    """Ad(g) E_11 = g diag(1, -1) g^-1 as a 2x2 matrix."""
    m = g.matrix()
    return m @ np.diag([1.0, -1.0]) @ g.inverse().matrix()


def act(g, p):
    """Ad(g) p on ambient coordinates."""
    M = g.matrix() @ p.matrix() @ g.inverse().matrix()
    x = 0.5 * (M[0, 0] - M[1, 1])
    return DeSitterPoint(x, 0.5 * (M[0, 1] + M[1, 0]), 0.5 * (M[0, 1] - M[1, 0]))


def bruhat_chart(x, y, z):
    """(z1, z2); z1 takes whichever of its two equal forms avoids cancellation."""
    x, y, z = (np.asarray(v, dtype=float) for v in (x, y, z))
    ymz = y - z
    if np.any(ymz == 0):
        raise ChartError("y = z: the point lies outside the Bruhat chart")
    with np.errstate(divide="ignore", invalid="ignore"):
        z1 = np.where(x >= 0, -(y + z) / (x + 1), (x - 1) / ymz)
    z2 = (x + 1) / ymz
    if z1.ndim == 0:
        return float(z1), float(z2)
    return z1, z2


def bruhat_inverse(z1, z2):
    z1, z2 = np.asarray(z1, dtype=float), np.asarray(z2, dtype=float)
    d = z1 - z2
    if np.any(d == 0):
        raise ChartError("z1 = z2 is not a point of dS^2")
    x = -(z1 + z2) / d
    y = (z1 * z2 - 1) / d
    z = (z1 * z2 + 1) / d
    if x.ndim == 0:
        return float(x), float(y), float(z)
    return x, y, z


def chart_identity_residuals(p, zeta=0.37):
    """Residuals of the three Bruhat identities at p (and a sample boundary point zeta)."""
    x, y, z = p.ambient
    z1, z2 = p.bruhat
    r1 = abs((z1 - z2) - (-2 / (y - z)))
    lhs2 = (z1 + 1j) * (z2 + 1j)
    rhs2 = 2j * (x + 1j * y) / (y - z)
    r2 = abs(lhs2 - rhs2) / (1 + abs(rhs2))
    lhs3 = (z1 - z2) / ((z1 - zeta) * (z2 - zeta))
    rhs3 = 2 * (1 + x) / (((1 + x) * zeta + (y + z)) * ((1 + x) - (y - z) * zeta))
    r3 = abs(lhs3 - rhs3) / (1 + abs(rhs3))
    return r1 / (1 + abs(z1 - z2)), r2, r3


# --- invariant measure ------------------------------------------------------

CHARTS = ("ambient-xy", "hyperbolic", "bruhat")


def measure_density(p, chart):
    """Density of the invariant measure in the given chart, normalised to cosh t dt dtheta.

    In the (x, y) chart over one sheet dx dy = |z| cosh t dt dtheta, so the
    density is 1/|z|.
    """
    if chart == "hyperbolic":
        t, _ = p.hyperbolic
        return float(np.cosh(t))
    if chart == "bruhat":
        z1, z2 = p.bruhat
        return 2.0 / (z1 - z2) ** 2
    if chart == "ambient-xy":
        if p.z == 0:
            raise ChartError("the (x, y) chart degenerates at z = 0")
        return 1.0 / abs(p.z)
    raise ParameterError(f"unknown chart {chart!r}")


def _fd_jacobian(fun, u, h=1e-6):
    u = np.asarray(u, dtype=float)
    cols = []
    for i in range(2):
        e = np.zeros(2)
        e[i] = h
        cols.append((np.asarray(fun(u + e)) - np.asarray(fun(u - e))) / (2 * h))
    return np.abs(np.linalg.det(np.column_stack(cols)))


def measure_consistency_residual(p):
    """max relative mismatch of the three densities under finite-difference Jacobians."""
    t, th = p.hyperbolic
    base = measure_density(p, "hyperbolic")
    to_bruhat = _fd_jacobian(lambda u: bruhat_chart(*DeSitterPoint.from_hyperbolic(*u).ambient),
                             (t, th))
    res = abs(measure_density(p, "bruhat") * to_bruhat - base) / base
    if p.z != 0:
        to_xy = _fd_jacobian(lambda u: DeSitterPoint.from_hyperbolic(*u).ambient[:2], (t, th))
        res = max(res, abs(measure_density(p, "ambient-xy") * to_xy - base) / base)
    return float(res)


# --- functions on dS^2 ------------------------------------------------------

def _ymz(x, y, z):
    ymz = np.asarray(y, dtype=float) - np.asarray(z, dtype=float)
    if np.any(ymz == 0):
        raise ChartError("y = z")
    return ymz


def pullback(lam, f):
    """F(x, y, z) = (z1 - z2)^lam f(z1, z2) with z1 - z2 = -2/(y - z), principal branch."""
    lam = complex(lam)

    def F(x, y, z):
        diff = -2.0 / _ymz(x, y, z)
        z1, z2 = bruhat_chart(x, y, z)
        fac = 1.0 if lam == 0 else np.exp(lam * np.log(diff.astype(complex) if np.ndim(diff)
                                                        else complex(diff)))
        return fac * f(z1, z2)

    return F


def extended_eigenfunction(ell, sign):
    """(z1 - z2)^l (z1 +- i)^(-l-1) (z2 +- i)^(-l-1), poles at z = -+i."""
    _check_side(sign)
    if int(ell) != ell or ell < 0:
        raise ParameterError("ell must be a non-negative integer")
    ell = int(ell)
    s = 1j if sign == "+" else -1j
    dom = Domain(poles=(-s,))
    return HoloFn2(lambda a, b: (a - b) ** ell * (a + s) ** (-ell - 1) * (b + s) ** (-ell - 1),
                   dom, dom, name=f"ftilde_{ell}{sign}")


def eigenfunction(ell, sign):
    """f_l^+- (x, y, z) = (i/(x +- i y))^(l+1)."""
    _check_side(sign)
    s = 1j if sign == "+" else -1j
    return lambda x, y, z: (1j / (np.asarray(x) + s * np.asarray(y))) ** (ell + 1)


def pullback_sign(ell, sign):
    """pullback(1, ftilde_l^sign) = pullback_sign * f_l^sign."""
    return 1 if sign == "+" else (-1) ** (ell + 1)


# --- Laplacian --------------------------------------------------------------

def _on_hyperbolic(F, t, th):
    return F(np.cosh(t) * np.cos(th), np.cosh(t) * np.sin(th), np.sinh(t))


def _lap_once(F, t, th, h, sign):
    k = np.array([-2, -1, 0, 1, 2]) * h
    ft = _on_hyperbolic(F, t + k, th)
    fth = _on_hyperbolic(F, t, th + k)
    # fourth-order central differences
    d1 = (ft[0] - 8 * ft[1] + 8 * ft[3] - ft[4]) / (12 * h)
    d2t = (-ft[0] + 16 * ft[1] - 30 * ft[2] + 16 * ft[3] - ft[4]) / (12 * h * h)
    d2th = (-fth[0] + 16 * fth[1] - 30 * fth[2] + 16 * fth[3] - fth[4]) / (12 * h * h)
    ch = np.cosh(t)
    return sign * (-(d2t + np.tanh(t) * d1) + d2th / ch ** 2)


def _laplacian(F, t, th, h, sign):
    coarse = _lap_once(F, t, th, h, sign)
    fine = _lap_once(F, t, th, h / 2, sign)
    return (16 * fine - coarse) / 15


@lru_cache(maxsize=1)
def laplacian_sign():
    """Overall sign fixed once so that f_1^+ has eigenvalue -2."""
    F = eigenfunction(1, "+")
    t, th = 0.3, 0.7
    ratio = _laplacian(F, t, th, FD_STEP, 1.0) / _on_hyperbolic(F, t, th)
    return 1.0 if abs(ratio - (-2.0)) < abs(ratio - 2.0) else -1.0


def laplacian_ds(F, p, h=FD_STEP):
    """Lorentzian Laplacian of F(x, y, z) at p by Richardson-refined finite differences in (t, theta)."""
    t, th = p.hyperbolic
    return complex(_laplacian(F, t, th, h, laplacian_sign()))


def eigenvalue(lam):
    """-1/4 lam (lam - 2)."""
    lam = complex(lam)
    return -0.25 * lam * (lam - 2)


# --- Poisson transform ------------------------------------------------------

def kernel_roots(x, y, z):
    """Real roots in zeta of xi zeta + ((y + z) - (y - z) zeta^2)/2; the Bruhat pair when y != z."""
    if y == z:
        if x == 0:
            raise ChartError("degenerate kernel")
        return (-(y + z) / (2 * x),)
    return bruhat_chart(x, y, z)


def poisson_kernel(x, y, z, zeta):
    """K(x, y, z; zeta) = x zeta + ((y + z) - (y - z) zeta^2)/2.

    Equal to ((1+x)zeta + (y+z))((1+x) - (y-z)zeta) / (2(1+x)) on the quadric, without
    the removable singularity at x = -1.
    """
    zeta = np.asarray(zeta, dtype=float)
    return x * zeta + 0.5 * ((y + z) - (y - z) * zeta ** 2)


def _poisson_nodes(p, support, mu, n):
    x, y, z = p.ambient
    roots = kernel_roots(x, y, z)
    lo, hi = support
    xs, ws, ks = [], [], []
    lead = -0.5 * (y - z) if len(roots) == 2 else x
    for q, w, dl, dr, sl, sr, a, b in breakpoint_panels(lo, hi, roots, n, mu):
        # the sign is constant on a panel; nodes may round onto a root
        mid = 0.5 * (a + b)
        sgn = np.sign(lead) * np.prod([np.sign(mid - r) for r in roots])
        use_left = dl <= dr
        dists = []
        for r in roots:
            d = np.abs(q - r)
            if a == r:
                d[use_left] = dl[use_left]
            if b == r:
                d[~use_left] = dr[~use_left]
            dists.append(d)
        K = sgn * abs(lead) * np.prod(dists, axis=0)
        xs.append(q)
        ws.append(w)
        ks.append(K)
    return np.concatenate(xs), np.concatenate(ws), np.concatenate(ks)


def poisson_apply(side, lam, h, p, n=POISSON_NODES):
    """(P_lam^side h)(p) = int K_-+^(lam/2 - 1)(p; zeta) h(zeta) dzeta."""
    _check_side(side)
    lam = complex(lam)
    if not lam.real > 0:
        raise ParameterError("need Re lam > 0")
    mu = lam / 2 - 1
    q, w, K = _poisson_nodes(p, h.support, mu, n)
    want = -1.0 if side == "+" else 1.0
    m = want * K > 0
    if not np.any(m):
        return 0j
    return complex(np.sum(w[m] * h(q[m]) * np.exp(mu * np.log(np.abs(K[m])))))


def poisson_function(side, lam, h, n=POISSON_NODES):
    """P_lam^side h as a function of ambient coordinates (scalar points)."""
    def F(x, y, z):
        x, y, z = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float), np.asarray(z, float))
        out = np.empty(x.shape, dtype=complex)
        for i in np.ndindex(x.shape):
            out[i] = poisson_apply(side, lam, h, _unchecked(x[i], y[i], z[i]), n=n)
        return out
    return F


def _unchecked(x, y, z):
    p = object.__new__(DeSitterPoint)
    object.__setattr__(p, "x", float(x))
    object.__setattr__(p, "y", float(y))
    object.__setattr__(p, "z", float(z))
    return p


# --- Fourier transform ------------------------------------------------------

@dataclass(frozen=True)
class DSFunction:
    """Function of (x, y, z) vanishing outside |t| < t_max (and, if given, on theta outside theta_range)."""

    eval: Callable
    t_max: float
    name: str = ""


def _pair_distance_to_diagonal(box):
    (a1, b1), (a2, b2) = box
    if max(a1, a2) < min(b1, b2):
        return 0.0
    return max(a1 - b2, a2 - b1)


def pulled_back_section(f):
    """iota_1^* f = (z1 - z2) f(z1, z2) for a 2-D test section whose box avoids the diagonal."""
    dist = _pair_distance_to_diagonal(f.support)
    if not dist > 0:
        raise ChartError("support box meets the diagonal z1 = z2")
    (a1, b1), (a2, b2) = f.support
    m1 = max(abs(a1), abs(b1))
    m2 = max(abs(a2), abs(b2))
    # |z| = |z1 z2 + 1|/|z1 - z2|
    t_max = float(np.arcsinh((1 + m1 * m2) / dist)) + 1e-9

    def ev(x, y, z):
        ymz = np.asarray(y, float) - np.asarray(z, float)
        out = np.zeros(np.shape(ymz), dtype=complex)
        ok = ymz != 0
        if np.any(ok):
            xx, yy, zz = (np.asarray(v, float)[ok] for v in (x, y, z))
            z1, z2 = bruhat_chart(xx, yy, zz)
            out[ok] = (-2.0 / ymz[ok]) * f(z1, z2)
        return out

    return DSFunction(ev, t_max, name=f.name)


def fourier_apply(side, lam, H, zeta, n_theta=FOURIER_THETA_NODES, n_t=FOURIER_T_NODES):
    """(F_lam^side H)(zeta) = int_{dS^2} K_-+^(-lam/2)(p; zeta) H(p) cosh t dt dtheta.

    K = P cosh t + S sinh t with S = (1 + zeta^2)/2 > 0, so for each theta the
    kernel vanishes only at tanh t* = -P/S and |K| = S |sinh(t - t*)| / cosh t*.
    """
    _check_side(side)
    lam = complex(lam)
    mu = -lam / 2
    if not -1 < mu.real < 0:
        raise ParameterError("need 0 < Re lam < 2")
    zeta = float(zeta)
    T = H.t_max
    th = 2 * pi * np.arange(n_theta) / n_theta
    S = 0.5 * (1 + zeta ** 2)
    P = zeta * np.cos(th) + 0.5 * np.sin(th) * (1 - zeta ** 2)
    want = -1.0 if side == "+" else 1.0
    spacing = 2 * T / T_PANELS
    cuts = list(-T + spacing * np.arange(1, T_PANELS))
    total = 0j
    for P_j, th_j in zip(P, th):
        ratio = -P_j / S
        tstar = np.arctanh(ratio) if abs(ratio) < 1 else np.sign(ratio) * np.inf
        sing = (tstar,) if -T < tstar < T else ()
        # uniform cuts resolve the compact support; none may crowd t*
        extra = [c for c in cuts if not sing or abs(c - tstar) > spacing / 4]
        for t, w, dl, dr, sl, sr, a, b in breakpoint_panels(-T, T, sing, n_t, mu, extra):
            if np.isfinite(tstar):
                dist = np.abs(t - tstar)
                use_left = dl <= dr
                if sl:
                    dist[use_left] = dl[use_left]
                if sr:
                    dist[~use_left] = dr[~use_left]
                absK = S * np.sinh(dist) / np.cosh(tstar)
                sgn = np.full(t.shape, np.sign(0.5 * (a + b) - tstar))
            else:
                K = P_j * np.cosh(t) + S * np.sinh(t)
                absK, sgn = np.abs(K), np.sign(K)
            m = want * sgn > 0
            if not np.any(m):
                continue
            tm = t[m]
            vals = H.eval(np.cosh(tm) * np.cos(th_j), np.cosh(tm) * np.sin(th_j), np.sinh(tm))
            total += np.sum(w[m] * vals * np.exp(mu * np.log(absK[m])) * np.cosh(tm))
    return complex(total * 2 * pi / n_theta)


# --- discrete series embedding ---------------------------------------------

def bracket_closed_form(ell, sign, zeta):
    """(2l)!/l! (zeta +- i)^(-2l-2)."""
    s = 1j if sign == "+" else -1j
    return factorial(2 * ell) / factorial(ell) * (zeta + s) ** (-2 * ell - 2)


def embedding_check(ell, sign, probes):
    """R_l ftilde_l^sign on the probes against its closed form; also reports non-vanishing."""
    f = extended_eigenfunction(ell, sign)
    vals = np.array([rc_bracket(f, ell, complex(z)) for z in probes])
    ref = np.array([bracket_closed_form(ell, sign, complex(z)) for z in probes])
    rel = np.abs(vals - ref) / np.abs(ref)
    return {
        "values": vals,
        "closed_form": ref,
        "max_relative_error": float(np.max(rel)),
        "min_abs_value": float(np.min(np.abs(vals))),
        "nonvanishing": bool(np.all(np.abs(vals) > 0)),
    }
