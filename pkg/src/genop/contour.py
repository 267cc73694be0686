"""Trapezoidal contour quadrature on circles and Cauchy-integral derivatives.

All integrands are evaluated on whole node arrays at once, so the callables
wrapped in :class:`HoloFn1` / :class:`HoloFn2` must accept numpy arrays.
"""
from dataclasses import dataclass
from math import factorial, inf, pi
from typing import Callable

import numpy as np

from .errors import NonConvergenceError, ParameterError, QuadratureDomainError

EPS = np.finfo(float).eps
DEFAULT_NODES = 256
MAX_NODES = 4096
# N x N complex grids: 1024^2 already costs 16 MB per evaluation.
MAX_NODES_2D = 1024


@dataclass(frozen=True)
class Domain:
    """Region of analyticity: an open disk minus a finite set of poles.

    ``radius=inf`` with no poles means entire.
    """

    center: complex = 0j
    radius: float = inf
    poles: tuple = ()

    def singular_distance(self, z0):
        """Distance from ``z0`` to the nearest point where analyticity fails."""
        d = inf
        if self.radius != inf:
            d = self.radius - abs(z0 - self.center)
        for p in self.poles:
            d = min(d, abs(z0 - p))
        return d

    def describe(self):
        if self.radius == inf and not self.poles:
            return "entire"
        parts = []
        if self.radius != inf:
            parts.append(f"disk(center={self.center}, radius={self.radius})")
        if self.poles:
            parts.append("poles " + ", ".join(str(p) for p in self.poles))
        return "; ".join(parts)


ENTIRE = Domain()


@dataclass(frozen=True)
class HoloFn1:
    eval: Callable
    domain: Domain = ENTIRE
    name: str = ""

    def __call__(self, z):
        return self.eval(z)


@dataclass(frozen=True)
class HoloFn2:
    """Analytic function of two variables; singular set is {z1 in D1^c} u {z2 in D2^c}."""

    eval: Callable
    domain1: Domain = ENTIRE
    domain2: Domain = ENTIRE
    name: str = ""

    def __call__(self, z1, z2):
        return self.eval(z1, z2)

    def singular_distance(self, z0):
        return min(self.domain1.singular_distance(z0), self.domain2.singular_distance(z0))


@dataclass(frozen=True)
class CircleContour:
    center: complex
    radius: float
    nodes: int = DEFAULT_NODES

    def __post_init__(self):
        if not self.radius > 0:
            raise ParameterError(f"radius must be positive, got {self.radius}")
        n = self.nodes
        if n < 8 or n & (n - 1):
            raise ParameterError(f"nodes must be a power of two >= 8, got {n}")

    def points(self, n=None):
        n = n or self.nodes
        theta = 2 * pi * np.arange(n) / n
        return self.center + self.radius * np.exp(1j * theta)


def as_holo1(f):
    return f if isinstance(f, (HoloFn1,)) else HoloFn1(f)


def _evaluate(f, *args):
    vals = np.asarray(f(*args), dtype=np.complex128)
    shape = np.broadcast(*args).shape
    if vals.shape != shape:
        vals = np.broadcast_to(vals, shape)
    if not np.all(np.isfinite(vals)):
        raise QuadratureDomainError("integrand returned a non-finite value at a quadrature node")
    return vals


def default_radius(distance):
    """Half the distance to the nearest singularity, capped at 1."""
    return min(1.0, 0.5 * distance)


def _stable(a, b, tol, floor):
    return np.all(np.abs(a - b) <= np.maximum(tol * np.abs(b), floor))


def contour_integral(f, C, tol=1e-12, max_nodes=MAX_NODES):
    """Trapezoidal approximation of the closed integral of ``f`` over the circle ``C``.

    The node count doubles from ``C.nodes`` until two successive results agree.
    """
    f = as_holo1(f)
    dom = f.domain
    if dom.radius != inf and abs(C.center - dom.center) + C.radius >= dom.radius:
        raise QuadratureDomainError("contour leaves the declared disk of analyticity")
    for p in dom.poles:
        if abs(abs(p - C.center) - C.radius) <= 1e-12 * max(1.0, C.radius):
            raise QuadratureDomainError(f"pole {p} lies on the contour")

    def trap(n):
        z = C.points(n)
        u = z - C.center
        vals = _evaluate(f, z)
        terms = vals * u
        return (2j * pi / n) * np.sum(terms), (2 * pi / n) * np.sum(np.abs(terms))

    n = C.nodes
    prev, _ = trap(n)
    trace = [(n, prev)]
    while 2 * n <= max_nodes:
        n *= 2
        cur, scale = trap(n)
        trace.append((n, cur))
        if _stable(prev, cur, tol, 1e3 * EPS * scale):
            return complex(cur)
        prev = cur
    raise NonConvergenceError("contour integral did not stabilise under node doubling", trace)


def _check_radius(r, distance):
    if not r > 0:
        raise ParameterError(f"radius must be positive, got {r}")
    if r >= distance:
        raise QuadratureDomainError(
            f"radius {r} reaches a singularity (distance {distance:.6g})"
        )


def taylor_coefficients(f, z0, count, r=None, nodes=DEFAULT_NODES, tol=1e-10,
                        max_nodes=MAX_NODES):
    """Taylor coefficients f^(k)(z0)/k!, k < count, from the trapezoidal Cauchy integral."""
    f = as_holo1(f)
    dist = f.domain.singular_distance(z0)
    if r is None:
        r = default_radius(dist)
    _check_radius(r, dist)
    n = nodes
    while n < 2 * count:
        n *= 2
    scale = r ** np.arange(count, dtype=float)

    def coeffs(n):
        z = z0 + r * np.exp(2j * pi * np.arange(n) / n)
        vals = _evaluate(f, z)
        return np.fft.fft(vals)[:count] / n, np.max(np.abs(vals))

    prev, _ = coeffs(n)
    trace = [(n, prev)]
    while 2 * n <= max_nodes:
        n *= 2
        cur, fmax = coeffs(n)
        trace.append((n, cur))
        if _stable(prev, cur, tol, 1e2 * EPS * fmax):
            return cur / scale
        prev = cur
    raise NonConvergenceError("Taylor coefficients did not stabilise", trace)


def cauchy_derivative(f, z0, order, r=None, nodes=DEFAULT_NODES, tol=1e-10, max_nodes=MAX_NODES):
    """f^(order)(z0) as order!/(2 pi i) times the closed integral of f/(zeta-z0)^(order+1)."""
    if order < 0:
        raise ParameterError("derivative order must be >= 0")
    c = taylor_coefficients(f, z0, order + 1, r=r, nodes=nodes, tol=tol, max_nodes=max_nodes)
    return complex(factorial(order) * c[order])


def taylor_coefficients_2d(f, z0, shape, r=None, nodes=DEFAULT_NODES, tol=1e-10,
                           max_nodes=MAX_NODES_2D):
    """Block C[p, q] = d^{p+q} f / dz1^p dz2^q (z0, z0) / (p! q!) for p < P, q < Q.

    Iterated double Cauchy integral on the torus |z1-z0| = |z2-z0| = r, evaluated
    as a 2-D FFT of the N x N node samples.
    """
    if not isinstance(f, HoloFn2):
        f = HoloFn2(f)
    P, Q = shape
    dist = f.singular_distance(z0)
    if r is None:
        r = default_radius(dist)
    _check_radius(r, dist)
    n = nodes
    while n < 2 * max(P, Q):
        n *= 2
    scale = r ** np.add.outer(np.arange(P), np.arange(Q)).astype(float)

    def block(n):
        u = r * np.exp(2j * pi * np.arange(n) / n)
        vals = _evaluate(f, z0 + u[:, None], z0 + u[None, :])
        return np.fft.fft2(vals)[:P, :Q] / (n * n), np.max(np.abs(vals))

    prev, _ = block(n)
    trace = [(n, prev)]
    while 2 * n <= max_nodes:
        n *= 2
        cur, fmax = block(n)
        trace.append((n, cur))
        if _stable(prev, cur, tol, 1e2 * EPS * fmax):
            return cur / scale
        prev = cur
    raise NonConvergenceError("bivariate Taylor block did not stabilise", trace)


def mixed_partial(f, z0, orders, r=None, nodes=DEFAULT_NODES, tol=1e-10, max_nodes=MAX_NODES_2D):
    """d^{p+q} f / dz1^p dz2^q at (z0, z0)."""
    p, q = orders
    if p < 0 or q < 0:
        raise ParameterError("orders must be >= 0")
    C = taylor_coefficients_2d(f, z0, (p + 1, q + 1), r=r, nodes=nodes, tol=tol,
                               max_nodes=max_nodes)
    return complex(factorial(p) * factorial(q) * C[p, q])
