"""Fixed Gauss-Legendre panels graded toward algebraic endpoint singularities.

A panel [a, b] with a |x - a|^alpha singularity at ``a`` gets, next to ``a``, a
sub-panel whose rule is exact for |x - a|^alpha times polynomials: Gauss-Jacobi
for real alpha, with weights divided by the offsets^alpha so callers still
multiply by the singular factor themselves.  For complex alpha the factor
|x - a|^(i Im alpha) is not polynomial, so x = a + g s^p with p = 5/(Re alpha + 1)
buries it under s^4 instead.

Every node carries its exact offsets from both panel ends so callers can form
|x - a|^alpha without cancellation.
"""
from functools import lru_cache

import numpy as np
from scipy.special import roots_jacobi

COMPLEX_GRADING = 5.0


@lru_cache(maxsize=64)
def gauss_legendre01(n):
    x, w = np.polynomial.legendre.leggauss(n)
    return (x + 1) / 2, w / 2


@lru_cache(maxsize=64)
def gauss_jacobi01(n, alpha):
    """Nodes and weights on (0, 1) for int_0^1 s^alpha q(s) ds, alpha real > -1."""
    x, w = roots_jacobi(n, 0.0, alpha)
    return (x + 1) / 2, w / 2 ** (alpha + 1)


def grading_power(alpha):
    if alpha is None:
        return 1.0
    alpha = complex(alpha)
    if alpha.real <= -1:
        raise ValueError("endpoint exponent must have real part > -1")
    if alpha.imag == 0:
        return 1.0 / (alpha.real + 1)
    return COMPLEX_GRADING / (alpha.real + 1)


def graded_rule(n, alpha, strength=COMPLEX_GRADING):
    """Nodes d in (0, 1] and weights for int_0^1 with d^alpha (times logs) at 0.

    x = s^p with p = strength/(Re alpha + 1); the extra strength also absorbs
    log|d| factors that the exact grading leaves behind.
    """
    s, w = gauss_legendre01(n)
    p = strength / (complex(alpha).real + 1)
    d = s ** p
    wt = p * s ** (p - 1) * w
    keep = d > 0
    return d[keep], wt[keep]


GRADED_FRACTION = 0.25


def _half(a, length, n, alpha, from_left):
    """Half-panel of ``length`` next to ``a``; a singular end gets a graded sub-panel
    over GRADED_FRACTION of the length and plain nodes on the rest."""
    s, w = gauss_legendre01(n)
    if alpha is None:
        d, wt = length * s, length * w
    else:
        g = GRADED_FRACTION * length
        alpha = complex(alpha)
        if alpha.real <= -1:
            raise ValueError("endpoint exponent must have real part > -1")
        if alpha.imag == 0:
            sj, wj = gauss_jacobi01(n, alpha.real)
            dg = g * sj
            wg = g * wj / sj ** alpha.real
        else:
            p = grading_power(alpha)
            dg = g * s ** p
            wg = g * p * s ** (p - 1) * w
        keep = dg > 0
        d = np.concatenate([dg[keep], g + (length - g) * s])
        wt = np.concatenate([wg[keep], (length - g) * w])
    if from_left:
        return a + d, wt, d
    return a - d, wt, d


def panel(a, b, n, alpha_left=None, alpha_right=None):
    """Nodes, weights and offsets (x - a, b - x) for the integral over [a, b].

    With a singular end the panel is halved and each half graded toward its own end.
    """
    if not b > a:
        empty = np.empty(0)
        return empty, empty, empty, empty
    if alpha_left is None and alpha_right is None:
        s, w = gauss_legendre01(n)
        L = b - a
        return a + L * s, L * w, L * s, L * (1 - s)
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    xl, wl, dl = _half(a, half, n, alpha_left, True)
    xr, wr, dr = _half(b, half, n, alpha_right, False)
    x = np.concatenate([xl, xr[::-1]])
    w = np.concatenate([wl, wr[::-1]])
    left = np.concatenate([dl, (b - a) - dr[::-1]])
    right = np.concatenate([(b - a) - dl, dr[::-1]])
    del mid
    return x, w, left, right


def geometric_cuts(points, scale, a, b, ratio=4.0):
    """Cuts at p +- scale * ratio^k / 2 inside (a, b), resolving nearby singular points.

    Cuts landing within scale/16 of any of ``points`` are dropped so no regular
    panel ends next to a singularity.
    """
    out = set()
    for p in points:
        for sgn in (1.0, -1.0):
            step = 0.5 * scale
            while True:
                x = p + sgn * step
                if (sgn > 0 and x >= b) or (sgn < 0 and x <= a):
                    break
                if a < x < b and min(abs(x - q) for q in points) > scale / 16:
                    out.add(x)
                step *= ratio
    return out


def breakpoint_panels(a, b, points, n, alpha, extra=()):
    """Panels covering [a, b], split at interior ``points`` where |x - p|^alpha is singular.

    ``extra`` adds regular cut points.  Returns a list of
    (x, w, offset_left, offset_right, left_is_singular, right_is_singular, lo, hi).
    """
    cuts = sorted(set(p for p in points if a < p < b) | set(x for x in extra if a < x < b))
    edges = [a] + cuts + [b]
    sing = set(p for p in points if a <= p <= b)
    out = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        sl = lo in sing
        sr = hi in sing
        x, w, dl, dr = panel(lo, hi, n, alpha if sl else None, alpha if sr else None)
        out.append((x, w, dl, dr, sl, sr, lo, hi))
    return out
