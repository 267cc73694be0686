"""Rankin-Cohen brackets R_l on analytic functions of two variables."""
from math import comb, factorial

from .contour import DEFAULT_NODES, HoloFn2, taylor_coefficients_2d
from .errors import ParameterError

DEFAULT_MAX_ORDER = 12


def check_order(ell, max_order=DEFAULT_MAX_ORDER):
    if int(ell) != ell or ell < 0:
        raise ParameterError(f"bracket order must be a non-negative integer, got {ell}")
    if ell > max_order:
        raise ParameterError(f"bracket order {ell} exceeds the configured maximum {max_order}")
    return int(ell)


def bracket_from_taylor(C, ell):
    """R_l from a Taylor block C[p, q] at the diagonal point.

    d^l f / dz1^(l-j) dz2^j = (l-j)! j! C[l-j, j]; binomials are exact integers.
    """
    total = 0j
    for j in range(ell + 1):
        weight = (-1) ** j * comb(ell, j) ** 2 * factorial(ell - j) * factorial(j)
        total += weight * C[ell - j, j]
    return complex(total)


def rc_bracket(f, ell, z, r=None, nodes=DEFAULT_NODES, max_order=DEFAULT_MAX_ORDER):
    """(R_l f)(z) = sum_j (-1)^j C(l, j)^2 d^l f / dz1^(l-j) dz2^j at z1 = z2 = z."""
    ell = check_order(ell, max_order)
    C = taylor_coefficients_2d(f, z, (ell + 1, ell + 1), r=r, nodes=nodes)
    return bracket_from_taylor(C, ell)


def rc_brackets(f, z, orders, r=None, nodes=DEFAULT_NODES, max_order=DEFAULT_MAX_ORDER):
    """Several brackets at one point from a single Taylor block."""
    orders = [check_order(l, max_order) for l in orders]
    top = max(orders)
    C = taylor_coefficients_2d(f, z, (top + 1, top + 1), r=r, nodes=nodes)
    return [bracket_from_taylor(C, l) for l in orders]


def rc_via_lemma(f, ell, z, r=None, nodes=DEFAULT_NODES, max_order=DEFAULT_MAX_ORDER):
    """R_l f(z) recomputed as d^{2l}/dz1^l dz2^l [(z1 - z2)^l f] / ((-1)^l l!)."""
    ell = check_order(ell, max_order)
    if not isinstance(f, HoloFn2):
        f = HoloFn2(f)
    g = HoloFn2(lambda a, b: (a - b) ** ell * f.eval(a, b), f.domain1, f.domain2)
    C = taylor_coefficients_2d(g, z, (ell + 1, ell + 1), r=r, nodes=nodes)
    deriv = factorial(ell) ** 2 * C[ell, ell]
    return complex(deriv / ((-1) ** ell * factorial(ell)))


def bracket_magnitude(C, ell):
    """sum_j C(l, j)^2 |d^l f / dz1^(l-j) dz2^j|: the size of R_l f before cancellation.

    Relative errors of a bracket are measured against max(|R_l f|, this), since
    R_l f can vanish exactly while its individual terms do not.
    """
    return float(sum(comb(ell, j) ** 2 * factorial(ell - j) * factorial(j) * abs(C[ell - j, j])
                     for j in range(ell + 1)))
