"""Fixed libraries of test functions and base points used by the verification suites."""
from math import factorial

import numpy as np

from .contour import Domain, ENTIRE, HoloFn2
from .desitter import extended_eigenfunction
from .powers import TestFunction1D

BASE_POINTS = (-0.6, -0.25, 0.0, 0.35 + 0.2j, 0.7)


def _entire(name, fun):
    return HoloFn2(fun, ENTIRE, ENTIRE, name=name)


def _poles(name, fun, p1, p2):
    return HoloFn2(fun, Domain(poles=tuple(p1)), Domain(poles=tuple(p2)), name=name)


def _monomial(a, b):
    return _entire(f"z1^{a} z2^{b}", lambda x, y: x ** a * y ** b + 0j)


def function_library():
    """Analytic functions of two variables, each with its declared singular set."""
    lib = [_entire("one", lambda x, y: np.ones(np.broadcast(x, y).shape, complex))]
    for a, b in ((1, 0), (0, 1), (1, 1), (2, 0), (0, 2), (3, 0), (1, 2), (2, 2), (0, 4), (3, 1)):
        lib.append(_monomial(a, b))
    lib += [
        _entire("(z1-z2) exp(z1 - z2/2)", lambda x, y: (x - y) * np.exp(x - 0.5 * y)),
        _entire("(z1-z2)^2 cos(z1+z2)", lambda x, y: (x - y) ** 2 * np.cos(x + y)),
        _entire("exp(z1 z2)", lambda x, y: np.exp(x * y)),
        _entire("sin(z1) exp(-z2)", lambda x, y: np.sin(x) * np.exp(-y)),
        _poles("1/((z1-2)(z2+2))", lambda x, y: 1 / ((x - 2) * (y + 2)), (2,), (-2,)),
        _poles("1/((z1+i)(z2-2))", lambda x, y: 1 / ((x + 1j) * (y - 2)), (-1j,), (2,)),
        _poles("(z1-z2)/(z1^2+1)", lambda x, y: (x - y) / (x * x + 1), (1j, -1j), ()),
    ]
    for ell in range(4):
        for sign in "+-":
            lib.append(extended_eigenfunction(ell, sign))
    return lib


def polynomial_test_function(coeffs, name=""):
    """phi(t) = sum c_k t^k on |t| < 3 (compact), with exact Taylor data."""
    coeffs = tuple(coeffs)

    def ev(t):
        t = np.asarray(t)
        return np.where(np.abs(t) < 3, np.polyval(coeffs[::-1], t), 0.0) + 0j

    return TestFunction1D(ev, decay=("compact", 3.0), support=(-3.0, 3.0), taylor=coeffs,
                          name=name or f"poly{coeffs}")


def analytic_test_functions():
    """(phi, l -> phi^(l)(0)) pairs with closed-form derivatives at 0.

    ``germ`` is the analytic expression used near 0; ``eval`` may add a decaying
    factor away from it so the pairing itself is also defined.
    """
    out = []
    for a in (-1.0, -0.5):
        out.append((TestFunction1D(lambda t, a=a: np.exp(a * np.asarray(t)), decay=("exp", -a),
                                   name=f"exp({a} t)"),
                    lambda l, a=a: a ** l))
    out.append((TestFunction1D(lambda t: np.exp(2.0 * np.asarray(t) - 3.0 * np.asarray(t) ** 2),
                               germ=lambda t: np.exp(2.0 * t - 3.0 * t ** 2), decay=("exp", 1.0),
                               name="exp(2t - 3t^2)"),
                _hermite_like))
    for a in (0.5, -0.4):
        out.append((TestFunction1D(lambda t, a=a: 1 / (1 - a * np.asarray(t)), analytic_radius=1 / abs(a),
                                   decay=("alg", 1.0), name=f"1/(1 - {a} t)"),
                    lambda l, a=a: factorial(l) * a ** l))
    for b in (1.0, 3.0):
        out.append((TestFunction1D(lambda t, b=b: np.cos(b * np.asarray(t)), decay=("compact", 1.0),
                                   support=(-1.0, 1.0), name=f"cos({b} t) on [-1, 1]"),
                    lambda l, b=b: b ** l * np.cos(l * np.pi / 2)))
    return out


def _hermite_like(ell):
    """l-th derivative at 0 of exp(2t - 3t^2) from its Taylor recursion."""
    # g' = (2 - 6t) g  =>  c_{k+1} (k+1) = 2 c_k - 6 c_{k-1}
    c = [1.0, 2.0]
    for k in range(1, ell):
        c.append((2 * c[k] - 6 * c[k - 1]) / (k + 1))
    return factorial(ell) * c[ell]


def polynomial_library():
    return [polynomial_test_function(c) for c in ((1,), (0, 1), (2, -3, 0, 5), (1, 1, 1, 1, 1, 1, 1),
                                                  (0, 0, 0, 0, 0, 0, 7))]


def compact_bump_1d(scale=1.5, shift=0.0):
    """(phi, phi') for phi = exp(1 - 1/(1 - s^2)), s = (t - shift)/scale, zero for |s| >= 1.

    The germ at 0 is analytic on |t| < scale - |shift|.
    """
    def germ(t):
        s = (t - shift) / scale
        return np.exp(1 - 1 / (1 - s * s))

    def dgerm(t):
        s = (t - shift) / scale
        return germ(t) * (-2 * s / (1 - s * s) ** 2) / scale

    def masked(g):
        def ev(t):
            t = np.asarray(t, dtype=float)
            out = np.zeros(t.shape, dtype=complex)
            m = np.abs(t - shift) < scale
            out[m] = g(t[m])
            return out
        return ev

    radius = scale - abs(shift)
    sup = (shift - scale, shift + scale)
    kw = dict(analytic_radius=radius, decay=("compact", max(abs(sup[0]), abs(sup[1]))), support=sup)
    return (TestFunction1D(masked(germ), germ=germ, name="bump", **kw),
            TestFunction1D(masked(dgerm), germ=dgerm, name="bump'", **kw))
