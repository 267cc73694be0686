import numpy as np
import pytest
from scipy.special import beta

from genop.quadrature import (
    breakpoint_panels, gauss_legendre01, geometric_cuts, graded_rule, grading_power, panel,
)


def test_gauss_legendre_integrates_polynomials():
    x, w = gauss_legendre01(8)
    for k in range(16):
        assert np.sum(w * x ** k) == pytest.approx(1 / (k + 1), rel=1e-14)


def test_grading_power():
    assert grading_power(None) == 1.0
    assert grading_power(-0.5) == pytest.approx(2.0)
    assert grading_power(-0.5 + 0.2j) == pytest.approx(10.0)
    with pytest.raises(ValueError):
        grading_power(-1.0)


@pytest.mark.parametrize("alpha", [-0.5, -0.8, 0.3])
def test_panel_with_endpoint_singularities(alpha):
    # int_0^1 x^alpha (1 - x)^alpha dx = B(alpha + 1, alpha + 1)
    x, w, dl, dr = panel(0.0, 1.0, 24, alpha, alpha)
    val = np.sum(w * dl ** alpha * dr ** alpha)
    assert val == pytest.approx(beta(alpha + 1, alpha + 1), rel=1e-10)


def test_complex_exponent_grading():
    alpha = -0.4 + 0.6j
    d, w = graded_rule(32, alpha)
    # int_0^1 d^alpha = 1/(alpha + 1)
    assert abs(np.sum(w * d ** alpha) - 1 / (alpha + 1)) < 1e-9


def test_offsets_are_exact_near_ends():
    x, w, dl, dr = panel(0.3, 0.7, 16, -0.5, None)
    assert np.all(dl > 0) and np.all(dr > 0)
    assert np.allclose(dl + dr, 0.4)


def test_empty_panel():
    x, w, _, _ = panel(1.0, 1.0, 8)
    assert x.size == 0 and w.size == 0


def test_breakpoint_panels_cover_interval():
    pan = breakpoint_panels(-1.0, 2.0, (0.0, 0.5), 12, -0.5, extra=(1.5, 5.0))
    edges = [(p[6], p[7]) for p in pan]
    assert edges == [(-1.0, 0.0), (0.0, 0.5), (0.5, 1.5), (1.5, 2.0)]
    assert [(p[4], p[5]) for p in pan] == [(False, True), (True, True), (True, False), (False, False)]
    # int of the singular factors: 2 + B(1/2, 1/2) + 2 + 0.5
    total = 0.0
    for _, w, dl, dr, sl, sr, _, _ in pan:
        total += np.sum(w * (dl ** -0.5 if sl else 1) * (dr ** -0.5 if sr else 1))
    assert total == pytest.approx(4.5 + np.pi, rel=1e-12)


def test_geometric_cuts_avoid_singular_points():
    cuts = geometric_cuts((0.0, 0.01), 0.01, -1.0, 1.0)
    assert all(min(abs(c), abs(c - 0.01)) > 0.01 / 16 for c in cuts)
    assert all(-1 < c < 1 for c in cuts)
    assert len(cuts) > 4
