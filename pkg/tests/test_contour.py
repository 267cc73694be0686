from math import factorial

import numpy as np
import pytest

from genop.contour import (
    CircleContour, Domain, HoloFn1, HoloFn2, cauchy_derivative, contour_integral, default_radius,
    mixed_partial, taylor_coefficients, taylor_coefficients_2d,
)
from genop.errors import NonConvergenceError, ParameterError, QuadratureDomainError


def test_circle_integral_of_simple_pole():
    f = HoloFn1(lambda z: 1 / (z - 0.2), Domain(poles=(0.2,)))
    val = contour_integral(f, CircleContour(0j, 1.0))
    assert abs(val - 2j * np.pi) < 1e-13


def test_contour_through_pole_is_rejected():
    f = HoloFn1(lambda z: 1 / (z - 1), Domain(poles=(1.0,)))
    with pytest.raises(QuadratureDomainError):
        contour_integral(f, CircleContour(0j, 1.0))


def test_contour_leaving_disk_is_rejected():
    f = HoloFn1(lambda z: np.log(1 + z), Domain(radius=1.0))
    with pytest.raises(QuadratureDomainError):
        contour_integral(f, CircleContour(0.5, 0.6))


@pytest.mark.parametrize("nodes", [6, 100, 0])
def test_contour_node_count_must_be_power_of_two(nodes):
    with pytest.raises(ParameterError):
        CircleContour(0j, 1.0, nodes=nodes)


def test_non_finite_integrand_raises():
    f = HoloFn1(lambda z: np.full(np.shape(z), np.nan))
    with pytest.raises(QuadratureDomainError):
        contour_integral(f, CircleContour(0j, 1.0))


def test_non_convergence_reports_trace():
    # an essential singularity just outside the circle: the trapezoid rule needs far more nodes
    f = HoloFn1(lambda z: np.exp(1 / (1.05 - z)), Domain(poles=(1.05,)))
    with pytest.raises(NonConvergenceError) as info:
        contour_integral(f, CircleContour(0j, 1.0, nodes=8), max_nodes=64)
    assert [n for n, _ in info.value.trace] == [8, 16, 32, 64]


def test_taylor_coefficients_of_exp():
    c = taylor_coefficients(np.exp, 0.3, 10)
    ref = np.exp(0.3) / np.array([factorial(k) for k in range(10)])
    assert np.max(np.abs(c - ref)) < 1e-14


def test_cauchy_derivative_near_pole_adapts_radius():
    f = HoloFn1(lambda z: 1 / (z - 1j), Domain(poles=(1j,)))
    z0 = 0.1j
    for k in range(6):
        ref = (-1) ** k * factorial(k) / (z0 - 1j) ** (k + 1)
        assert abs(cauchy_derivative(f, z0, k) - ref) < 1e-9 * abs(ref)


def test_default_radius_rule():
    assert default_radius(np.inf) == 1.0
    assert default_radius(0.6) == pytest.approx(0.3)


def test_radius_beyond_singularity_is_rejected():
    f = HoloFn1(lambda z: 1 / (z - 0.5), Domain(poles=(0.5,)))
    with pytest.raises(QuadratureDomainError):
        taylor_coefficients(f, 0j, 4, r=0.5)


def test_bivariate_block_matches_product_rule():
    f = HoloFn2(lambda a, b: np.exp(2 * a) * np.sin(b))
    z0 = 0.2 - 0.1j
    C = taylor_coefficients_2d(f, z0, (5, 5))
    for p in range(5):
        for q in range(5):
            dsin = [np.sin, np.cos, lambda x: -np.sin(x), lambda x: -np.cos(x)][q % 4](z0)
            ref = 2 ** p * np.exp(2 * z0) * dsin / (factorial(p) * factorial(q))
            assert abs(C[p, q] - ref) < 1e-12


def test_mixed_partial_of_monomial_is_exact():
    f = HoloFn2(lambda a, b: a ** 3 * b ** 2)
    assert abs(mixed_partial(f, 0.4, (3, 2)) - 12) < 1e-12
    assert abs(mixed_partial(f, 0.4, (4, 0))) < 1e-12


def test_domain_singular_distance():
    d = Domain(center=0j, radius=2.0, poles=(1j,))
    assert d.singular_distance(0.5j) == pytest.approx(0.5)
    assert Domain().describe() == "entire"
