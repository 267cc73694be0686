import numpy as np
import pytest

from genop.errors import ParameterError
from genop.library import function_library
from genop.rankin_cohen import (
    bracket_from_taylor, bracket_magnitude, check_order, rc_bracket, rc_brackets, rc_via_lemma,
)
from genop.contour import HoloFn2, taylor_coefficients_2d
from conftest import cplx

LIB = {f.name: f for f in function_library()}


def test_order_validation():
    with pytest.raises(ParameterError):
        check_order(-1)
    with pytest.raises(ParameterError):
        check_order(1.5)
    with pytest.raises(ParameterError):
        check_order(13)
    assert check_order(13, max_order=20) == 13


def test_order_zero_is_restriction():
    f = LIB["exp(z1 z2)"]
    assert abs(rc_bracket(f, 0, 0.4) - np.exp(0.16)) < 1e-13


def test_first_bracket_of_monomial():
    # R_1 (z1^a z2^b) = (a - b) z^(a+b-1)
    f = HoloFn2(lambda a, b: a ** 3 * b)
    z = 0.7
    assert abs(rc_bracket(f, 1, z) - 2 * z ** 3) < 1e-12


def test_brackets_against_symbolic_goldens(goldens):
    for case in goldens["brackets"]:
        f = LIB[case["function"]]
        z = cplx(case["z"])
        ref = cplx(case["value"])
        got = rc_bracket(f, case["ell"], z)
        C = taylor_coefficients_2d(f, z, (case["ell"] + 1,) * 2)
        scale = max(abs(ref), bracket_magnitude(C, case["ell"]), 1.0)
        assert abs(got - ref) / scale < 1e-9, case


def test_lemma_against_symbolic_goldens(goldens):
    for case in goldens["brackets"][::3]:
        f = LIB[case["function"]]
        z = cplx(case["z"])
        ref = cplx(case["value"])
        assert abs(rc_via_lemma(f, case["ell"], z) - ref) / max(abs(ref), 1.0) < 1e-8, case


def test_symmetric_functions_have_vanishing_odd_brackets():
    f = HoloFn2(lambda a, b: np.exp(a + b) * np.cos(a * b))
    for ell in (1, 3, 5):
        assert abs(rc_bracket(f, ell, 0.3)) < 1e-10


def test_block_reuse_matches_single_calls():
    f = LIB["sin(z1) exp(-z2)"]
    many = rc_brackets(f, 0.2, [0, 2, 4])
    for ell, v in zip([0, 2, 4], many):
        assert v == pytest.approx(rc_bracket(f, ell, 0.2), rel=1e-12, abs=1e-14)


def test_bracket_magnitude_bounds_bracket():
    f = LIB["(z1-z2)/(z1^2+1)"]
    C = taylor_coefficients_2d(f, 0.0, (7, 7))
    for ell in range(7):
        assert abs(bracket_from_taylor(C, ell)) <= bracket_magnitude(C, ell) * (1 + 1e-12) + 1e-14
