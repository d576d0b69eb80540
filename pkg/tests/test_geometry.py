"""Curve models, sheet structure and the level function."""

import numpy as np
import pytest

from regulab.examples_curves import fermat3_example, genus2_example
from regulab.geometry import verify_divisor


@pytest.fixture(params=["genus2", "fermat3"])
def ex(request):
    return {"genus2": genus2_example, "fermat3": fermat3_example}[
        request.param]()


def test_sheets_satisfy_equation(ex):
    xs = np.array([0.3 + 0.1j, -1.2j, 2.0 + 0.5j])
    sheets = np.asarray(ex.curve.all_sheets(xs))
    assert sheets.shape == (ex.curve.degree, len(xs))
    assert np.max(np.abs(ex.curve.equation(xs[None, :], sheets))) < 1e-9


def test_newton_refines_onto_sheet(ex):
    x = 0.4 - 0.7j
    y0 = np.asarray(ex.curve.all_sheets(np.array([x])))[1, 0]
    y = ex.curve.newton_y(x, y0 * (1 + 1e-6))
    assert abs(ex.curve.equation(x, y)) < 1e-12


def test_branch_points_are_ramified(ex):
    for b in ex.curve.branch_x():
        assert ex.curve.ramification_order(b) > 1
        assert ex.curve.branch_clearance(b) < 1e-12


def test_divisor_and_normalization(ex):
    res = verify_divisor(ex.curve, ex.func, ex.divisor())
    for (pt, mult) in ex.divisor():
        assert abs(res[pt] - mult) < 1e-8
    assert abs(ex.func(ex.base[0]) - 1.0) < 1e-12


def test_level_arc_is_exact_level_set(ex):
    # the arc parameter w in (0, 1) covers levels f = w/(1-w) in (0, inf)
    w = np.linspace(0.02, 0.98, 25)
    xs = ex.func.level_arc(w)
    v = ex.func(xs)
    assert np.max(np.abs(v.imag)) < 1e-10
    assert np.all(v.real > 0)
    assert np.max(np.abs(v.real - w / (1 - w))) < 1e-10


def test_log_branch_cut_on_positive_axis(ex):
    # the only discontinuity of the chosen log is where f crosses the
    # positive real axis
    x = 1.7 + 0.4j
    v = ex.func.log_branch(x)
    assert abs(np.exp(v) - ex.func(x)) < 1e-12
    assert 0.0 <= v.imag < 2 * np.pi


def test_dlog_matches_difference_quotient(ex):
    x = 0.9 + 0.25j
    h = 1e-6
    num = (np.log(ex.func(x + h)) - np.log(ex.func(x - h))) / (2 * h)
    assert abs(num - ex.func.dlog(x)) < 1e-6
