"""Two-route comparison against the cubic example (fast: genus 1)."""

import numpy as np
import pytest

from regulab.carlson import ComparisonRun, paired_index, pairing_sign
from regulab.examples_curves import fermat3_example


def test_pairing_sign_and_index():
    g = 2
    # eta_j pairs with dz of the conjugate symplectic index
    assert [paired_index(j, g) for j in range(2 * g)] == [2, 3, 0, 1]
    assert [pairing_sign(j, g) for j in range(2 * g)] == [1, 1, -1, -1]


@pytest.fixture(scope="module")
def run():
    ex = fermat3_example()
    return ComparisonRun(ex.curve, ex.func, ex.base, ex.N)


def test_entries_finite(run):
    for (j, i, lo, re) in run.entries():
        assert np.isfinite(lo) and np.isfinite(re)


def test_fermat_comparison(run):
    res = run.compare()
    assert res["nominal_constant"] == 9
    assert res["fitted_constant"] == 9.0
    assert res["max_residual"] < 1e-3
    assert not res["factor_two_flag"]
    assert not res["sign_flag"]
    # integer lattice coefficients stay small at the fitted constant
    for (_, _, coeffs) in res["lattice_coeffs"]:
        assert np.max(np.abs(coeffs)) < 100
