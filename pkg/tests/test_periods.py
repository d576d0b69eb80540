"""Period frames, harmonic duals, lattice reduction, divisor classes."""

import numpy as np
import pytest

from regulab.examples_curves import fermat3_example, genus2_example
from regulab.homology import LoopSystem
from regulab.periods import (PeriodFrame, reduce_mod_lattice,
                             riemann_bilinear_check)
from regulab.surfpath import ramified_chord


@pytest.fixture(scope="module", params=["genus2", "fermat3"])
def frame(request):
    ex = {"genus2": genus2_example, "fermat3": fermat3_example}[
        request.param]()
    return ex, PeriodFrame(LoopSystem(ex.curve, ex.base))


def test_normalized_periods(frame):
    ex, fr = frame
    g = ex.curve.genus
    # the first g columns of the period matrix are the identity
    assert np.max(np.abs(fr.periods[:, :g] - np.eye(g))) < 1e-10


def test_riemann_bilinear(frame):
    _, fr = frame
    sym, posmin = riemann_bilinear_check(fr)
    assert sym < 1e-8
    assert posmin > 0


def test_harmonic_duals_delta(frame):
    ex, fr = frame
    g = ex.curve.genus
    duals = fr.dual_forms()
    loops = fr.loops.basis
    D = np.array([[fr.integral_dual(lp, d) for lp in loops] for d in duals])
    assert np.max(np.abs(D - np.eye(2 * g))) < 1e-7


def test_reduce_mod_lattice_exact_combo():
    tau = 0.2 + 1.3j
    gens = 2j * np.pi * np.array([1.0, 0.0, tau])
    v = 2j * np.pi * (17.0 - 5 * tau) + 1e-9
    r, c = reduce_mod_lattice(np.array([v]), gens[None, :])
    assert abs(r[0]) < 1e-7
    # coefficients reproduce the removed lattice element
    assert abs(np.dot(c, gens) - 2j * np.pi * (17.0 - 5 * tau)) < 1e-7


def test_reduce_mod_lattice_nonmember():
    gens = 2j * np.pi * np.array([1.0, 1.5j])
    v = np.array([np.pi * (1 + 1.5j)])  # half a lattice vector
    r, _ = reduce_mod_lattice(v, gens[None, :])
    assert abs(r[0]) > 1.0


def test_divisor_class_torsion():
    ex = genus2_example()
    fr = PeriodFrame(LoopSystem(ex.curve, ex.base))
    path = ramified_chord(ex.curve, ex.R, ex.Q)
    r1, rN = fr.torsion_residuals(path, ex.N)
    assert rN < 1e-6
    assert r1 > 1e-3
