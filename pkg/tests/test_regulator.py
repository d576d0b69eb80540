"""Membrane integral versus iterated-integral commutator, and the
surface/level-cycle assembly of the pairing entries."""

import numpy as np
import pytest

from regulab.examples_curves import fermat3_example, genus2_example
from regulab.gamma import level_components
from regulab.homology import LoopSystem
from regulab.periods import PeriodFrame
from regulab.regulator import (RegulatorFrame, disc_vs_iterated,
                               gamma_commutator, gamma_tensor)


@pytest.fixture(scope="module")
def fermat():
    ex = fermat3_example()
    frame = PeriodFrame(LoopSystem(ex.curve, ex.base))
    comps = level_components(ex.curve, ex.func)
    return ex, frame, comps


def test_disc_identity_one_pair(fermat):
    ex, frame, comps = fermat
    phi = frame.dual_forms()[1]
    psi = frame.dz[0]
    for comp in comps:
        disc, comm = disc_vs_iterated(comp, phi, psi)
        assert abs(disc - comm) / max(abs(disc), abs(comm), 1.0) < 1e-4


def test_commutator_vs_tensor_shuffle(fermat):
    # per component: I(phi psi) - I(psi phi) = 2 I(phi psi) - int int
    ex, frame, comps = fermat
    phi = frame.dual_forms()[0]
    psi = frame.dz[0]
    from regulab.integrate import line_integral
    comm = gamma_commutator(comps, phi, psi)
    tens = gamma_tensor(comps, phi, psi)
    cross = sum(frame.integral_dual(c, phi) * line_integral(c, psi)
                for c in comps)
    assert abs(comm - (2 * tens - cross)) < 1e-9


def test_regulator_entries_finite(fermat):
    ex, frame, comps = fermat
    reg = RegulatorFrame(ex.curve, ex.func, frame, comps)
    g = ex.curve.genus
    for j in range(2 * g):
        for i in range(g):
            assert np.isfinite(reg.regulator_entry(j, i))
            assert np.isfinite(reg.tensor_entry(j, i))


def test_log_branch_shift_moves_surface_by_period(fermat):
    """Shifting the log branch by 2 pi i changes the raw surface matrix
    by exactly 2 pi i times the flat-weight area integrals."""
    ex, frame, comps = fermat
    r0 = RegulatorFrame(ex.curve, ex.func, frame, comps)
    r1 = RegulatorFrame(ex.curve, ex.func, frame, comps, log_shift=1)
    delta = r1.S - r0.S
    target = 2j * np.pi * (2j * frame.tau.imag)
    assert np.max(np.abs(delta - target)) < 5e-6
