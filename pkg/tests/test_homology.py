"""Symplectic homology basis from dogbone candidates."""

import numpy as np
import pytest

from regulab.examples_curves import fermat3_example, genus2_example
from regulab.homology import LoopSystem, default_candidates


@pytest.fixture(scope="module", params=["genus2", "fermat3"])
def loops(request):
    ex = {"genus2": genus2_example, "fermat3": fermat3_example}[
        request.param]()
    return ex, LoopSystem(ex.curve, ex.base)


def test_basis_is_standard_symplectic(loops):
    ex, ls = loops
    g = ex.curve.genus
    E = np.array(ls.basis_intersections(), dtype=int)
    J = np.block([[np.zeros((g, g)), np.eye(g)],
                  [-np.eye(g), np.zeros((g, g))]]).astype(int)
    assert (E == J).all()


def test_basis_loops_closed(loops):
    _, ls = loops
    for lp in ls.basis:
        assert lp.is_closed()


def test_perturbed_candidates_same_basis_classes(loops):
    """Perturbing radii/phases must not change any intersection number."""
    ex, ls = loops
    cands = default_candidates(ex.curve, ex.base, r_scale=0.9,
                               phase_shift=0.1)
    alt = LoopSystem(ex.curve, ex.base, candidates=cands)
    assert alt.E == ls.E
    assert alt.basis_coeffs == ls.basis_coeffs
