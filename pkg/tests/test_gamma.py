"""Level-set geometry and zero-winding adapted loops."""

import numpy as np
import pytest

from regulab.examples_curves import fermat3_example, genus2_example
from regulab.gamma import AdaptedLoops, level_components, winding_of
from regulab.homology import LoopSystem
from regulab.integrate import line_integral
from regulab.periods import PeriodFrame


@pytest.fixture(scope="module", params=["genus2", "fermat3"])
def setup(request):
    ex = {"genus2": genus2_example, "fermat3": fermat3_example}[
        request.param]()
    loops = LoopSystem(ex.curve, ex.base)
    frame = PeriodFrame(loops)
    comps = level_components(ex.curve, ex.func)
    adapted = AdaptedLoops(ex.curve, ex.func, loops, ex.N)
    return ex, frame, comps, adapted


def test_component_count(setup):
    ex, _, comps, _ = setup
    assert len(comps) == ex.N


def test_level_set_real_positive(setup):
    ex, _, comps, _ = setup
    for arc in comps:
        for tr in arc.tracked:
            v = ex.func(tr.x(np.linspace(0, 1, 257)))
            v = v[np.isfinite(v)]  # arcs may terminate at a pole of f
            assert np.max(np.abs(v.imag) / np.maximum(np.abs(v), 1.0)) < 1e-8


def test_level_cycle_kills_holomorphic_periods(setup):
    ex, frame, comps, _ = setup
    for dz in frame.dz:
        total = sum(line_integral(c, dz) for c in comps)
        assert abs(total) < 1e-6


def test_adapted_words_zero_winding(setup):
    ex, _, _, adapted = setup
    for (n, d) in adapted.check_windings():
        assert n == 0
        assert d < 1e-8


def test_adapted_words_single_valued_log(setup):
    ex, _, _, adapted = setup
    dlog = lambda x, y: ex.func.dlog(x)
    for w in adapted.words:
        assert abs(line_integral(w, dlog)) < 1e-8


def test_adapted_word_periods_scaled(setup):
    ex, frame, _, adapted = setup
    g = ex.curve.genus
    W = np.array([[line_integral(w, frame.dz[i]) for i in range(g)]
                  for w in adapted.words])
    assert np.max(np.abs(W - ex.N * frame.periods.T)) < 1e-7


def test_zero_loop_winding_matches_multiplicity(setup):
    ex, _, _, adapted = setup
    n, d = winding_of(adapted.beta, ex.func)
    assert n == ex.N
    assert d < 1e-8
