"""Sheet-tracked paths and the iterated-integral calculus."""

import numpy as np

from regulab.examples_curves import genus2_example
from regulab.identities import run_identity_suite
from regulab.integrate import iterated_table, line_integral
from regulab.surfpath import Line, SurfacePath, ramified_chord


CURVE = genus2_example().curve


def test_tracking_stays_on_curve():
    p = SurfacePath.from_segments(CURVE, [Line(0.0, 1.5j),
                                          Line(1.5j, -1.0 + 0.2j)], 1j)
    ts = np.linspace(0, 1, 99)
    for tr in p.tracked:
        assert np.max(np.abs(CURVE.equation(tr.x(ts), tr.y(ts)))) < 1e-8


def test_reverse_negates_line_integral():
    p = SurfacePath.from_segments(CURVE, [Line(0.0, 1.5j)], 1j)
    w = CURVE.holomorphic_h()[0]
    a = line_integral(p, w)
    b = line_integral(p.reverse(), w)
    assert abs(a + b) < 1e-10
    assert abs(a) > 1e-3  # the check is not vacuous


def test_reversal_identity_length_two():
    p = SurfacePath.from_segments(CURVE, [Line(0.0, 1.5j)], 1j)
    hs = CURVE.holomorphic_h()
    w1, w2 = hs[0], hs[1]
    direct = iterated_table(p, [w1, w2])[(0, 1)]
    rev = iterated_table(p.reverse(), [w2, w1])[(0, 1)]
    assert abs(direct - rev) < 1e-10


def test_identity_suite_small():
    out = run_identity_suite(CURVE, n_samples=20, seed=3)
    assert out["overall_max"] < 1e-8


def test_ramified_chord_endpoints():
    ex = genus2_example()
    p = ramified_chord(ex.curve, ex.R, ex.Q)
    (x0, y0), (x1, y1) = p.start(), p.end()
    assert abs(x0 - ex.R[0]) < 1e-12 and abs(y0) < 1e-12
    assert abs(x1 - ex.Q[0]) < 1e-12 and abs(y1) < 1e-12
