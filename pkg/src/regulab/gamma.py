"""The level cycle of f: components, tracing, windings, adapted loops.

For a degree-N map f with a single zero Q and a single pole R (each
totally ramified), the preimage of the positive real axis is a union
of N arcs from Q to R, one through each sheet.  Because f here is a
Moebius function of the base coordinate, the base arc is known in
closed form; a predictor-corrector tracer provides an independent
numerical route for cross-checking.

Also builds the loop machinery adapted to f: winding numbers of f
along loops, the small cycle around Q, and the modified words
(loop^N) * (cycle around Q)^(-winding) on which f has zero winding.
"""

from __future__ import annotations

import numpy as np

from .surfpath import SurfacePath, Line, Arc, PowerEnd, track_segment
from .integrate import line_integral
from .homology import word_path


class LevelArc:
    """Base segment tracing f^{-1}([0, oo]) between parameters w0, w1.

    w = 0 maps to the zero of f, w = 1 to the pole; the exact inverse
    of the Moebius map sends w/(1-w) to its level point."""

    def __init__(self, func, w0, w1):
        self.func = func
        self.w0 = float(w0)
        self.w1 = float(w1)

    def _w(self, t):
        return self.w0 + (self.w1 - self.w0) * np.asarray(t, dtype=float)

    def _x_of_w(self, w):
        a, b, c = self.func.a, self.func.b, self.func.c
        return (c * a * (1.0 - w) - b * w) / (c * (1.0 - w) - w)

    def x(self, t):
        return self._x_of_w(self._w(t))

    def dx(self, t):
        a, b, c = self.func.a, self.func.b, self.func.c
        w = self._w(t)
        num = c * a * (1.0 - w) - b * w
        den = c * (1.0 - w) - w
        dnum = -c * a - b
        dden = -c - 1.0
        return (dnum * den - num * dden) / den ** 2 * (self.w1 - self.w0)

    def reversed(self):
        return LevelArc(self.func, self.w1, self.w0)

    def split(self):
        mid = 0.5 * (self.w0 + self.w1)
        return [LevelArc(self.func, self.w0, mid),
                LevelArc(self.func, mid, self.w1)]


def level_components(curve, func):
    """All components of the level cycle, each a path from the zero
    of f to its pole, one per sheet over the arc midpoint."""
    e_zero = curve.ramification_order(func.a)
    e_pole = curve.ramification_order(func.b)
    half_to_zero = PowerEnd(LevelArc(func, 0.5, 0.0), e_zero, at_start=False)
    half_to_pole = PowerEnd(LevelArc(func, 0.5, 1.0), e_pole, at_start=False)
    xm = complex(half_to_zero.x(0.0))
    fibers = np.asarray(curve.all_sheets(np.array([xm], dtype=complex)))[:, 0]
    comps = []
    for ym in fibers:
        down = track_segment(curve, half_to_zero, complex(ym), force_end=0.0)
        up = track_segment(curve, half_to_pole, complex(ym), force_end=0.0)
        comp = SurfacePath(curve, [down]).reverse().then(
            SurfacePath(curve, [up]))
        comps.append(comp)
    return comps


def trace_level_polyline(func, n=400):
    """Independent predictor-corrector tracer of Im f = 0, Re f >= 0.

    Marches the level value s through a graded grid, predicting with
    the derivative of f and correcting with Newton on f(x) = s.
    Returns the x polyline (excluding the exact endpoints)."""
    a, b, c = func.a, func.b, func.c
    ws = np.linspace(0.01, 0.99, n)
    svals = ws / (1.0 - ws)
    # start near the zero: first-order seed from f(x) ~ c (x-a)/(a-b)
    x = a + svals[0] * (a - b) / c
    out = []
    scale = abs(a - b)
    for s in svals:
        for _ in range(60):
            fp = c * (a - b) / (x - b) ** 2
            step = (s - func(x)) / fp
            if abs(step) > 0.2 * scale:          # damp long predictions
                step *= 0.2 * scale / abs(step)
            x = x + step
            if abs(step) < 1e-13 * max(1.0, abs(x)):
                break
        out.append(x)
    return np.array(out)


def winding_of(path, func, tol=1e-8):
    """Winding number of f along a closed path, with defect check."""
    val = line_integral(path, lambda x, y: func.dlog(x)) / (2j * np.pi)
    n = int(round(val.real))
    defect = abs(val - n)
    return n, defect


def loop_around_zero(curve, func, base, r=None):
    """Based loop going once around the zero of f on the cover (i.e.
    ramification-index many turns of the base circle)."""
    xP, yP = base
    a = func.a
    e = curve.ramification_order(a)
    if r is None:
        others = [bx for bx in curve.branch_x() if abs(bx - a) > 1e-9]
        clear = min([abs(a - o) for o in others] + [abs(a - xP)])
        r = 0.2 * clear
    th = float(np.angle(xP - a))
    s = a + r * np.exp(1j * th)
    tail = SurfacePath.from_segments(curve, [Line(xP, s)], yP)
    circ = SurfacePath.from_segments(
        curve, [Arc(a, r, th, th + 2 * np.pi * e)], tail.end()[1])
    if not circ.is_closed():
        raise RuntimeError("loop around the zero does not close after "
                           "%d turns" % e)
    return tail.then(circ).then(tail.reverse())


class AdaptedLoops:
    """Loops with zero f-winding: word_i = basis_i^N * (loop_Q)^(-m_i).

    basis loops come from a LoopSystem; m_i is the winding of f along
    basis_i; N is the winding of f along the loop around the zero
    divided by its multiplicity there (= deg f when totally ramified).
    """

    def __init__(self, curve, func, loops, N):
        self.curve = curve
        self.func = func
        self.loops = loops
        self.N = int(N)
        self.beta = loop_around_zero(curve, func, loops.base)
        nb, db = winding_of(self.beta, func)
        if nb != self.N:
            raise RuntimeError("winding of f along the zero loop is %d, "
                               "expected %d" % (nb, self.N))
        self.windings = []
        self.words = []
        for lp in loops.basis:
            m, _ = winding_of(lp, func)
            self.windings.append(m)
            self.words.append(word_path([lp, self.beta], [self.N, -m]))

    def check_windings(self):
        """Winding defect of f along every adapted word (should be 0)."""
        out = []
        for w in self.words:
            n, d = winding_of(w, self.func)
            out.append((n, d))
        return out
