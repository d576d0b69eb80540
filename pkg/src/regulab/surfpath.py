"""Paths on a branched cover, tracked by analytic continuation.

A path is a chain of smooth base segments (lines, circular arcs,
possibly reparametrized to absorb ramification at an endpoint) together
with a Chebyshev model of the fiber coordinate y(t) along each segment.
Continuation is predictor-corrector: walk the segment, predict y by the
previous value, correct with Newton on the fiber equation, and refine
the walk wherever sheets get close.  The Chebyshev models make every
later integrand evaluation cheap and spectrally accurate.
"""

from __future__ import annotations

import numpy as np
from numpy.polynomial.chebyshev import Chebyshev


class Line:
    def __init__(self, x0, x1):
        self.x0 = complex(x0)
        self.x1 = complex(x1)

    def x(self, t):
        t = np.asarray(t, dtype=float)
        return self.x0 + (self.x1 - self.x0) * t

    def dx(self, t):
        t = np.asarray(t, dtype=float)
        return np.broadcast_to(self.x1 - self.x0, t.shape).copy() \
            if t.ndim else (self.x1 - self.x0)

    def reversed(self):
        return Line(self.x1, self.x0)

    def split(self):
        mid = 0.5 * (self.x0 + self.x1)
        return [Line(self.x0, mid), Line(mid, self.x1)]


class Arc:
    """x(t) = center + radius * exp(i theta(t)), theta linear in t.
    theta1 - theta0 may exceed 2 pi (multiple windings)."""

    def __init__(self, center, radius, theta0, theta1):
        self.center = complex(center)
        self.radius = float(radius)
        self.theta0 = float(theta0)
        self.theta1 = float(theta1)

    def _theta(self, t):
        return self.theta0 + (self.theta1 - self.theta0) * np.asarray(t, float)

    def x(self, t):
        return self.center + self.radius * np.exp(1j * self._theta(t))

    def dx(self, t):
        return 1j * (self.theta1 - self.theta0) \
            * self.radius * np.exp(1j * self._theta(t))

    def reversed(self):
        return Arc(self.center, self.radius, self.theta1, self.theta0)

    def split(self):
        mid = 0.5 * (self.theta0 + self.theta1)
        return [Arc(self.center, self.radius, self.theta0, mid),
                Arc(self.center, self.radius, mid, self.theta1)]


class PowerEnd:
    """Reparametrize a segment as t -> t^p (or its mirror image) so a
    ramified endpoint of index p becomes a smooth point of the
    parameter.  Used when a path terminates at a branch point."""

    def __init__(self, seg, p, at_start=True):
        self.seg = seg
        self.p = int(p)
        self.at_start = at_start

    def _s(self, t):
        t = np.asarray(t, dtype=float)
        return t ** self.p if self.at_start else 1.0 - (1.0 - t) ** self.p

    def x(self, t):
        return self.seg.x(self._s(t))

    def dx(self, t):
        t = np.asarray(t, dtype=float)
        if self.at_start:
            ds = self.p * t ** (self.p - 1)
        else:
            ds = self.p * (1.0 - t) ** (self.p - 1)
        return self.seg.dx(self._s(t)) * ds

    def reversed(self):
        return PowerEnd(self.seg.reversed(), self.p, not self.at_start)

    def split(self):
        raise ValueError("ramified end segments should not need splitting")


class TrackedSegment:
    """A base segment with a Chebyshev model of y(t)."""

    def __init__(self, seg, ycheb, y0, y1):
        self.seg = seg
        self.ycheb = ycheb
        self.y0 = y0
        self.y1 = y1

    def x(self, t):
        return self.seg.x(t)

    def dx(self, t):
        return self.seg.dx(t)

    def y(self, t):
        return self.ycheb(np.asarray(t, dtype=float))


def _cheb_nodes(n):
    # Chebyshev-Lobatto points mapped to [0, 1], in increasing order
    k = np.arange(n + 1)
    return 0.5 * (1.0 - np.cos(np.pi * k / n))


def _fit_cheb(ts, vals, deg):
    """Interpolating Chebyshev series through values at the Lobatto
    nodes of _cheb_nodes(deg), via the DCT-I identity."""
    n = deg
    v = np.asarray(vals, dtype=complex)[::-1]   # reorder to u = cos(pi k/n)
    ext = np.concatenate([v, v[n - 1:0:-1]])
    F = np.fft.fft(ext) / n
    coef = F[:n + 1].copy()
    coef[0] *= 0.5
    coef[n] *= 0.5
    return Chebyshev(coef, domain=[0.0, 1.0])


def continue_fiber(curve, xs, y0, tol=1e-11):
    """Continuation of the fiber coordinate along a discrete x-walk.

    Walks xs in order, seeding Newton with the previous y and bisecting
    the step whenever the correction looks untrustworthy (more than a
    third of the local fiber separation).  Returns y at every x.
    """
    ys = np.empty(len(xs), dtype=complex)
    y = complex(y0)
    ys[0] = y
    for i in range(1, len(xs)):
        y = _continue_step(curve, xs[i - 1], xs[i], y, tol, depth=0)
        ys[i] = y
    return ys


def _fiber_separation(curve, x, y):
    sheets = curve.all_sheets(np.atleast_1d(np.asarray(x, complex)))
    d = np.sort(np.abs(np.asarray(sheets)[:, 0] - y))
    return float(d[1]) if len(d) > 1 else np.inf


def _continue_step(curve, x0, x1, y, tol, depth):
    ynew = curve.newton_y(x1, y, tol=tol)
    sep = _fiber_separation(curve, x1, ynew)
    if abs(ynew - y) < 0.33 * max(sep, 1e-300) or depth > 48:
        if depth > 48:
            raise RuntimeError("continuation lost the sheet near x=%s" % x1)
        return complex(ynew)
    xm = 0.5 * (x0 + x1)
    ym = _continue_step(curve, x0, xm, y, tol, depth + 1)
    return _continue_step(curve, xm, x1, ym, tol, depth + 1)


def track_segment(curve, seg, y0, max_deg=256, tail_tol=1e-12,
                  force_end=None):
    """Build a Chebyshev model of y(t) along one segment.

    `force_end` pins y(1) to a known value; used when the segment
    terminates exactly at a ramification point, where Newton
    continuation degenerates (the fiber values collide)."""
    deg = 32
    while True:
        ts = _cheb_nodes(deg)
        xs = seg.x(ts)
        if force_end is None:
            ys = continue_fiber(curve, xs, y0)
        else:
            ys = np.empty(len(xs), dtype=complex)
            ys[:-1] = continue_fiber(curve, xs[:-1], y0)
            ys[-1] = complex(force_end)
        cheb = _fit_cheb(ts, ys, deg)
        # validate on an offset grid
        tv = np.linspace(0.0, 1.0, 2 * deg + 3)[1:-1]
        resid = np.abs(curve.equation(seg.x(tv), cheb(tv)))
        scale = max(1.0, float(np.max(np.abs(ys))))
        if np.max(resid) < 1e-9 * scale ** curve.degree:
            return TrackedSegment(seg, cheb, complex(ys[0]), complex(ys[-1]))
        if deg >= max_deg:
            try:
                parts = seg.split()
            except ValueError:
                raise RuntimeError("fiber model does not converge")
            tracked = [track_segment(curve, parts[0], y0, max_deg, tail_tol)]
            tracked.append(track_segment(curve, parts[1], tracked[0].y1,
                                         max_deg, tail_tol))
            return tracked  # caller flattens
        deg *= 2


class SurfacePath:
    """A chain of tracked segments forming a path on the cover."""

    def __init__(self, curve, tracked):
        self.curve = curve
        self.tracked = tracked

    @classmethod
    def from_segments(cls, curve, segments, y0):
        tracked = []
        y = complex(y0)
        for seg in segments:
            t = track_segment(curve, seg, y)
            if isinstance(t, list):
                tracked.extend(t)
                y = t[-1].y1
            else:
                tracked.append(t)
                y = t.y1
        return cls(curve, tracked)

    # -- endpoints ------------------------------------------------------------

    def start(self):
        s = self.tracked[0]
        return complex(s.x(0.0)), s.y0

    def end(self):
        s = self.tracked[-1]
        return complex(s.x(1.0)), s.y1

    def is_closed(self, tol=1e-8):
        (x0, y0), (x1, y1) = self.start(), self.end()
        return abs(x0 - x1) < tol and abs(y0 - y1) < tol

    # -- algebra --------------------------------------------------------------

    def reverse(self):
        rev = []
        for t in reversed(self.tracked):
            seg = t.seg.reversed()
            ts = _cheb_nodes(len(t.ycheb.coef) - 1)
            vals = t.ycheb(1.0 - ts)
            cheb = _fit_cheb(ts, vals, len(t.ycheb.coef) - 1)
            rev.append(TrackedSegment(seg, cheb, t.y1, t.y0))
        return SurfacePath(self.curve, rev)

    def then(self, other, tol=1e-7):
        (x1, y1) = self.end()
        (x2, y2) = other.start()
        if abs(x1 - x2) > tol or abs(y1 - y2) > tol:
            raise ValueError("paths do not concatenate: endpoint mismatch")
        return SurfacePath(self.curve, self.tracked + other.tracked)

    def __mul__(self, other):
        return self.then(other)

    def polyline(self, per_seg=64):
        """Dense polyline (x values, y values) for intersection tests
        and plotting."""
        xs, ys = [], []
        for t in self.tracked:
            tt = np.linspace(0.0, 1.0, per_seg, endpoint=False)
            xs.append(t.x(tt))
            ys.append(t.y(tt))
        x0, y0 = self.start()
        xs = np.concatenate(xs + [np.array([self.end()[0]])])
        ys = np.concatenate(ys + [np.array([self.end()[1]])])
        return xs, ys


def ramified_chord(curve, p0, p1, y_mid=None):
    """Path on the cover between two totally ramified fiber points.

    `p0`, `p1` are (x, y) with y the exact fiber value at a
    ramification point of the projection (where Newton continuation
    degenerates).  The path follows the straight chord in the base,
    reparametrized at both ends so the pullback of a holomorphic form
    stays bounded, with the endpoint fiber values pinned explicitly.
    """
    (x0, y0), (x1, y1) = p0, p1
    m = 0.5 * (complex(x0) + complex(x1))
    if y_mid is None:
        y_mid = complex(np.asarray(curve.all_sheets(
            np.array([m], dtype=complex)))[0, 0])
    e0 = curve.ramification_order(x0)
    e1 = curve.ramification_order(x1)
    seg0 = PowerEnd(Line(m, x0), e0, at_start=False)
    seg1 = PowerEnd(Line(m, x1), e1, at_start=False)
    t0 = track_segment(curve, seg0, y_mid, force_end=y0)
    t1 = track_segment(curve, seg1, y_mid, force_end=y1)
    half0 = SurfacePath(curve, t0 if isinstance(t0, list) else [t0])
    half1 = SurfacePath(curve, t1 if isinstance(t1, list) else [t1])
    return half0.reverse().then(half1)
