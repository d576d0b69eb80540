"""Plane-curve models, differentials and rational functions.

Two families are implemented, both presented as branched covers of the
x-line with closed-form fibers:

* ``HyperellipticCurve``: y^2 = q(x) with q squarefree of odd degree
  2g+1 (one branch point at infinity);
* ``FermatQuotientCurve``: y^N = 1 - x^N, the degree-N cyclic cover
  branched at the N-th roots of unity.

Points are (x, y) pairs of complex numbers; sheets are tracked by the
y-value itself, never by a global sheet index.  Holomorphic
differentials are returned as coefficient functions h(x, y) with
``omega = h dx``.
"""

from __future__ import annotations

import cmath

import numpy as np


class PlaneCurve:
    """Common interface for y-coverings of the x-line."""

    #: covering degree of the x-projection
    degree = None
    #: genus
    genus = None

    def equation(self, x, y):
        raise NotImplementedError

    def dy_equation(self, x, y):
        """Derivative of the defining equation in y."""
        raise NotImplementedError

    def dx_equation(self, x, y):
        raise NotImplementedError

    def all_sheets(self, x):
        """All y with (x, y) on the curve, as an array of shape
        (degree,) + shape(x).  The ordering is only locally consistent;
        use continuation for path tracking."""
        raise NotImplementedError

    def branch_x(self):
        """x-coordinates of the finite branch points of the projection."""
        raise NotImplementedError

    def holomorphic_h(self):
        """List of g functions h_j(x, y) with omega_j = h_j(x, y) dx."""
        raise NotImplementedError

    # -- generic helpers -----------------------------------------------------

    def newton_y(self, x, y0, tol=1e-13, maxit=40):
        """Refine y0 to a root of the fiber equation over x (vectorized)."""
        x = np.asarray(x, dtype=complex)
        y = np.asarray(y0, dtype=complex).copy()
        for _ in range(maxit):
            val = self.equation(x, y)
            dv = self.dy_equation(x, y)
            step = val / dv
            y = y - step
            if np.max(np.abs(step)) < tol:
                break
        return y

    def on_curve(self, x, y, tol=1e-9):
        return abs(self.equation(x, y)) < tol * max(1.0, abs(x) ** self.degree)

    def branch_clearance(self, x):
        bx = self.branch_x()
        return min(abs(x - b) for b in bx)

    def sum_over_sheets(self, x, func):
        """Sum func(x, y) over the full fiber above x (vectorized in x)."""
        ys = self.all_sheets(x)
        return sum(func(x, ys[k]) for k in range(self.degree))


class HyperellipticCurve(PlaneCurve):
    """y^2 = q(x), q monic squarefree of odd degree 2g+1."""

    degree = 2

    def __init__(self, q_coeffs):
        # q_coeffs: highest degree first, as for numpy.polynomial? use
        # np.poly1d conventions (highest first)
        self.q = np.poly1d(q_coeffs)
        self.dq = self.q.deriv()
        d = self.q.order
        if d % 2 == 0:
            raise ValueError("odd-degree model expected")
        self.genus = (d - 1) // 2

    def equation(self, x, y):
        return y * y - self.q(x)

    def dy_equation(self, x, y):
        return 2.0 * y

    def dx_equation(self, x, y):
        return -self.dq(x)

    def all_sheets(self, x):
        x = np.asarray(x, dtype=complex)
        r = np.sqrt(self.q(x).astype(complex))
        return np.stack([r, -r])

    def branch_x(self):
        return [complex(r) for r in self.q.roots]

    def holomorphic_h(self):
        def make(j):
            return lambda x, y: x ** j / y
        return [make(j) for j in range(self.genus)]

    def ramification_order(self, x):
        """Ramification index of the projection at a point above x."""
        if min(abs(x - b) for b in self.branch_x()) < 1e-9:
            return 2
        return 1


class FermatQuotientCurve(PlaneCurve):
    """y^N = 1 - x^N: smooth plane model of the Fermat curve of
    exponent N (genus (N-1)(N-2)/2)."""

    def __init__(self, N):
        self.N = N
        self.degree = N
        self.genus = (N - 1) * (N - 2) // 2

    def equation(self, x, y):
        return y ** self.N - (1.0 - x ** self.N)

    def dy_equation(self, x, y):
        return self.N * y ** (self.N - 1)

    def dx_equation(self, x, y):
        return self.N * x ** (self.N - 1)

    def all_sheets(self, x):
        x = np.asarray(x, dtype=complex)
        base = (1.0 - x ** self.N).astype(complex) ** (1.0 / self.N)
        zs = [np.exp(2j * np.pi * k / self.N) * base for k in range(self.N)]
        return np.stack(zs)

    def branch_x(self):
        return [cmath.exp(2j * cmath.pi * k / self.N) for k in range(self.N)]

    def holomorphic_h(self):
        # for N = 3 the single form is dx / y^2; in general the basis is
        # x^r y^s dx / y^{N-1} with r + s <= N - 3
        hs = []
        for r in range(self.N - 2):
            for s in range(self.N - 2 - r):
                def make(r, s):
                    return lambda x, y: x ** r * y ** s / y ** (self.N - 1)
                hs.append(make(r, s))
        return hs

    def ramification_order(self, x):
        if min(abs(x - b) for b in self.branch_x()) < 1e-9:
            return self.N
        return 1


class MoebiusFunction:
    """A rational function c (x - a) / (x - b) of the x-coordinate,
    viewed as a function on the curve.

    On both curve families its divisor is N(Q) - N(R) with Q, R the
    (unique, totally ramified) points above a and b.
    """

    def __init__(self, a, b, c=1.0):
        self.a = complex(a)
        self.b = complex(b)
        self.c = complex(c)

    def __call__(self, x):
        x = np.asarray(x, dtype=complex) if np.ndim(x) else complex(x)
        return self.c * (x - self.a) / (x - self.b)

    def dlog(self, x):
        """d(log f)/dx = 1/(x-a) - 1/(x-b)."""
        return 1.0 / (x - self.a) - 1.0 / (x - self.b)

    def level_arc(self, s):
        """Exact parametrization of {f in [0, +inf]}: the x with
        f(x) = s for s >= 0 real, running from a (s=0) to b (s=inf).
        Use w = s/(1+s) in [0, 1] as the parameter."""
        w = np.asarray(s, dtype=float)
        # solve c(x-a) = s(x-b) with s = w/(1-w):
        # x = (c a (1-w) - b w) / (c (1-w) - w)
        return (self.c * self.a * (1 - w) - self.b * w) \
            / (self.c * (1 - w) - w)

    def log_branch(self, x, cut_tol=0.0):
        """log f with the argument taken in [0, 2 pi): the branch cut
        sits exactly on the positive-real locus of f."""
        v = self(x)
        return np.log(np.abs(v)) + 1j * np.mod(np.angle(v), 2.0 * np.pi)


def verify_divisor(curve, func, expected, radius=1e-3, samples=64):
    """Check div(func) == expected by winding numbers on small circles.

    ``expected`` is a list of ((x, y), multiplicity) pairs for points on
    the curve; multiplicities at totally ramified points are counted on
    the curve (e.g. a simple zero of x - a pulls back with multiplicity
    equal to the ramification index).  Infinity is handled by verifying
    that the finite multiplicities sum to zero (degree of a principal
    divisor) and that |func| tends to a finite nonzero limit along a
    large circle when the function has no poles or zeros at infinity.

    Returns a dict with the measured winding numbers.
    """
    out = {}
    total = 0
    for (px, py), mult in expected:
        e = curve.ramification_order(px)
        # winding of func(x) along a small base circle, times the
        # number of fiber points reached = e windings on the curve
        th = np.linspace(0.0, 2.0 * np.pi, samples, endpoint=False)
        xs = px + radius * np.exp(1j * th)
        vals = func(xs)
        dphase = np.angle(vals / np.roll(vals, 1))
        w_base = np.sum(dphase) / (2.0 * np.pi)
        w_curve = w_base * e
        out[(px, py)] = w_curve
        if abs(w_curve - mult) > 1e-6:
            raise ValueError(
                "winding %.6f at x=%s does not match multiplicity %d"
                % (w_curve.real if np.iscomplexobj(w_curve) else w_curve,
                   px, mult))
        total += mult
    if total != 0:
        raise ValueError("multiplicities of a principal divisor must sum to 0")
    # no zero/pole at infinity: |f| bounded away from 0 and inf out there
    th = np.linspace(0.0, 2.0 * np.pi, samples, endpoint=False)
    xs = 1e6 * np.exp(1j * th)
    vals = np.abs(func(xs))
    if vals.min() < 1e-8 or vals.max() > 1e8:
        raise ValueError("unexpected zero or pole at infinity")
    out["infinity_abs_range"] = (float(vals.min()), float(vals.max()))
    return out
