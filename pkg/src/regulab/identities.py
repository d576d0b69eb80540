"""Randomized self-checks of the length-2 iterated-integral calculus.

Four classical identities are exercised on randomly drawn pairs of
1-forms and sheet-tracked paths:

  1. composition:  I(ab; w1 w2) = I(a; w1 w2) + I(b; w1 w2)
                                  + (int_a w1)(int_b w2)
  2. shuffle:      I(a; w1 w2) + I(a; w2 w1) = (int_a w1)(int_a w2)
  3. exact first:  I(a; dp w) = int_a p w - p(start) int_a w
  4. exact last:   I(a; w dp) = p(end) int_a w - int_a p w

Each draws its own forms and paths so a bug cannot hide behind a
correlated cancellation.  The forms are mixed meromorphic-in-x and
holomorphic (coefficients over 1/y), the exact forms come from random
quadratic polynomials in x, so the suite sees both smooth and
near-branch behaviour.
"""

from __future__ import annotations

import time

import numpy as np

from .integrate import iterated_table, line_integral
from .surfpath import Line, SurfacePath


def _random_polynomial(rng, deg=2):
    c = rng.standard_normal(deg + 1) + 1j * rng.standard_normal(deg + 1)
    p = np.polynomial.Polynomial(c)
    return p, p.deriv()


def _random_form(rng, curve):
    """A random combination of dx, x dx and the holomorphic frame."""
    hs = curve.holomorphic_h()
    pool = [lambda x, y: np.ones_like(x), lambda x, y: x] + list(hs)
    c = rng.standard_normal(len(pool)) + 1j * rng.standard_normal(len(pool))

    def w(x, y):
        return sum(ck * h(x, y) for ck, h in zip(c, pool))
    return w


def _random_point(rng, curve, rmax=1.6, clearance=0.25):
    while True:
        x = rmax * (rng.uniform(-1, 1) + 1j * rng.uniform(-1, 1))
        if curve.branch_clearance(x) > clearance:
            return x


def _random_path(rng, curve, n_seg=1):
    """Random chord chain with branch clearance along every segment."""
    while True:
        xs = [_random_point(rng, curve) for _ in range(n_seg + 1)]
        ok = True
        for a, b in zip(xs[:-1], xs[1:]):
            ts = np.linspace(0.0, 1.0, 33)
            pts = a + ts * (b - a)
            if min(curve.branch_clearance(p) for p in pts) < 0.12:
                ok = False
                break
            if abs(b - a) < 0.05:
                ok = False
                break
        if not ok:
            continue
        sheets = np.asarray(curve.all_sheets(np.array([xs[0]])))[:, 0]
        y0 = sheets[rng.integers(len(sheets))]
        segs = [Line(a, b) for a, b in zip(xs[:-1], xs[1:])]
        return SurfacePath.from_segments(curve, segs, y0)


def _rel(lhs, rhs):
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-3)


def check_composition(rng, curve):
    w1 = _random_form(rng, curve)
    w2 = _random_form(rng, curve)
    # one chord evaluated whole versus split at a random interior point;
    # the whole-chord value comes from a single fiber model, so the two
    # sides really are independent evaluations
    whole = _random_path(rng, curve)
    x0, y0 = whole.start()
    x1, _ = whole.end()
    s = rng.uniform(0.3, 0.7)
    xm = x0 + s * (x1 - x0)
    a = SurfacePath.from_segments(curve, [Line(x0, xm)], y0)
    b = SurfacePath.from_segments(curve, [Line(xm, x1)], a.end()[1])
    lhs = iterated_table(whole, [w1, w2])[(0, 1)]
    rhs = (iterated_table(a, [w1, w2])[(0, 1)]
           + iterated_table(b, [w1, w2])[(0, 1)]
           + line_integral(a, w1) * line_integral(b, w2))
    return _rel(lhs, rhs)


def check_shuffle(rng, curve):
    w1 = _random_form(rng, curve)
    w2 = _random_form(rng, curve)
    a = _random_path(rng, curve, n_seg=2)
    lhs = (iterated_table(a, [w1, w2])[(0, 1)]
           + iterated_table(a, [w2, w1])[(0, 1)])
    rhs = line_integral(a, w1) * line_integral(a, w2)
    return _rel(lhs, rhs)


def check_exact_first(rng, curve):
    p, dp = _random_polynomial(rng)
    w = _random_form(rng, curve)
    a = _random_path(rng, curve)
    dpf = lambda x, y: dp(x)
    pw = lambda x, y: p(x) * w(x, y)
    lhs = iterated_table(a, [dpf, w])[(0, 1)]
    rhs = line_integral(a, pw) - p(a.start()[0]) * line_integral(a, w)
    return _rel(lhs, rhs)


def check_exact_last(rng, curve):
    p, dp = _random_polynomial(rng)
    w = _random_form(rng, curve)
    a = _random_path(rng, curve)
    dpf = lambda x, y: dp(x)
    pw = lambda x, y: p(x) * w(x, y)
    lhs = iterated_table(a, [w, dpf])[(0, 1)]
    rhs = p(a.end()[0]) * line_integral(a, w) - line_integral(a, pw)
    return _rel(lhs, rhs)


CHECKS = {
    "composition": check_composition,
    "shuffle": check_shuffle,
    "exact_first": check_exact_first,
    "exact_last": check_exact_last,
}


def run_identity_suite(curve, n_samples=100, seed=0):
    """Run all four identity families, n_samples draws total (spread
    evenly), returning max relative error per family plus timing."""
    rng = np.random.default_rng(seed)
    per = max(1, int(np.ceil(n_samples / len(CHECKS))))
    t0 = time.time()
    worst = {}
    for name, fn in CHECKS.items():
        errs = [fn(rng, curve) for _ in range(per)]
        worst[name] = float(max(errs))
    return {
        "samples": per * len(CHECKS),
        "max_rel_err": worst,
        "overall_max": max(worst.values()),
        "seconds": time.time() - t0,
    }
