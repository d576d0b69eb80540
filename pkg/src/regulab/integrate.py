"""Line integrals and iterated integrals along tracked paths.

Each 1-form is given as a coefficient function w(x, y) meaning w dx.
Pullbacks along a tracked segment are analytic in the parameter, so we
model them by Chebyshev series and obtain ordinary and iterated
integrals spectrally: antidifferentiation and multiplication of the
series are exact operations.

Convention for iterated integrals: for a word (w_1, ..., w_m),

    I(path; w_1..w_m) = integral over 0 <= t_1 <= ... <= t_m <= 1
                        of p_1(t_1) ... p_m(t_m) dt_1 ... dt_m,

where p_k is the pullback of w_k.  Concatenation then follows the
shuffle-free composition rule

    I(pq; w_1..w_m) = sum_k I(p; w_1..w_k) I(q; w_{k+1}..w_m).
"""

from __future__ import annotations

import numpy as np
from numpy.polynomial.chebyshev import Chebyshev

from .surfpath import _cheb_nodes, _fit_cheb


def pullback_cheb(tracked, form, tail_tol=5e-14, max_deg=2048):
    """Chebyshev model on [0,1] of form(x(t), y(t)) * x'(t).

    Models are memoized on the tracked segment (paths built by
    concatenating loop words reuse segments heavily)."""
    cache = tracked.__dict__.setdefault("_pullbacks", {})
    hit = cache.get(id(form))
    # keep a strong reference to the form so ids are never recycled
    if hit is not None and hit[0] is form:
        return hit[1]
    out = _pullback_cheb_impl(tracked, form, tail_tol, max_deg)
    cache[id(form)] = (form, out)
    return out


def _pullback_cheb_impl(tracked, form, tail_tol, max_deg):
    deg = max(64, 2 * (len(tracked.ycheb.coef) - 1))
    while True:
        ts = _cheb_nodes(deg)
        if hasattr(form, "pullback_values"):
            # forms with antiholomorphic parts supply their own pullback
            vals = form.pullback_values(tracked.x(ts), tracked.y(ts),
                                        tracked.dx(ts))
        else:
            vals = form(tracked.x(ts), tracked.y(ts)) * tracked.dx(ts)
        vals = np.asarray(vals, dtype=complex)
        if vals.shape == ():
            vals = np.full(ts.shape, complex(vals))
        vals = _fill_endpoint_limits(ts, vals)
        cheb = _fit_cheb(ts, vals, deg)
        c = np.abs(cheb.coef)
        scale = max(c.max(), 1e-300)
        if c[-max(2, deg // 16):].max() < tail_tol * scale:
            return cheb
        if deg >= max_deg:
            return cheb  # best effort; callers compare dual routes anyway
        deg *= 2


def _fill_endpoint_limits(ts, vals, m=10):
    """Replace non-finite endpoint samples by polynomial extrapolation.

    Pullbacks are smooth even where a form coefficient blows up at a
    ramification point (the parametrization absorbs the singularity),
    but evaluating the coefficient exactly at y = 0 yields 0/0 = nan.
    Such points only occur at segment endpoints."""
    bad = ~np.isfinite(vals)
    if not bad.any():
        return vals
    idx = np.flatnonzero(bad)
    if not all(i < 2 or i > len(ts) - 3 for i in idx):
        raise ValueError("non-finite pullback away from segment ends")
    vals = vals.copy()
    for i in idx:
        good = np.flatnonzero(np.isfinite(vals))
        near = good[np.argsort(np.abs(ts[good] - ts[i]))[:m]]
        scale = max(np.abs(ts[near] - ts[i]).max(), 1e-300)
        co = np.polyfit((ts[near] - ts[i]) / scale, vals[near], m - 3)
        vals[i] = co[-1]
    return vals


def _cum(cheb):
    """Antiderivative vanishing at t = 0."""
    return cheb.integ(lbnd=0.0)


def iterated_table(path, forms, pullbacks=None):
    """All subword integrals over the path.

    Returns a dict T with T[(a, b)] = I(path; w_a..w_b) for
    0 <= a <= b < m.  T[(a, a - 1)] is implicitly 1.
    """
    m = len(forms)
    G = {}
    for a in range(m):
        for b in range(a, m):
            G[(a, b)] = 0.0 + 0.0j
    first = True
    for idx, tr in enumerate(path.tracked):
        if pullbacks is None:
            p = [pullback_cheb(tr, w) for w in forms]
        else:
            p = pullbacks[idx]
        L = {}
        Lval = {}
        for a in range(m):
            for b in range(a, m):
                if b == a:
                    L[(a, b)] = _cum(p[b])
                else:
                    L[(a, b)] = _cum(L[(a, b - 1)] * p[b])
                Lval[(a, b)] = complex(L[(a, b)](1.0))
        if first:
            G = dict(Lval)
            first = False
            continue
        newG = {}
        for a in range(m):
            for b in range(a, m):
                total = Lval[(a, b)] + G[(a, b)]
                for k in range(a, b):
                    total += G[(a, k)] * Lval[(k + 1, b)]
                newG[(a, b)] = total
        G = newG
    return G


def iterated_integral(path, forms):
    """I(path; w_1..w_m) for the full word."""
    m = len(forms)
    if m == 0:
        return 1.0 + 0.0j
    return iterated_table(path, forms)[(0, m - 1)]


def line_integral(path, form):
    return iterated_integral(path, [form])


def segment_pullbacks(path, forms):
    """Precompute pullback models for repeated iterated_table calls."""
    return [[pullback_cheb(tr, w) for w in forms] for tr in path.tracked]


def adaptive_quad(fun, a, b, tol=1e-10):
    """Adaptive integral of a complex vectorized function on [a, b]."""
    from scipy.integrate import quad_vec
    val, _err = quad_vec(lambda t: np.asarray(fun(np.asarray([t]))[0]),
                         a, b, epsabs=tol, epsrel=tol)
    return val


def gauss_nodes(n):
    u, w = np.polynomial.legendre.leggauss(n)
    return u, w
