"""Surface integrals of log(f) against sheet-summed form densities.

Computes the matrix

    S[l][i] = int_{cover minus level cycle} log(f) conj(dz_l) ^ dz_i

by pushing everything to the plane of the level coordinate z = f(x).
Key facts exploited:

  * both dz_l and dz_i are multiples of dx on every sheet, so the only
    surviving wedge density is G_{li}(x) = sum over sheets of
    conj(g_l) g_i, a single-valued function of the base coordinate,
    and conj(dx) ^ dx = 2i du dv;
  * f is a Moebius map of x, so x(z) is exact and the branch jump of
    log f lies exactly on the positive real z-axis: integrating the
    upper and lower half planes separately removes the cut;
  * the integrable singularities (the zero and pole of f, the other
    ramification values, and the image of x = infinity) are covered by
    polar patches with a smooth radial partition-of-unity weight and
    power substitutions that flatten the algebraic part.
"""

from __future__ import annotations

import numpy as np
from scipy.integrate import quad_vec


def smoothstep(u):
    """Quintic smoothstep: 0 below 0, 1 above 1, C^2 in between."""
    u = np.clip(u, 0.0, 1.0)
    return u ** 3 * (10.0 - 15.0 * u + 6.0 * u ** 2)


class ZetaChart:
    """The level coordinate z = f(x) for a Moebius f = c(x-a)/(x-b)."""

    def __init__(self, func):
        self.func = func

    def x_of(self, z):
        a, b, c = self.func.a, self.func.b, self.func.c
        return (c * a - b * z) / (c - z)

    def jac2(self, z):
        """|dx/dz|^2."""
        a, b, c = self.func.a, self.func.b, self.func.c
        return np.abs(c * (a - b) / (c - z) ** 2) ** 2

    def log_branch(self, z):
        """log|z| + i arg z with arg in [0, 2 pi)."""
        return np.log(np.abs(z)) + 1j * np.mod(np.angle(z), 2.0 * np.pi)


class SurfaceDensity:
    """G_{li}(x) for all (l, i) pairs at once, vectorized over x."""

    def __init__(self, curve, dz_forms):
        self.curve = curve
        self.dz_forms = dz_forms

    def __call__(self, x):
        x = np.asarray(x, dtype=complex)
        sheets = np.asarray(self.curve.all_sheets(x))   # (deg, npts)
        vals = np.array([w(x[None, :].repeat(len(sheets), 0), sheets)
                         for w in self.dz_forms])       # (g, deg, npts)
        return np.einsum("lkp,ikp->lip", np.conj(vals), vals)


class ZetaIntegrand:
    """Full integrand H(z) = weight(z) G(x(z)) |dx/dz|^2 as a
    (g, g, npts) array; the default weight is the branch of log f with
    argument in [0, 2 pi)."""

    def __init__(self, chart, density, weight=None):
        self.chart = chart
        self.density = density
        self.weight = chart.log_branch if weight is None else weight

    def __call__(self, z):
        z = np.asarray(z, dtype=complex).ravel()
        x = self.chart.x_of(z)
        G = self.density(x)                              # (g, g, n)
        w = self.weight(z) * self.chart.jac2(z)
        return G * w[None, None, :]


def marked_points(curve, func):
    """Singular/marked values in the z-plane: the zero (z=0), the other
    ramification values, the image of x = infinity, and the pole
    (z = infinity, handled separately).  Returns list of (z, power)
    with `power` the substitution exponent flattening the local
    algebraic singularity."""
    pts = [(0.0 + 0.0j, curve.ramification_order(func.a))]
    for bx in curve.branch_x():
        if abs(bx - func.a) < 1e-9 or abs(bx - func.b) < 1e-9:
            continue
        pts.append((complex(func(bx)), curve.ramification_order(bx)))
    pts.append((complex(func.c), 2))   # image of x = infinity
    return pts


def _patch_radius(center, centers, cut_guard=True):
    r = np.inf
    for c in centers:
        if abs(c - center) > 1e-12:
            r = min(r, 0.4 * abs(c - center))
    if cut_guard and abs(center) > 1e-12:
        # keep the patch away from the branch ray [0, oo)
        if abs(center.imag) > 1e-12 or center.real < 0:
            d = abs(center.imag) if center.real > 0 else abs(center)
            r = min(r, 0.8 * d)
    return r


def polar_patch(integrand, center, radius, power, n_theta=64, tol=1e-9):
    """Integral over the disk around `center` weighted by the radial
    bump (1 at the center, 0 at the rim), with r = radius * s**power
    flattening the algebraic singularity at the center.

    When center is 0 the branch cut passes through the patch: the
    theta integral runs over (0, 2 pi) with open Gauss nodes, which
    never touch the cut, and the integrand is smooth one-sidedly."""
    u, wts = np.polynomial.legendre.leggauss(n_theta)
    th = np.pi * (u + 1.0)
    wth = np.pi * wts
    ez = np.exp(1j * th)

    def radial(s):
        r = radius * s ** power
        dr = radius * power * s ** (power - 1)
        z = center + r * ez
        vals = integrand(z)                    # (g, g, n_theta)
        bump = 1.0 - smoothstep(2.0 * r / radius - 1.0)
        return (vals @ wth) * (bump * r * dr)

    val, _ = quad_vec(radial, 0.0, 1.0, epsabs=tol, epsrel=tol)
    return val


def infinity_patch(integrand, R0, power, n_theta=64, tol=1e-9):
    """Integral over |z| > R0/2-ish via xi = 1/z, with the same radial
    bump structure: weight 1 for |z| > R0, fading to 0 at |z| = R0/2.

    dA_z = |xi|^{-4} dA_xi."""
    u, wts = np.polynomial.legendre.leggauss(n_theta)
    th = np.pi * (u + 1.0)
    wth = np.pi * wts
    ez = np.exp(1j * th)
    rho = 2.0 / R0           # xi-radius of the patch

    def radial(s):
        r = rho * s ** power
        dr = rho * power * s ** (power - 1)
        xi = r * ez
        z = 1.0 / xi
        vals = integrand(z) * (np.abs(xi) ** -4)[None, None, :]
        # exact complement of the mid-region factor 1 - ss(2|z|/R0 - 1)
        bump = smoothstep(2.0 / (r * R0) - 1.0) if r > 0 else 1.0
        return (vals @ wth) * (bump * r * dr)

    val, _ = quad_vec(radial, 0.0, 1.0, epsabs=tol, epsrel=tol)
    return val


class WeightedMid:
    """Midregion integrand: H(z) times the complementary weight of all
    patches (so it vanishes smoothly near every singular point)."""

    def __init__(self, integrand, patches, R0):
        self.integrand = integrand
        self.patches = patches     # list of (center, radius)
        self.R0 = R0

    def weight(self, z):
        w = np.ones(z.shape, dtype=float)
        for c, r in self.patches:
            w *= smoothstep(2.0 * np.abs(z - c) / r - 1.0)
        w *= 1.0 - smoothstep(2.0 * np.abs(z) / self.R0 - 1.0)
        return w

    def __call__(self, z):
        z = np.asarray(z, dtype=complex).ravel()
        w = self.weight(z)
        out = np.zeros(self.integrand_shape + (len(z),), dtype=complex)
        live = w > 0.0
        if np.any(live):
            out[..., live] = self.integrand(z[live]) * w[live]
        return out

    @property
    def integrand_shape(self):
        return self._shape

    def set_shape(self, shape):
        self._shape = shape


def _gauss_cell(fun, x0, x1, y0, y1, n=6):
    u, w = np.polynomial.legendre.leggauss(n)
    xs = 0.5 * (x1 - x0) * u + 0.5 * (x0 + x1)
    ys = 0.5 * (y1 - y0) * u + 0.5 * (y0 + y1)
    X, Y = np.meshgrid(xs, ys)
    Z = (X + 1j * Y).ravel()
    W = np.outer(w, w).ravel() * 0.25 * (x1 - x0) * (y1 - y0)
    vals = fun(Z)
    return vals @ W


def quadtree_rect(fun, x0, x1, y0, y1, tol, max_depth=13):
    """Adaptive quadtree integration of a vector-valued smooth
    function over a rectangle; accepts a cell when the 4-subcell
    refinement moves the value by less than the cell's share of tol."""
    total_area = (x1 - x0) * (y1 - y0)
    coarse = _gauss_cell(fun, x0, x1, y0, y1)

    def rec(a, b, c, d, est, depth):
        xm, ym = 0.5 * (a + b), 0.5 * (c + d)
        kids = [(a, xm, c, ym), (xm, b, c, ym),
                (a, xm, ym, d), (xm, b, ym, d)]
        fine = [_gauss_cell(fun, *k) for k in kids]
        sfine = sum(fine)
        err = np.max(np.abs(sfine - est))
        if err < tol * (b - a) * (d - c) / total_area or depth >= max_depth:
            return sfine
        return sum(rec(*k, est=f, depth=depth + 1)
                   for k, f in zip(kids, fine))

    return rec(x0, x1, y0, y1, coarse, 0)


def surface_log_integrals(curve, func, dz_forms, tol=2e-7, weight=None):
    """The matrix S[l][i] = int log(f) conj(dz_l) ^ dz_i over the
    cover cut along the level cycle.  Returns a (g, g) array.

    With weight = (lambda z: np.ones(len(z))) this instead computes
    int conj(dz_l) ^ dz_i over the whole cover, which equals
    2i Im(tau)_{il} for a normalized basis -- used as a cross-check."""
    chart = ZetaChart(func)
    density = SurfaceDensity(curve, dz_forms)
    integrand = ZetaIntegrand(chart, density, weight=weight)
    g = len(dz_forms)

    marks = marked_points(curve, func)
    centers = [m[0] for m in marks]
    R0 = 3.0 * max(max(abs(c) for c in centers), 1.0)

    total = np.zeros((g, g), dtype=complex)
    patches = []
    for (c, p) in marks:
        # keep each patch inside |z| < R0/2, where the infinity bump is 0
        r = min(_patch_radius(c, centers), 0.95 * (0.5 * R0 - abs(c)))
        if r < 1e-3:
            raise ValueError(
                "marked point %s too close to the branch ray or to "
                "another marked point" % c)
        patches.append((c, r))
        total += polar_patch(integrand, c, r, p, tol=tol)

    e_pole = curve.ramification_order(func.b)
    total += infinity_patch(integrand, R0, e_pole, tol=tol)

    mid = WeightedMid(integrand, patches, R0)
    mid.set_shape((g, g))
    span = 1.2 * R0
    cell_tol = tol * 40.0
    total += quadtree_rect(mid, -span, span, 0.0, span, cell_tol)
    total += quadtree_rect(mid, -span, span, -span, 0.0, cell_tol)

    # conj(dx) ^ dx = 2i du dv
    return 2j * total
