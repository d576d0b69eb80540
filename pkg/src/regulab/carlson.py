"""Entry-by-entry comparison of the two routes to the main pairing.

For each holomorphic basis form dz_i and each harmonic dual form
eta_j the comparison is between:

  * the loop route ("Carlson side"): the 1-dimensional iterated
    integral c(sigma(j)) * int_{alpha_{sigma(j)}} (df/f) dz_i along the
    zero-winding adapted word for basis loop sigma(j), where
    sigma(j) = j +/- g is the symplectically paired index and
    c = +1 / -1 on the first / second half of the basis;

  * the surface route ("regulator side"): reg(eta_j ^ dz_i), the
    two-dimensional log(f) integral over the cut cover plus the
    iterated-integral commutator along the level cycle.

The two are expected to agree up to an overall rational constant and
an element of the lattice 2 pi i * (periods of dz_i).  The constant is
fitted empirically over a grid of candidates rather than assumed; the
nominal value is (2g+1) * N, and a fitted value of 2(2g+1)N or a sign
flip is surfaced as a flag instead of being silently absorbed.
"""

from __future__ import annotations

import numpy as np

from .gamma import AdaptedLoops, level_components
from .homology import LoopSystem
from .integrate import iterated_table
from .periods import PeriodFrame, reduce_mod_lattice
from .regulator import RegulatorFrame, dlog_form


def pairing_sign(j, g):
    """+1 for the first half of the symplectic basis, -1 for the
    second (the sign in the intersection pairing)."""
    return 1 if j < g else -1


def paired_index(j, g):
    """Index of the symplectic partner loop."""
    return j + g if j < g else j - g


class ComparisonRun:
    """All data needed to compare the two routes on one curve."""

    def __init__(self, curve, func, base, N, surf_tol=2e-7,
                 candidates=None, log_shift=0):
        self.curve = curve
        self.func = func
        self.N = N
        self.g = curve.genus
        self.loops = LoopSystem(curve, base, candidates=candidates)
        self.frame = PeriodFrame(self.loops)
        self.components = level_components(curve, func)
        self.adapted = AdaptedLoops(curve, func, self.loops, N)
        self.reg = RegulatorFrame(curve, func, self.frame,
                                  self.components, surf_tol=surf_tol,
                                  log_shift=log_shift)
        self.dlog = dlog_form(func)

    # -- the two routes -------------------------------------------------------

    def loop_entry(self, j, i):
        """c(sigma(j)) int_{alpha_{sigma(j)}} (df/f) dz_i.

        The sign can be pulled out of the iterated integral because
        the word has zero winding: reversing a path sends the length-2
        integral to (int w1)(int w2) minus itself, and int (df/f) = 0
        along every adapted word."""
        sj = paired_index(j, self.g)
        word = self.adapted.words[sj]
        T = iterated_table(word, [self.dlog, self.frame.dz[i]])
        return pairing_sign(sj, self.g) * T[(0, 1)]

    def carlson_entry(self, j, i):
        """The full antisymmetrized entry on the loop route.

        Both orderings of the length-2 integral contribute; since
        int (df/f) vanishes along the word, the reversed ordering
        equals minus the direct one, hence the factor 2.  The
        (2g+1)N prefactor is the normalization carried by the
        extension-class functional this route computes.
        """
        return 2 * (2 * self.g + 1) * self.N * self.loop_entry(j, i)

    def regulator_entry(self, j, i):
        return self.reg.regulator_entry(j, i)

    # -- lattices -------------------------------------------------------------

    def lattice_full(self, i):
        """2 pi i times all 2g periods of dz_i (rank-2 lattice in C)."""
        return 2j * np.pi * self.frame.periods[i, :]

    def lattice_single(self, j, i):
        """The ambiguity generator stated for the loop route alone:
        2 pi i int_{alpha_{sigma(j)}} dz_i (often exactly zero)."""
        sj = paired_index(j, self.g)
        return 2j * np.pi * (self.N if sj == i else 0.0)

    # -- comparison -----------------------------------------------------------

    def entries(self, js=None):
        g = self.g
        js = list(range(g, 2 * g)) if js is None else js
        out = []
        for j in js:
            for i in range(g):
                out.append((j, i, self.carlson_entry(j, i),
                            self.regulator_entry(j, i)))
        return out

    def reduced_residuals(self, kappa, js=None, rows=None):
        """Per-pair relative residual of (carlson - kappa * regulator)
        after reduction modulo the full period lattice of dz_i."""
        rows = self.entries(js=js) if rows is None else rows
        res = []
        for (j, i, lo, re) in rows:
            diff = lo - kappa * re
            r, coeffs = reduce_mod_lattice(
                np.array([diff]), self.lattice_full(i)[None, :])
            scale = max(abs(lo), 2 * np.pi)
            res.append((j, i, abs(r[0]) / scale, coeffs))
        return res

    def compare(self, js=None, kappa_grid=None):
        """Fit the proportionality constant between the routes and
        reduce every pair modulo the period lattice.

        Returns a dict with per-pair residuals at the nominal constant
        (2g+1)N, the fitted constant, and flags."""
        g, N = self.g, self.N
        nominal = (2 * g + 1) * N
        if kappa_grid is None:
            base = [1.0, float(N), 2 * g + 1.0, nominal / 2.0,
                    float(nominal), 2.0 * nominal, N * nominal,
                    2.0 * N * nominal, N * N * nominal]
            kappa_grid = sorted({s * k for k in base for s in (1, -1)})
        rows = self.entries(js=js)

        def residuals(kappa):
            return self.reduced_residuals(kappa, rows=rows)

        fits = {k: max(r for (_, _, r, _) in residuals(k))
                for k in kappa_grid}
        best = min(fits.values())
        # the lattice can absorb commensurable differences (e.g. on CM
        # curves), producing ties; prefer the candidate closest to the
        # nominal constant among near-optimal fits
        near = [k for k, r in fits.items() if r < best + 1e-6]
        fitted = min(near, key=lambda k: (abs(k - nominal), abs(k)))
        fitted_res = residuals(fitted)
        nominal_res = residuals(nominal)

        single = []
        for (j, i, lo, re) in rows:
            gen = self.lattice_single(j, i)
            diff = lo - fitted * re
            if abs(gen) > 0:
                rv, _ = reduce_mod_lattice(np.array([diff]),
                                           np.array([[gen]]))
                r = abs(rv[0])
            else:
                r = abs(diff)
            single.append((j, i, r / max(abs(lo), 2 * np.pi)))

        return {
            "nominal_constant": nominal,
            "fitted_constant": fitted,
            "fit_table": fits,
            "pair_residuals": [(j, i, r) for (j, i, r, _) in fitted_res],
            "nominal_residuals": [(j, i, r)
                                  for (j, i, r, _) in nominal_res],
            "lattice_coeffs": [(j, i, c) for (j, i, _, c) in fitted_res],
            "single_gen_residuals": single,
            "max_residual": max(r for (_, _, r, _) in fitted_res),
            "factor_two_flag": abs(abs(fitted) - 2 * nominal) < 1e-9,
            "sign_flag": fitted < 0,
        }
