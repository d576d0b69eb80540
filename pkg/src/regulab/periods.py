"""Periods of the cover: normalized differentials and lattice tools.

Integrates the holomorphic differentials over a symplectic homology
basis, normalizes so the first-half ("a") periods are the identity,
and exposes the period matrix tau together with consistency checks
(symmetry, positive-definite imaginary part).  Also provides the dual
basis of harmonic 1-forms, Abel-Jacobi sums and reduction of vectors
modulo a period lattice.
"""

from __future__ import annotations

import numpy as np

from .integrate import line_integral


class ConjugateForm:
    """The complex conjugate of a 1-form, as an integrand marker.

    Line integrals of conj(w) along a path equal the conjugate of the
    line integral of w, so holders of this wrapper must special-case
    it rather than evaluate pointwise."""

    def __init__(self, form):
        self.form = form


def integral_of(path, form):
    if isinstance(form, ConjugateForm):
        return np.conj(line_integral(path, form.form))
    return line_integral(path, form)


class HarmonicForm:
    """A real-harmonic 1-form sum_l hol[l] w_l + anti[l] conj(w_l).

    Unlike ConjugateForm this supports pointwise pullback along a
    path (conj(w) pulls back to the conjugate of the pullback of w,
    the path parameter being real), so it can sit inside iterated
    integrals."""

    def __init__(self, hol, anti, base_forms):
        self.hol = [complex(c) for c in hol]
        self.anti = [complex(c) for c in anti]
        self.base_forms = base_forms

    def pullback_values(self, x, y, dx):
        out = None
        for h, a, w in zip(self.hol, self.anti, self.base_forms):
            v = np.asarray(w(x, y), dtype=complex) * dx
            term = h * v + a * np.conj(v)
            out = term if out is None else out + term
        return out


class LinearForm:
    """An explicit C-linear combination of base 1-forms (callable)."""

    def __init__(self, coeffs, forms):
        self.coeffs = [complex(c) for c in coeffs]
        self.forms = forms

    def __call__(self, x, y):
        out = None
        for c, w in zip(self.coeffs, self.forms):
            term = c * w(x, y)
            out = term if out is None else out + term
        return out


class PeriodFrame:
    """Normalized differentials and periods over a loop system."""

    def __init__(self, loops, rtol=1e-9):
        curve = loops.curve
        self.curve = curve
        self.loops = loops
        g = curve.genus
        hs = curve.holomorphic_h()
        raw = np.array([[line_integral(p, h) for p in loops.basis]
                        for h in hs])          # g x 2g
        A = raw[:, :g]
        self.normalizer = np.linalg.inv(A)     # dz = normalizer . h
        self.periods = self.normalizer @ raw   # (I | tau)
        self.tau = self.periods[:, g:]
        self.dz = [LinearForm(self.normalizer[i], hs) for i in range(g)]
        sym_err = np.max(np.abs(self.tau - self.tau.T))
        scale = max(1.0, np.max(np.abs(self.tau)))
        if sym_err > rtol * scale * 1e3:
            raise RuntimeError("period matrix not symmetric: %g" % sym_err)
        eig = np.linalg.eigvalsh(0.5 * (self.tau.imag + self.tau.imag.T))
        if np.min(eig) <= 0:
            raise RuntimeError("imaginary part of tau not positive "
                               "definite: eigenvalues %s" % eig)
        self.tau_sym_err = sym_err
        self.tau_im_eigs = eig

    # -- dual (harmonic) frame ---------------------------------------------

    def dual_forms(self):
        """Harmonic forms eta_1..eta_2g with integral over basis loop l
        of eta_k equal to delta_{kl}, as combinations of the normalized
        dz_i and their conjugates."""
        g = self.curve.genus
        Pi = self.periods                        # g x 2g
        stack = np.vstack([Pi, np.conj(Pi)])     # 2g x 2g
        coeff = np.linalg.inv(stack)
        duals = []
        for k in range(2 * g):
            # row k solves stack^T c = e_k
            c = coeff[k, :]
            duals.append(HarmonicForm(c[:g], c[g:], self.dz))
        return duals

    def integral_dual(self, path, dual):
        """Line integral of a HarmonicForm via the dz line integrals."""
        vals = np.array([line_integral(path, w) for w in self.dz])
        return complex(np.dot(dual.hol, vals) + np.dot(dual.anti, np.conj(vals)))

    # -- Abel-Jacobi ----------------------------------------------------------

    def abel_jacobi(self, path):
        """Vector of normalized-differential integrals along a path."""
        return np.array([line_integral(path, w) for w in self.dz])

    def jacobian_lattice(self):
        """Column generators of the period lattice Z^g + tau Z^g."""
        g = self.curve.genus
        return np.hstack([np.eye(g), self.tau])

    def torsion_residuals(self, path, N):
        """Lattice residual norms of the divisor class of end - start
        along `path` and of its N-th multiple.

        Returns (r1, rN): the class is N-torsion but nontrivial exactly
        when rN is tiny and r1 is not.
        """
        aj = self.abel_jacobi(path)
        gens = self.jacobian_lattice()
        r1, _ = reduce_mod_lattice(aj, gens)
        rN, _ = reduce_mod_lattice(N * aj, gens)
        return float(np.linalg.norm(r1)), float(np.linalg.norm(rN))


def _reduce_generators(B, rel_tol=1e-4):
    """Greedy (Lagrange-style) reduction of a generating set.

    Columns of B span a lattice; repeatedly subtracting rounded
    projections shortens them while tracking the integer change of
    basis.  Near-zero survivors are integer relations among the
    generators (e.g. on CM curves) and are dropped.  Returns
    (short_columns, coeff_rows) with short_columns[k] = B @ coeff_rows[k].
    """
    m = B.shape[1]
    cols = [B[:, k].astype(float).copy() for k in range(m)]
    coeff = [np.eye(m, dtype=int)[k] for k in range(m)]
    scale = max(np.linalg.norm(c) for c in cols)
    for _ in range(200):
        changed = False
        for a in range(m):
            for b in range(m):
                if a == b:
                    continue
                den = float(cols[b] @ cols[b])
                if den < (rel_tol * scale) ** 2:
                    continue
                q = int(round(float(cols[a] @ cols[b]) / den))
                if q != 0:
                    cols[a] = cols[a] - q * cols[b]
                    coeff[a] = coeff[a] - q * coeff[b]
                    changed = True
        if not changed:
            break
    keep = [k for k in range(m)
            if np.linalg.norm(cols[k]) > rel_tol * scale]
    return [cols[k] for k in keep], [coeff[k] for k in keep]


def reduce_mod_lattice(v, gens, bound=10**9):
    """Reduce a real 2n-dimensional vector modulo integer combinations
    of the columns of `gens` (given as complex columns of dim n, taken
    with real and imaginary parts stacked).

    The generating set is first shortened by greedy pairwise reduction
    (so overcomplete or badly skewed sets still give small residuals
    whenever an exact integer combination exists), then the target is
    rounded against the short basis with a small box search.  `bound`
    caps the coefficients in the *short* basis, guarding against a
    near-dense lattice absorbing arbitrary values.  Returns
    (residual_vector, coefficients in the original generators)."""
    v = np.asarray(v, dtype=complex).ravel()
    G = np.asarray(gens, dtype=complex)
    if G.ndim == 1:
        G = G[None, :]
    B = np.vstack([G.real, G.imag])     # 2n x m
    target = np.concatenate([v.real, v.imag])
    m = B.shape[1]
    cols, coeff = _reduce_generators(B)
    if not cols:
        return v.copy(), np.zeros(m, dtype=int)
    S = np.stack(cols, axis=1)          # 2n x m'
    c0, *_ = np.linalg.lstsq(S, target, rcond=None)
    base = np.round(c0).astype(int)
    best = None
    from itertools import product
    for delta in product((-1, 0, 1), repeat=len(cols)):
        c = base + np.array(delta, dtype=int)
        if np.max(np.abs(c)) > bound:
            continue
        r = target - S @ c
        n = np.linalg.norm(r)
        if best is None or n < best[0]:
            best = (n, c.copy(), r.copy())
    if best is None:
        # every candidate exceeds the coefficient bound: refuse to
        # reduce rather than let huge multiples absorb v
        best = (np.linalg.norm(target), np.zeros(len(cols), dtype=int),
                target.copy())
    _, c, r = best
    full = np.sum([ck * ck_row for ck, ck_row in zip(c, coeff)], axis=0) \
        if len(cols) else np.zeros(m, dtype=int)
    n2 = len(v)
    resid = r[:n2] + 1j * r[n2:]
    return resid, np.asarray(full, dtype=int)


def riemann_bilinear_check(frame):
    """Classical bilinear identity on the normalized frame: for the
    canonical basis, sum_k (A_{ik} B_{jk} - B_{ik} A_{jk}) with A = I,
    B = tau reduces to tau - tau^T = 0; returns the defect plus the
    positivity margin of Im tau."""
    t = frame.tau
    return float(np.max(np.abs(t - t.T))), float(np.min(frame.tau_im_eigs))
