"""Invariants of separated extensions and the Baer calculus.

The invariant of an extension 0 -> A -> H -> B -> 0 is the composite
``r . s`` of an integral retraction ``r: H -> A`` with a section
``s: B_C -> H_C`` preserving the Hodge filtration, read in the quotient

    Hom(B, A)_C / (F^0 Hom + Hom_Z).

Two extensions agree in Ext exactly when their invariants coincide in
this quotient; the comparison is exact over the Gaussian rationals and
falls back to a 1e-10 floating-point test otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import sympy as sp

from .. import exactlin
from . import _linalg as la
from .structures import (Extension, Morphism, MixedHodgeStructure,
                         direct_sum, hom_mhs, quotient_mhs, sub_mhs)

NUMERIC_TOL = 1e-10


@dataclass
class CarlsonInvariant:
    """A point of Hom(B, A)_C / (F^0 + Hom_Z).

    ``representative`` is an a x b complex matrix (phi: B -> A in lattice
    coordinates, vectorized row-major); ``hom`` the internal Hom
    structure; ``f0`` a column basis of F^0 Hom in vectorized
    coordinates.  The lattice is the standard integer lattice.
    """
    hom: MixedHodgeStructure
    representative: sp.Matrix
    f0: sp.Matrix

    def vec(self):
        a, b = self.representative.shape
        return sp.Matrix([self.representative[i, j]
                          for i in range(a) for j in range(b)])

    def scaled(self, m):
        return CarlsonInvariant(self.hom, m * self.representative, self.f0)

    def __sub__(self, other):
        return CarlsonInvariant(self.hom,
                                self.representative - other.representative,
                                self.f0)

    def __add__(self, other):
        return CarlsonInvariant(self.hom,
                                self.representative + other.representative,
                                self.f0)

    def is_zero(self, tol=NUMERIC_TOL):
        return _zero_mod_f0_and_lattice(self.vec(), self.f0, tol)

    def same_class(self, other, tol=NUMERIC_TOL):
        return (self - other).is_zero(tol)


def _zero_mod_f0_and_lattice(v, F0, tol):
    """Is v in F0-span + Z^n?  Exact when possible, else numeric."""
    if la.is_exact(v) and la.is_exact(F0) and _is_gaussian_rational(v):
        return _zero_exact(v, F0)
    return _zero_numeric(v, F0, tol)


def _is_gaussian_rational(M):
    for x in M:
        re, im = x.as_real_imag()
        if not (re.is_rational and im.is_rational):
            return False
    return True


def _zero_exact(v, F0):
    n = v.rows
    L = la.left_annihilator(F0) if F0.cols else sp.eye(n)
    if L.rows == 0:
        return True
    w = L * v
    # membership of w in the Z-span of the columns of L, over Q(i):
    # split into rational real/imaginary parts and clear denominators.
    def split(M):
        rows = []
        for i in range(M.rows):
            r1, r2 = [], []
            for j in range(M.cols):
                re, im = M[i, j].as_real_imag()
                r1.append(sp.Rational(re))
                r2.append(sp.Rational(im))
            rows.append(r1)
            rows.append(r2)
        return rows

    gens = split(L)          # 2*L.rows x L.cols rationals
    target = split(w)        # 2*L.rows x 1
    # lattice membership is invariant under row scaling, so clear
    # denominators row by row to keep the integers small
    G, t = [], []
    for grow, trow in zip(gens, target):
        den = 1
        for x in grow + trow:
            den = sp.ilcm(den, x.q)
        G.append([int(x * den) for x in grow])
        t.append(int(trow[0] * den))
    return exactlin.in_lattice(G, t)


def _zero_numeric(v, F0, tol):
    n = v.rows
    x = np.array([complex(a) for a in v], dtype=complex)
    if F0.cols:
        Fc = np.array([[complex(F0[i, j]) for j in range(F0.cols)]
                       for i in range(n)], dtype=complex)
        # real orthogonal projector onto the complement of the C-span
        S = np.hstack([np.vstack([Fc.real, Fc.imag]),
                       np.vstack([-Fc.imag, Fc.real])])
        xr = np.concatenate([x.real, x.imag])
        Q, _ = np.linalg.qr(S)
        proj = lambda y: y - Q @ (Q.T @ y)
    else:
        xr = np.concatenate([x.real, x.imag])
        proj = lambda y: y
    w = proj(xr)
    E = np.vstack([np.eye(n), np.zeros((n, n))])
    G = np.column_stack([proj(E[:, j]) for j in range(n)])
    coef, *_ = np.linalg.lstsq(G, w, rcond=None)
    best = np.inf
    base = np.round(coef).astype(int)
    # small box search around the rounded coefficients
    from itertools import product
    idx = np.argsort(-np.abs(coef - base))[: min(4, n)]
    for deltas in product((-1, 0, 1), repeat=len(idx)):
        cand = base.copy()
        cand[idx] += np.array(deltas, dtype=int)
        r = np.linalg.norm(w - G @ cand)
        best = min(best, r)
    return best < tol


# -- the invariant ------------------------------------------------------------


def carlson_invariant(ext):
    """Invariant of a separated extension in Hom(B, A)_C/(F^0 + Hom_Z)."""
    A, H, B = ext.sub, ext.total, ext.quotient
    r = exactlin.integer_retraction(ext.inclusion.int_matrix())
    R = sp.Matrix(r)
    S = hodge_section(ext)
    rep = R * S
    hom = hom_mhs(B, A)
    f0 = hom.hodge_filtration(0)
    return CarlsonInvariant(hom, rep, f0)


def hodge_section(ext):
    """A section s: B_C -> H_C of the projection with s(F^p) in F^p."""
    H, B = ext.total, ext.quotient
    P = ext.projection.matrix
    chosen = la.zero_cols(B.rank)
    lifts = la.zero_cols(H.rank)
    steps = list(B.hodge_steps)  # already sorted by decreasing p
    for p, basis in steps:
        FH = H.hodge_filtration(p)
        for c in range(basis.cols):
            v = basis[:, c]
            if chosen.cols and la.span_contains(chosen, v):
                continue
            coeff = la.solve_in_span(P * FH, v)
            if coeff is None:
                raise ValueError("projection is not strict on F^%d" % p)
            lift = FH * coeff
            chosen = la.hstack(chosen, v) if chosen.cols else v
            lifts = la.hstack(lifts, lift) if lifts.cols else lift
    if chosen.cols != B.rank:
        raise ValueError("hodge filtration of the quotient does not exhaust it")
    return lifts * chosen.inv()


# -- Baer calculus ------------------------------------------------------------


def _solve_int(M, v):
    sol = exactlin.solve_integer(M, v)
    if sol is None:
        raise ValueError("no integral solution; lattice exactness violated")
    return sol


def _coords_in(Kmat_int, vec_int):
    """Coordinates of an integer vector in a saturated lattice basis."""
    return _solve_int(Kmat_int, vec_int)


def baer_difference(e1, e2):
    """Baer difference of two extensions of B by A (same A and B)."""
    _check_matching(e1, e2)
    A, B = e1.sub, e1.quotient
    Hs, inc1, inc2 = direct_sum(e1.total, e2.total)
    psi = sp.Matrix.hstack(e1.projection.matrix, -e2.projection.matrix)
    K = exactlin.kernel_basis(la.to_int_matrix(psi))
    Kmhs, Kinc = sub_mhs(Hs, K)
    Kint = la.to_int_matrix(Kinc.matrix)
    i1, i2 = e1.inclusion.int_matrix(), e2.inclusion.int_matrix()
    D = []
    for j in range(A.rank):
        ea = [1 if t == j else 0 for t in range(A.rank)]
        vec = exactlin.matvec(i1, ea) + exactlin.matvec(i2, ea)
        D.append(_coords_in(Kint, vec))
    Q, qmor, section = quotient_mhs(Kmhs, D)
    # inclusion: a -> class of (iota1 a, 0)
    inc_cols = []
    for j in range(A.rank):
        ea = [1 if t == j else 0 for t in range(A.rank)]
        vec = exactlin.matvec(i1, ea) + [0] * e2.total.rank
        inc_cols.append(exactlin.matvec(la.to_int_matrix(qmor.matrix),
                                        _coords_in(Kint, vec)))
    incl = Morphism(A, Q, sp.Matrix(inc_cols).T)
    # projection: induced by pi1 on the first block
    p1 = e1.projection.matrix
    lift = Kinc.matrix * section       # quotient coords -> H1+H2 coords
    proj = Morphism(Q, B, p1 * lift[: e1.total.rank, :])
    return Extension(A, Q, B, incl, proj).validate()


def baer_sum(e1, e2):
    return baer_difference(e1, e2.negated())


def scalar_multiple(ext, n):
    """n-fold Baer multiple of an extension (n may be negative or 0)."""
    if n == 0:
        return baer_difference(ext, ext)
    out = ext if n > 0 else ext.negated()
    for _ in range(abs(n) - 1):
        out = baer_sum(out, ext if n > 0 else ext.negated())
    return out


def _check_matching(e1, e2):
    if not (e1.sub.equals(e2.sub) and e1.quotient.equals(e2.quotient)):
        raise ValueError("extensions do not share sub and quotient")


def pullback(ext, m):
    """Pull an extension of B by A back along m: B' -> B."""
    if not m.target.equals(ext.quotient):
        raise ValueError("map does not land in the quotient")
    A, Bp = ext.sub, m.source
    Hs, inc1, inc2 = direct_sum(ext.total, Bp)
    psi = sp.Matrix.hstack(ext.projection.matrix, -m.matrix)
    K = exactlin.kernel_basis(la.to_int_matrix(psi))
    Kmhs, Kinc = sub_mhs(Hs, K)
    Kint = la.to_int_matrix(Kinc.matrix)
    iota = ext.inclusion.int_matrix()
    inc_cols = []
    for j in range(A.rank):
        ea = [1 if t == j else 0 for t in range(A.rank)]
        vec = exactlin.matvec(iota, ea) + [0] * Bp.rank
        inc_cols.append(_coords_in(Kint, vec))
    incl = Morphism(A, Kmhs, sp.Matrix(inc_cols).T)
    proj = Morphism(Kmhs, Bp,
                    Kinc.matrix[ext.total.rank:, :])
    return Extension(A, Kmhs, Bp, incl, proj).validate()


def pushforward(ext, m):
    """Push an extension of B by A forward along m: A -> A'."""
    if not m.source.equals(ext.sub):
        raise ValueError("map does not start at the sub")
    Ap, B = m.target, ext.quotient
    Hs, inc1, inc2 = direct_sum(Ap, ext.total)
    iota = ext.inclusion.int_matrix()
    mm = la.to_int_matrix(m.matrix)
    D = []
    for j in range(ext.sub.rank):
        ea = [1 if t == j else 0 for t in range(ext.sub.rank)]
        col = [-x for x in exactlin.matvec(mm, ea)] \
            + exactlin.matvec(iota, ea)
        D.append(col)
    Q, qmor, section = quotient_mhs(Hs, D)
    qint = la.to_int_matrix(qmor.matrix)
    inc_cols = []
    for j in range(Ap.rank):
        vec = [1 if t == j else 0 for t in range(Ap.rank)] \
            + [0] * ext.total.rank
        inc_cols.append(exactlin.matvec(qint, vec))
    incl = Morphism(Ap, Q, sp.Matrix(inc_cols).T)
    lift = section  # quotient coords -> Ap + H coords
    proj = Morphism(Q, B, ext.projection.matrix * lift[Ap.rank:, :])
    return Extension(Ap, Q, B, incl, proj).validate()


# -- generalized Baer difference ----------------------------------------------


@dataclass
class CrossDiagram:
    """A cross of two exact sequences through a shared middle term.

    vertical:   0 -> top -> mid1 -> bottom -> 0  (sub ``top``, total
    ``mid1``, quotient ``bottom``), horizontal: 0 -> mid1 -> mid2 ->
    right -> 0.
    """
    vertical: Extension
    horizontal: Extension

    def validate(self):
        self.vertical.validate()
        self.horizontal.validate()
        if not self.vertical.total.equals(self.horizontal.sub):
            raise ValueError("vertical total must equal horizontal sub")
        return self


def generalized_baer_difference(d1, d2):
    """Combine two cross diagrams sharing top, bottom and right terms.

    Returns (mid, ext) where ``mid`` is the quotient H2/D2 built from
    the kernel of the difference of the horizontal projections, and
    ``ext`` is the induced extension 0 -> bottom -> F -> right -> 0.
    """
    top = d1.vertical.sub
    bottom = d1.vertical.quotient
    right = d1.horizontal.quotient
    if not (top.equals(d2.vertical.sub)
            and bottom.equals(d2.vertical.quotient)
            and right.equals(d2.horizontal.quotient)):
        raise ValueError("diagrams do not share their outer terms")

    B2a, B2b = d1.horizontal.total, d2.horizontal.total
    f1, f2 = d1.horizontal.inclusion.int_matrix(), \
        d2.horizontal.inclusion.int_matrix()
    i1, i2 = d1.vertical.inclusion.int_matrix(), \
        d2.vertical.inclusion.int_matrix()
    pi1 = d1.vertical.projection.int_matrix()
    pi2 = d2.vertical.projection.int_matrix()

    Hs, _, _ = direct_sum(B2a, B2b)
    psi = sp.Matrix.hstack(d1.horizontal.projection.matrix,
                           -d2.horizontal.projection.matrix)
    K = exactlin.kernel_basis(la.to_int_matrix(psi))
    H2, Kinc = sub_mhs(Hs, K)
    Kint = la.to_int_matrix(Kinc.matrix)

    # D2 = image of top under a -> (f1 i1 a, f2 i2 a)
    D2 = []
    for j in range(top.rank):
        ea = [1 if t == j else 0 for t in range(top.rank)]
        vec = exactlin.matvec(f1, exactlin.matvec(i1, ea)) \
            + exactlin.matvec(f2, exactlin.matvec(i2, ea))
        D2.append(_coords_in(Kint, vec))
    mid, qmor, qsec = quotient_mhs(H2, D2)
    qint = la.to_int_matrix(qmor.matrix)

    # sublattice to kill: images of (f1 b1, f2 b2) with pi1 b1 = pi2 b2
    anti = exactlin.kernel_basis(
        [r1 + [-x for x in r2] for r1, r2 in zip(pi1, pi2)])
    gens = []
    for col in anti:
        b1, b2 = col[: len(pi1[0])], col[len(pi1[0]):]
        vec = exactlin.matvec(f1, b1) + exactlin.matvec(f2, b2)
        gens.append(exactlin.matvec(qint, _coords_in(Kint, vec)))
    sub1 = exactlin.saturation_basis(
        [[g[i] for g in gens] for i in range(mid.rank)])
    Fq, fq_mor, fq_sec = quotient_mhs(mid, sub1)
    fq_int = la.to_int_matrix(fq_mor.matrix)

    # bottom -> F: c -> class of (f1 b1, 0) with pi1 b1 = c
    inc_cols = []
    for j in range(bottom.rank):
        ec = [1 if t == j else 0 for t in range(bottom.rank)]
        b1 = _solve_int(pi1, ec)
        vec = exactlin.matvec(f1, b1) + [0] * B2b.rank
        inc_cols.append(exactlin.matvec(
            fq_int, exactlin.matvec(qint, _coords_in(Kint, vec))))
    incl = Morphism(bottom, Fq, sp.Matrix(inc_cols).T)

    # F -> right, induced by the first horizontal projection
    lift = Kinc.matrix * qsec * fq_sec    # F coords -> B2a+B2b coords
    proj = Morphism(Fq, right,
                    d1.horizontal.projection.matrix * lift[: B2a.rank, :])
    ext = Extension(bottom, Fq, right, incl, proj).validate()
    return mid, ext
