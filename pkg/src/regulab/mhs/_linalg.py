"""Small exact linear-algebra helpers on sympy matrices.

Subspaces are represented by matrices whose columns form a spanning set
(not necessarily independent); most helpers return column bases.

All hot paths go through ``DomainMatrix`` so that arithmetic happens in
the Gaussian-rational field instead of the generic symbolic engine;
matrices of mixed Hodge data are always exact, so this is lossless.
"""

import sympy as sp
from sympy.polys.matrices import DomainMatrix


def zero_cols(n):
    """An n x 0 matrix: the zero subspace of an n-dimensional space."""
    return sp.Matrix(n, 0, [])


class _Inexact(Exception):
    pass


def _dm(M):
    dm = DomainMatrix.from_Matrix(M, extension=True)
    if not dm.domain.is_Exact:
        raise _Inexact
    if dm.domain in (sp.ZZ, sp.QQ):
        return dm.convert_to(sp.QQ)
    return dm.convert_to(sp.QQ_I)


def rref(M):
    """(row-reduced matrix, pivot column indices).

    Exact field arithmetic when all entries are exact; otherwise the
    generic symbolic path (floats included) is used.
    """
    try:
        rr, piv = _dm(M).rref()
        return rr.to_Matrix(), list(piv)
    except _Inexact:
        rr, piv = M.evalf().rref(iszerofunc=lambda x: abs(x) < 1e-12)
        return rr, list(piv)


def rank_of(M):
    if M.rows == 0 or M.cols == 0:
        return 0
    try:
        return _dm(M).rank()
    except _Inexact:
        return len(rref(M)[1])


def col_basis(A):
    """Matrix whose columns are a basis of the column space of A."""
    if A.cols == 0 or A.rows == 0:
        return zero_cols(A.rows)
    _, piv = rref(A)
    if not piv:
        return zero_cols(A.rows)
    return A[:, list(piv)]


def hstack(*mats):
    mats = [m for m in mats if m.cols > 0]
    if not mats:
        raise ValueError("need at least one nonempty matrix")
    return sp.Matrix.hstack(*mats)


def span_dim(A):
    return rank_of(A)


def span_contains(A, v):
    """Is the column vector v in the column span of A?"""
    if A.cols == 0:
        return v.is_zero_matrix
    return rank_of(sp.Matrix.hstack(A, v)) == rank_of(A)


def span_subset(A, B):
    """Is col(A) a subspace of col(B)?"""
    if A.cols == 0:
        return True
    if B.cols == 0:
        return A.is_zero_matrix
    return rank_of(sp.Matrix.hstack(A, B)) == rank_of(B)


def span_equal(A, B):
    return span_subset(A, B) and span_subset(B, A)


def nullspace_cols(M):
    """Matrix whose columns are a basis of the kernel of M."""
    if M.cols == 0:
        return zero_cols(0)
    if M.rows == 0:
        return sp.eye(M.cols)
    try:
        ns = _dm(M).nullspace()
        out = ns.to_Matrix().T
    except _Inexact:
        vecs = M.nullspace(iszerofunc=lambda x: abs(x) < 1e-12)
        out = sp.Matrix.hstack(*vecs) if vecs else zero_cols(M.cols)
    if out.cols == 0:
        return zero_cols(M.cols)
    return out


def left_annihilator(A):
    """Matrix L (possibly 0 x n) of maximal rank with L A = 0."""
    ker = nullspace_cols(A.T)
    return ker.T


def intersect(A, B):
    """Column basis of col(A) & col(B)."""
    if A.cols == 0 or B.cols == 0:
        return zero_cols(A.rows)
    null = nullspace_cols(sp.Matrix.hstack(A, -B))
    if null.cols == 0:
        return zero_cols(A.rows)
    return col_basis(A * null[: A.cols, :])


def image(M, A):
    """Column basis of M(col(A))."""
    if A.cols == 0:
        return zero_cols(M.rows)
    return col_basis(M * A)


def preimage(M, A):
    """Column basis of the preimage M^{-1}(col(A)) in the source."""
    L = left_annihilator(A) if A.cols else sp.eye(M.rows)
    if L.rows == 0:
        return sp.eye(M.cols)
    return nullspace_cols(L * M)


def solve_matrix(A, B):
    """Exact X with A X = B (any solution), or None if inconsistent."""
    if A.cols == 0:
        return sp.Matrix(0, B.cols, []) if B.is_zero_matrix else None
    rr, piv = rref(sp.Matrix.hstack(A, B))
    X = sp.zeros(A.cols, B.cols)
    for r, c in enumerate(piv):
        if c >= A.cols:
            return None
        X[c, :] = rr[r, A.cols:]
    return X


def solve_in_span(A, v):
    """Coefficients c with A c = v, or None (exact, over the field)."""
    X = solve_matrix(A, v)
    return X


def to_int_matrix(M):
    """sympy matrix with integer entries -> list-of-lists of python ints."""
    out = []
    for i in range(M.rows):
        row = []
        for j in range(M.cols):
            x = sp.nsimplify(M[i, j])
            if not x.is_integer:
                raise ValueError("entry %s is not an integer" % (M[i, j],))
            row.append(int(x))
        out.append(row)
    return out


def from_int_matrix(A, rows=None, cols=None):
    if not A:
        return sp.Matrix(rows or 0, cols or 0, [])
    return sp.Matrix(A)


def is_exact(M):
    """True when every entry is an exact (Float-free) sympy number."""
    return not M.has(sp.Float)
