"""Exact integer linear algebra: Smith/Hermite transforms, lattice
membership, integer retractions and symplectic reduction of skew forms.

Everything here works on plain Python ints (lists of lists), deliberately
independent of the floating-point stack.  Matrices are small (lattice
ranks of a handful), so simple O(n^3)-with-Euclid algorithms are fine.
"""

from __future__ import annotations


def eye(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(m, n):
    return [[0] * n for _ in range(m)]


def matmul(A, B):
    m, k = len(A), len(B)
    n = len(B[0]) if B else 0
    C = zeros(m, n)
    for i in range(m):
        Ai = A[i]
        for t in range(k):
            a = Ai[t]
            if a:
                Bt = B[t]
                Ci = C[i]
                for j in range(n):
                    Ci[j] += a * Bt[j]
    return C


def matvec(A, v):
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def transpose(A):
    return [list(col) for col in zip(*A)] if A else []


def copy(A):
    return [row[:] for row in A]


def smith_with_transforms(A):
    """Smith normal form with transforms: returns (U, S, V) with U A V = S.

    U and V are unimodular; S is diagonal (rectangular) with each
    diagonal entry dividing the next.
    """
    S = copy(A)
    m = len(S)
    n = len(S[0]) if m else 0
    U = eye(m)
    V = eye(n)

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):
        # row dst += q * row src
        S[dst] = [a + q * b for a, b in zip(S[dst], S[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, q):
        for row in S:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    k = 0
    while k < min(m, n):
        # find smallest nonzero entry in the trailing block
        best = None
        for i in range(k, m):
            for j in range(k, n):
                if S[i][j] != 0 and (best is None or abs(S[i][j]) < abs(S[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(k, best[0])
        swap_cols(k, best[1])
        # clear row and column k by Euclid
        while True:
            dirty = False
            for i in range(k + 1, m):
                if S[i][k] != 0:
                    q = S[i][k] // S[k][k]
                    add_row(k, i, -q)
                    if S[i][k] != 0:
                        swap_rows(k, i)
                        dirty = True
            for j in range(k + 1, n):
                if S[k][j] != 0:
                    q = S[k][j] // S[k][k]
                    add_col(k, j, -q)
                    if S[k][j] != 0:
                        swap_cols(k, j)
                        dirty = True
            if not dirty:
                break
        # enforce divisibility of the remaining block by S[k][k]
        pivot = S[k][k]
        offender = None
        for i in range(k + 1, m):
            for j in range(k + 1, n):
                if S[i][j] % pivot != 0:
                    offender = (i, j)
                    break
            if offender:
                break
        if offender is not None:
            add_row(offender[0], k, 1)
            continue
        if S[k][k] < 0:
            S[k] = [-a for a in S[k]]
            U[k] = [-a for a in U[k]]
        k += 1
    return U, S, V


def invariant_factors(A):
    _, S, _ = smith_with_transforms(A)
    return [S[i][i] for i in range(min(len(S), len(S[0]) if S else 0)) if S[i][i] != 0]


def solve_integer(A, v):
    """One integer solution c of A c = v, or None if none exists."""
    U, S, V = smith_with_transforms(A)
    w = matvec(U, v)
    n = len(A[0]) if A else 0
    d = [0] * n
    r = min(len(S), n)
    for i in range(r):
        s = S[i][i]
        if s == 0:
            if w[i] != 0:
                return None
        else:
            if w[i] % s != 0:
                return None
            d[i] = w[i] // s
    for i in range(r, len(w)):
        if w[i] != 0:
            return None
    return matvec(V, d)


def hnf_columns(A):
    """Column echelon form over Z (Hermite-style) spanning the same
    column lattice as A.  Returns a list of columns whose topmost
    nonzero entries sit in strictly increasing rows.

    Unlike Smith reduction this keeps intermediate entries tame, so it
    is safe on matrices with large entries.
    """
    m = len(A)
    cols = [list(c) for c in zip(*A)] if A and A[0] else []
    cols = [c for c in cols if any(c)]
    out = []
    r = 0
    while cols and r < m:
        active = [c for c in cols if c[r] != 0]
        rest = [c for c in cols if c[r] == 0]
        if not active:
            cols = rest
            r += 1
            continue
        while len(active) > 1:
            active.sort(key=lambda c: abs(c[r]))
            p = active[0]
            reduced = [p]
            for c in active[1:]:
                q = c[r] // p[r]
                c = [a - q * b for a, b in zip(c, p)]
                if c[r] != 0:
                    reduced.append(c)
                elif any(c):
                    rest.append(c)
            active = reduced
        piv = active[0]
        if piv[r] < 0:
            piv = [-x for x in piv]
        out.append(piv)
        cols = rest
        r += 1
    return out


def in_lattice(A, v):
    """Is v in the Z-span of the columns of A?  (Boolean; use
    solve_integer when the coefficients themselves are needed.)"""
    ech = hnf_columns(A)
    w = list(v)
    for col in ech:
        r = next(i for i, x in enumerate(col) if x != 0)
        if w[r] % col[r] != 0:
            return False
        q = w[r] // col[r]
        if q:
            w = [a - q * b for a, b in zip(w, col)]
    return not any(w)


def kernel_basis(A):
    """Basis (list of columns) of the saturated integer kernel of A."""
    _, S, V = smith_with_transforms(A)
    n = len(A[0]) if A else 0
    r = 0
    for i in range(min(len(S), n)):
        if S[i][i] != 0:
            r += 1
    cols = []
    Vt = transpose(V)
    for j in range(r, n):
        cols.append(Vt[j])
    return cols


def saturation_basis(G):
    """Basis (list of columns) of the saturation of the column span of G,
    i.e. (Q-span of the columns) intersected with Z^n."""
    n = len(G)
    if not G or not G[0]:
        return []
    rows = kernel_basis(transpose(G))      # integer functionals killing G
    if not rows:
        return [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    return kernel_basis([list(r) for r in rows])


def integer_retraction(iota):
    """Integer left inverse r of an injective primitive integer matrix.

    iota is m x a with image a direct summand of Z^m; returns the a x m
    matrix r with r @ iota = identity.  Raises ValueError if the image is
    not primitive (some invariant factor != 1).
    """
    U, S, V = smith_with_transforms(iota)
    m = len(iota)
    a = len(iota[0]) if iota else 0
    for i in range(a):
        if i >= len(S) or S[i][i] != 1:
            raise ValueError("inclusion is not primitive: invariant factors %s"
                             % invariant_factors(iota))
    # iota = U^-1 S V^-1, so r = V S^+ U satisfies r iota = I.
    Splus = zeros(a, m)
    for i in range(a):
        Splus[i][i] = 1
    return matmul(V, matmul(Splus, U))


def complete_to_basis(D, n):
    """Unimodular n x n matrix whose first columns span the same lattice
    as the columns of D (which must be primitive of full column rank)."""
    U, S, _ = smith_with_transforms(D)
    k = len(D[0]) if D else 0
    for i in range(k):
        if S[i][i] != 1:
            raise ValueError("sublattice is not primitive")
    # columns of U^-1 give a basis of Z^n whose first k columns span im D.
    Uinv = inverse_unimodular(U)
    return Uinv


def inverse_unimodular(U):
    """Exact inverse of a unimodular integer matrix."""
    n = len(U)
    A = [row[:] + eye(n)[i] for i, row in enumerate(U)]
    # integer Gauss-Jordan using +-1 pivots obtainable by Euclid
    from fractions import Fraction
    B = [[Fraction(x) for x in row] for row in A]
    for c in range(n):
        piv = next((r for r in range(c, n) if B[r][c] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        B[c], B[piv] = B[piv], B[c]
        pv = B[c][c]
        B[c] = [x / pv for x in B[c]]
        for r in range(n):
            if r != c and B[r][c] != 0:
                f = B[r][c]
                B[r] = [x - f * y for x, y in zip(B[r], B[c])]
    inv = [[x for x in row[n:]] for row in B]
    out = []
    for row in inv:
        orow = []
        for x in row:
            if x.denominator != 1:
                raise ValueError("matrix is not unimodular")
            orow.append(int(x))
        out.append(orow)
    return out


def symplectic_basis(E):
    """Integer congruence reduction of a skew-symmetric matrix.

    Returns (M, divisors) with M unimodular and

        M E M^T = blockdiag([[0, d1], [-d1, 0]], ..., 0-block)

    The rows of M express the new basis in terms of the old one.
    """
    n = len(E)
    B = copy(E)
    M = eye(n)

    def swap(i, j):
        B[i], B[j] = B[j], B[i]
        for row in B:
            row[i], row[j] = row[j], row[i]
        M[i], M[j] = M[j], M[i]

    def add(src, dst, q):
        # basis vector dst += q * src  (congruence: row and column)
        B[dst] = [a + q * b for a, b in zip(B[dst], B[src])]
        for row in B:
            row[dst] += q * row[src]
        M[dst] = [a + q * b for a, b in zip(M[dst], M[src])]

    divisors = []
    k = 0
    while k + 1 < n:
        best = None
        for i in range(k, n):
            for j in range(i + 1, n):
                if B[i][j] != 0 and (best is None or abs(B[i][j]) < abs(B[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        swap(k, i)
        if j == k:
            j = i
        swap(k + 1, j)
        if B[k][k + 1] < 0:
            swap(k, k + 1)
        # clear the rest of rows/cols k, k+1 by Euclid on the pivot
        while True:
            dirty = False
            for r in range(k + 2, n):
                p = B[k][k + 1]
                if B[k][r] != 0:
                    q = B[k][r] // p
                    add(k + 1, r, -q)
                    if B[k][r] != 0:
                        # move the (smaller) remainder into pivot position
                        swap(k + 1, r)
                        if B[k][k + 1] < 0:
                            swap(k, k + 1)
                        dirty = True
                        break
            else:
                for r in range(k + 2, n):
                    p = B[k][k + 1]
                    if B[k + 1][r] != 0:
                        # add(k, r, q) shifts B[k+1][r] by q*B[k+1][k] = -q*p
                        q = B[k + 1][r] // p
                        add(k, r, q)
                        if B[k + 1][r] != 0:
                            swap(k, r)
                            if B[k][k + 1] < 0:
                                swap(k, k + 1)
                            dirty = True
                            break
            if not dirty:
                break
        divisors.append(B[k][k + 1])
        k += 2
    return M, divisors
