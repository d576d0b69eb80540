"""Stock structures and seeded random generators with known invariants.

``random_extension`` builds a separated extension whose invariant is a
prescribed matrix ``eps``: the lattice is A + B with rationally split
weight filtration, the Hodge filtration of the total space is spanned
by F(A) together with the twisted section ``(eps; I) F(B)``, and the
whole picture is then conjugated by a random unimodular matrix.  The
invariant of the result is exactly ``eps`` modulo F^0 + Hom_Z, which
makes these extensions usable as oracles for every operation in this
package.
"""

from __future__ import annotations

import sympy as sp

from .. import exactlin
from . import _linalg as la
from .structures import (Extension, MixedHodgeStructure, Morphism, make_mhs)


def tate(n):
    """The rank-1 structure of weight -2n with F^{-n} everything."""
    one = sp.Matrix([[1]])
    return make_mhs(1, [(-2 * n, one)], [(-n, one)])


def elliptic_like(tau):
    """Rank-2 pure weight-1 structure with F^1 spanned by (1, tau)."""
    tau = sp.sympify(tau)
    if sp.im(tau) == 0:
        raise ValueError("tau must have nonzero imaginary part")
    full = sp.eye(2)
    f1 = sp.Matrix([[1], [tau]])
    return make_mhs(2, [(1, full)], [(1, f1), (0, full)])


def twist(m, n):
    """Tate twist: weights shift by -2n, the Hodge filtration by -n."""
    wsteps = [(k - 2 * n, B) for k, B in m.weight_steps]
    fsteps = [(p - n, B) for p, B in m.hodge_steps]
    return make_mhs(m.rank, wsteps, fsteps)


def direct_sum_of(pieces):
    from .structures import direct_sum
    m = pieces[0]
    for piece in pieces[1:]:
        m, _, _ = direct_sum(m, piece)
    return m


def conjugated(m, U):
    """The same structure in a new lattice basis: x -> U x."""
    Um = sp.Matrix(U)
    wsteps = [(k, Um * B) for k, B in m.weight_steps]
    fsteps = [(p, Um * B) for p, B in m.hodge_steps]
    return make_mhs(m.rank, wsteps, fsteps)


def random_unimodular(rng, n, steps=12, bound=2):
    """Random unimodular integer matrix via elementary operations."""
    U = exactlin.eye(n)
    for _ in range(steps):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        q = rng.randint(-bound, bound)
        for r in range(n):
            U[r][i] += q * U[r][j]
    return U


def random_gaussian_rational(rng, den=7, bound=5):
    re = sp.Rational(rng.randint(-bound, bound), rng.randint(1, den))
    im = sp.Rational(rng.randint(-bound, bound), rng.randint(1, den))
    return re + im * sp.I


def random_mhs(rng, max_rank=2, weights=(0,)):
    """Random pure-by-construction structure: a sum of Tate and
    elliptic-like pieces with the prescribed weights, conjugated by a
    random unimodular matrix."""
    pieces = []
    rank = 0
    even = [w for w in weights if w % 2 == 0]
    if not even and max_rank % 2 == 1:
        raise ValueError("odd rank needs at least one even weight")
    while rank < max_rank:
        w = weights[rng.randrange(len(weights))]
        if w % 2 == 1 and rank + 2 <= max_rank:
            tau = random_gaussian_rational(rng)
            while sp.im(tau) == 0:
                tau = random_gaussian_rational(rng)
            piece = conjugated(elliptic_like(tau),
                               sp.Matrix(random_unimodular(rng, 2, steps=6)))
            if w != 1:
                piece = twist(piece, (1 - w) // 2)
            pieces.append(piece)
            rank += 2
        else:
            if w % 2 == 1:
                if not even:
                    continue
                w = even[rng.randrange(len(even))]
            pieces.append(tate(-w // 2))
            rank += 1
    m = direct_sum_of(pieces)
    return conjugated(m, sp.Matrix(random_unimodular(rng, m.rank)))


def split_extension(A, B):
    """The extension with zero invariant: the direct sum."""
    a, b = A.rank, B.rank
    return build_extension(A, B, sp.zeros(a, b))


def build_extension(A, B, eps, U=None):
    """Separated extension of B by A with invariant ``eps`` (a x b).

    ``U`` optionally conjugates the total lattice; it does not change
    the invariant.
    """
    a, b = A.rank, B.rank
    eps = sp.Matrix(eps)
    n = a + b
    if not A.highest_weight() < B.lowest_weight():
        raise ValueError("extension would not be separated")
    iota = sp.Matrix.vstack(sp.eye(a), sp.zeros(b, a))
    pi = sp.Matrix.hstack(sp.zeros(b, a), sp.eye(b))
    s_eps = sp.Matrix.vstack(eps, sp.eye(b))
    s_0 = sp.Matrix.vstack(sp.zeros(a, b), sp.eye(b))
    jumps = sorted(set(A.weight_jumps()) | set(B.weight_jumps()))
    wsteps = []
    for k in jumps:
        cols = [iota * A.weight_filtration(k), s_0 * B.weight_filtration(k)]
        cols = [c for c in cols if c.cols]
        if cols:
            wsteps.append((k, la.hstack(*cols)))
    pj = sorted(set(A.hodge_jumps()) | set(B.hodge_jumps()), reverse=True)
    fsteps = []
    for p in pj:
        cols = [iota * A.hodge_filtration(p), s_eps * B.hodge_filtration(p)]
        cols = [c for c in cols if c.cols]
        if cols:
            fsteps.append((p, la.hstack(*cols)))
    if U is not None:
        Um = sp.Matrix(U)
        wsteps = [(k, Um * Bm) for k, Bm in wsteps]
        fsteps = [(p, Um * Bm) for p, Bm in fsteps]
        iota = Um * iota
        pi = pi * Um.inv()
    H = make_mhs(n, wsteps, fsteps)
    ext = Extension(A, H, B, Morphism(A, H, iota), Morphism(H, B, pi))
    return ext.validate()


def random_extension(rng, A=None, B=None, conjugate=True):
    """Random separated extension with a known invariant.

    Returns (extension, eps) where eps is the invariant's preferred
    representative in lattice coordinates.
    """
    if A is None:
        A = random_mhs(rng, max_rank=rng.randint(1, 2), weights=(-2,))
    if B is None:
        B = random_mhs(rng, max_rank=rng.randint(1, 2), weights=(0, 1))
    eps = sp.Matrix(A.rank, B.rank,
                    lambda i, j: random_gaussian_rational(rng))
    U = random_unimodular(rng, A.rank + B.rank) if conjugate else None
    return build_extension(A, B, eps, U), eps


def kummer_extension(lam):
    """Rank-2 extension of Z(0) by Z(1) with invariant ``lam`` mod Z.

    For the classical logarithmic class of a number z, take
    lam = log(z) / (2 pi i); the invariant then matches log(z) modulo
    the lattice 2 pi i Z after clearing the comparison factor.
    """
    return build_extension(tate(1), tate(0), sp.Matrix([[sp.sympify(lam)]]))
