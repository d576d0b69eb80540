"""Randomized exact-arithmetic self-test of the extension kernel.

Every operation (extension construction, Baer sum and difference,
pullback, pushforward) is exercised against the class invariant it is
supposed to transform; all arithmetic is exact, so any failure is a
logic bug, not a tolerance issue.
"""

from __future__ import annotations

import random

import sympy as sp

import regulab.mhs as M
from regulab.mhs.structures import Morphism


def invariant_equals(ext, rep):
    inv = M.carlson_invariant(ext)
    return inv.same_class(M.CarlsonInvariant(inv.hom, sp.Matrix(rep),
                                             inv.f0))


def _random_pair(rng, A=None, B=None):
    if A is None:
        A = M.random_mhs(rng, max_rank=rng.randint(1, 2), weights=(-2, -1))
    if B is None:
        B = M.random_mhs(rng, max_rank=rng.randint(1, 2), weights=(0, 1))
    return A, B


def run_randomized_suite(trials=200, seed=20260827, log=None):
    """Randomized exercises of every kernel operation against known
    invariants.  Returns the number of successful checks."""
    rng = random.Random(seed)
    checks = 0
    for t in range(trials):
        kind = t % 5
        if kind == 0:
            A, B = _random_pair(rng)
            ext, eps = M.random_extension(rng, A, B)
            ext.validate()
            assert ext.is_separated()
            assert invariant_equals(ext, eps)
            # perturbing by a non-integral rational must change the class
            bump = eps.copy()
            bump[0, 0] += sp.Rational(1, 2)
            assert not invariant_equals(ext, bump)
            checks += 1
        elif kind == 1:
            A, B = _random_pair(rng)
            e1, eps1 = M.random_extension(rng, A, B)
            e2, eps2 = M.random_extension(rng, A, B)
            assert invariant_equals(M.baer_difference(e1, e2), eps1 - eps2)
            checks += 1
        elif kind == 2:
            A, B = _random_pair(rng)
            e1, eps1 = M.random_extension(rng, A, B)
            e2, eps2 = M.random_extension(rng, A, B)
            assert invariant_equals(M.baer_sum(e1, e2), eps1 + eps2)
            checks += 1
        elif kind == 3:
            A, _ = _random_pair(rng, B=M.tate(0))
            B = M.random_mhs(rng, max_rank=rng.randint(1, 2), weights=(0,))
            ext, eps = M.random_extension(rng, A, B)
            Bp = M.random_mhs(rng, max_rank=1, weights=(0,))
            mm = sp.Matrix([[rng.randint(-2, 2)] for _ in range(B.rank)])
            pb = M.pullback(ext, Morphism(Bp, B, mm).validate())
            assert invariant_equals(pb, eps * mm)
            checks += 1
        else:
            A = M.random_mhs(rng, max_rank=rng.randint(1, 2), weights=(-2,))
            ext, eps = M.random_extension(rng, A, M.tate(0))
            Ap = M.random_mhs(rng, max_rank=1, weights=(-2,))
            nn = sp.Matrix([[rng.randint(-2, 2) for _ in range(A.rank)]])
            pf = M.pushforward(ext, Morphism(A, Ap, nn).validate())
            assert invariant_equals(pf, nn * eps)
            checks += 1
        if log and t % 50 == 49:
            log("  randomized suite: %d/%d" % (t + 1, trials))
    return checks
