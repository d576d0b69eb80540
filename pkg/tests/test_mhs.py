"""Exact-arithmetic tests for the mixed Hodge structure kernel."""

import json
import os
import random

import pytest
import sympy as sp

import regulab.mhs as M
from regulab.mhs.operations import CrossDiagram, generalized_baer_difference
from regulab.mhs.examples import random_gaussian_rational
from regulab.mhs.structures import Morphism

DATA = os.path.join(os.path.dirname(__file__), "data")


from regulab.mhs.selftest import invariant_equals, run_randomized_suite


def test_tate_structures_validate():
    for n in (-2, -1, 0, 1, 3):
        m = M.tate(n)
        assert m.rank == 1
        assert m.weight_jumps() == [-2 * n]
        assert m.hodge_jumps() == [-n]


def test_elliptic_like_requires_nonreal_period():
    M.elliptic_like(sp.I)
    M.elliptic_like(sp.Rational(1, 2) + 2 * sp.I)
    with pytest.raises(ValueError):
        M.elliptic_like(sp.Rational(3, 4))


def test_impure_structure_rejected():
    # rank-1, weight 3, F jumps only at p=1: no (p, q) with p+q=3
    with pytest.raises(ValueError):
        M.structures.make_mhs(1, [(3, sp.eye(1))], [(1, sp.eye(1))])


def test_kummer_invariant_is_lambda_mod_integers():
    lam = sp.Rational(2, 7) + sp.Rational(1, 3) * sp.I
    e = M.kummer_extension(lam)
    e.validate()
    assert e.is_separated()
    assert invariant_equals(e, [[lam]])
    assert invariant_equals(e, [[lam + 5]])
    assert not invariant_equals(e, [[lam + sp.Rational(1, 2)]])
    assert not invariant_equals(e, [[lam + sp.I]])


def test_kummer_invariant_numeric_entries():
    # an inexact invariant exercises the floating-point comparison path
    lam = sp.Float(0.137) + sp.Float(0.52) * sp.I
    e = M.kummer_extension(lam)
    assert invariant_equals(e, [[lam + 2]])
    assert not invariant_equals(e, [[lam + sp.Rational(1, 2)]])


def test_split_extension_has_zero_invariant():
    A = M.tate(1)
    B = M.tate(0)
    e = M.split_extension(A, B)
    assert invariant_equals(e, [[0]])


def test_torsion_multiples():
    e = M.build_extension(M.tate(1), M.tate(0),
                          sp.Matrix([[sp.Rational(1, 3)]]))
    assert not invariant_equals(e, [[0]])
    assert not invariant_equals(M.scalar_multiple(e, 2), [[0]])
    assert invariant_equals(M.scalar_multiple(e, 3), [[0]])


def test_validation_rejects_broken_exactness():
    e = M.kummer_extension(sp.Rational(1, 5))
    bad = M.Extension(e.sub, e.total, e.quotient,
                      Morphism(e.sub, e.total, 2 * e.inclusion.matrix),
                      e.projection)
    with pytest.raises(ValueError):
        bad.validate()


def test_serialization_round_trip():
    rng = random.Random(20260827)
    ext, eps = M.random_extension(rng)
    d = M.extension_to_dict(ext)
    blob = json.dumps(d)
    back = M.extension_from_dict(json.loads(blob))
    assert back.sub.equals(ext.sub)
    assert back.total.equals(ext.total)
    assert back.quotient.equals(ext.quotient)
    inv1, inv2 = M.carlson_invariant(ext), M.carlson_invariant(back)
    assert inv1.same_class(M.CarlsonInvariant(inv1.hom,
                                              inv2.representative, inv1.f0))


def test_serialization_golden_file():
    with open(os.path.join(DATA, "extension_golden.json")) as fh:
        d = json.load(fh)
    ext = M.extension_from_dict(d)
    inv = M.carlson_invariant(ext)
    rep = sp.Matrix([[sp.sympify(x) for x in row] for row in d["invariant"]])
    assert inv.same_class(M.CarlsonInvariant(inv.hom, rep, inv.f0))


# -- the randomized suite (lives in regulab.mhs.selftest) -----------------


def test_randomized_suite_small():
    assert run_randomized_suite(trials=40) == 40


def test_generalized_baer_difference_matches_pushforwards():
    rng = random.Random(5)
    for _ in range(4):
        A1 = M.random_mhs(rng, max_rank=1, weights=(-4,))
        C1 = M.random_mhs(rng, max_rank=1, weights=(-2,))
        B3 = M.random_mhs(rng, max_rank=rng.randint(1, 2), weights=(0,))
        diags = []
        for _j in range(2):
            vert, _ = M.random_extension(rng, A1, C1, conjugate=False)
            horiz, _ = M.random_extension(rng, vert.total, B3,
                                          conjugate=False)
            diags.append(CrossDiagram(vert, horiz).validate())
        mid, ext = generalized_baer_difference(diags[0], diags[1])
        ext.validate()
        p1 = M.pushforward(diags[0].horizontal, diags[0].vertical.projection)
        p2 = M.pushforward(diags[1].horizontal, diags[1].vertical.projection)
        d12 = M.baer_difference(p1, p2)
        assert invariant_equals(ext, M.carlson_invariant(d12).representative)


def test_generalized_baer_difference_torsion():
    # when the two diagrams have equal pushforward classes the output
    # extension is trivial in Ext
    rng = random.Random(9)
    A1, C1, B3 = M.tate(2), M.tate(1), M.tate(0)
    vert, _ = M.random_extension(rng, A1, C1, conjugate=False)
    horiz, _ = M.random_extension(rng, vert.total, B3, conjugate=False)
    d = CrossDiagram(vert, horiz).validate()
    _, ext = generalized_baer_difference(d, d)
    assert invariant_equals(ext, sp.zeros(C1.rank, B3.rank))
