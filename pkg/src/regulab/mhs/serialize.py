"""JSON-friendly (de)serialization for structures and extensions.

Scalars are stored as strings produced by ``str`` on exact sympy
numbers (e.g. ``"3/7 + 2*I"``); parsing goes through ``sympy.sympify``
so the round trip is exact.
"""

import sympy as sp

from .operations import carlson_invariant, hodge_section
from .structures import Extension, MixedHodgeStructure, Morphism, make_mhs
from .. import exactlin
from . import _linalg as la


def _matrix_to_lists(M):
    return [[str(M[i, j]) for j in range(M.cols)] for i in range(M.rows)]


def _matrix_from_lists(rows, nrows=None, ncols=None):
    if not rows or not rows[0]:
        return sp.Matrix(nrows or 0, ncols or 0, [])
    return sp.Matrix([[sp.sympify(x) for x in row] for row in rows])


def mhs_to_dict(m):
    return {
        "rank": m.rank,
        "weights": [[k, _matrix_to_lists(B)] for k, B in m.weight_steps],
        "hodge": [[p, _matrix_to_lists(B)] for p, B in m.hodge_steps],
    }


def mhs_from_dict(d):
    rank = d["rank"]
    wsteps = [(k, _matrix_from_lists(rows, rank, 0))
              for k, rows in d["weights"]]
    fsteps = [(p, _matrix_from_lists(rows, rank, 0))
              for p, rows in d["hodge"]]
    return make_mhs(rank, wsteps, fsteps)


def extension_to_dict(ext, include_derived=True):
    d = {
        "sub": mhs_to_dict(ext.sub),
        "total": mhs_to_dict(ext.total),
        "quotient": mhs_to_dict(ext.quotient),
        "inclusion": ext.inclusion.int_matrix(),
        "projection": ext.projection.int_matrix(),
    }
    if include_derived:
        d["retraction"] = exactlin.integer_retraction(
            ext.inclusion.int_matrix())
        d["section"] = _matrix_to_lists(hodge_section(ext))
        d["invariant"] = _matrix_to_lists(
            carlson_invariant(ext).representative)
    return d


def extension_from_dict(d):
    sub = mhs_from_dict(d["sub"])
    total = mhs_from_dict(d["total"])
    quotient = mhs_from_dict(d["quotient"])
    incl = Morphism(sub, total, sp.Matrix(d["inclusion"]))
    proj = Morphism(total, quotient, sp.Matrix(d["projection"]))
    return Extension(sub, total, quotient, incl, proj).validate()
