"""Exact-arithmetic kernel for mixed Hodge structures.

A mixed Hodge structure is stored as a finite free Z-lattice together
with an increasing weight filtration defined over Q and a decreasing
Hodge filtration defined over Q(i) (or, more generally, exact sympy
numbers).  The module provides:

* validation of structures, morphisms and extensions (exactness on
  lattices, strictness of the induced filtrations, separatedness);
* the invariant attached to a separated extension: an integral
  retraction composed with a filtered section, read as a point of the
  generalized intermediate Jacobian ``Hom(B, A)_C / (F^0 + Hom_Z)``;
* Baer sums and differences, pullbacks and pushforwards, and the
  generalized Baer difference of two cross-shaped diagrams sharing
  their outer terms;
* deterministic random generators with known invariants, used as test
  oracles, plus JSON (de)serialization.

All arithmetic is exact.  Comparison of invariants falls back to a
floating-point test (tolerance 1e-10) only when an entry is not an
exact sympy number.
"""

from .structures import (MixedHodgeStructure, Morphism, Extension,
                         hom_mhs, direct_sum, sub_mhs, quotient_mhs)
from .operations import (carlson_invariant, CarlsonInvariant, baer_sum,
                         baer_difference, pullback, pushforward,
                         CrossDiagram, generalized_baer_difference)
from .operations import scalar_multiple
from .examples import (tate, elliptic_like, twist, kummer_extension,
                       split_extension, build_extension, random_mhs,
                       random_extension, random_unimodular)
from .serialize import mhs_to_dict, mhs_from_dict, extension_to_dict, \
    extension_from_dict

__all__ = [
    "MixedHodgeStructure", "Morphism", "Extension", "hom_mhs",
    "direct_sum", "sub_mhs", "quotient_mhs", "carlson_invariant",
    "CarlsonInvariant", "baer_sum", "baer_difference", "pullback",
    "pushforward", "CrossDiagram", "generalized_baer_difference",
    "scalar_multiple", "tate", "elliptic_like", "twist",
    "kummer_extension", "split_extension", "build_extension",
    "random_mhs", "random_extension", "random_unimodular", "mhs_to_dict",
    "mhs_from_dict", "extension_to_dict", "extension_from_dict",
]
