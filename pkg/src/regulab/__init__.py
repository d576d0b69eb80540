"""regulab: a desk-scale laboratory for regulators of cycles on Jacobians.

The package has two halves that meet in the comparison stage:

* an exact-arithmetic kernel for finite-rank mixed Hodge structures,
  their extensions, Baer sums and the generalised Baer difference
  (:mod:`regulab.mhs`);

* a numerical Riemann-surface stack (curves, sheet-tracked paths,
  period frames, Chen iterated integrals, level-set tracing) that
  evaluates both sides of the main identity between the loop-integral
  extension representative and the surface-integral regulator on
  explicit hyperelliptic and Fermat curves.
"""

__version__ = "0.1.0"
