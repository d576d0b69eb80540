"""The two worked examples every pipeline stage runs on.

Both come with a degree-1 rational function of x whose divisor on the
curve is N(Q) - N(R) for totally ramified points Q, R, normalized so
the function takes the exact value 1 at the chosen base point.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .geometry import (FermatQuotientCurve, HyperellipticCurve,
                       MoebiusFunction, PlaneCurve)


@dataclass
class CurveExample:
    name: str
    curve: PlaneCurve
    func: MoebiusFunction
    base: tuple
    N: int
    Q: tuple
    R: tuple

    def divisor(self):
        """Expected divisor of func as ((x, y), multiplicity) pairs."""
        return [(self.Q, self.N), (self.R, -self.N)]


def genus2_example():
    """y^2 = x^5 - 1 with f = z5 (x - 1)/(x - z5), z5 = exp(2 pi i/5).

    div(f) = 2(Q) - 2(R) with Q = (1, 0), R = (z5, 0); f(base) = 1
    exactly at base = (0, i).  The class of Q - R is 2-torsion and
    nontrivial in the Jacobian.
    """
    z5 = np.exp(2j * np.pi / 5)
    return CurveExample(
        name="genus2",
        curve=HyperellipticCurve([1, 0, 0, 0, 0, -1]),
        func=MoebiusFunction(1.0, z5, z5),
        base=(0.0, 1j),
        N=2,
        Q=(1.0, 0.0),
        R=(z5, 0.0),
    )


def fermat3_example():
    """y^3 = 1 - x^3 with f = z3 (x - 1)/(x - z3), z3 = exp(2 pi i/3).

    div(f) = 3(Q) - 3(R) with Q = (1, 0), R = (z3, 0); f(base) = 1
    exactly at base = (0, 1).
    """
    z3 = np.exp(2j * np.pi / 3)
    return CurveExample(
        name="fermat3",
        curve=FermatQuotientCurve(3),
        func=MoebiusFunction(1.0, z3, z3),
        base=(0.0, 1.0),
        N=3,
        Q=(1.0, 0.0),
        R=(z3, 0.0),
    )


EXAMPLES = {
    "genus2": genus2_example,
    "fermat3": fermat3_example,
}
