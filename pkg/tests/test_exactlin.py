"""Integer linear algebra kernel: exact invariants on small matrices."""

from fractions import Fraction

import numpy as np

from regulab import exactlin as ex


def test_smith_transforms_reconstruct():
    A = [[2, 4, 4], [-6, 6, 12], [10, 4, 16]]
    U, D, V = ex.smith_with_transforms(ex.copy(A))
    # U A V = D with U, V unimodular
    UAV = ex.matmul(ex.matmul(U, A), V)
    assert UAV == D
    for M in (U, V):
        det = np.linalg.det(np.array(M, dtype=float))
        assert abs(abs(det) - 1.0) < 1e-9
    d = [D[i][i] for i in range(3)]
    for a, b in zip(d, d[1:]):
        if b != 0:
            assert b % max(a, 1) == 0


def test_invariant_factors_known():
    assert ex.invariant_factors([[2, 0], [0, 3]]) == [1, 6]


def test_solve_integer():
    A = [[1, 2], [3, 5]]
    v = [7, 18]
    x = ex.solve_integer(A, v)
    assert [sum(A[i][j] * x[j] for j in range(2)) for i in range(2)] == v
    assert ex.solve_integer([[2, 0], [0, 2]], [1, 0]) is None


def test_lattice_membership():
    A = [[2, 1], [0, 3]]
    assert ex.in_lattice(A, [2, 0])
    assert not ex.in_lattice(A, [1, 0])


def test_kernel_basis():
    A = [[1, 2, 3]]
    K = ex.kernel_basis(A)
    assert len(K) == 2
    for k in K:
        assert sum(a * b for a, b in zip(A[0], k)) == 0


def test_symplectic_basis_standard():
    E = [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 2], [0, 0, -2, 0]]
    M, div = ex.symplectic_basis(E)
    # transformed pairing is block-diagonal with the stated divisors
    n = len(E)
    ME = [[sum(M[i][p] * E[p][q] * M[j][q] for p in range(n)
               for q in range(n)) for j in range(n)] for i in range(n)]
    for k, d in enumerate(div):
        if d:
            assert ME[2 * k][2 * k + 1] == d
            assert ME[2 * k + 1][2 * k] == -d
    assert sorted(div) == [1, 2]


def test_integer_retraction_roundtrip():
    iota = [[1, 0], [0, 2], [3, 1]]
    r = ex.integer_retraction(iota)
    # r iota = identity on the source
    comp = ex.matmul(r, iota)
    assert comp == ex.eye(2)
