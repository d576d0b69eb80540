"""Mixed Hodge structures over exact lattices.

A structure of rank n is the lattice Z^n with

* an increasing weight filtration ``W_k``, given over Q by column bases
  at its jump indices, with the top step equal to the whole space; and
* a decreasing Hodge filtration ``F^p``, given over sympy's exact
  complex numbers, with the lowest listed step equal to the whole
  space.

Validation checks nesting, and purity of each weight-graded piece
(``F`` and its conjugate must be opposed on ``gr^W_k``).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import sympy as sp

from .. import exactlin
from . import _linalg as la


@dataclass
class MixedHodgeStructure:
    rank: int
    # sorted list of (k, basis matrix) with strictly increasing k and dims
    weight_steps: list = field(default_factory=list)
    # sorted list of (p, basis matrix) with strictly decreasing p,
    # increasing dims; the last (lowest p) step spans everything
    hodge_steps: list = field(default_factory=list)

    # -- filtration lookups -------------------------------------------------

    def weight_filtration(self, k):
        """Column basis of W_k (rational)."""
        best = la.zero_cols(self.rank)
        for j, basis in self.weight_steps:
            if j <= k:
                best = basis
        return best

    def hodge_filtration(self, p):
        """Column basis of F^p (complex)."""
        for q, basis in reversed(self.hodge_steps):
            if q >= p:
                return basis
        return la.zero_cols(self.rank)

    def weight_jumps(self):
        return [k for k, _ in self.weight_steps]

    def hodge_jumps(self):
        return [p for p, _ in self.hodge_steps]

    def lowest_weight(self):
        return self.weight_steps[0][0]

    def highest_weight(self):
        return self.weight_steps[-1][0]

    # -- validation ----------------------------------------------------------

    def validate(self):
        if not self.weight_steps or not self.hodge_steps:
            raise ValueError("filtrations must be nonempty")
        prev_k, prev_dim = None, 0
        for k, basis in self.weight_steps:
            if basis.rows != self.rank:
                raise ValueError("weight basis has wrong ambient dimension")
            d = la.rank_of(basis)
            if d != basis.cols:
                raise ValueError("weight step columns are dependent")
            if prev_k is not None:
                if k <= prev_k or d <= prev_dim:
                    raise ValueError("weight steps must strictly increase")
                if not la.span_subset(self.weight_steps_dict[prev_k], basis):
                    raise ValueError("weight filtration is not nested")
            prev_k, prev_dim = k, d
        if self.weight_steps[-1][1].cols != self.rank:
            raise ValueError("top weight step must be the whole space")
        prev_p, prev_dim = None, 0
        for p, basis in self.hodge_steps:
            if basis.rows != self.rank:
                raise ValueError("hodge basis has wrong ambient dimension")
            d = la.rank_of(basis)
            if d != basis.cols:
                raise ValueError("hodge step columns are dependent")
            if prev_p is not None:
                if p >= prev_p or d <= prev_dim:
                    raise ValueError("hodge steps must strictly decrease in p")
                if not la.span_subset(self.hodge_steps_dict[prev_p], basis):
                    raise ValueError("hodge filtration is not nested")
            prev_p, prev_dim = p, d
        if self.hodge_steps[-1][1].cols != self.rank:
            raise ValueError("lowest hodge step must be the whole space")
        self._check_graded_purity()
        return self

    @property
    def weight_steps_dict(self):
        return dict(self.weight_steps)

    @property
    def hodge_steps_dict(self):
        return dict(self.hodge_steps)

    def _check_graded_purity(self):
        """On each gr^W_k the induced F and its conjugate must be opposed:
        F^p(gr) + conj(F^{k-p+1}(gr)) is a direct-sum decomposition of
        the graded piece for every p."""
        for k in self.weight_jumps():
            Wk = self.weight_filtration(k)
            Wk1 = self.weight_filtration(k - 1)
            dim_gr = Wk.cols - Wk1.cols

            def graded(S):
                """Basis of the image of S & W_k in gr^W_k (coordinates in
                a complement of W_{k-1} inside W_k)."""
                inter = la.intersect(S, Wk)
                if inter.cols == 0:
                    return la.zero_cols(dim_gr)
                # coordinates of inter in the basis [Wk1 | comp]
                comp_idx = []
                cur = Wk1
                for c in range(Wk.cols):
                    cand = la.hstack(cur, Wk[:, c]) if cur.cols else Wk[:, c]
                    if la.rank_of(cand) > la.rank_of(cur):
                        cur = cand
                        comp_idx.append(c)
                basis = la.hstack(Wk1, Wk[:, comp_idx]) if Wk1.cols \
                    else Wk[:, comp_idx]
                coeffs = la.solve_matrix(basis, inter)
                top = coeffs[Wk1.cols:, :]
                return la.col_basis(top)

            base = set()
            for q in self.hodge_jumps():
                base.update((q, q + 1))
            ps = sorted(base | {k + 1 - q for q in base})
            for p in ps:
                U = graded(self.hodge_filtration(p))
                V = graded(self.hodge_filtration(k - p + 1).conjugate())
                if U.cols + V.cols != dim_gr or la.intersect(U, V).cols != 0:
                    raise ValueError(
                        "graded piece of weight %d is not pure (p=%d)" % (k, p))

    # -- comparisons ---------------------------------------------------------

    def equals(self, other):
        """Same lattice with identical filtrations (as subspaces)."""
        if self.rank != other.rank:
            return False
        jumps = sorted(set(self.weight_jumps()) | set(other.weight_jumps()))
        for k in jumps:
            if not la.span_equal(self.weight_filtration(k),
                                 other.weight_filtration(k)):
                return False
        pj = sorted(set(self.hodge_jumps()) | set(other.hodge_jumps()))
        for p in pj:
            if not la.span_equal(self.hodge_filtration(p),
                                 other.hodge_filtration(p)):
                return False
        return True


def _normalize_steps(steps, increasing):
    """Drop repeated-dimension steps, sort, return canonical list."""
    steps = sorted(steps, key=lambda t: t[0] if increasing else -t[0])
    out = []
    for k, basis in steps:
        basis = la.col_basis(basis)
        if out and basis.cols == out[-1][1].cols:
            continue
        out.append((k, basis))
    return out


def make_mhs(rank, weight_steps, hodge_steps):
    """Build and validate a structure from (possibly redundant) steps."""
    m = MixedHodgeStructure(rank,
                            _normalize_steps(weight_steps, True),
                            _normalize_steps(hodge_steps, False))
    return m.validate()


@dataclass
class Morphism:
    """Lattice map compatible with both filtrations.

    ``matrix`` acts on column vectors; entries must be integers.  A
    ``twist`` of n means the map lands in the target Tate-twisted n
    times: weights shift by -2n and the Hodge filtration by -n.
    """
    source: MixedHodgeStructure
    target: MixedHodgeStructure
    matrix: sp.Matrix
    twist: int = 0

    def validate(self):
        M = self.matrix
        if M.rows != self.target.rank or M.cols != self.source.rank:
            raise ValueError("morphism matrix has wrong shape")
        la.to_int_matrix(M)  # raises when not integral
        for k, basis in self.source.weight_steps:
            tgt = self.target.weight_filtration(k - 2 * self.twist)
            if not la.span_subset(la.image(M, basis), tgt):
                raise ValueError("morphism does not preserve W_%d" % k)
        for p, basis in self.source.hodge_steps:
            tgt = self.target.hodge_filtration(p - self.twist)
            if not la.span_subset(la.image(M, basis), tgt):
                raise ValueError("morphism does not preserve F^%d" % p)
        return self

    def int_matrix(self):
        return la.to_int_matrix(self.matrix)

    def compose(self, other):
        """self after other."""
        return Morphism(other.source, self.target, self.matrix * other.matrix,
                        self.twist + other.twist)


@dataclass
class Extension:
    """A short exact sequence 0 -> sub -> total -> quotient -> 0."""
    sub: MixedHodgeStructure
    total: MixedHodgeStructure
    quotient: MixedHodgeStructure
    inclusion: Morphism
    projection: Morphism

    def validate(self):
        A, H, B = self.sub, self.total, self.quotient
        if A.rank + B.rank != H.rank:
            raise ValueError("ranks are not additive")
        self.inclusion.validate()
        self.projection.validate()
        iota = self.inclusion.int_matrix()
        pi = self.projection.int_matrix()
        if exactlin.invariant_factors(iota) != [1] * A.rank:
            raise ValueError("inclusion is not a primitive embedding")
        if exactlin.invariant_factors(pi) != [1] * B.rank:
            raise ValueError("projection is not surjective on lattices")
        comp = exactlin.matmul(pi, iota)
        if any(any(x for x in row) for row in comp):
            raise ValueError("projection o inclusion is nonzero")
        ker = exactlin.kernel_basis(pi)
        Ki = sp.Matrix(ker).T if ker else la.zero_cols(H.rank)
        if not la.span_equal(Ki, self.inclusion.matrix):
            raise ValueError("image of inclusion differs from kernel of projection")
        self._check_strictness()
        return self

    def _check_strictness(self):
        """Filtrations on sub and quotient must be the induced ones."""
        A, H, B = self.sub, self.total, self.quotient
        Mi, Mp = self.inclusion.matrix, self.projection.matrix
        jumps = sorted(set(A.weight_jumps()) | set(H.weight_jumps())
                       | set(B.weight_jumps()))
        for k in jumps:
            WH = H.weight_filtration(k)
            if not la.span_equal(A.weight_filtration(k),
                                 la.preimage(Mi, WH)):
                raise ValueError("weight filtration on sub is not induced (k=%d)" % k)
            if not la.span_equal(B.weight_filtration(k), la.image(Mp, WH)):
                raise ValueError("weight filtration on quotient is not induced (k=%d)" % k)
        pj = sorted(set(A.hodge_jumps()) | set(H.hodge_jumps())
                    | set(B.hodge_jumps()))
        for p in pj:
            FH = H.hodge_filtration(p)
            if not la.span_equal(A.hodge_filtration(p), la.preimage(Mi, FH)):
                raise ValueError("hodge filtration on sub is not induced (p=%d)" % p)
            if not la.span_equal(B.hodge_filtration(p), la.image(Mp, FH)):
                raise ValueError("hodge filtration on quotient is not induced (p=%d)" % p)

    def is_separated(self):
        """All weights of the sub lie strictly below all weights of the
        quotient (so Hom(quotient, sub) has only negative weights)."""
        return self.sub.highest_weight() < self.quotient.lowest_weight()

    def negated(self):
        """The extension with the projection replaced by its negative;
        its invariant is minus the invariant of self."""
        proj = Morphism(self.total, self.quotient, -self.projection.matrix,
                        self.projection.twist)
        return Extension(self.sub, self.total, self.quotient,
                         self.inclusion, proj)


# -- constructions on structures ---------------------------------------------


def direct_sum(m1, m2):
    """Direct sum, with the two block inclusions returned as well."""
    n = m1.rank + m2.rank

    def pad1(B):
        return sp.Matrix.vstack(B, sp.zeros(m2.rank, B.cols))

    def pad2(B):
        return sp.Matrix.vstack(sp.zeros(m1.rank, B.cols), B)

    jumps = sorted(set(m1.weight_jumps()) | set(m2.weight_jumps()))
    wsteps = []
    for k in jumps:
        cols = [pad1(m1.weight_filtration(k)), pad2(m2.weight_filtration(k))]
        cols = [c for c in cols if c.cols]
        basis = la.hstack(*cols) if cols else la.zero_cols(n)
        wsteps.append((k, basis))
    pj = sorted(set(m1.hodge_jumps()) | set(m2.hodge_jumps()), reverse=True)
    fsteps = []
    for p in pj:
        cols = [pad1(m1.hodge_filtration(p)), pad2(m2.hodge_filtration(p))]
        cols = [c for c in cols if c.cols]
        basis = la.hstack(*cols) if cols else la.zero_cols(n)
        fsteps.append((p, basis))
    m = make_mhs(n, wsteps, fsteps)
    inc1 = Morphism(m1, m, sp.Matrix.vstack(sp.eye(m1.rank),
                                            sp.zeros(m2.rank, m1.rank)))
    inc2 = Morphism(m2, m, sp.Matrix.vstack(sp.zeros(m1.rank, m2.rank),
                                            sp.eye(m2.rank)))
    return m, inc1, inc2


def sub_mhs(ambient, basis_cols):
    """Structure induced on a saturated sublattice.

    ``basis_cols`` is a list of integer columns (python ints) forming a
    basis of a saturated sublattice.  Returns (mhs, inclusion morphism).
    """
    if not basis_cols:
        raise ValueError("sublattice must be nonzero")
    B = sp.Matrix(basis_cols).T  # ambient.rank x r
    r = B.cols
    wsteps = []
    for k, _ in ambient.weight_steps:
        pre = la.preimage(B, ambient.weight_filtration(k))
        if pre.cols:
            wsteps.append((k, pre))
    fsteps = []
    for p, _ in ambient.hodge_steps:
        pre = la.preimage(B, ambient.hodge_filtration(p))
        if pre.cols:
            fsteps.append((p, pre))
    m = make_mhs(r, wsteps, fsteps)
    return m, Morphism(m, ambient, B)


def quotient_mhs(ambient, sub_cols):
    """Quotient by a saturated sublattice.

    ``sub_cols``: list of integer columns spanning the sublattice (must
    be primitive).  Returns (mhs, projection morphism, integer section
    matrix mapping quotient coordinates to ambient ones).
    """
    n = ambient.rank
    D = [[c[i] for c in sub_cols] for i in range(n)]
    a = len(sub_cols)
    T = exactlin.complete_to_basis(D, n)       # columns: new basis of Z^n
    Tinv = exactlin.inverse_unimodular(T)
    # in the new basis the sublattice is the first a coordinates
    proj_rows = sp.Matrix(Tinv[a:]) if a < n else sp.Matrix(0, n, [])
    section = sp.Matrix([row[a:] for row in T])
    q = n - a
    wsteps = []
    for k, _ in ambient.weight_steps:
        img = la.image(proj_rows, ambient.weight_filtration(k))
        if img.cols:
            wsteps.append((k, img))
    fsteps = []
    for p, _ in ambient.hodge_steps:
        img = la.image(proj_rows, ambient.hodge_filtration(p))
        if img.cols:
            fsteps.append((p, img))
    m = make_mhs(q, wsteps, fsteps)
    return m, Morphism(ambient, m, proj_rows), section


def hom_mhs(src, dst):
    """Internal Hom(src, dst) as a structure on the lattice of integer
    matrices, vectorized row-major: phi[i, j] -> index i*src.rank + j."""
    a, b = dst.rank, src.rank
    n = a * b

    def vec_constraints(tgt_sub, src_basis):
        """Rows expressing: phi(src_basis) inside col(tgt_sub)."""
        L = la.left_annihilator(tgt_sub) if tgt_sub.cols else sp.eye(a)
        if L.rows == 0 or src_basis.cols == 0:
            return sp.Matrix(0, n, [])
        rows = []
        for c in range(src_basis.cols):
            v = src_basis[:, c]
            for r in range(L.rows):
                row = [sp.S.Zero] * n
                for i in range(a):
                    for j in range(b):
                        row[i * b + j] = L[r, i] * v[j, 0]
                rows.append(row)
        return sp.Matrix(rows)

    def filtered_subspace(step_pairs, lookup_src, lookup_dst):
        def subspace(k):
            cons = []
            for l in step_pairs:
                cons.append(vec_constraints(lookup_dst(l + k), lookup_src(l)))
            C = sp.Matrix.vstack(*cons)
            null = la.nullspace_cols(C)
            if null.cols == 0:
                return la.zero_cols(n)
            return null
        return subspace

    wsub = filtered_subspace(src.weight_jumps(), src.weight_filtration,
                             dst.weight_filtration)
    fsub = filtered_subspace(src.hodge_jumps(), src.hodge_filtration,
                             dst.hodge_filtration)
    wjumps = sorted({kd - ks for kd in dst.weight_jumps()
                     for ks in src.weight_jumps()})
    fjumps = sorted({pd - ps for pd in dst.hodge_jumps()
                     for ps in src.hodge_jumps()}, reverse=True)
    wsteps = [(k, wsub(k)) for k in wjumps]
    fsteps = [(p, fsub(p)) for p in fjumps]
    wsteps = [(k, B) for k, B in wsteps if B.cols]
    fsteps = [(p, B) for p, B in fsteps if B.cols]
    return make_mhs(n, wsteps, fsteps)
