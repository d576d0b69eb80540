"""Homology of the cover: explicit loops and a symplectic basis.

Candidate cycles are "dogbones": go once around one branch point, slide
to a neighbouring one, go around it (with the orientation that makes the
total monodromy trivial), and slide back.  Lifting such a loop to the
cover gives a closed cycle.  Intersection numbers are computed
combinatorially from dense polylines -- a crossing in the x-plane counts
only when both strands are on the same sheet, with the sign of the
crossing -- and an integer congruence reduction turns the candidate set
into a symplectic basis.

Each candidate exists in two flavours: a free cycle (no tail; used for
intersection numbers, where strands through the common base point would
be degenerate) and a based loop (tail from the base point, loop,
reversed tail; used to form honest concatenated words).  The two are
freely homotopic, hence homologous, so intersection data computed on
the free cycles applies to the based ones.
"""

from __future__ import annotations

import numpy as np

from . import exactlin
from .surfpath import SurfacePath, Line, Arc


def dogbone_segments(b1, b2, r1, r2, turns1, turns2, phase=0.0):
    """Base-plane dogbone loop around branch points b1 and b2.

    Starts and ends at b1 + r1 * exp(i(arg(b2-b1)+phase)); `turns*` are
    signed whole numbers of turns around each point.
    """
    u = (b2 - b1) / abs(b2 - b1)
    th = float(np.angle(u)) + phase
    s1 = b1 + r1 * np.exp(1j * th)
    th2 = float(np.angle(-u)) - phase
    s2 = b2 + r2 * np.exp(1j * th2)
    segs = []
    if turns1:
        segs.append(Arc(b1, r1, th, th + 2 * np.pi * turns1))
    segs.append(Line(s1, s2))
    if turns2:
        segs.append(Arc(b2, r2, th2, th2 + 2 * np.pi * turns2))
    segs.append(Line(s2, s1))
    return segs


def _turn_options(deg):
    # candidate turn counts for the second point, smallest first
    opts = []
    for k in range(1, deg):
        opts.append(k if k <= deg - k else k - deg)
    return sorted(set(opts), key=abs)


class Candidate:
    def __init__(self, free, based):
        self.free = free
        self.based = based


def make_candidate(curve, base, b1, b2, r1, r2, phase=0.0, deck=0):
    """Build one dogbone candidate lifted from the base point.

    `base` is (x, y) on the cover.  `deck` prepends extra turns around
    b1 to the tail, reaching a different sheet of the same base loop.
    Returns a Candidate or None when no orientation closes.
    """
    xP, yP = base
    u = (b2 - b1) / abs(b2 - b1)
    th = float(np.angle(u)) + phase
    s1 = b1 + r1 * np.exp(1j * th)
    tail_segs = [Line(xP, s1)]
    if deck:
        tail_segs.append(Arc(b1, r1, th, th + 2 * np.pi * deck))
    tail = SurfacePath.from_segments(curve, tail_segs, yP)
    y0 = tail.end()[1]
    for t2 in _turn_options(curve.degree):
        segs = dogbone_segments(b1, b2, r1, r2, 1, t2, phase=phase)
        loop = SurfacePath.from_segments(curve, segs, y0)
        if loop.is_closed():
            based = tail.then(loop).then(tail.reverse())
            return Candidate(loop, based)
    return None


def default_candidates(curve, base, n_extra_decks=None,
                       r_scale=1.0, phase_shift=0.0):
    """Dogbones around angularly adjacent branch points, with enough
    deck-shifted copies to have a shot at spanning homology.

    `r_scale` and `phase_shift` perturb the circle radii and the cut
    directions without changing any free homotopy class; they exist so
    that choice-independence of downstream quantities can be tested
    against a genuinely different set of representatives."""
    bs = curve.branch_x()
    bs = sorted(bs, key=lambda b: (np.angle(b), abs(b)))
    n = len(bs)
    gaps = [abs(bs[i] - bs[(i + 1) % n]) for i in range(n)]
    decks = range(curve.degree - 1) if n_extra_decks is None \
        else range(n_extra_decks + 1)
    out = []
    k = 0
    for i in range(n):
        b1, b2 = bs[i], bs[(i + 1) % n]
        for d in decks:
            r1 = 0.22 * r_scale * gaps[i] * (1 + 0.11 * ((k % 3) - 1))
            r2 = 0.22 * r_scale * gaps[i] * (1 + 0.07 * ((k % 4) - 1.5))
            clear1 = min(abs(b1 - b) for b in bs if b != b1)
            clear2 = min(abs(b2 - b) for b in bs if b != b2)
            r1 = min(r1, 0.33 * clear1)
            r2 = min(r2, 0.33 * clear2)
            phase = 0.05 + 0.23 * k + phase_shift
            c = make_candidate(curve, base, b1, b2, r1, r2,
                               phase=phase, deck=d)
            if c is not None:
                out.append(c)
            k += 1
    return out


def _segment_crossings(xa, xb):
    """Transversal crossings between two polylines.

    Returns (i, j, s, t): segment indices and local parameters."""
    a0, a1 = xa[:-1], xa[1:]
    b0, b1 = xb[:-1], xb[1:]
    da = (a1 - a0)[:, None]
    db = (b1 - b0)[None, :]
    diff = b0[None, :] - a0[:, None]
    denom = np.imag(np.conj(da) * db)
    with np.errstate(divide="ignore", invalid="ignore"):
        s = np.imag(np.conj(diff) * db) / denom
        t = np.imag(np.conj(diff) * da) / denom
    hit = (np.abs(denom) > 1e-14) & (s > 0) & (s < 1) & (t > 0) & (t < 1)
    i, j = np.nonzero(hit)
    return i, j, s[hit], t[hit]


def intersection_number(curve, pa, pb, per_seg=96):
    """Topological intersection number of two closed cycles on the
    cover, from dense polylines with sheet matching."""
    xa, ya = pa.polyline(per_seg)
    xb, yb = pb.polyline(per_seg)
    i, j, s, t = _segment_crossings(xa, xb)
    if len(i) == 0:
        return 0
    xc = xa[i] + s * (xa[i + 1] - xa[i])
    yca = ya[i] + s * (ya[i + 1] - ya[i])
    ycb = yb[j] + t * (yb[j + 1] - yb[j])
    sheets = np.asarray(curve.all_sheets(xc))
    ia = np.argmin(np.abs(sheets - yca[None, :]), axis=0)
    ib = np.argmin(np.abs(sheets - ycb[None, :]), axis=0)
    same = ia == ib
    da = xa[i + 1] - xa[i]
    db = xb[j + 1] - xb[j]
    signs = np.sign(np.imag(np.conj(da) * db))
    total = float(np.sum(signs[same]))
    if abs(total - round(total)) > 1e-9:
        raise RuntimeError("non-integer intersection count %r" % total)
    return int(round(total))


def intersection_matrix(curve, paths, per_seg=96):
    n = len(paths)
    E = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            v = intersection_number(curve, paths[a], paths[b], per_seg)
            E[a][b] = v
            E[b][a] = -v
    return E


def word_path(paths, coeffs):
    """Concatenation prod_j paths[j] ** coeffs[j] (zeros skipped).
    All paths must be loops based at the same point."""
    out = None
    for p, c in zip(paths, coeffs):
        if c == 0:
            continue
        piece = p if c > 0 else p.reverse()
        for _ in range(abs(c)):
            out = piece if out is None else out.then(piece)
    if out is None:
        raise ValueError("empty word")
    return out


class LoopSystem:
    """Candidate cycles plus a symplectic homology basis.

    basis_coeffs[i] expresses basis cycle i as an integer combination
    of the candidates; basis order is (a_1..a_g, b_1..b_g) with
    <a_i, b_j> = +delta_ij.  basis[i] is a based loop built by
    concatenating based candidates.
    """

    def __init__(self, curve, base, candidates=None, per_seg=96):
        self.curve = curve
        self.base = base
        if candidates is None:
            candidates = default_candidates(curve, base)
        self.candidates = candidates
        self.E = intersection_matrix(
            curve, [c.free for c in candidates], per_seg)
        M, divisors = exactlin.symplectic_basis(self.E)
        g = curve.genus
        blocks = [d for d in divisors if d != 0]
        if len(blocks) < g:
            raise RuntimeError("candidate cycles do not span: %d symplectic "
                               "blocks, need %d" % (len(blocks), g))
        if any(d != 1 for d in blocks[:g]):
            raise RuntimeError("candidate cycles span a proper sublattice: "
                               "block divisors %s" % (blocks,))
        a_rows = [M[2 * k] for k in range(g)]
        b_rows = [M[2 * k + 1] for k in range(g)]
        self.basis_coeffs = a_rows + b_rows
        based = [c.based for c in candidates]
        self.basis = [word_path(based, c) for c in self.basis_coeffs]

    def basis_intersections(self):
        """M E M^T restricted to the chosen rows (canonical by
        construction; exposed for reporting)."""
        out = []
        for ra in self.basis_coeffs:
            row = []
            for rb in self.basis_coeffs:
                v = 0
                for p in range(len(ra)):
                    for q in range(len(rb)):
                        v += ra[p] * self.E[p][q] * rb[q]
                row.append(v)
            out.append(row)
        return out
