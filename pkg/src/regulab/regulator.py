"""Two independent routes to the regulator pairing of the level cycle.

For a closed 1-form eta and a holomorphic 1-form omega the pairing is

    reg(eta ^ omega) = 2 int_{cover minus gamma} log(f) eta ^ omega
                       + 2 pi i sum_k int_{gamma_k} (eta omega - omega eta)

with gamma the positive-real level set of f, oriented from the zero to
the pole, and the iterated integrals taken along each of its components.

The same quantity has a one-dimensional "loop route": up to a stated
rational constant it equals the iterated integral of (df/f, omega)
along a zero-winding loop whose homology class is dual to eta.  Both
routes are implemented here and in carlson.py so they can be compared
entry by entry; the proportionality constant between them is fitted
empirically rather than assumed.

Also implements the membrane (disc) form of the gamma term: the map
F_i(s, t) = gamma_i(a(s,t)) - gamma_i(b(s,t)) with a = t and
b = t(1-s)/(1 - s(1-t)) sweeps a disc in the Jacobian whose integral
of phi ^ psi reproduces int_{gamma_i}(phi psi - psi phi).
"""

from __future__ import annotations

import numpy as np

from .integrate import iterated_table, pullback_cheb
from .planequad import quadtree_rect, surface_log_integrals


def dlog_form(func):
    """df/f as a 1-form coefficient against dx."""
    return lambda x, y: func.dlog(x)


def iterated_pair(path, phi, psi):
    """(int phi psi, int psi phi) along a path."""
    T = iterated_table(path, [phi, psi])
    Trev = iterated_table(path, [psi, phi])
    return T[(0, 1)], Trev[(0, 1)]


def gamma_commutator(components, phi, psi):
    """sum_k int_{gamma_k} (phi psi - psi phi)."""
    out = 0.0 + 0.0j
    for comp in components:
        a, b = iterated_pair(comp, phi, psi)
        out += a - b
    return out


def gamma_tensor(components, phi, psi):
    """sum_k int_{gamma_k} phi psi."""
    out = 0.0 + 0.0j
    for comp in components:
        T = iterated_table(comp, [phi, psi])
        out += T[(0, 1)]
    return out


class RegulatorFrame:
    """Bundles the surface integrals and the level-cycle components
    needed to evaluate reg(eta_j ^ dz_i) for all basis pairs."""

    def __init__(self, curve, func, frame, components, surf_tol=2e-7,
                 log_shift=0):
        self.curve = curve
        self.func = func
        self.frame = frame
        self.components = components
        self.duals = frame.dual_forms()
        self.log_shift = log_shift
        weight = None
        if log_shift:
            chart_shift = 2j * np.pi * log_shift

            def weight(z, _s=chart_shift):
                z = np.asarray(z, dtype=complex).ravel()
                return (np.log(np.abs(z))
                        + 1j * np.mod(np.angle(z), 2.0 * np.pi) + _s)

        # S[l][i] = int log(f) conj(dz_l) ^ dz_i  over the cut cover
        self.S = surface_log_integrals(curve, func, frame.dz, tol=surf_tol,
                                       weight=weight)
        # anti[j][l]: conj(dz_l)-coefficient of the dual form eta_j
        self.anti = np.array([d.anti for d in self.duals])

    def surface_entry(self, j, i):
        """int_{cover minus gamma} log(f) eta_j ^ dz_i.

        Only the antiholomorphic part of eta_j survives the wedge with
        a holomorphic form (dz ^ dz vanishes identically on sheets)."""
        return complex(self.anti[j] @ self.S[:, i])

    def gamma_entry(self, j, i):
        """sum_k int_{gamma_k} eta_j dz_i (tensor-route gamma term)."""
        return gamma_tensor(self.components, self.duals[j],
                            self.frame.dz[i])

    def gamma_comm_entry(self, j, i):
        return gamma_commutator(self.components, self.duals[j],
                                self.frame.dz[i])

    def tensor_entry(self, j, i):
        """int log(f) eta_j ^ dz_i + 2 pi i int_gamma eta_j dz_i."""
        return self.surface_entry(j, i) + 2j * np.pi * self.gamma_entry(j, i)

    def regulator_entry(self, j, i):
        """reg(eta_j ^ dz_i): twice the surface term plus the
        commutator gamma term."""
        return (2.0 * self.surface_entry(j, i)
                + 2j * np.pi * self.gamma_comm_entry(j, i))


# -- membrane (disc) form of the gamma term ---------------------------------


class VelocitySeries:
    """Vectorized evaluation of the pullback of a 1-form along a path,
    as a function of the global parameter t in [0, 1] (velocity with
    respect to t, i.e. including the segment-count factor)."""

    def __init__(self, path, form):
        self.chebs = [pullback_cheb(seg, form) for seg in path.tracked]
        self.K = len(path.tracked)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        scaled = np.clip(t * self.K, 0.0, self.K * (1.0 - 1e-15))
        idx = np.minimum(scaled.astype(int), self.K - 1)
        tau = scaled - idx
        out = np.empty(t.shape, dtype=complex)
        for k in range(self.K):
            m = idx == k
            if np.any(m):
                out[m] = self.chebs[k](tau[m])
        return out * self.K


def disc_integral(path, phi, psi, tol=1e-8):
    """Integral of phi ^ psi over the membrane swept by
    F(s,t) = path(a(s,t)) - path(b(s,t)) in the Jacobian, where
    a = t and b = t(1-s)/(1 - s(1-t)).

    Since a is independent of s the pulled-back 2-form collapses to

        b_s (v_phi(a) v_psi(b) - v_phi(b) v_psi(a)) ds dt,

    with b_s = -t^2 / (1 - s(1-t))^2 and v_* the velocity series of
    the forms along the path."""
    vphi = VelocitySeries(path, phi)
    vpsi = VelocitySeries(path, psi)
    K = vphi.K

    def sweep(n_outer, n_inner):
        gu, gw = np.polynomial.legendre.leggauss(n_outer)
        hu, hw = np.polynomial.legendre.leggauss(n_inner)
        total = 0.0 + 0.0j
        for k in range(K):
            ts = (k + 0.5 * (gu + 1.0)) / K
            for t, wt in zip(ts, gw / (2.0 * K)):
                # split [0,1] in s where b(s,t) crosses a segment
                # boundary j/K; b decreases from t to 0, and
                # b = c  <=>  s = (t-c)/(t - c(1-t))
                cs = np.arange(1, int(np.floor(t * K)) + 1) / K
                sk = (t - cs) / (t - cs * (1.0 - t))
                cuts = np.concatenate([[0.0], np.sort(sk), [1.0]])
                s = (cuts[:-1, None]
                     + np.diff(cuts)[:, None] * 0.5 * (hu + 1.0)).ravel()
                ws = (np.diff(cuts)[:, None] * 0.5 * hw).ravel()
                D = 1.0 - s * (1.0 - t)
                b = t * (1.0 - s) / D
                bs = -(t / D) ** 2
                vt = vphi(np.full_like(s, t)), vpsi(np.full_like(s, t))
                vals = bs * (vt[0] * vpsi(b) - vphi(b) * vt[1])
                total += wt * (vals @ ws)
        return total

    coarse = sweep(12, 10)
    fine = sweep(20, 16)
    if abs(fine - coarse) > 1e3 * tol * max(1.0, abs(fine)):
        fine = sweep(32, 24)
    return complex(fine)


def disc_vs_iterated(path, phi, psi, tol=1e-8):
    """Both routes to the gamma term on one component: the membrane
    integral and the iterated-integral commutator.  Returns
    (disc, commutator)."""
    a, b = iterated_pair(path, phi, psi)
    return disc_integral(path, phi, psi, tol=tol), a - b
