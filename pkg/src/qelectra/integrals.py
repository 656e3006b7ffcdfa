"""Analytic one- and two-electron integrals over contracted Gaussians.

Uses Hermite-Gaussian expansion recurrences for overlap, kinetic, nuclear
attraction and electron repulsion. The Boys function is evaluated by a
downward-recursion series below x = 35 and the asymptotic closed form above,
accurate to about 1e-13 across the switch.

Electron repulsion integrals are returned as a dense (n, n, n, n) array in
chemists' notation (ij|kl); only canonical index quartets are computed and
the eight symmetry images are filled from each one.
"""

from dataclasses import dataclass, field
from typing import List

import numpy as np

from .basis import ContractedGaussian, load_basis
from .molecule import Molecule, nuclear_repulsion

MAX_BASIS_FUNCTIONS = 32
_BOYS_SWITCH = 35.0


def boys(m_max: int, x) -> np.ndarray:
    """Boys function F_m(x) for m = 0..m_max, vectorized over x.

    Returns an array of shape (m_max + 1,) + x.shape.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.empty((m_max + 1,) + x.shape, dtype=float)
    small = x < _BOYS_SWITCH
    if np.any(small):
        out[:, small] = _boys_series(m_max, x[small])
    if np.any(~small):
        out[:, ~small] = _boys_asymptotic(m_max, x[~small])
    return out


def _boys_series(m_max: int, x: np.ndarray) -> np.ndarray:
    # F_m(x) = exp(-x) * sum_k (2x)^k (2m-1)!! / (2m+2k+1)!!, evaluated at the
    # highest order, then recurred downward (stable direction).
    two_x = 2.0 * x
    term = np.full_like(x, 1.0 / (2 * m_max + 1))
    acc = term.copy()
    k = 0
    while True:
        k += 1
        term = term * two_x / (2 * m_max + 2 * k + 1)
        acc += term
        if np.all(term <= 1e-17 * acc) or k > 300:
            break
    ex = np.exp(-x)
    out = np.empty((m_max + 1,) + x.shape, dtype=float)
    out[m_max] = ex * acc
    for m in range(m_max - 1, -1, -1):
        out[m] = (two_x * out[m + 1] + ex) / (2 * m + 1)
    return out


def _boys_asymptotic(m_max: int, x: np.ndarray) -> np.ndarray:
    out = np.empty((m_max + 1,) + x.shape, dtype=float)
    out[0] = 0.5 * np.sqrt(np.pi / x)
    # upward recursion; the exp(-x) term is below double precision here
    for m in range(1, m_max + 1):
        out[m] = out[m - 1] * (2 * m - 1) / (2.0 * x)
    return out


def hermite_coefficients(i: int, j: int, a: float, b: float, ab: float) -> np.ndarray:
    """1D Hermite expansion coefficients E_t for x^i, x^j Gaussians.

    `ab` is (A - B) along the axis. Includes the pair prefactor
    exp(-mu * ab^2), so E[0] for i = j = 0 is the full 1D overlap kernel.
    """
    p = a + b
    mu = a * b / p
    # E[iprime, jprime, t]; recursion over one index at a time
    E = np.zeros((i + 1, j + 1, i + j + 2))
    E[0, 0, 0] = np.exp(-mu * ab * ab)
    pa = -b * ab / p   # P - A with P = (aA + bB)/p; A - B = ab
    pb = a * ab / p    # P - B
    for ii in range(1, i + 1):
        for t in range(ii + 1):
            val = pa * E[ii - 1, 0, t]
            if t > 0:
                val += E[ii - 1, 0, t - 1] / (2.0 * p)
            if t + 1 <= ii - 1:
                val += (t + 1) * E[ii - 1, 0, t + 1]
            E[ii, 0, t] = val
    for ii in range(i + 1):
        for jj in range(1, j + 1):
            for t in range(ii + jj + 1):
                val = pb * E[ii, jj - 1, t]
                if t > 0:
                    val += E[ii, jj - 1, t - 1] / (2.0 * p)
                if t + 1 <= ii + jj - 1:
                    val += (t + 1) * E[ii, jj - 1, t + 1]
                E[ii, jj, t] = val
    return E[i, j, : i + j + 1]


def _hermite_coulomb(tmax: int, umax: int, vmax: int, p, PC) -> np.ndarray:
    """Hermite Coulomb tensor R_{tuv}(p, PC), vectorized over a leading axis.

    `p` has shape (k,), `PC` shape (k, 3). Returns (tmax+1, umax+1, vmax+1, k).
    """
    p = np.asarray(p, dtype=float)
    PC = np.asarray(PC, dtype=float)
    k = p.shape[0]
    n_tot = tmax + umax + vmax
    r2 = np.einsum("ki,ki->k", PC, PC)
    F = boys(n_tot, p * r2)                      # (n_tot+1, k)
    minus_2p = -2.0 * p
    base = np.empty_like(F)
    scale = np.ones_like(p)
    for n in range(n_tot + 1):
        base[n] = scale * F[n]                   # (-2p)^n F_n
        scale = scale * minus_2p
    # R[n][t,u,v] built downward in n
    R_prev = {(0, 0, 0): base[n_tot]}
    for n in range(n_tot - 1, -1, -1):
        R_cur = {(0, 0, 0): base[n]}
        limit = n_tot - n
        for t in range(min(tmax, limit) + 1):
            for u in range(min(umax, limit - t) + 1):
                for v in range(min(vmax, limit - t - u) + 1):
                    if t == u == v == 0:
                        continue
                    if t > 0:
                        val = PC[:, 0] * R_prev.get((t - 1, u, v), 0.0)
                        if t > 1:
                            val = val + (t - 1) * R_prev.get((t - 2, u, v), 0.0)
                    elif u > 0:
                        val = PC[:, 1] * R_prev.get((t, u - 1, v), 0.0)
                        if u > 1:
                            val = val + (u - 1) * R_prev.get((t, u - 2, v), 0.0)
                    else:
                        val = PC[:, 2] * R_prev.get((t, u, v - 1), 0.0)
                        if v > 1:
                            val = val + (v - 1) * R_prev.get((t, u, v - 2), 0.0)
                    R_cur[(t, u, v)] = val
        R_prev = R_cur
    out = np.zeros((tmax + 1, umax + 1, vmax + 1, k))
    for (t, u, v), val in R_prev.items():
        out[t, u, v] = val
    return out


class _PairData:
    """Precomputed primitive-pair quantities for one basis-function pair."""

    __slots__ = ("p", "P", "coeff", "Ex", "Ey", "Ez", "la", "lb")

    def __init__(self, fa: ContractedGaussian, fb: ContractedGaussian):
        A, B = fa.center, fb.center
        la, lb = fa.powers, fb.powers
        self.la, self.lb = la, lb
        pairs = [(a1, c1, a2, c2)
                 for a1, c1 in zip(fa.alphas, fa.coeffs)
                 for a2, c2 in zip(fb.alphas, fb.coeffs)]
        n = len(pairs)
        self.p = np.array([a1 + a2 for a1, _, a2, _ in pairs])
        self.coeff = np.array([c1 * c2 for _, c1, _, c2 in pairs])
        self.P = np.array([(a1 * A + a2 * B) / (a1 + a2)
                           for a1, _, a2, _ in pairs])
        ab = A - B
        # per-axis Hermite coefficient arrays, shape (n_pairs, t_range)
        self.Ex = np.array([hermite_coefficients(la[0], lb[0], a1, a2, ab[0])
                            for a1, _, a2, _ in pairs])
        self.Ey = np.array([hermite_coefficients(la[1], lb[1], a1, a2, ab[1])
                            for a1, _, a2, _ in pairs])
        self.Ez = np.array([hermite_coefficients(la[2], lb[2], a1, a2, ab[2])
                            for a1, _, a2, _ in pairs])


def _overlap_pair(fa: ContractedGaussian, fb: ContractedGaussian) -> float:
    s = 0.0
    A, B = fa.center, fb.center
    ab = A - B
    for a1, c1 in zip(fa.alphas, fa.coeffs):
        for a2, c2 in zip(fb.alphas, fb.coeffs):
            p = a1 + a2
            ex = hermite_coefficients(fa.powers[0], fb.powers[0], a1, a2, ab[0])[0]
            ey = hermite_coefficients(fa.powers[1], fb.powers[1], a1, a2, ab[1])[0]
            ez = hermite_coefficients(fa.powers[2], fb.powers[2], a1, a2, ab[2])[0]
            s += c1 * c2 * ex * ey * ez * (np.pi / p) ** 1.5
    return s


def _kinetic_pair(fa: ContractedGaussian, fb: ContractedGaussian) -> float:
    # Apply the 1D second-derivative expansion to the ket and reuse overlaps.
    t_total = 0.0
    A, B = fa.center, fb.center
    ab = A - B
    la = fa.powers

    def s1d(i, j, a1, a2, axis):
        if i < 0 or j < 0:
            return 0.0
        return hermite_coefficients(i, j, a1, a2, ab[axis])[0] * np.sqrt(np.pi / (a1 + a2))

    for a1, c1 in zip(fa.alphas, fa.coeffs):
        for a2, c2 in zip(fb.alphas, fb.coeffs):
            sx = [s1d(la[0], fb.powers[0] + d, a1, a2, 0) for d in (-2, 0, 2)]
            sy = [s1d(la[1], fb.powers[1] + d, a1, a2, 1) for d in (-2, 0, 2)]
            sz = [s1d(la[2], fb.powers[2] + d, a1, a2, 2) for d in (-2, 0, 2)]

            def t1d(j, s_list):
                lo, mid, hi = s_list
                val = -2.0 * a2 * (2 * j + 1) * mid + 4.0 * a2 * a2 * hi
                if j >= 2:
                    val += j * (j - 1) * lo
                return -0.5 * val

            tx = t1d(fb.powers[0], sx)
            ty = t1d(fb.powers[1], sy)
            tz = t1d(fb.powers[2], sz)
            t_total += c1 * c2 * (tx * sy[1] * sz[1]
                                  + sx[1] * ty * sz[1]
                                  + sx[1] * sy[1] * tz)
    return t_total


def _nuclear_pair(pair: _PairData, coords: np.ndarray, charges: np.ndarray) -> float:
    la, lb = pair.la, pair.lb
    tmax = la[0] + lb[0]
    umax = la[1] + lb[1]
    vmax = la[2] + lb[2]
    total = 0.0
    for C, Z in zip(coords, charges):
        PC = pair.P - C[None, :]
        R = _hermite_coulomb(tmax, umax, vmax, pair.p, PC)
        acc = np.zeros_like(pair.p)
        for t in range(tmax + 1):
            for u in range(umax + 1):
                for v in range(vmax + 1):
                    acc += pair.Ex[:, t] * pair.Ey[:, u] * pair.Ez[:, v] * R[t, u, v]
        total += -Z * np.sum(pair.coeff * (2.0 * np.pi / pair.p) * acc)
    return total


def _signed_convolution(Ea: np.ndarray, Eb: np.ndarray) -> np.ndarray:
    """Combine bra/ket Hermite coefficients along one axis with the ket sign.

    Ea has shape (na, ta), Eb (nb, tb); result (na, nb, ta + tb - 1) with
    entry [i, j, s] = sum_{t + tau = s} Ea[i, t] * Eb[j, tau] * (-1)^tau.
    """
    na, ta = Ea.shape
    nb, tb = Eb.shape
    out = np.zeros((na, nb, ta + tb - 1))
    for t in range(ta):
        for tau in range(tb):
            sign = -1.0 if tau % 2 else 1.0
            out[:, :, t + tau] += sign * Ea[:, t][:, None] * Eb[:, tau][None, :]
    return out


def _eri_quartet(bra: _PairData, ket: _PairData) -> float:
    p = bra.p
    q = ket.p
    np_, nq = p.shape[0], q.shape[0]
    pq = p[:, None] * q[None, :]
    psum = p[:, None] + q[None, :]
    alpha = (pq / psum).ravel()
    PQ = (bra.P[:, None, :] - ket.P[None, :, :]).reshape(-1, 3)

    Gx = _signed_convolution(bra.Ex, ket.Ex)
    Gy = _signed_convolution(bra.Ey, ket.Ey)
    Gz = _signed_convolution(bra.Ez, ket.Ez)
    smax_x = Gx.shape[2] - 1
    smax_y = Gy.shape[2] - 1
    smax_z = Gz.shape[2] - 1

    R = _hermite_coulomb(smax_x, smax_y, smax_z, alpha, PQ)
    R = R.reshape(smax_x + 1, smax_y + 1, smax_z + 1, np_, nq)

    acc = np.zeros((np_, nq))
    for s1 in range(smax_x + 1):
        for s2 in range(smax_y + 1):
            for s3 in range(smax_z + 1):
                acc += Gx[:, :, s1] * Gy[:, :, s2] * Gz[:, :, s3] * R[s1, s2, s3]

    pref = 2.0 * np.pi ** 2.5 / (pq * np.sqrt(psum))
    weights = bra.coeff[:, None] * ket.coeff[None, :]
    return float(np.sum(weights * pref * acc))


@dataclass
class IntegralSet:
    """All molecular integrals over one basis, plus layout metadata."""

    overlap: np.ndarray        # S, (n, n)
    kinetic: np.ndarray        # T, (n, n)
    nuclear: np.ndarray        # V, (n, n)
    eri: np.ndarray            # (ij|kl) chemists' notation, (n, n, n, n)
    basis_name: str
    n_basis: int
    basis_functions: List[ContractedGaussian] = field(default_factory=list)
    nuclear_repulsion: float = 0.0

    @property
    def core_hamiltonian(self) -> np.ndarray:
        return self.kinetic + self.nuclear


def compute_integrals(molecule: Molecule, basis_name: str = "sto-3g") -> IntegralSet:
    """Compute S, T, V and the full ERI tensor for a molecule.

    Deterministic: the basis ordering is fixed by the input, every loop runs
    in a fixed order, and no threading is involved.
    """
    funcs = load_basis(molecule, basis_name)
    n = len(funcs)
    if n > MAX_BASIS_FUNCTIONS:
        raise ValueError(
            f"{n} basis functions exceeds the dense-ERI cap of {MAX_BASIS_FUNCTIONS}")

    S = np.zeros((n, n))
    T = np.zeros((n, n))
    V = np.zeros((n, n))
    coords = molecule.coordinates()
    charges = molecule.charges()

    pairs = {}
    for i in range(n):
        for j in range(i + 1):
            pair = _PairData(funcs[i], funcs[j])
            pairs[(i, j)] = pair
            S[i, j] = S[j, i] = _overlap_pair(funcs[i], funcs[j])
            T[i, j] = T[j, i] = _kinetic_pair(funcs[i], funcs[j])
            V[i, j] = V[j, i] = _nuclear_pair(pair, coords, charges)

    eri = np.zeros((n, n, n, n))
    pair_list = [(i, j) for i in range(n) for j in range(i + 1)]
    index_of = {ij: k for k, ij in enumerate(pair_list)}
    for (i, j) in pair_list:
        for (k, l) in pair_list:
            if index_of[(k, l)] > index_of[(i, j)]:
                continue
            val = _eri_quartet(pairs[(i, j)], pairs[(k, l)])
            for (a, b) in ((i, j), (j, i)):
                for (c, d) in ((k, l), (l, k)):
                    eri[a, b, c, d] = val
                    eri[c, d, a, b] = val

    return IntegralSet(overlap=S, kinetic=T, nuclear=V, eri=eri,
                       basis_name=basis_name, n_basis=n,
                       basis_functions=funcs,
                       nuclear_repulsion=nuclear_repulsion(molecule))
