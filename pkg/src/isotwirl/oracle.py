"""Independent dense-matrix verification: permutation/Q operators, uniform
Clifford and Haar sampling, and Monte-Carlo estimates of twirled probes.

Nothing in here shares code with the closed-form path: permutation traces are
evaluated by cycle factorization over explicit matrices, Clifford elements are
drawn uniformly via Koenig-Smolin symplectic sampling and synthesized from
their stabilizer tableau, and probes are evaluated as literal operator traces
on d x d matrices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import s4

I2 = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.diag([1.0, -1.0]).astype(complex)


def kron_all(mats):
    out = mats[0]
    for m in mats[1:]:
        out = np.kron(out, m)
    return out


def pauli_dense(x_bits, z_bits) -> np.ndarray:
    """Hermitian Pauli string with X/Z supports given by bit sequences."""
    mats = []
    for xb, zb in zip(x_bits, z_bits):
        mats.append(PAULI_Y if (xb and zb) else (PAULI_X if xb else (PAULI_Z if zb else I2)))
    return kron_all(mats)


def all_paulis(n: int):
    """All 4^n Hermitian Pauli strings (phase-free representatives)."""
    for ix in range(1 << n):
        for iz in range(1 << n):
            x = [(ix >> (n - 1 - j)) & 1 for j in range(n)]
            z = [(iz >> (n - 1 - j)) & 1 for j in range(n)]
            yield pauli_dense(x, z)


def build_perm_dense(p: s4.Perm, d: int) -> np.ndarray:
    """Permutation operator on (C^d)^{x4} as a dense d^4 x d^4 matrix."""
    if d ** 4 > 1 << 20:
        raise ValueError(f"refusing to materialize a {d ** 4} x {d ** 4} permutation")
    dim = d ** 4
    T = np.zeros((dim, dim))
    pinv = s4.inverse(p.oneline)
    strides = [d ** 3, d ** 2, d, 1]
    for col in range(dim):
        j = [(col // strides[m]) % d for m in range(4)]
        row = sum(j[pinv[m]] * strides[m] for m in range(4))
        T[row, col] = 1.0
    return T


def build_q_dense(n: int) -> np.ndarray:
    """Q = d^-2 sum_P P^{x4} on (C^d)^{x4}; only sensible for n <= 2."""
    d = 1 << n
    if d ** 4 > 1 << 20:
        raise ValueError("Q would not fit; apply it structurally instead")
    dim = d ** 4
    Q = np.zeros((dim, dim), dtype=complex)
    for P in all_paulis(n):
        P2 = np.kron(P, P)
        Q += np.kron(P2, P2)
    return Q / d ** 2


def cycle_trace(p: s4.Perm, ops) -> complex:
    """Tr[T_p (ops[0] x ops[1] x ops[2] x ops[3])] by cycle factorization."""
    total = 1.0 + 0j
    for cyc in p.cycles:
        M = ops[cyc[-1]]
        for a in reversed(cyc[:-1]):
            M = M @ ops[a]
        total *= np.trace(M)
    return total


def trace_perm_q_ops(p: s4.Perm, ops, n: int) -> complex:
    """Tr[T_p Q (ops[0] x ... x ops[3])] via the Pauli decomposition of Q."""
    d = 1 << n
    total = 0.0 + 0j
    for P in all_paulis(n):
        total += cycle_trace(p, [o @ P for o in ops])
    return total / d ** 2


# ---------------------------------------------------------------------------
# uniform Clifford sampling (Koenig-Smolin symplectic + uniform sign bits)

def _sym_inner(v, w) -> int:
    t = 0
    for i in range(len(v) >> 1):
        t += v[2 * i] * w[2 * i + 1] + w[2 * i] * v[2 * i + 1]
    return t % 2


def _transvect(k, v):
    return (v + _sym_inner(k, v) * k) % 2


def _int2bits(i: int, n: int):
    return np.array([(i >> j) & 1 for j in range(n)], dtype=np.int8)


def _find_transvect(x, y):
    out = np.zeros((2, len(x)), dtype=np.int8)
    if np.array_equal(x, y):
        return out
    if _sym_inner(x, y) == 1:
        out[0] = (x + y) % 2
        return out
    z = np.zeros(len(x), dtype=np.int8)
    for i in range(len(x) >> 1):
        ii = 2 * i
        if (x[ii] + x[ii + 1]) and (y[ii] + y[ii + 1]):
            z[ii] = (x[ii] + y[ii]) % 2
            z[ii + 1] = (x[ii + 1] + y[ii + 1]) % 2
            if z[ii] + z[ii + 1] == 0:
                z[ii + 1] = 1
                if x[ii] != x[ii + 1]:
                    z[ii] = 1
            out[0] = (x + z) % 2
            out[1] = (y + z) % 2
            return out
    for i in range(len(x) >> 1):
        ii = 2 * i
        if (x[ii] + x[ii + 1]) and not (y[ii] + y[ii + 1]):
            if x[ii] == x[ii + 1]:
                z[ii + 1] = 1
            else:
                z[ii + 1] = x[ii]
                z[ii] = x[ii + 1]
            break
    else:
        i = -1
    for i in range(len(x) >> 1):
        ii = 2 * i
        if not (x[ii] + x[ii + 1]) and (y[ii] + y[ii + 1]):
            if y[ii] == y[ii + 1]:
                z[ii + 1] = 1
            else:
                z[ii + 1] = y[ii]
                z[ii] = y[ii + 1]
            break
    out[0] = (x + z) % 2
    out[1] = (y + z) % 2
    return out


def num_symplectics(n: int) -> int:
    t = 1
    for j in range(1, n + 1):
        t *= 4 ** j - 1
    return t << (n * n)


def symplectic_from_index(i: int, n: int) -> np.ndarray:
    """Koenig-Smolin bijection index -> Sp(2n, 2), direct-sum form convention."""
    nn = 2 * n
    s = (1 << nn) - 1
    k = (i % s) + 1
    i //= s
    f1 = _int2bits(k, nn)
    e1 = np.zeros(nn, dtype=np.int8)
    e1[0] = 1
    T = _find_transvect(e1, f1)
    bits = _int2bits(i % (1 << (nn - 1)), nn - 1)
    eprime = e1.copy()
    for j in range(2, nn):
        eprime[j] = bits[j - 1]
    h0 = _transvect(T[0], eprime)
    h0 = _transvect(T[1], h0)
    if bits[0] == 1:
        f1 = f1 * 0
    if n != 1:
        g = np.zeros((nn, nn), dtype=np.int8)
        g[:2, :2] = np.eye(2, dtype=np.int8)
        g[2:, 2:] = symplectic_from_index(i >> (nn - 1), n - 1)
    else:
        g = np.eye(2, dtype=np.int8)
    for j in range(nn):
        g[j] = _transvect(T[0], g[j])
        g[j] = _transvect(T[1], g[j])
        g[j] = _transvect(h0, g[j])
        g[j] = _transvect(f1, g[j])
    return g


def _directsum_to_standard(g: np.ndarray, n: int) -> np.ndarray:
    perm = [2 * i for i in range(n)] + [2 * i + 1 for i in range(n)]
    return g[np.ix_(perm, perm)]


def check_symplectic(s: np.ndarray, n: int) -> bool:
    J = np.zeros((2 * n, 2 * n), dtype=np.int8)
    J[:n, n:] = np.eye(n, dtype=np.int8)
    J[n:, :n] = np.eye(n, dtype=np.int8)
    return np.array_equal((s.T @ J @ s) % 2, J)


@dataclass(frozen=True)
class CliffordElement:
    """Stabilizer tableau: column j of `symplectic` is the (x|z) image of X_j,
    column n+j the image of Z_j; sign bits give the +-1 prefactors."""

    n: int
    symplectic: np.ndarray
    x_signs: np.ndarray
    z_signs: np.ndarray

    def image_of_x(self, j: int):
        col = self.symplectic[:, j]
        return int(self.x_signs[j]), col[:self.n], col[self.n:]

    def image_of_z(self, j: int):
        col = self.symplectic[:, self.n + j]
        return int(self.z_signs[j]), col[:self.n], col[self.n:]

    def dense(self) -> np.ndarray:
        """Unitary with U X_j U^+ and U Z_j U^+ equal to the tableau images.

        U|0..0> is the stabilizer state of the signed Z images; the remaining
        columns follow by applying the X images, whose mutual commutation makes
        the phases consistent.
        """
        n, d = self.n, 1 << self.n
        proj = np.eye(d, dtype=complex)
        for j in range(n):
            sgn, x, z = self.image_of_z(j)
            proj = proj @ (np.eye(d) + sgn * pauli_dense(x, z)) / 2
        col = int(np.argmax(np.linalg.norm(proj, axis=0)))
        phi0 = proj[:, col] / np.linalg.norm(proj[:, col])
        px = []
        for j in range(n):
            sgn, x, z = self.image_of_x(j)
            px.append(sgn * pauli_dense(x, z))
        U = np.zeros((d, d), dtype=complex)
        for b in range(d):
            v = phi0
            for j in range(n):
                if (b >> (n - 1 - j)) & 1:
                    v = px[j] @ v
            U[:, b] = v
        return U


def sample_clifford(n: int, rng) -> CliffordElement:
    """Uniformly random Clifford element (mod global phase)."""
    if n > 3:
        raise ValueError("oracle sampling is desk-scale: n <= 3")
    idx = int(rng.integers(num_symplectics(n)))
    S = _directsum_to_standard(symplectic_from_index(idx, n), n)
    return CliffordElement(n, S,
                           1 - 2 * rng.integers(2, size=n),
                           1 - 2 * rng.integers(2, size=n))


def enumerate_cliffords_1q():
    """All 24 single-qubit Cliffords (mod phase), exactly."""
    out = []
    for idx in range(num_symplectics(1)):
        S = _directsum_to_standard(symplectic_from_index(idx, 1), 1)
        for sx in (1, -1):
            for sz in (1, -1):
                out.append(CliffordElement(1, S, np.array([sx]), np.array([sz])))
    return out


def haar_unitary(d: int, rng, size: int | None = None) -> np.ndarray:
    """Haar-random unitaries via QR of complex Gaussians with phase-fixed R."""
    shape = (d, d) if size is None else (size, d, d)
    A = (rng.normal(size=shape) + 1j * rng.normal(size=shape)) / np.sqrt(2)
    Q, R = np.linalg.qr(A)
    diag = np.einsum('...ii->...i', R)
    return Q * (diag / np.abs(diag))[..., None, :]


def sample_clifford_batch(n: int, size: int, rng) -> np.ndarray:
    out = np.empty((size, 1 << n, 1 << n), dtype=complex)
    for i in range(size):
        out[i] = sample_clifford(n, rng).dense()
    return out


def doped_circuit_batch(n: int, k: int, theta: float, size: int, rng) -> np.ndarray:
    """k+1 uniform Clifford layers interleaved with single-qubit Theta gates."""
    th = np.diag([1.0, np.exp(-1j * theta)]).astype(complex)
    gate = kron_all([th] + [I2] * (n - 1))
    out = sample_clifford_batch(n, size, rng)
    for _ in range(k):
        layer = sample_clifford_batch(n, size, rng)
        out = out @ gate[None, :, :] @ layer
    return out


# ---------------------------------------------------------------------------
# dense probe evaluation (batched over group samples)

def _psi0(d):
    v = np.zeros(d, dtype=complex)
    v[0] = 1.0
    return v


def _subsystem_paulis(n: int, first: bool):
    """All Paulis supported on the first (or last) half of an even-n register."""
    nc = n // 2
    out = []
    for ix in range(1 << nc):
        for iz in range(1 << nc):
            xb = [(ix >> (nc - 1 - j)) & 1 for j in range(nc)]
            zb = [(iz >> (nc - 1 - j)) & 1 for j in range(nc)]
            if first:
                out.append(pauli_dense(xb + [0] * (n - nc), zb + [0] * (n - nc)))
            else:
                out.append(pauli_dense([0] * (n - nc) + xb, [0] * (n - nc) + zb))
    return out


def probe_operators(n: int) -> dict:
    """Fixed probe operators: A = Z_1 (echo), A = Z_1 / B = X_n (OTOC, disjoint),
    psi = |0..0>, dephasing basis computational."""
    d = 1 << n
    return {
        "A": pauli_dense([0] * n, [1] + [0] * (n - 1)),
        "B": pauli_dense([0] * (n - 1) + [1], [0] * n),
        "Zall": pauli_dense([0] * n, [1] * n),
        "psi0": _psi0(d),
    }


def probe_samples(kind: str, W: np.ndarray, n: int, ops: dict | None = None) -> np.ndarray:
    """Per-sample probe values for a batch of evolved unitaries W (b, d, d)."""
    d = W.shape[-1]
    if ops is None:
        ops = probe_operators(n)
    Wd = W.conj().swapaxes(-1, -2)
    if kind == "loschmidt2":
        A = ops["A"]
        tr = np.einsum('ij,bjk,kl,bli->b', A, Wd, A, W, optimize=True)
        return np.abs(tr) ** 2 / d ** 2
    if kind == "otoc4":
        A, B = ops["A"], ops["B"]
        M = np.einsum('bij,jk,bkl->bil', Wd, A, W, optimize=True)
        return np.einsum('bij,jk,bkl,li->b', M, B, M, B, optimize=True).real / d
    w = np.einsum('bij,j->bi', W, ops["psi0"])
    if kind in ("coherence", "wyd_cb"):
        return 1.0 - (np.abs(w) ** 4).sum(axis=1)
    if kind == "wyd_pauli":
        ev = np.einsum('bi,i,bi->b', w.conj(), np.diag(ops["Zall"]).real, w).real
        return 1.0 - ev ** 2
    if kind == "purity":
        da = 1 << (n // 2)
        if da * da != d:
            raise ValueError("purity needs a balanced bipartition")
        psi = w.reshape(-1, da, da)
        return np.einsum('bij,bkj,bkl,bil->b', psi, psi.conj(), psi, psi.conj(),
                         optimize=True).real
    if kind in ("tmi_c2", "tmi_cd"):
        da = 1 << (n // 2)
        if da * da != d:
            raise ValueError("tripartite arguments need a balanced bipartition")
        pc = _subsystem_paulis(n, first=True)
        other = pc if kind == "tmi_c2" else _subsystem_paulis(n, first=False)
        out = np.zeros(W.shape[0])
        for P in pc:
            M = np.einsum('bij,jk,bkl->bil', Wd, P, W, optimize=True)
            for P2 in other:
                tr = np.einsum('bij,ji->b', M, P2, optimize=True)
                out += (tr ** 2).real
        return out / da ** 2
    raise ValueError(f"unknown probe kind {kind!r}")


@dataclass(frozen=True)
class MCEstimate:
    kind: str
    t: float
    mean: float
    stderr: float
    n_samples: int


def mc_twirl(kinds, spectrum_energies, ensemble, times, n_samples: int, seed: int,
             n_qubits: int) -> list:
    """Monte-Carlo isospectral twirl: draw G, evolve V -> G^+ V G, average probes.

    ensemble is an EnsembleSpec-like object with .kind / .k / .theta.
    Returns a flat list of MCEstimate, one per (kind, t).
    """
    if n_samples < 1000:
        raise ValueError("use at least 10^3 samples")
    if n_qubits > 3:
        raise ValueError("oracle twirl is desk-scale: n <= 3")
    d = 1 << n_qubits
    E = np.asarray(spectrum_energies, dtype=float)
    if len(E) != d:
        raise ValueError("spectrum length does not match qubit count")
    rng = np.random.default_rng(seed)
    if ensemble.kind == "haar":
        G = haar_unitary(d, rng, size=n_samples)
    elif ensemble.kind == "clifford":
        G = sample_clifford_batch(n_qubits, n_samples, rng)
    elif ensemble.kind == "doped":
        G = doped_circuit_batch(n_qubits, ensemble.k, ensemble.theta, n_samples, rng)
    else:
        raise ValueError(f"unknown ensemble {ensemble.kind!r}")
    Gd = G.conj().swapaxes(-1, -2)
    ops = probe_operators(n_qubits)
    out = []
    for t in times:
        phases = np.exp(-1j * E * t)
        W = np.einsum('bij,j,bjk->bik', Gd, phases, G, optimize=True)
        for kind in kinds:
            vals = probe_samples(kind, W, n_qubits, ops)
            out.append(MCEstimate(kind, float(t), float(vals.mean()),
                                  float(vals.std(ddof=1) / math.sqrt(len(vals))),
                                  len(vals)))
    return out
