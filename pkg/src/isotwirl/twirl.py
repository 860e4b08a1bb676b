"""Fourth-moment operators over Haar, Clifford and T-doped Clifford ensembles.

Every moment operator is carried as a pair of coefficient vectors over the
frozen permutation ordering,

    R^(4)(V^{x2,2}) = sum_pi t_coeffs[pi] T_pi + sum_pi qt_coeffs[pi] Q T_pi,

never as a d^4 x d^4 matrix.  The doping matrix Xi lives in the commutative
algebra of matrices M[i,j] = f(pi_i pi_j); its spectral decomposition is block
diagonal on the five S4 isotypic projectors E_lam with the only nonzero
eigenvalues xi_plus (l1), xi_1 (l3, fourfold) and xi_minus (l5), so powers and
geometric sums are assembled exactly from the block projectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import s4, weingarten
from .spectral import FormFactors

TAU_DEFAULT = math.pi / 4  # T gate


def _class_matrix(values: dict) -> np.ndarray:
    M = np.empty((24, 24))
    for i in range(24):
        for j in range(24):
            M[i, j] = values[s4.PERMS[s4.compose_index(i, j)].cls]
    return M


@lru_cache(maxsize=None)
def weingarten_matrix(kind: str, d: int) -> np.ndarray:
    return np.array(weingarten.by_inversion(kind, d).as_float_matrix())


@lru_cache(maxsize=None)
def block_projector(lam: int) -> np.ndarray:
    """Isotypic projector E_lam with entries (d_lam/24) chi^lam(pi_i pi_j^-1)."""
    M = np.empty((24, 24))
    inv_index = [s4.PERM_INDEX[s4.inverse(p.oneline)] for p in s4.PERMS]
    for i in range(24):
        for j in range(24):
            k = s4.compose_index(i, inv_index[j])
            M[i, j] = s4.IRREP_DIMS[lam] / 24 * s4.CHARACTERS[s4.PERMS[k].cls][lam]
    return M


def c_vector(ff: FormFactors) -> np.ndarray:
    """Tr[T_pi V^{x2,2}] per permutation, from the fine-class table."""
    d = float(ff.d)
    vals = {
        s4.FINE_ID: ff.g4,
        s4.FINE_T12: ff.g3,
        s4.FINE_T34: np.conj(ff.g3),
        s4.FINE_TMIX: d * ff.g2,
        s4.FINE_C3V: ff.g2,
        s4.FINE_C3W: ff.g2,
        s4.FINE_X4: d,
        s4.FINE_N4: d,
        s4.FINE_D1234: ff.g2_2t,
        s4.FINE_DMIX: d * d,
    }
    return np.array([vals[p.fine] for p in s4.PERMS], dtype=complex)


def q_vector_stabilizer(ff: FormFactors) -> np.ndarray:
    """Tr[T_pi Q V^{x2,2}] for a stabilizer Hamiltonian (crossing 4-cycles are
    the alternating-word pair)."""
    if not ff.stabilizer_ok:
        raise ValueError("q vector needs stabilizer-valid form factors (g3tilde)")
    d = float(ff.d)
    vals = {
        s4.FINE_ID: ff.g3tilde,
        s4.FINE_T12: ff.g2_2t / d,
        s4.FINE_T34: ff.g2_2t / d,
        s4.FINE_TMIX: d,
        s4.FINE_C3V: 1.0,
        s4.FINE_C3W: 1.0,
        s4.FINE_X4: ff.g2_2t / d,
        s4.FINE_N4: d,
        s4.FINE_D1234: ff.g3tilde,
        s4.FINE_DMIX: ff.g3tilde,
    }
    return np.array([vals[p.fine] for p in s4.PERMS], dtype=complex)


@dataclass(frozen=True)
class MomentCoeffs:
    """R^(4) = sum t_coeffs[pi] T_pi + sum qt_coeffs[pi] Q T_pi."""

    d: int
    t_coeffs: np.ndarray
    qt_coeffs: np.ndarray
    ensemble: str = ""

    def contract(self, probe_t: np.ndarray, probe_qt: np.ndarray) -> complex:
        """Value of Tr[probe . R^(4)] given the probe's T- and QT-trace vectors."""
        return self.t_coeffs @ probe_t + self.qt_coeffs @ probe_qt


def haar_moment4(ff: FormFactors) -> MomentCoeffs:
    W = weingarten_matrix(weingarten.PLAIN, ff.d)
    return MomentCoeffs(ff.d, W @ c_vector(ff), np.zeros(24, dtype=complex), "haar")


def clifford_moment4(ff: FormFactors) -> MomentCoeffs:
    t, b = tb_vectors(ff)
    return MomentCoeffs(ff.d, b, t, "clifford")


def tb_vectors(ff: FormFactors):
    """t = W+ q - W- q_perp and b = W- q_perp for the doped recursion."""
    Wp = weingarten_matrix(weingarten.PLUS, ff.d)
    Wm = weingarten_matrix(weingarten.MINUS, ff.d)
    q = q_vector_stabilizer(ff)
    q_perp = c_vector(ff) - q
    return Wp @ q - Wm @ q_perp, Wm @ q_perp


def second_moment_coeffs(ff: FormFactors):
    """Haar second moment of V^{x1,1}: coefficients of I and the swap on C^d x C^d."""
    d = float(ff.d)
    return ((ff.g2 - 1) / (d * d - 1), (d * d - ff.g2) / (d * (d * d - 1)))


# ---------------------------------------------------------------------------
# doping machinery

def theta_layer_class_values(theta: float, d: int) -> dict:
    """Class values of the single-Theta-layer kernel Tr[T^R Q~_R]."""
    c4 = math.cos(4 * theta)
    c2sq = math.cos(2 * theta) ** 2
    return {
        s4.CLASS_ID: 4 * (math.cos(theta) ** 4 + math.sin(theta) ** 4) * d * d,
        s4.CLASS_TWO: 4 * c2sq * d,
        s4.CLASS_TWOTWO: (3 + c4) * d * d,
        s4.CLASS_THREE: 4 * c4,
        s4.CLASS_FOUR: 4 * c2sq * d,
    }


def xi_eigenvalues(d: int, theta: float) -> dict:
    """Generic-d closed forms for the nonzero Xi eigenvalues.

    Valid for d > 4; at d = 4 the l1 sector of Omega^- is empty (D-_l1 = 0) and
    the assembled Xi has eigenvalue exactly 1 there instead of xi_plus.
    """
    c4 = math.cos(4 * theta)
    den = 8 * (d * d - 1)
    xi_p = ((7 + c4) * d * d + 3 * d * (1 - c4) - 8) / den
    xi_m = ((7 + c4) * d * d - 3 * d * (1 - c4) - 8) / den
    return {"xi_plus": xi_p, "xi_minus": xi_m, "xi_1": 0.5 * (xi_p + xi_m)}


def _eigvec(entries) -> np.ndarray:
    v = np.zeros(24)
    for p, w in entries:
        v[p.index] += w
    return v


@lru_cache(maxsize=None)
def xi_eigenvectors() -> tuple:
    """The six eigenvectors (T+, T-, T1..T4) as orthonormal 24-vectors.

    T+ and T- are the sign- and trivial-irrep projector directions; T1..T4 span
    the fourfold block.  Labels of the 4-cycles follow the crossing convention
    fixed by the trace words (the source text's 4-cycle labels are permuted).
    """
    from .s4 import perm_from_cycles as pc
    sq2, sq6 = 2 * math.sqrt(2), 2 * math.sqrt(6)
    t_plus = _eigvec([(p, s4.CHARACTERS[p.cls][0]) for p in s4.PERMS]) / sq6
    t_minus = _eigvec([(p, 1.0) for p in s4.PERMS]) / sq6
    threes_a = [pc((1, 2, 4)), pc((1, 3, 2)), pc((1, 4, 3)), pc((2, 3, 4))]
    threes_b = [p for p in s4.PERMS if p.cls == s4.CLASS_THREE and p not in threes_a]
    twotwos = [p for p in s4.PERMS if p.cls == s4.CLASS_TWOTWO]
    t1 = _eigvec([(s4.IDENTITY, 1.0)] + [(p, -1.0) for p in threes_a]
                 + [(p, 1.0) for p in twotwos]) / sq2
    t2 = _eigvec([(pc((1, 3)), 1.0), (pc((2, 4)), 1.0),
                  (pc((1, 4)), -1.0), (pc((2, 3)), -1.0),
                  (pc((1, 3, 4, 2)), -1.0), (pc((1, 2, 4, 3)), -1.0),
                  (pc((1, 2, 3, 4)), 1.0), (pc((1, 4, 3, 2)), 1.0)]) / sq2
    t3 = _eigvec([(pc((1, 2)), 2.0), (pc((3, 4)), 2.0),
                  (pc((1, 3)), -1.0), (pc((1, 4)), -1.0),
                  (pc((2, 3)), -1.0), (pc((2, 4)), -1.0),
                  (pc((1, 3, 2, 4)), 2.0), (pc((1, 4, 2, 3)), 2.0),
                  (pc((1, 2, 3, 4)), -1.0), (pc((1, 2, 4, 3)), -1.0),
                  (pc((1, 3, 4, 2)), -1.0), (pc((1, 4, 3, 2)), -1.0)]) / sq6
    t4 = -_eigvec([(s4.IDENTITY, 1.0)] + [(p, 1.0) for p in threes_a]
                  + [(p, -2.0) for p in threes_b]
                  + [(p, 1.0) for p in twotwos]) / sq6
    return t_plus, t_minus, t1, t2, t3, t4


@dataclass(frozen=True)
class XiMatrix:
    """Assembled doping matrix with its exact block spectral data."""

    d: int
    theta: float
    matrix: np.ndarray
    lam_matrix: np.ndarray            # Lambda = W- (K1 - K2)
    block_eigenvalues: dict           # irrep index -> eigenvalue (l1, l3, l5)
    closed_form: dict                 # generic-d closed forms

    @property
    def eigenvalues(self) -> np.ndarray:
        """Full 24-spectrum: the three block eigenvalues with multiplicities 1,4,1
        plus 18 zeros."""
        out = ([self.block_eigenvalues[0]] + [self.block_eigenvalues[2]] * 4
               + [self.block_eigenvalues[4]] + [0.0] * 18)
        return np.array(sorted(out, reverse=True))

    @property
    def eigenvectors(self) -> tuple:
        return xi_eigenvectors()


def xi_matrix(d: int, theta: float = TAU_DEFAULT) -> XiMatrix:
    if d < 2 or (d & (d - 1)):
        raise ValueError(f"d must be a power of two >= 2, got {d}")
    Wp = weingarten_matrix(weingarten.PLUS, d)
    Wm = weingarten_matrix(weingarten.MINUS, d)
    fplus = {c: float(weingarten.gram_class_value(weingarten.PLUS, c, d))
             for c in s4.CLASSES}
    K1 = _class_matrix(fplus)
    theta_vals = theta_layer_class_values(theta, d)
    K2 = _class_matrix({c: 0.5 * fplus[c] + 0.125 * theta_vals[c] for c in s4.CLASSES})
    Xi = (Wp + Wm) @ K2 - Wm @ K1
    Lam = Wm @ (K1 - K2)
    blocks = {}
    for lam in (0, 2, 4):
        E = block_projector(lam)
        v = E[:, 0]
        blocks[lam] = float(v @ (Xi @ v) / (v @ v))
    return XiMatrix(d, theta, Xi, Lam, blocks, xi_eigenvalues(d, theta))


def doped_moment4(ff: FormFactors, k: int, theta: float = TAU_DEFAULT,
                  xi: XiMatrix | None = None) -> MomentCoeffs:
    """Moment coefficients after k doped layers; k=0 is the Clifford moment and
    k -> infinity converges entrywise to the Haar moment."""
    if k < 0:
        raise ValueError("layer count k must be >= 0")
    if math.isclose(math.cos(2 * theta) ** 2, 1.0) and k > 0:
        raise ValueError("theta = n*pi/2 does not dope (Theta is Clifford)")
    t, b = tb_vectors(ff)
    if k == 0:
        return MomentCoeffs(ff.d, b, t, "doped")
    if xi is None or xi.d != ff.d or xi.theta != theta:
        xi = xi_matrix(ff.d, theta)
    lam_t = xi.lam_matrix.T @ t
    qt = np.zeros(24, dtype=complex)
    t_extra = np.zeros(24, dtype=complex)
    for lam, ev in xi.block_eigenvalues.items():
        E = block_projector(lam)
        qt += (ev ** k) * (E @ t)
        if math.isclose(ev, 1.0, abs_tol=1e-13):
            geo = float(k)
        else:
            geo = (1.0 - ev ** k) / (1.0 - ev)
        t_extra += geo * (E @ lam_t)
    return MomentCoeffs(ff.d, b + t_extra, qt, "doped")
