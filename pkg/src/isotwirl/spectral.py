"""Spectral form factors from explicit spectra and their GDE/GUE ensemble averages.

Conventions fixed here:

* ``g2(t) = |Tr V|^2``, ``g3(t) = Tr[V^2] (Tr V^+)^2`` (complex; only its real
  part enters probe values), ``g4(t) = |Tr V|^4``.
* ``g3tilde(t) = d^-1 sum_{ijk} exp(-i(E_i + E_j - E_k - E_{i^j^k}) t)`` for
  spectra indexed by bitstrings (any Hamiltonian diagonal in the computational
  basis); computed in O(d^2) per time point via
  ``g3tilde = d^-1 sum_x |A_x|^2`` with ``A_x = sum_i exp(-i(E_i + E_{i^x})t)``.
* GUE building blocks ``r1(t) = J1(2t)/t``, ``r2(t) = theta(2d-t)(1 - t/2d)``
  (dimensionless ramp; every average carries its explicit d factors, fixed by
  the t=0 and long-time limits), ``r3(t) = sinc(t/2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.special import j1


@dataclass(frozen=True)
class Spectrum:
    """Energy spectrum; bitstring_indexed means index i is the N-bit label of a
    computational-basis eigenstate, making the XOR structure of g3tilde valid."""

    energies: np.ndarray
    bitstring_indexed: bool = False

    def __post_init__(self):
        object.__setattr__(self, "energies", np.asarray(self.energies, dtype=float))
        if not np.all(np.isfinite(self.energies)):
            raise ValueError("spectrum contains non-finite energies")
        if self.bitstring_indexed and self.d & (self.d - 1):
            raise ValueError("bitstring-indexed spectrum needs d = 2^N")

    @property
    def d(self) -> int:
        return len(self.energies)


@dataclass(frozen=True)
class FormFactors:
    """Spectral form factor bundle at one time point."""

    t: float
    d: int
    g2: float
    g2_2t: float
    g3: complex
    g4: float
    g3tilde: Optional[float] = None   # None when the source has no stabilizer structure
    source: str = "explicit"

    @property
    def g3_re(self) -> float:
        return self.g3.real

    @property
    def stabilizer_ok(self) -> bool:
        return self.g3tilde is not None


def sff_explicit(spectrum: Spectrum, t: float) -> FormFactors:
    """g2, g2(2t), g3, g4 by direct O(d) phase sums; g3tilde when bitstring-indexed."""
    E = spectrum.energies
    z1 = np.exp(-1j * E * t).sum()
    z2 = np.exp(-2j * E * t).sum()
    g3t = sff_clifford_cb(spectrum, t) if spectrum.bitstring_indexed else None
    return FormFactors(t=t, d=spectrum.d, g2=abs(z1) ** 2, g2_2t=abs(z2) ** 2,
                       g3=z2 * np.conj(z1) ** 2, g4=abs(z1) ** 4, g3tilde=g3t,
                       source="explicit")


def sff_clifford_cb(spectrum: Spectrum, t: float) -> float:
    """Clifford three-point form factor for a computational-basis Hamiltonian."""
    if not spectrum.bitstring_indexed:
        raise ValueError("g3tilde needs a bitstring-indexed spectrum (d = 2^N)")
    E = spectrum.energies
    d = spectrum.d
    idx = np.arange(d)
    tot = 0.0
    for x in range(d):
        Ax = np.exp(-1j * (E + E[idx ^ x]) * t).sum()
        tot += abs(Ax) ** 2
    return tot / d


# ---------------------------------------------------------------------------
# GDE: independent Gaussian levels of variance 1/4 (density ~ exp(-2 E^2)),
# so a phase sum with coefficient vector a has average exp(-(sum a^2) t^2 / 8).

def gde_averages(d: int, t: float) -> FormFactors:
    if d < 2:
        raise ValueError(f"dimension d must be >= 2, got {d}")
    e1 = math.exp(-t * t / 4)        # (E_i - E_j), two distinct levels
    e2 = math.exp(-t * t)            # 2(E_i - E_j)
    e3 = math.exp(-3 * t * t / 4)    # (2E_i - E_j - E_k), three distinct
    e4 = math.exp(-t * t / 2)        # (E_i + E_j - E_k - E_l), four distinct
    g2 = d + d * (d - 1) * e1
    g2_2t = d + d * (d - 1) * e2
    g3 = d + d * (d - 1) * e2 + 2 * d * (d - 1) * e1 + d * (d - 1) * (d - 2) * e3
    g4 = (d + 2 * d * (d - 1) + d * (d - 1) * e2 + 4 * d * (d - 1) ** 2 * e1
          + 2 * d * (d - 1) * (d - 2) * e3 + d * (d - 1) * (d - 2) * (d - 3) * e4)
    g3t = 1 + 2 * (d - 1) + (d - 1) * e2 + (d - 1) * (d - 2) * e4
    return FormFactors(t=t, d=d, g2=g2, g2_2t=g2_2t, g3=complex(g3), g4=g4,
                       g3tilde=g3t, source="gde")


def sample_gde_spectra(d: int, n: int, rng) -> np.ndarray:
    """n GDE spectra, shape (n, d); level density ~ exp(-2 E^2)."""
    return rng.normal(scale=0.5, size=(n, d))


# ---------------------------------------------------------------------------
# GUE in the box approximation: semicircle support [-2, 2], Heisenberg time 2d.

def r1(t):
    t = np.asarray(t, dtype=float)
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.where(t == 0, 1.0, j1(2 * t) / np.where(t == 0, 1.0, t))
    return out if out.ndim else float(out)


def r2(t, d):
    t = np.asarray(t, dtype=float)
    out = np.where(t < 2 * d, 1.0 - t / (2 * d), 0.0)
    return out if out.ndim else float(out)


def r3(t):
    t = np.asarray(t, dtype=float)
    x = np.pi * t / 2
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.where(t == 0, 1.0, np.sin(x) / np.where(x == 0, 1.0, x))
    return out if out.ndim else float(out)


def _gue_pair(d, t):
    return d * d * r1(t) ** 2 - d * r2(t, d)


def _gue_three_distinct(d, t):
    """sum over i != j != k of exp(-i(2E_i - E_j - E_k) t), GUE average."""
    return (d ** 3 * r1(t) ** 2 * r1(2 * t)
            - d * d * r1(2 * t) * r2(t, d) * r3(2 * t)
            - 2 * d * d * r1(t) * r2(2 * t, d) * r3(t)
            + 2 * d * r2(3 * t, d))


def _gue_four_distinct(d, t):
    """sum over four distinct indices of exp(-i(E_i + E_j - E_k - E_l) t)."""
    return (d ** 4 * r1(t) ** 4
            - 6 * d * r2(2 * t, d)
            - 2 * d ** 3 * r1(t) ** 2 * r2(t, d) * r3(2 * t)
            - 4 * d ** 3 * r1(t) ** 2 * r2(t, d)
            + 2 * d * d * r2(t, d) ** 2
            + d * d * r2(t, d) ** 2 * r3(2 * t) ** 2
            + 8 * d * d * r1(t) * r2(t, d) * r3(t))


def gue_averages(d: int, t: float) -> FormFactors:
    """Closed-form GUE averages; large-d box approximation (use d >= 4)."""
    if d < 4:
        raise ValueError(f"GUE closed forms assume d >= 4, got {d}")
    pair = _gue_pair(d, t)
    pair2 = _gue_pair(d, 2 * t)
    g3c = _gue_three_distinct(d, t)
    g4c = _gue_four_distinct(d, t)
    g2 = d + pair
    g2_2t = d + pair2
    g3 = d + pair2 + 2 * pair + g3c
    g4 = g4c + 2 * g3c + 4 * (d - 1) * pair + pair2 + 2 * d * (d - 1) + d
    g3t = 1 + 2 * (d - 1) + pair2 / d + g4c / (d * (d - 3))
    return FormFactors(t=t, d=d, g2=g2, g2_2t=g2_2t, g3=complex(g3), g4=g4,
                       g3tilde=g3t, source="gue")


def sample_gue_spectra(d: int, n: int, rng) -> np.ndarray:
    """n GUE spectra, shape (n, d); entries of width d^-1/2, support ~ [-2, 2]."""
    out = np.empty((n, d))
    for i in range(n):
        a = (rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))) / np.sqrt(2)
        h = (a + a.conj().T) / np.sqrt(2 * d)
        out[i] = np.linalg.eigvalsh(h)
    return out


def envelope_g2(d: int, t) -> float:
    """Oscillation-suppressed GUE g2: Bessel-tail decay plus the saturating ramp."""
    t = np.asarray(t, dtype=float)
    out = d * d / (np.pi * t ** 3) + np.minimum(t / 2, float(d))
    return out if out.ndim else float(out)


def envelope_g4(d: int, t) -> float:
    """Oscillation-suppressed GUE g4 (large-d envelope)."""
    t = np.asarray(t, dtype=float)
    rr = r2(t, d)
    out = (d ** 4 / (np.pi ** 2 * t ** 6)
           + d * d * (2 - 31 / (8 * np.pi * t ** 3)
                      - (8 * r2(2 * t, d) - 16 * rr + rr / np.sqrt(2))
                      / (np.pi ** 1.5 * t ** 2.5)
                      - 4 * rr + 2 * rr ** 2 + rr ** 2 / (np.pi ** 2 * t ** 2)))
    return out if out.ndim else float(out)


def envelope_g3tilde(d: int, t) -> float:
    """Oscillation-suppressed GUE g3tilde (large-d envelope)."""
    t = np.asarray(t, dtype=float)
    rr = r2(t, d)
    out = 2 * d + d * d * (1 / (np.pi ** 2 * t ** 6) - 4 * rr / (np.pi ** 2 * t ** 3)
                           - 2 * rr / (np.pi ** 3 * t ** 4)
                           + 2 * rr ** 2 / d + rr ** 2 / (np.pi ** 2 * t ** 2 * d))
    return out if out.ndim else float(out)


def envelope_times(d: int) -> dict:
    """Characteristic (value, time) pairs of the GUE envelopes, plus derived
    equilibration markers; diagnostic data only."""
    return {
        "g2": [(d, 1.0), (d ** 1.5, d ** (1 / 6)), (d, d ** (1 / 3)),
               (d ** 0.5, d ** 0.5), (d, float(d))],
        "g3tilde": [(2 * d, 1.0), (3 * d, d ** (1 / 6)), (2 * d, d ** (1 / 3)),
                    (2 * d, d ** 0.5), (2 * d, float(d))],
        "g4": [(d ** 2, 1.0), (d ** 3, d ** (1 / 6)), (d ** 2, d ** (1 / 3)),
               (d, d ** 0.5), (d ** 2, float(d))],
        "t_eq": {"g2": d ** (1 / 3), "g3tilde": d ** (1 / 3), "g4": float(d)},
        "long_time": {"g2": float(d), "g3tilde": 2.0 * d, "g4": 2.0 * d ** 2},
    }
