"""Group-averaged probes of chaos as functions of the spectral form factors.

The authoritative evaluation path assembles every probe from its fine-class
trace tables dotted into the Weingarten / doping machinery
(:func:`evaluate`).  The long closed-form expressions quoted for the Haar,
Clifford and T-doped averages are kept in :func:`closed_form` purely as
regression fixtures; :func:`reassembly_report` compares the two paths and
emits a structured mismatch report.

Assumptions baked into the tables: probe operators are Pauli strings with the
stated overlap conditions, the initial state is the all-zeros computational
state, bipartitions are balanced (d_C = d_D = sqrt(d)), and the dephasing
basis is computational.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import s4, twirl
from .spectral import FormFactors
from .twirl import MomentCoeffs

LOSCHMIDT2 = "loschmidt2"
OTOC4 = "otoc4"
TMI_C2 = "tmi_c2"
TMI_CD = "tmi_cd"
PURITY = "purity"
COHERENCE = "coherence"
WYD_PAULI = "wyd_pauli"
WYD_CB = "wyd_cb"
PROBE_KINDS = (LOSCHMIDT2, OTOC4, TMI_C2, TMI_CD, PURITY, COHERENCE, WYD_PAULI, WYD_CB)

# probes reported as 1 - (fourth-moment trace term)
_ONE_MINUS = {COHERENCE, WYD_PAULI, WYD_CB}
# probes needing a balanced bipartition
_NEEDS_SQUARE = {TMI_C2, TMI_CD, PURITY}

_P1423 = s4.perm_from_cycles((1, 4, 2, 3))
_P1324 = s4.perm_from_cycles((1, 3, 2, 4))
_P14_23 = s4.perm_from_cycles((1, 4), (2, 3))
_P13_24 = s4.perm_from_cycles((1, 3), (2, 4))


@dataclass(frozen=True)
class EnsembleSpec:
    """Which group average: haar | clifford | doped{k, theta}."""

    kind: str
    k: int = 0
    theta: float = twirl.TAU_DEFAULT

    def __post_init__(self):
        if self.kind not in ("haar", "clifford", "doped"):
            raise ValueError(f"unknown ensemble kind {self.kind!r}")
        if self.kind == "doped":
            if self.k < 0:
                raise ValueError("doping layer count must be >= 0")
            if math.isclose(math.cos(2 * self.theta) ** 2, 1.0) and self.k > 0:
                raise ValueError("theta = n*pi/2 is Clifford, not a doping gate")

    def label(self) -> str:
        if self.kind == "doped":
            return f"doped_k{self.k}"
        return self.kind


def _fine_tables(kind: str, d: int):
    """Per-fine-class trace values (H and Q columns) and the probe permutation."""
    dd = float(d)
    sd = math.sqrt(dd)
    if kind in _NEEDS_SQUARE and not math.isclose(sd, round(sd)):
        raise ValueError(f"{kind} needs a balanced bipartition: d={d} is not a square")
    if kind == LOSCHMIDT2:
        probe, pref = _P14_23, 1.0 / dd ** 2
        H = {s4.FINE_ID: 0.0, s4.FINE_T12: 0.0, s4.FINE_T34: 0.0, s4.FINE_TMIX: 0.0,
             s4.FINE_C3V: 0.0, s4.FINE_C3W: 0.0, s4.FINE_X4: dd, s4.FINE_N4: dd,
             s4.FINE_D1234: dd * dd, s4.FINE_DMIX: dd * dd}
        Q = {s4.FINE_ID: dd * dd, s4.FINE_T12: dd, s4.FINE_T34: dd, s4.FINE_TMIX: dd,
             s4.FINE_C3V: 1.0, s4.FINE_C3W: 1.0, s4.FINE_X4: dd, s4.FINE_N4: dd,
             s4.FINE_D1234: dd * dd, s4.FINE_DMIX: dd * dd}
    elif kind == OTOC4:
        probe, pref = _P1423, 1.0 / dd
        H = {s4.FINE_ID: 0.0, s4.FINE_T12: 0.0, s4.FINE_T34: 0.0, s4.FINE_TMIX: 0.0,
             s4.FINE_C3V: 0.0, s4.FINE_C3W: 0.0, s4.FINE_X4: dd, s4.FINE_N4: dd,
             s4.FINE_D1234: dd * dd, s4.FINE_DMIX: 0.0}
        Q = {s4.FINE_ID: 0.0, s4.FINE_T12: dd, s4.FINE_T34: dd, s4.FINE_TMIX: 0.0,
             s4.FINE_C3V: 1.0, s4.FINE_C3W: 1.0, s4.FINE_X4: dd, s4.FINE_N4: 0.0,
             s4.FINE_D1234: 0.0, s4.FINE_DMIX: 0.0}
    elif kind == PURITY:
        probe, pref = _P13_24, 1.0
        dA = dB = sd
        H = {s4.FINE_ID: dd * dB, s4.FINE_T12: dd * dB, s4.FINE_T34: dd * dA,
             s4.FINE_TMIX: dB, s4.FINE_C3V: dA, s4.FINE_C3W: dB,
             s4.FINE_X4: 1.0, s4.FINE_N4: dA, s4.FINE_D1234: dd * dA, s4.FINE_DMIX: 1.0}
        Q = {s4.FINE_ID: 1.0, s4.FINE_T12: 1.0, s4.FINE_T34: 1.0, s4.FINE_TMIX: 1 / dd,
             s4.FINE_C3V: 1 / dd, s4.FINE_C3W: 1 / dd, s4.FINE_X4: 1.0,
             s4.FINE_N4: 1 / dd, s4.FINE_D1234: 1.0, s4.FINE_DMIX: 1.0}
    elif kind == TMI_C2:
        probe, pref = _P13_24, 1.0
        dC2 = dD2 = dd
        H = {s4.FINE_ID: dd * dd * dD2, s4.FINE_T12: dd ** 3, s4.FINE_T34: dd ** 3,
             s4.FINE_TMIX: dd * dD2, s4.FINE_C3V: dd * dd, s4.FINE_C3W: dd * dd,
             s4.FINE_X4: dd, s4.FINE_N4: dd * dC2, s4.FINE_D1234: dd * dd * dC2,
             s4.FINE_DMIX: dd * dd}
        Q = {s4.FINE_ID: dd * dd, s4.FINE_T12: dd, s4.FINE_T34: dd, s4.FINE_TMIX: dd,
             s4.FINE_C3V: 1.0, s4.FINE_C3W: 1.0, s4.FINE_X4: dd, s4.FINE_N4: dd,
             s4.FINE_D1234: dd * dd, s4.FINE_DMIX: dd * dd}
    elif kind == TMI_CD:
        probe, pref = _P13_24, 1.0
        dC2 = dD2 = dd
        H = {s4.FINE_ID: dd ** 3, s4.FINE_T12: dd * dd * dC2, s4.FINE_T34: dd * dd * dD2,
             s4.FINE_TMIX: dd * dd, s4.FINE_C3V: dd * dD2, s4.FINE_C3W: dd * dC2,
             s4.FINE_X4: dd * dd, s4.FINE_N4: dd * dd, s4.FINE_D1234: dd ** 3,
             s4.FINE_DMIX: dd}
        Q = {s4.FINE_ID: dd, s4.FINE_T12: dd * dd, s4.FINE_T34: dd * dd,
             s4.FINE_TMIX: 1.0, s4.FINE_C3V: dd, s4.FINE_C3W: dd, s4.FINE_X4: dd * dd,
             s4.FINE_N4: 1.0, s4.FINE_D1234: dd, s4.FINE_DMIX: dd}
    elif kind in (COHERENCE, WYD_CB):
        probe = _P13_24 if kind == COHERENCE else _P1423
        pref = 1.0
        H = {s4.FINE_ID: dd, s4.FINE_T12: dd, s4.FINE_T34: dd, s4.FINE_TMIX: 1.0,
             s4.FINE_C3V: 1.0, s4.FINE_C3W: 1.0, s4.FINE_X4: 1.0, s4.FINE_N4: 1.0,
             s4.FINE_D1234: dd, s4.FINE_DMIX: 1.0}
        Q = {s4.FINE_ID: 1.0, s4.FINE_T12: 1.0, s4.FINE_T34: 1.0, s4.FINE_TMIX: 1 / dd,
             s4.FINE_C3V: 1 / dd, s4.FINE_C3W: 1 / dd, s4.FINE_X4: 1.0,
             s4.FINE_N4: 1 / dd, s4.FINE_D1234: 1.0, s4.FINE_DMIX: 1.0}
    elif kind == WYD_PAULI:
        probe, pref = _P1423, 1.0
        H = {s4.FINE_ID: 0.0, s4.FINE_T12: dd, s4.FINE_T34: 0.0, s4.FINE_TMIX: 0.0,
             s4.FINE_C3V: 0.0, s4.FINE_C3W: 1.0, s4.FINE_X4: 1.0, s4.FINE_N4: 1.0,
             s4.FINE_D1234: dd, s4.FINE_DMIX: 1.0}
        Q = {s4.FINE_ID: 1.0, s4.FINE_T12: 1.0, s4.FINE_T34: 1.0, s4.FINE_TMIX: 1 / dd,
             s4.FINE_C3V: 1 / dd, s4.FINE_C3W: 1 / dd, s4.FINE_X4: 1.0,
             s4.FINE_N4: 1 / dd, s4.FINE_D1234: 1.0, s4.FINE_DMIX: 1.0}
    else:
        raise ValueError(f"unknown probe kind {kind!r}")
    return probe, pref, H, Q


@lru_cache(maxsize=None)
def probe_vectors(kind: str, d: int):
    """(prefactor, T-basis trace vector, QT-basis trace vector) for a probe.

    Entry pi of the T vector is Tr[T_pi T_probe (operator slots)], looked up by
    the fine class of pi composed with the probe permutation.
    """
    probe, pref, H, Q = _fine_tables(kind, d)
    ph = np.empty(24)
    pq = np.empty(24)
    for p in s4.PERMS:
        f = s4.PERMS[s4.compose_index(p.index, probe.index)].fine
        ph[p.index] = H[f]
        pq[p.index] = Q[f]
    return pref, ph, pq


def moment_for(ff: FormFactors, ensemble: EnsembleSpec) -> MomentCoeffs:
    if ensemble.kind == "haar":
        return twirl.haar_moment4(ff)
    if ensemble.kind == "clifford":
        return twirl.clifford_moment4(ff)
    return twirl.doped_moment4(ff, ensemble.k, ensemble.theta)


def evaluate(kind: str, ff: FormFactors, ensemble: EnsembleSpec,
             moment: MomentCoeffs | None = None) -> float:
    """Table-driven probe value (the authoritative path)."""
    if ff.d <= 3:
        raise ValueError("probe denominators have poles at d <= 3")
    pref, ph, pq = probe_vectors(kind, ff.d)
    if moment is None:
        moment = moment_for(ff, ensemble)
    val = pref * moment.contract(ph.astype(complex), pq.astype(complex))
    if abs(val.imag) > 1e-8 * max(1.0, abs(val.real)):
        raise AssertionError(f"probe value unexpectedly complex: {val}")
    v = val.real
    return 1.0 - v if kind in _ONE_MINUS else v


def tripartite_bound(ff: FormFactors, ensemble: EnsembleSpec):
    """(I3 C^2 argument, I3 CD argument, log d + log(.) + log(.) bound)."""
    a1 = evaluate(TMI_C2, ff, ensemble)
    a2 = evaluate(TMI_CD, ff, ensemble)
    return a1, a2, math.log(ff.d) + math.log(a1) + math.log(a2)


# ---------------------------------------------------------------------------
# transcribed closed forms (regression fixtures)

def closed_form(kind: str, ff: FormFactors, ensemble: EnsembleSpec) -> float:
    d = float(ff.d)
    g2, g22, g4 = ff.g2, ff.g2_2t, ff.g4
    gs = 2.0 * ff.g3_re            # g3 + g3^*
    g3t = ff.g3tilde
    if ensemble.kind == "haar":
        if kind == LOSCHMIDT2:
            return ((d ** 4 + (g22 - 4 * g2 + g4 - 9) * d ** 2 - gs * d
                     - 6 * (g22 - 4 * g2 + g4)) / (d ** 2 * (d ** 4 - 10 * d ** 2 + 9)))
        if kind == OTOC4:
            # quoted numerator is d times the normalized OTOC
            return ((-3 * gs + (9 + g22 - 4 * g2 + g4) * d - d ** 3)
                    / ((d * d - 1) * (d * d - 9))) / d
        if kind == TMI_C2:
            return ((3 * gs + (g22 - 4 * g2 + g4) * (d * d - d) - 3 * d * gs
                     - 18 * d ** 3 + 2 * d ** 5) / ((d - 3) * d * (d + 1) * (d + 3)))
        if kind == TMI_CD:
            return ((3 * (g22 - 4 * g2 + g4) - (3 * g22 - 12 * g2 + gs + 3 * g4) * d
                     + gs * d ** 2 - 18 * d ** 3 + 2 * d ** 5)
                    / ((d - 3) * d * (d + 1) * (d + 3)))
        if kind == PURITY:
            s = math.sqrt(d)
            return -((g22 - 4 * g2 + gs + g4 - g22 * s
                      - s * (-4 * g2 + gs + g4 + 2 * (1 + s) * d ** 2 * (3 + d)))
                     / ((1 + s) * d ** 2 * (1 + d) * (3 + d)))
        if kind in (COHERENCE, WYD_CB):
            return 1.0 - (g22 - 4 * g2 + gs + g4 + 2 * d ** 2 * (3 + d)) / (d ** 2 * (1 + d) * (3 + d))
        if kind == WYD_PAULI:
            return 1.0 - ((g22 - 4 * g2 + gs + g4 + (d - 1) * d * (d + 3))
                          / ((d - 1) * d * (d + 1) * (d + 3)))
    elif ensemble.kind == "clifford":
        if kind == LOSCHMIDT2:
            return (g3t - 1) / (d * d - 1)
        if kind == OTOC4:
            return (d * (4 - 2 * g22 + (-3 + g3t) * d ** 2)
                    / ((d * d - 1) * (d * d - 4))) / d
        if kind == TMI_C2:
            return ((-2 * g22 * (d - 1) + d * d * (-6 + g3t * (d - 1) + 2 * (d - 1) * d))
                    / ((1 + d) * (d * d - 4)))
        if kind == TMI_CD:
            return (d * (g22 * (d - 1) + 2 * (-2 + g3t - (2 + g3t) * d + d ** 3))
                    / ((1 + d) * (d * d - 4)))
        if kind == PURITY:
            s = math.sqrt(d)
            return ((g22 * (s - 1) + g3t * (s - 1) * d + 2 * d * (1 + d) * (1 + s + d))
                    / ((1 + s) * d * (1 + d) * (2 + d)))
        if kind in (COHERENCE, WYD_CB):
            return 1.0 - (g22 + d * (2 + g3t + 2 * d)) / (d * (1 + d) * (2 + d))
        if kind == WYD_PAULI:
            return 1.0 - (-2 + g22 + d * (-1 + g3t + d)) / ((d - 1) * (d + 1) * (d + 2))
    else:
        return _closed_form_doped(kind, ff, ensemble)
    raise ValueError(f"unknown probe kind {kind!r}")


def _xi_powers(d: float, k: int, theta: float):
    ev = twirl.xi_eigenvalues(int(d), theta)
    return ev["xi_plus"] ** k, ev["xi_1"] ** k, ev["xi_minus"] ** k


def _closed_form_doped(kind: str, ff: FormFactors, ens: EnsembleSpec) -> float:
    """T-doped closed forms as quoted; several are known to carry transcription
    drift, which reassembly_report surfaces against the table-driven path."""
    d = float(ff.d)
    g2, g22, g4 = ff.g2, ff.g2_2t, ff.g4
    gs = 2.0 * ff.g3_re
    g3t = ff.g3tilde
    k, theta = ens.k, ens.theta
    c4 = math.cos(4 * theta)
    xpk, x1k, xmk = _xi_powers(d, k, theta)
    if kind == LOSCHMIDT2:
        c0 = 96 * g22 - 384 * g2 + 24 * gs + 96 * g4
        c1 = -12 * g22 - 48 * g2 + 8 * gs
        c2 = -192 + 36 * g22 - 176 * g2 + 13 * gs + 40 * g4
        c3 = -52 + 24 * g22 + 54 * g2 - 9 * gs
        c5 = 244 + 50 * g2 - 8 * gs - 8 * g4
        p0 = (c0 + c1 * d + c2 * d ** 2 + c3 * d ** 3 + c5 * d ** 4
              + 56 * d ** 5 - 56 * d ** 6 - 16 * d ** 7)
        bb = -12 * g22 + 2 * gs * d + (12 + g22 - 4 * g2) * d ** 2 - d ** 4
        xp = d * (3 + d) * (-gs + g4 - 2 * g22 + d * g22 + 8 * g2 - 4 * d * g2
                            + (3 * d - d * d) * g3t - 6 * d ** 2 + 2 * d ** 3)
        x1 = 4 * (-9 + d * d) * (g22 - 4 * g2 + g4 + (3 - g3t) * d * d)
        xm = d * (3 - d) * (-gs - g4 + 2 * g22 + d * g22 - 8 * g2 - 4 * d * g2
                            + d * (3 + d) * g3t + 6 * d ** 2 + 2 * d ** 3)
        kk = xp * xpk + x1 * x1k + xm * xmk
        return ((3 / 16 * p0 + 3 / 16 * (d * d - 9) * bb * c4
                 - 0.5 * (4 - 5 * d * d + d ** 4) * kk)
                / (3 * (d * d - 1) ** 2 * (36 - 13 * d * d + d ** 4)))
    if kind == OTOC4:
        c0 = 120 * gs
        c1 = -28 * g22 + 400 * g2 - 64 * g4 - 576
        c2 = -151 * gs
        c3 = 748 + 4 * g22 - 498 * g2 + 80 * g4
        c4_ = 39 * gs
        c5 = -148 - 8 * g22 + 82 * g2 - 16 * g4
        p0 = (c0 + c1 * d + c2 * d ** 2 + c3 * d ** 3 + c4_ * d ** 4
              + c5 * d ** 5 + 8 * d ** 7)
        bb = d * (d * d - 9) * (4 * g22 - d * (gs + 4 * d - 2 * g2 * d))
        xp = ((3 + d) * d * (2 + d) * gs - d * (3 + d) * (d * d - 4) * g22
              - d * (3 + d) * (2 + d) * (g4 - 4 * g2 * (d - 2) - (g3t - 2 * d) * (d - 3) * d))
        x1 = (d * d - 9) * (5 * gs - 9 * d * g22
                            + d * (6 * g2 - 4 * g4 + (-7 + 4 * g3t) * d * d))
        xm = (-(d - 3) * (d - 2) * d * gs
              + d * (d - 3) * (d - 2) * (g22 * (2 + d) - g4 - 4 * g2 * (2 + d)
                                         + d * (3 + d) * (g3t + 2 * d)))
        kk = xp * xpk + x1 * x1k + xm * xmk
        return ((-3 / 16 * p0 + 3 / 16 * bb * c4 + 0.5 * (d * d - 1) * kk)
                / (3 * (1 - d * d) ** 2 * (36 - 13 * d * d + d ** 4))) / d
    if kind == PURITY:
        s = math.sqrt(d)
        F = [
            -4 * g22 + 16 * g2 - gs - 4 * g4,
            4 * g22 - 16 * g2 + gs + 4 * g4,
            -4.5 * g22 - 6 * g2 - 2 * gs,
            1.5 * g22 + 6 * g2 - gs,
            5 * g22 - 16 * g2 + 11 / 8 * gs + 5 * g4,
            24 - 4.5 * g22 + 22 * g2 - 13 / 8 * gs - 5 * g4,
            3.5 * g22 + 29 / 4 * g2 + 2.5 * gs + 28.5,
            52 / 8 - 3 * g22 - 27 / 4 * g2 + 9 / 8 * gs,
            8 - 3 * g22 - g2 + gs / 8 - g4,
            -30.5 - 25 / 4 * g2 + gs + g4,
            -33.5 - g22 - 9 / 4 * g2,
            -7.0, -8.0, 7.0, 7.0, 2.0, 2.0,
        ]
        Hc = [
            gs + 4 * g4,
            -gs - 4 * g4,
            4 / 3 * gs - 2 / 3 * g4,
            5 / 3 * gs + 2 / 3 * g4,
            12 + gs / 3 - 2 / 3 * g4 - 4 * g3t,
            -12 + 2 / 3 * gs + 2 / 3 * g4 + 4 * g3t,
            -1 + 2 / 3 * g3t,
            1 - 2 / 3 * g3t,
            -2 / 3 + 2 / 3 * g3t,
            11 / 3 - 2 / 3 * g3t,
            1 / 3, 2 / 3,
        ]
        a = sum(fj * d ** (j / 2) for j, fj in enumerate(F))
        bb = 0.5 * g22 - d * gs / 8 - 0.5 * d ** 2 + 0.25 * g2 * d ** 2
        cc = sum(hj * d ** (j / 2) for j, hj in enumerate(Hc))
        den = (1 - s) * (1 + s) ** 2 * (d - 2) * d ** 2 * (1 + d) ** 2 * (2 + d) * (3 + d)
        return (a + d * (3 + d) * (1 + s + d) * c4 * bb - (1 - d * d) * cc * x1k) / den
    if kind == TMI_C2:
        pcc = (-48 * gs + d * (96 * gs - 152 * g22 - 544 * g2 + 64 * g4)
               + d ** 2 * (2 * gs + 160 * g22 + 1088 * g2 - 128 * g4)
               + d ** 3 * (-64 * gs - 72 * g22 - 484 * g2 + 48 * g4 + 1368)
               + d ** 4 * (30 * gs - 192 * g2 + 32 * g4 - 1440)
               + d ** 5 * (100 * g2 - 16 * g4 - 296) + 448 * d ** 6 + 16 * d ** 7
               - 32 * d ** 8)
        bcc = (-72 * g22 * d + 18 * gs * d ** 2 + (8 * g22 - 36 * g2 + 72) * d ** 3
               - 2 * gs * d ** 4 + (-8 + 4 * g2) * d ** 5)
        x1 = 2 * (d - 3) * (d + 3) * (gs + d * (-3 * g22 + 6 * g2 - 2 * g4
                                                + (-5 + 2 * g3t) * d * d))
        xp = (d + 3) * (d * (d + 2) * gs - d * (d * d - 4) * g22
                        - d * (d + 2) * (g4 - 4 * g2 * (d - 2)
                                         - (g3t - 2 * d) * (d - 3) * d))
        xm = (d - 3) * (d - 2) * d * (-gs + (d + 2) * g22 - g4 - 4 * (d + 2) * g2
                                      + d * (d + 3) * (g3t + 2 * d))
        kk = xp * xpk + x1 * x1k + xm * xmk
        return ((-3 / 16 * pcc + 3 / 16 * bcc * c4 + 0.5 * (d - 1) ** 2 * kk)
                / (3 * d * (d * d - 1) * (d * d - 4) * (d * d - 9)))
    if kind == TMI_CD:
        pcd = 2 * (-96 * (g22 - 4 * g2 + g4)
                   + 8 * (12 * g22 - 48 * g2 - 5 * gs + 12 * g4) * d
                   + 4 * (39 * g22 - 84 * g2 - 8 * gs + 30 * g4) * d ** 2
                   + (576 - 120 * g22 + 480 * g2 + 49 * gs - 120 * g4) * d ** 3
                   - 2 * (18 + 50 * g22 + 41 * g2 - 20 * gs + 12 * g4) * d ** 4
                   + (-784 + 24 * g22 - 96 * g2 - gs + 24 * g4) * d ** 5
                   + 2 * (38 + 4 * g22 + 9 * g2 - 4 * gs) * d ** 6
                   + 224 * d ** 7 - 8 * d ** 8 - 16 * d ** 9)
        bcd = 2 * d ** 2 * (d * d - 9) * (4 * g22 - d * (gs + 4 * d - 2 * g2 * d))
        x1 = ((72 * g4 + (18 * gs - 72 * g4) * d
               + (216 + 36 * gs - 8 * g4 - 72 * g3t) * d ** 2
               + (-216 - 2 * gs + 8 * g4 + 72 * g3t) * d ** 3
               + (-6 - 4 * gs + 8 * g3t) * d ** 4
               + (60 - 8 * g3t) * d ** 5 - 2 * d ** 6 - 4 * d ** 7)
              + (3 + d) * (-4 * g2 * (d - 3) * (8 + d * (-8 + d + 2 * d * d))
                           + 2 * g22 * (d - 3) * (-4 + d * (4 + d + 2 * d * d))))
        xp = ((6 * gs * d - 6 * g4 * d - gs * d ** 2 + g4 * d ** 2
               - 18 * g3t * d ** 2 + 36 * d ** 3 - 4 * gs * d ** 3 + 4 * g4 * d ** 3
               + 9 * g3t * d ** 3 - 18 * d ** 4 - gs * d ** 4 + g4 * d ** 4
               + 11 * g3t * d ** 4 - 22 * d ** 5 - g3t * d ** 5 + 2 * d ** 6
               - g3t * d ** 6 + 2 * d ** 7)
              + (3 + d) * (d - 2) * (d - 1) * d * (2 + d) * (g22 - 4 * g2))
        xm = ((d - 3) * (d - 2) * (d - 1) * d * (2 + d)
              * (g22 - 4 * g2 - gs - g4 + d * (3 + d) * (g3t + 2 * d)))
        kk = xp * xpk + x1 * x1k + xm * xmk
        return ((-3 / 16 * pcd + 3 / 16 * bcd * c4 + 0.5 * (d * d - 1) * kk)
                / (3 * (d - 3) * (d - 2) * (d - 1) * d * (1 + d) ** 2 * (2 + d) * (3 + d)))
    if kind in (COHERENCE, WYD_CB):
        if kind == COHERENCE:
            p0 = (24 * (4 * g22 - 16 * g2 + gs + 4 * g4)
                  - 12 * g22 * d + 8 * (-6 * g2 + gs) * d
                  + (-192 + 36 * g22 - 176 * g2 + 13 * gs + 40 * g4) * d ** 2
                  + (-52 + 24 * g22 + 54 * g2 - 9 * gs) * d ** 3
                  + 2 * (122 + 25 * g2 - 4 * gs - 4 * g4) * d ** 4
                  + 56 * d ** 5 - 56 * d ** 6 - 16 * d ** 7)
            p1 = 3 * d * (3 + d) * (4 * g22 - d * (gs + 4 * d - 2 * g2 * d))
            x1 = 8 * (1 - d * d) * ((3 + d) * (4 * g22 - 16 * g2 + gs + g4)
                                    - 3 * g22 * d - 2 * (-3 * g2 + gs + g4) * d
                                    + 2 * (6 + g22 + 2 * g2 - 2 * g3t) * d * d
                                    + (-5 + 2 * g3t) * d ** 3 - 2 * d ** 4)
            xm = (d - 2) * d * (-gs - g4 + g22 * (2 + d) - 4 * g2 * (2 + d)
                                + d * (3 + d) * (g3t + 2 * d))
            den = 24 * (d - 2) * (d - 1) * d ** 2 * (1 + d) ** 2 * (2 + d) * (3 + d)
            return 1.0 - (p0 + p1 * c4 + x1 * x1k + xm * xmk) / den
        p0 = (-8 * (4 * g22 - 16 * g2 + gs + 4 * g4)
              + (d - 1) * (12 * g22 + 48 * g2 - 8 * gs)
              + d ** 2 * (36 * g22 - 176 * g2 + 13 * gs + 40 * g4 - 192)
              + d ** 3 * (24 * g22 + 54 * g2 - 9 * gs - 52)
              + d ** 4 * (244 + 50 * g2 - 8 * gs - 8 * g4)
              + 56 * d ** 5 - 56 * d ** 6 - 16 * d ** 7)
        bb = 4 * g22 - d * (gs + 4 * d - 2 * g2 * d)
        x1 = ((4 * g22 - 16 * g2 + gs + 4 * g4)
              - d * (3 * g22 + 2 * (-3 * g2 + gs + g4))
              + 2 * d * d * (6 + g22 + 2 * g2 - 2 * g3t)
              + (-5 + 2 * g3t) * d ** 3 - 2 * d ** 4)
        xm = (-(gs + g4) + (2 + d) * (g22 - 4 * g2) + d * (3 + d) * (g3t + 2 * d))
        den = 3 * (d - 2) * (d - 1) * d ** 2 * (1 + d) ** 2 * (d + 2) * (d + 3)
        num = (-3 / 8 * p0 + 3 / 8 * d * (3 + d) * bb * c4
               + (d * d - 1) * ((3 + d) * x1 * x1k + (d - 2) * d * xm * xmk))
        return 1.0 - num / den
    if kind == WYD_PAULI:
        pp = ((76 * g22 - 256 * g2 + 64 * g4 + 40 * gs)
              + d * (-192 + 16 * g22 + 48 * g2 - 14 * gs)
              + d ** 2 * (116 - 73 * g22 + 348 * g2 - 80 * g4 - 55 * gs)
              + d ** 3 * (288 - 23 * g22 - 50 * g2 + 9 * gs)
              + d ** 4 * (-167 + 8 * g22 - 82 * g2 + 16 * g4 + 16 * gs)
              - 105 * d ** 5 + 40 * d ** 6 + 16 * d ** 7)
        cc = g22 * (d - 2) + d * (gs - d * (-2 + 2 * g2 + d))
        x1 = (8 * (4 * g22 - 16 * g2 + gs + 4 * g4)
              - 8 * d * (1.5 * g22 + (-3 * g2 + gs + g4))
              + 8 * d * d * (6 + g22 + 2 * g2 - 2 * g3t)
              + 4 * (-5 + 2 * g3t) * d ** 3 - 8 * d ** 4)
        xm = -(gs + g4) + (2 + d) * (g22 - 4 * g2) + d * (3 + d) * (g3t + 2 * d)
        num = (3 / 16 * pp - 3 / 16 * (d * d + d - 6) * cc * c4
               + 0.5 * (d * d - 1) * ((3 + d) * x1 * x1k
                                      + 2 * (d - 2) * d * xm * xmk))
        den = 3 * (d - 2) * d * (d + 2) * (d + 3) * (d * d - 1) ** 2
        return 1.0 - num / den
    raise ValueError(f"unknown probe kind {kind!r}")


# resolutions for mismatching fixtures, keyed by (kind, ensemble-kind)
KNOWN_FIXTURE_ISSUES = {
    ("toric", "g3tilde"):
        "published flat-index toric g3tilde misses the vertex-only/facet-only "
        "Pauli-string complements; the coset-factorized form matches the dense "
        "and XOR oracles",
}


def reassembly_report(kinds, ffs, ensembles, rel_tol=1e-10) -> dict:
    """Compare table-driven assembly against the transcribed closed forms.

    Returns {'entries': [...], 'mismatches': [...]} where each entry carries the
    worst relative deviation over the supplied form-factor samples.
    """
    entries = []
    for kind in kinds:
        for ens in ensembles:
            worst = 0.0
            worst_t = None
            for ff in ffs:
                a = evaluate(kind, ff, ens)
                try:
                    b = closed_form(kind, ff, ens)
                except ValueError:
                    b = None
                if b is None:
                    continue
                rel = abs(a - b) / max(1e-30, abs(a), abs(b))
                if rel > worst:
                    worst, worst_t = rel, ff.t
            entries.append({
                "probe": kind,
                "ensemble": ens.label(),
                "max_rel_dev": worst,
                "worst_t": worst_t,
                "match": worst <= rel_tol,
            })
    return {
        "entries": entries,
        "mismatches": [e for e in entries if not e["match"]],
    }
