"""Gram matrices and (generalized) Weingarten functions for S2 and S4.

Each Weingarten table is computed two independent ways:

* ``by_inversion`` - exact Moore-Penrose (pseudo-)inverse of the Gram matrix,
  computed with rational arithmetic; this is the authoritative route.
* ``by_characters`` - the character formula
  ``w(pi) = sum_lam (d_lam^2 / (4!)^2) chi^lam(pi) / D_lam``
  with irreps of vanishing ``D_lam`` skipped.

The two routes agree exactly at every d.  The published reference table of
generalized Weingarten functions does *not* reproduce the (pseudo-)inverse of
its own Gram matrices (it is not even a generalized inverse); it is kept here
as a fixture and compared in :func:`published_table_report`, never used in
computations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import exactlin, s4
from .exactlin import SingularGram

PLAIN2 = "plain_s2"
PLAIN = "plain"
PLUS = "plus"
MINUS = "minus"
KINDS = (PLAIN, PLUS, MINUS)

# class values of Tr[T_pi Q] (the Q-projected Gram entries)
_Q_TRACE = {
    s4.CLASS_ID: lambda d: Fraction(d) ** 2,
    s4.CLASS_TWO: lambda d: Fraction(d),
    s4.CLASS_TWOTWO: lambda d: Fraction(d) ** 2,
    s4.CLASS_THREE: lambda d: Fraction(1),
    s4.CLASS_FOUR: lambda d: Fraction(d),
}


def q_trace(p: s4.Perm, d: int) -> Fraction:
    """Tr[T_p Q] with Q = d^-2 sum_P P^{x4}."""
    return _Q_TRACE[p.cls](d)


def gram_class_value(kind: str, cls: str, d: int) -> Fraction:
    n_cycles = {s4.CLASS_ID: 4, s4.CLASS_TWO: 3, s4.CLASS_TWOTWO: 2,
                s4.CLASS_THREE: 2, s4.CLASS_FOUR: 1}[cls]
    plain = Fraction(d) ** n_cycles
    if kind == PLAIN:
        return plain
    if kind == PLUS:
        return _Q_TRACE[cls](d)
    if kind == MINUS:
        return plain - _Q_TRACE[cls](d)
    raise ValueError(kind)


@dataclass(frozen=True)
class GramMatrix:
    kind: str
    d: int
    entries: list  # 24x24 Fractions (2x2 for the S2 case)


@dataclass(frozen=True)
class WeingartenTable:
    kind: str
    d: int
    method: str
    entries: list                    # 24x24 Fractions, entry (i,j) = w(pi_i pi_j)
    class_values: dict               # per conjugacy class
    singular: bool = False           # Gram matrix not invertible at this d
    pseudo: bool = False             # pseudo-inverse used

    def as_float_matrix(self):
        import numpy as np
        return np.array([[float(x) for x in row] for row in self.entries])


def _class_matrix(values: dict) -> list:
    return [[values[s4.PERMS[s4.compose_index(i, j)].cls] for j in range(24)]
            for i in range(24)]


@lru_cache(maxsize=None)
def gram(kind: str, d: int):
    """Exact Gram matrix Omega (plain), Omega^+ or Omega^- at dimension d."""
    if d < 2:
        raise ValueError(f"dimension d must be >= 2, got {d}")
    if kind == PLAIN2:
        dd = Fraction(d)
        return GramMatrix(kind, d, [[dd * dd, dd], [dd, dd * dd]])
    vals = {c: gram_class_value(kind, c, d) for c in s4.CLASSES}
    return GramMatrix(kind, d, _class_matrix(vals))


# reduced per-irrep dimensions D_lam (the multiplicity-free dimensions; the
# isotypic trace is Tr[projector] = d_lam * D_lam)
def d_lambda(kind: str, d: int) -> tuple:
    x = Fraction(d)
    plain = (
        x * (x - 1) * (x - 2) * (x - 3) / 24,
        x * (x + 1) * (x - 2) * (x - 1) / 8,
        x * x * (x - 1) * (x + 1) / 12,
        x * (x + 1) * (x + 2) * (x - 1) / 8,
        x * (x + 1) * (x + 2) * (x + 3) / 24,
    )
    if kind == PLAIN:
        return plain
    plus = (
        (x - 2) * (x - 1) / 6,
        Fraction(0),
        (x + 1) * (x - 1) / 3,
        Fraction(0),
        (x + 2) * (x + 1) / 6,
    )
    if kind == PLUS:
        return plus
    if kind == MINUS:
        return tuple(a - b for a, b in zip(plain, plus))
    raise ValueError(kind)


@lru_cache(maxsize=None)
def by_characters(kind: str, d: int) -> WeingartenTable:
    """Character-formula Weingarten table; zero-D_lam irreps are skipped."""
    if kind == PLAIN2:
        x = Fraction(d)
        D = (x * (x + 1) / 2, x * (x - 1) / 2)  # S2: trivial, sign
        w_id = Fraction(1, 4) * (1 / D[0] + 1 / D[1])
        w_sw = Fraction(1, 4) * (1 / D[0] - 1 / D[1])
        return WeingartenTable(kind, d, "characters",
                               [[w_id, w_sw], [w_sw, w_id]],
                               {"id": w_id, "two": w_sw},
                               singular=(d < 2), pseudo=False)
    D = d_lambda(kind, d)
    skipped = [lam for lam in range(5) if D[lam] == 0]
    vals = {}
    for cls in s4.CLASSES:
        s = Fraction(0)
        for lam in range(5):
            if D[lam] == 0:
                continue
            s += Fraction(s4.IRREP_DIMS[lam] ** 2, 576) * s4.CHARACTERS[cls][lam] / D[lam]
        vals[cls] = s
    # the plus kind always skips l2, l4 (those isotypic sectors carry no Q support)
    always = {PLUS: {1, 3}, PLAIN: set(), MINUS: set()}[kind]
    genuinely_singular = bool(set(skipped) - always)
    return WeingartenTable(kind, d, "characters", _class_matrix(vals), vals,
                           singular=genuinely_singular, pseudo=bool(skipped))


@lru_cache(maxsize=None)
def by_inversion(kind: str, d: int) -> WeingartenTable:
    """Exact (pseudo-)inverse of the Gram matrix.

    A genuinely rank-deficient Gram (beyond the structural rank deficiency of
    Omega^+) is flagged ``singular`` and the Moore-Penrose pseudo-inverse is
    returned; this happens at small-d poles such as d=4 for the minus kind.
    """
    G = gram(kind, d)
    if kind == PLAIN2:
        try:
            entries = exactlin.inverse(G.entries)
            singular = False
        except SingularGram:
            entries, _ = exactlin.pinv_psd(G.entries)
            singular = True
        return WeingartenTable(kind, d, "inversion", entries,
                               {"id": entries[0][0], "two": entries[0][1]},
                               singular=singular, pseudo=singular)
    entries, full_rank = exactlin.pinv_psd(G.entries)
    structural_rank = {PLAIN: 24, PLUS: 6, MINUS: 24}[kind]
    r = exactlin.rank(G.entries)
    class_values = {}
    for p in s4.PERMS:
        class_values.setdefault(p.cls, entries[0][p.index])
        if entries[0][p.index] != class_values[p.cls]:
            raise AssertionError("Weingarten matrix is not a class function")
    return WeingartenTable(kind, d, "inversion", entries, class_values,
                           singular=r < structural_rank, pseudo=not full_rank)


def published_table(kind: str, d: int) -> dict:
    """The published closed-form W+/W- class values, kept only as a fixture."""
    x = Fraction(d)
    if kind == PLUS:
        return {
            s4.CLASS_ID: Fraction(1, 24) / ((x + 2) * (x - 2)),
            s4.CLASS_TWO: Fraction(-1, 24) * 3 / (2 * (x + 1) * (x - 1) * (x + 2) * (x - 2)),
            s4.CLASS_TWOTWO: Fraction(1, 24) / ((x + 2) * (x - 2)),
            s4.CLASS_THREE: Fraction(1, 24) * (x * x + 8) / ((x + 1) * (x - 1) * (x + 2) * (x - 2)),
            s4.CLASS_FOUR: Fraction(-1, 24) * 3 / (2 * (x + 1) * (x - 1) * (x + 2) * (x - 2)),
        }
    if kind == MINUS:
        return {
            s4.CLASS_ID: Fraction(1, 24) * 3 * (3 * x + 10) / ((x - 1) * (x + 1) * (x - 2) * (x + 2) * (x - 4)),
            s4.CLASS_TWO: Fraction(1, 24) * (x - 8) / (x * (x - 1) * (x + 1) * (x - 2) * (x + 4)),
            s4.CLASS_TWOTWO: Fraction(1, 24) / ((x - 1) * (x + 1) * (x + 2) * (x + 4)),
            s4.CLASS_THREE: Fraction(-1, 24) * 6 / ((x - 1) * (x + 1) * (x + 2) * (x - 2) * (x + 4)),
            s4.CLASS_FOUR: Fraction(1, 24) * (x * x + 2 * x + 16) / (x * (x - 1) * (x + 1) * (x - 2) * (x + 2) * (x + 4)),
        }
    raise ValueError(f"published reference table exists only for plus/minus, not {kind}")


def published_table_report(d: int) -> dict:
    """Structured comparison of computed W+/W- against the published table.

    Also records whether the published values are at least a generalized
    inverse of the Gram matrix (they are not, at any tested d > 2).
    """
    report = {"d": d, "kinds": {}}
    for kind in (PLUS, MINUS):
        computed = by_inversion(kind, d)
        ref = published_table(kind, d)
        per_class = {}
        for cls in s4.CLASSES:
            got = computed.class_values[cls]
            want = ref[cls]
            per_class[cls] = {
                "computed": str(got),
                "published": str(want),
                "equal": got == want,
            }
        G = gram(kind, d).entries
        Wref = _class_matrix(ref)
        sandwich = exactlin.mat_mul(G, exactlin.mat_mul(Wref, G))
        per = {
            "classes": per_class,
            "all_equal": all(v["equal"] for v in per_class.values()),
            "published_is_generalized_inverse": exactlin.mat_eq(sandwich, G),
        }
        report["kinds"][kind] = per
    return report
