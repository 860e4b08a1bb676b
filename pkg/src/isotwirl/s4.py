"""Exact algebra of the symmetric group S4 acting on four copies of C^d.

Permutations are stored in one-line notation as tuples ``p`` with ``p[i]`` the
slot that the object at slot ``i`` moves to; the operator convention is
``T_p (v_0 x v_1 x v_2 x v_3) = v_{p^-1(0)} x ... x v_{p^-1(3)}`` so that
``T_a T_b = T_{a.b}`` with ``(a.b)(i) = a(b(i))``.

Slots 0,1 carry the two V copies and slots 2,3 the two V-dagger copies of the
twirled operator; the fine conjugacy-class tags below encode exactly the slot
splits the coefficient tables key on.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

# conjugacy classes, by cycle type
CLASS_ID = "id"          # identity
CLASS_TWO = "two"        # transpositions (6)
CLASS_TWOTWO = "twotwo"  # double transpositions (3)
CLASS_THREE = "three"    # 3-cycles (8)
CLASS_FOUR = "four"      # 4-cycles (6)
CLASSES = (CLASS_ID, CLASS_TWO, CLASS_TWOTWO, CLASS_THREE, CLASS_FOUR)
CLASS_SIZES = {CLASS_ID: 1, CLASS_TWO: 6, CLASS_TWOTWO: 3, CLASS_THREE: 8, CLASS_FOUR: 6}

# fine classes: the slot-sensitive splits used by the coefficient tables
FINE_ID = "id"
FINE_T12 = "t12"          # swap of the two V slots
FINE_T34 = "t34"          # swap of the two V-dagger slots
FINE_TMIX = "tmix"        # V/V-dagger mixing transpositions (4)
FINE_C3V = "c3v"          # 3-cycles fixing a V slot (4)
FINE_C3W = "c3w"          # 3-cycles fixing a V-dagger slot (4)
FINE_X4 = "x4"            # crossing 4-cycles: alternating V/V-dagger trace word (2)
FINE_N4 = "n4"            # non-crossing 4-cycles (4)
FINE_D1234 = "d1234"      # (12)(34)
FINE_DMIX = "dmix"        # (13)(24), (14)(23)
FINE_CLASSES = (FINE_ID, FINE_T12, FINE_T34, FINE_TMIX, FINE_C3V, FINE_C3W,
                FINE_X4, FINE_N4, FINE_D1234, FINE_DMIX)

_CYCLE_TYPE_TO_CLASS = {
    (1, 1, 1, 1): CLASS_ID,
    (1, 1, 2): CLASS_TWO,
    (2, 2): CLASS_TWOTWO,
    (1, 3): CLASS_THREE,
    (4,): CLASS_FOUR,
}


def compose(a: tuple, b: tuple) -> tuple:
    """Product a.b, applying b first."""
    return tuple(a[b[i]] for i in range(4))


def inverse(p: tuple) -> tuple:
    q = [0] * 4
    for i, t in enumerate(p):
        q[t] = i
    return tuple(q)


def cycles(p: tuple) -> tuple:
    """Canonical cycle decomposition (each cycle starts at its smallest slot)."""
    seen = [False] * 4
    out = []
    for s in range(4):
        if seen[s]:
            continue
        c = [s]
        seen[s] = True
        j = p[s]
        while j != s:
            c.append(j)
            seen[j] = True
            j = p[j]
        out.append(tuple(c))
    return tuple(out)


def conjugacy_class(p: tuple) -> str:
    return _CYCLE_TYPE_TO_CLASS[tuple(sorted(len(c) for c in cycles(p)))]


def trace_words(p: tuple, labels=("V", "V", "W", "W")) -> tuple:
    """Normal form of Tr[T_p (A_0 x A_1 x A_2 x A_3)] as cyclic trace words.

    Each cycle (a_1 .. a_m) of p contributes the factor Tr[A_{a_m} ... A_{a_1}];
    words are rotated to their lexicographically smallest cyclic representative
    and the multiset of words is sorted.
    """
    words = []
    for c in cycles(p):
        w = tuple(labels[a] for a in reversed(c))
        rots = [w[i:] + w[:i] for i in range(len(w))]
        words.append(min(rots))
    return tuple(sorted(words))


def _is_crossing(p: tuple) -> bool:
    """4-cycle whose V^{x2,2} trace word alternates V and V-dagger."""
    (w,) = trace_words(p)
    n = len(w)
    return all(w[i] != w[(i + 1) % n] for i in range(n))


def fine_class(p: tuple) -> str:
    c = conjugacy_class(p)
    if c == CLASS_ID:
        return FINE_ID
    if c == CLASS_TWO:
        moved = tuple(i for i in range(4) if p[i] != i)
        if moved == (0, 1):
            return FINE_T12
        if moved == (2, 3):
            return FINE_T34
        return FINE_TMIX
    if c == CLASS_TWOTWO:
        return FINE_D1234 if p == (1, 0, 3, 2) else FINE_DMIX
    if c == CLASS_THREE:
        fixed = next(i for i in range(4) if p[i] == i)
        return FINE_C3V if fixed in (0, 1) else FINE_C3W
    return FINE_X4 if _is_crossing(p) else FINE_N4


class Perm:
    """One of the 24 S4 permutation operators, in the frozen global ordering."""

    __slots__ = ("oneline", "index", "cycles", "cls", "fine")

    def __init__(self, oneline: tuple, index: int):
        self.oneline = oneline
        self.index = index
        self.cycles = cycles(oneline)
        self.cls = conjugacy_class(oneline)
        self.fine = fine_class(oneline)

    def __repr__(self):
        body = "".join(f"({''.join(str(a + 1) for a in c)})"
                       for c in self.cycles if len(c) > 1)
        return body or "(e)"

    def __eq__(self, other):
        return isinstance(other, Perm) and other.oneline == self.oneline

    def __hash__(self):
        return hash(self.oneline)


# frozen global ordering: lexicographic one-line notation, identity first
PERMS = tuple(Perm(p, i) for i, p in enumerate(sorted(itertools.permutations(range(4)))))
PERM_INDEX = {p.oneline: p.index for p in PERMS}
IDENTITY = PERMS[0]


def perm(oneline: tuple) -> Perm:
    return PERMS[PERM_INDEX[tuple(oneline)]]


def perm_from_cycles(*cycs) -> Perm:
    """Perm from 1-based cycles, e.g. perm_from_cycles((1, 4, 2, 3))."""
    p = list(range(4))
    for cyc in cycs:
        for i, a in enumerate(cyc):
            p[a - 1] = cyc[(i + 1) % len(cyc)] - 1
    return perm(tuple(p))


def trace_of_perm(p: Perm, d: int) -> int:
    """Tr of the permutation operator on (C^d)^{x4}: d^(number of cycles)."""
    if d < 2:
        raise ValueError(f"dimension d must be >= 2, got {d}")
    return d ** len(p.cycles)


# S4 character table: CHARACTERS[class][irrep], irreps ordered
# (sign, standard(x)sign, two-dim, standard, trivial)
IRREPS = ("l1", "l2", "l3", "l4", "l5")
IRREP_DIMS = (1, 3, 2, 3, 1)
CHARACTERS = {
    CLASS_ID: (1, 3, 2, 3, 1),
    CLASS_TWO: (-1, -1, 0, 1, 1),
    CLASS_TWOTWO: (1, -1, 2, -1, 1),
    CLASS_THREE: (1, 0, -1, 0, 1),
    CLASS_FOUR: (-1, 1, 0, -1, 1),
}


def character(lam: int, p: Perm) -> int:
    return CHARACTERS[p.cls][lam]


def irrep_projector(lam: int) -> list:
    """Coefficients of Pi_lam = (d_lam/4!) sum_p chi^lam(p) T_p in the T basis."""
    dl = Fraction(IRREP_DIMS[lam], 24)
    return [dl * character(lam, p) for p in PERMS]


def convolve(f, g):
    """Group-algebra product: (f*g)(tau) = sum_{ab=tau} f(a) g(b), 24-vectors."""
    out = [Fraction(0)] * 24
    for a in PERMS:
        fa = f[a.index]
        if not fa:
            continue
        for b in PERMS:
            out[PERM_INDEX[compose(a.oneline, b.oneline)]] += fa * g[b.index]
    return out


@lru_cache(maxsize=None)
def compose_index(i: int, j: int) -> int:
    """Index of PERMS[i] . PERMS[j] in the frozen ordering."""
    return PERM_INDEX[compose(PERMS[i].oneline, PERMS[j].oneline)]
