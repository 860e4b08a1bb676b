import itertools
from fractions import Fraction

import numpy as np
import pytest

from isotwirl import s4
from isotwirl.oracle import build_perm_dense, cycle_trace


def test_catalog_is_all_of_s4_in_lex_order():
    onelines = [p.oneline for p in s4.PERMS]
    assert onelines == sorted(itertools.permutations(range(4)))
    assert s4.PERMS[0].oneline == (0, 1, 2, 3)


def test_class_counts():
    counts = {}
    for p in s4.PERMS:
        counts[p.cls] = counts.get(p.cls, 0) + 1
    assert counts == s4.CLASS_SIZES


def test_fine_class_counts():
    counts = {}
    for p in s4.PERMS:
        counts[p.fine] = counts.get(p.fine, 0) + 1
    assert counts == {"id": 1, "t12": 1, "t34": 1, "tmix": 4, "c3v": 4, "c3w": 4,
                      "x4": 2, "n4": 4, "d1234": 1, "dmix": 2}


def test_crossing_four_cycles_are_the_alternating_pair():
    crossing = {p.oneline for p in s4.PERMS if p.fine == s4.FINE_X4}
    assert crossing == {s4.perm_from_cycles((1, 3, 2, 4)).oneline,
                        s4.perm_from_cycles((1, 4, 2, 3)).oneline}


def test_cayley_closure_and_associativity():
    perms = [p.oneline for p in s4.PERMS]
    table = {}
    for a in perms:
        for b in perms:
            ab = s4.compose(a, b)
            assert ab in s4.PERM_INDEX
            table[a, b] = ab
    for a, b, c in itertools.product(perms, perms, perms):
        assert table[table[a, b], c] == table[a, table[b, c]]


def test_involutions_and_disjoint_products():
    t12 = s4.perm_from_cycles((1, 2))
    t34 = s4.perm_from_cycles((3, 4))
    assert s4.compose(t12.oneline, t12.oneline) == s4.IDENTITY.oneline
    assert s4.compose(t12.oneline, t34.oneline) == s4.perm_from_cycles((1, 2), (3, 4)).oneline


def test_inverse_property():
    for p in s4.PERMS:
        assert s4.compose(p.oneline, s4.inverse(p.oneline)) == s4.IDENTITY.oneline


@pytest.mark.parametrize("d", [2, 4, 8])
def test_trace_of_perm_matches_class_rule(d):
    expected = {"id": d ** 4, "two": d ** 3, "twotwo": d ** 2, "three": d ** 2,
                "four": d}
    for p in s4.PERMS:
        assert s4.trace_of_perm(p, d) == expected[p.cls]


def test_trace_of_perm_rejects_small_d():
    with pytest.raises(ValueError):
        s4.trace_of_perm(s4.IDENTITY, 1)


@pytest.mark.parametrize("d", [2, 3])
def test_trace_of_perm_matches_dense(d):
    for p in s4.PERMS:
        assert abs(np.trace(build_perm_dense(p, d)) - s4.trace_of_perm(p, d)) < 1e-9


def test_dense_composition():
    rng = np.random.default_rng(0)
    for _ in range(12):
        a = s4.PERMS[rng.integers(24)]
        b = s4.PERMS[rng.integers(24)]
        ab = s4.PERMS[s4.compose_index(a.index, b.index)]
        assert np.allclose(build_perm_dense(a, 2) @ build_perm_dense(b, 2),
                           build_perm_dense(ab, 2))


def test_cycle_trace_matches_dense():
    rng = np.random.default_rng(1)
    ops = [rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)) for _ in range(4)]
    big = np.kron(np.kron(ops[0], ops[1]), np.kron(ops[2], ops[3]))
    for p in s4.PERMS:
        assert abs(np.trace(build_perm_dense(p, 2) @ big) - cycle_trace(p, ops)) < 1e-8


def test_swap_trick():
    rng = np.random.default_rng(2)
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    b = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    swap = np.zeros((16, 16))
    for i in range(4):
        for j in range(4):
            swap[j * 4 + i, i * 4 + j] = 1.0
    assert abs(np.trace(a @ b) - np.trace(swap @ np.kron(a, b))) < 1e-10


def test_trace_words_unitary_patterns():
    # identity -> |Tr V|^4 pattern: four singleton words
    assert s4.trace_words(s4.IDENTITY.oneline) == (("V",), ("V",), ("W",), ("W",))
    # (12): Tr[V^2] (Tr V+)^2
    assert s4.trace_words(s4.perm_from_cycles((1, 2)).oneline) == (("V", "V"), ("W",), ("W",))
    # crossing 4-cycle: single alternating word
    w = s4.trace_words(s4.perm_from_cycles((1, 4, 2, 3)).oneline)
    assert w == (("V", "W", "V", "W"),)


def test_character_orthogonality():
    for i in range(5):
        for j in range(5):
            s = sum(s4.CLASS_SIZES[c] * s4.CHARACTERS[c][i] * s4.CHARACTERS[c][j]
                    for c in s4.CLASSES)
            assert s == (24 if i == j else 0)


def test_dimension_sum():
    assert sum(dl * s4.CHARACTERS[s4.CLASS_ID][i]
               for i, dl in enumerate(s4.IRREP_DIMS)) == 24


def test_projector_convolution_idempotent():
    projs = [s4.irrep_projector(lam) for lam in range(5)]
    for i in range(5):
        for j in range(5):
            conv = s4.convolve(projs[i], projs[j])
            if i == j:
                assert conv == projs[i]
            else:
                assert all(x == 0 for x in conv)


def test_trivial_projector_is_uniform():
    assert s4.irrep_projector(4) == [Fraction(1, 24)] * 24


def test_projector_traces_match_isotypic_dimensions():
    # Tr[Pi_lam] = d_lam * D_lam with D_lam the reduced dimension table
    from isotwirl import weingarten
    for d in (2, 4, 8):
        D = weingarten.d_lambda(weingarten.PLAIN, d)
        for lam in range(5):
            tr = sum(c * s4.trace_of_perm(p, d)
                     for c, p in zip(s4.irrep_projector(lam), s4.PERMS))
            assert tr == s4.IRREP_DIMS[lam] * D[lam]
        assert sum(s4.IRREP_DIMS[lam] * D[lam] for lam in range(5)) == d ** 4
