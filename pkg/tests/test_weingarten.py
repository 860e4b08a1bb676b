from fractions import Fraction

import numpy as np
import pytest

from isotwirl import exactlin, s4, weingarten
from isotwirl.oracle import build_perm_dense, build_q_dense


def test_s2_gram_and_inverse_closed_form():
    for d in (2, 5, 8):
        g = weingarten.gram(weingarten.PLAIN2, d)
        assert g.entries == [[Fraction(d * d), Fraction(d)], [Fraction(d), Fraction(d * d)]]
        w = weingarten.by_inversion(weingarten.PLAIN2, d)
        pref = Fraction(1, d * d - 1)
        assert w.entries[0][0] == pref
        assert w.entries[0][1] == -pref / d
        assert w.entries == weingarten.by_characters(weingarten.PLAIN2, d).entries


@pytest.mark.parametrize("kind", weingarten.KINDS)
def test_gram_entries_depend_only_on_product_class(kind):
    g = weingarten.gram(kind, 4)
    for i in range(24):
        for j in range(24):
            cls = s4.PERMS[s4.compose_index(i, j)].cls
            assert g.entries[i][j] == weingarten.gram_class_value(kind, cls, 4)


def test_gram_plus_class_values():
    # Tr[IQ] = d^2, Tr[T_(ij)Q] = d, Tr[T_(ij)(kl)Q] = d^2, Tr[T_(ijk)Q] = 1,
    # Tr[T_(ijkl)Q] = d
    for d in (2, 4, 8):
        vals = {c: weingarten.gram_class_value(weingarten.PLUS, c, d) for c in s4.CLASSES}
        assert vals == {"id": d * d, "two": d, "twotwo": d * d, "three": 1, "four": d}


def test_gram_minus_is_difference():
    for d in (4, 8):
        gp = weingarten.gram(weingarten.PLUS, d).entries
        gm = weingarten.gram(weingarten.MINUS, d).entries
        g = weingarten.gram(weingarten.PLAIN, d).entries
        for i in range(24):
            for j in range(24):
                assert g[i][j] - gp[i][j] == gm[i][j]


def test_gram_entries_against_dense_at_d2():
    Q = build_q_dense(1)
    Ts = [build_perm_dense(p, 2) for p in s4.PERMS]
    g = weingarten.gram(weingarten.PLAIN, 2).entries
    gp = weingarten.gram(weingarten.PLUS, 2).entries
    for i in (0, 3, 7, 11, 16, 23):
        for j in (0, 5, 9, 14, 22):
            assert abs(np.trace(Ts[i] @ Ts[j]) - float(g[i][j])) < 1e-9
            assert abs(np.trace(Ts[i] @ Ts[j] @ Q) - float(gp[i][j])) < 1e-9


@pytest.mark.parametrize("d", [8, 16, 32])
@pytest.mark.parametrize("kind", weingarten.KINDS)
def test_inversion_equals_characters_exactly(kind, d):
    wi = weingarten.by_inversion(kind, d)
    wc = weingarten.by_characters(kind, d)
    assert exactlin.mat_eq(wi.entries, wc.entries)
    assert wi.class_values == wc.class_values


@pytest.mark.parametrize("d", [8, 16])
@pytest.mark.parametrize("kind", weingarten.KINDS)
def test_weingarten_is_pseudo_inverse(kind, d):
    G = weingarten.gram(kind, d).entries
    W = weingarten.by_inversion(kind, d).entries
    GWG = exactlin.mat_mul(G, exactlin.mat_mul(W, G))
    assert exactlin.mat_eq(GWG, G)
    WGW = exactlin.mat_mul(W, exactlin.mat_mul(G, W))
    assert exactlin.mat_eq(WGW, W)


def test_plain_weingarten_is_true_inverse_at_d8():
    G = weingarten.gram(weingarten.PLAIN, 8).entries
    W = weingarten.by_inversion(weingarten.PLAIN, 8)
    assert not W.singular and not W.pseudo
    assert exactlin.mat_eq(exactlin.mat_mul(W.entries, G), exactlin.identity(24))


def test_plain_weingarten_identity_value():
    # Collins' S4 Weingarten at the identity: (d^4 - 8 d^2 + 6)/(d^2 (d^2-1)(d^2-4)(d^2-9))
    for d in (8, 16):
        x = Fraction(d)
        want = (x ** 4 - 8 * x * x + 6) / (x * x * (x * x - 1) * (x * x - 4) * (x * x - 9))
        assert weingarten.by_inversion(weingarten.PLAIN, d).class_values["id"] == want


def test_dlambda_tables():
    # spot values quoted for the tables
    assert weingarten.d_lambda(weingarten.PLUS, 4)[2] == 5  # (d+1)(d-1)/3 at d=4
    for d in (2, 4, 8):
        D = weingarten.d_lambda(weingarten.PLAIN, d)
        Dp = weingarten.d_lambda(weingarten.PLUS, d)
        Dm = weingarten.d_lambda(weingarten.MINUS, d)
        assert all(a - b == c for a, b, c in zip(D, Dp, Dm))
        # completeness: sum_lam d_lam D_lam = d^4, and the Q-projected version = d^2
        assert sum(dl * Dl for dl, Dl in zip(s4.IRREP_DIMS, D)) == d ** 4
        assert sum(dl * Dl for dl, Dl in zip(s4.IRREP_DIMS, Dp)) == d ** 2


def test_minus_kind_flags_singular_at_small_d_poles():
    assert weingarten.by_inversion(weingarten.MINUS, 4).singular
    assert weingarten.by_inversion(weingarten.MINUS, 4).pseudo
    assert not weingarten.by_inversion(weingarten.MINUS, 8).singular
    # plus kind is structurally rank deficient but not flagged singular
    wp = weingarten.by_inversion(weingarten.PLUS, 8)
    assert wp.pseudo and not wp.singular


def test_published_table_report_structure():
    rep = weingarten.published_table_report(8)
    for kind in (weingarten.PLUS, weingarten.MINUS):
        k = rep["kinds"][kind]
        assert set(k["classes"]) == set(s4.CLASSES)
        # the published table does not reproduce the pseudo-inverse (documented
        # discrepancy; inversion route is authoritative)
        assert not k["all_equal"]
        assert not k["published_is_generalized_inverse"]
