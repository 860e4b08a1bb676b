import numpy as np
import pytest

from isotwirl import hamiltonians
from isotwirl.hamiltonians import CBHamiltonian, ToricCode, cb_spectrum
from isotwirl.oracle import kron_all, PAULI_Z, I2
from isotwirl.spectral import sff_explicit


def test_cb_spectrum_single_spin():
    assert list(cb_spectrum([1.0]).energies) == [1.0, -1.0]


def test_cb_spectrum_two_spins_bit_order():
    # bit b of i selects the sign of omega_b, bit 0 = most significant
    assert list(cb_spectrum([1.0, 2.0]).energies) == [3.0, 1.0, -1.0, -3.0]


def test_cb_spectrum_matches_dense_diagonalization():
    rng = np.random.default_rng(4)
    om = rng.normal(size=3)
    H = sum(om[i] * kron_all([PAULI_Z if j == i else I2 for j in range(3)])
            for i in range(3))
    dense = np.sort(np.linalg.eigvalsh(H))
    assert np.allclose(np.sort(cb_spectrum(om).energies), dense)


def test_cb_spectrum_sign_flip_symmetry():
    rng = np.random.default_rng(5)
    om = rng.normal(size=4)
    a = np.sort(cb_spectrum(om).energies)
    b = np.sort(cb_spectrum(-om).energies)
    assert np.allclose(a, b)


def test_cb_g2_factorizes_over_spins():
    rng = np.random.default_rng(6)
    om = rng.normal(size=4)
    sp = cb_spectrum(om)
    for t in (0.3, 1.9):
        ff = sff_explicit(sp, t)
        prod = np.prod([4 * np.cos(w * t) ** 2 for w in om])
        assert abs(ff.g2 - prod) < 1e-8 * max(1, prod)


def test_toric_dimensions_and_t0():
    tor = ToricCode(2, 1.0)
    assert tor.n_qubits == 8 and tor.d == 256
    ff = tor.form_factors(0.0)
    assert abs(ff.g2 - tor.d ** 2) < 1e-9
    assert abs(ff.g4 - tor.d ** 4) < 1e-9
    assert abs(ff.g3tilde - tor.d ** 2) < 1e-9


def test_toric_traces_match_reduced_spectrum():
    tor = ToricCode(2, 0.9)
    E = tor.cb_reduced_spectrum().energies
    for t in (0.0, 0.3, 1.1, 2.7):
        z1 = np.exp(-1j * E * t).sum()
        z2 = np.exp(-2j * E * t).sum()
        assert abs(z1 - tor.trace_v(t)) < 1e-8
        assert abs(z2 - tor.trace_v2(t)) < 1e-8


def test_toric_level_multiplicities():
    tor = ToricCode(2, 1.0)
    mult = tor.level_multiplicities()
    assert sum(mult.values()) == 256
    assert mult[-8.0] == 4          # ground space: fourfold degenerate
    assert mult[8.0] == 4
    # consistency with the closed trace
    for t in (0.4, 1.3):
        z = sum(m * np.exp(-1j * e * t) for e, m in mult.items())
        assert abs(z - tor.trace_v(t)) < 1e-8


def test_toric_g3tilde_matches_xor_oracle():
    from isotwirl.spectral import sff_clifford_cb
    tor = ToricCode(2, 1.0)
    sp = tor.cb_reduced_spectrum()
    for t in (0.3, 0.7, 1.1, 2.7):
        assert abs(tor.g3tilde(t) - sff_clifford_cb(sp, t)) < 1e-8


def test_toric_g3tilde_real_for_odd_lattice():
    tor = ToricCode(3, 1.0)  # N^2 = 9 odd
    for t in (0.2, 0.9, 2.2):
        v = tor.g3tilde(t)
        assert isinstance(v, float) and np.isfinite(v)


def test_toric_periodicity():
    tor = ToricCode(3, 1.3)
    period = np.pi / tor.J
    for t in (0.17, 0.9):
        a, b = tor.form_factors(t), tor.form_factors(t + period)
        assert abs(a.g2 - b.g2) < 1e-6 * max(1, a.g2)
        assert abs(a.g4 - b.g4) < 1e-6 * max(1, a.g4)
        assert abs(a.g3tilde - b.g3tilde) < 1e-6 * max(1, a.g3tilde)


def test_toric_flat_index_fixture_disagrees():
    # the published single-index g3tilde misses the vertex/facet complements
    tor = ToricCode(2, 1.0)
    assert abs(hamiltonians.toric_g3tilde_flat_index(2, 1.0, 1.1) - tor.g3tilde(1.1)) > 1.0


def test_toric_rejects_spectrum_materialization_beyond_n2():
    with pytest.raises(ValueError):
        ToricCode(3).cb_reduced_spectrum()


def test_cb_random_and_guards():
    rng = np.random.default_rng(0)
    h = CBHamiltonian.random(3, rng)
    assert h.d == 8
    with pytest.raises(ValueError):
        CBHamiltonian(np.ones(25))
