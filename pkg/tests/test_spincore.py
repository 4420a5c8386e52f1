import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dimerwit import (
    DimensionOverflow, NotHermitian, SpinValue, diagonalize, dimer_hamiltonian,
    multiplet_spectrum, spin_matrices,
)
from dimerwit.constants import C_MU
from dimerwit.spincore import total_sz

from conftest import SPINS, spins

HALF, ONE, FIVE_HALVES = SpinValue(1), SpinValue(2), SpinValue(5)


@pytest.mark.parametrize("text, twice", [("5/2", 5), ("2.5", 5), ("1/2", 1), ("0.5", 1),
                                         ("2", 4), (" 3/2 ", 3), (1.5, 3), (7, 14)])
def test_spin_parse(text, twice):
    assert SpinValue.parse(text).twice_s == twice


@pytest.mark.parametrize("text", ["1/3", "0.3", "0", "-1/2", "abc", "", "1/0"])
def test_spin_parse_rejects(text):
    with pytest.raises(ValueError):
        SpinValue.parse(text)


def test_spin_value_basics():
    s = SpinValue(5)
    assert s.multiplicity() == 6
    assert s.value == 2.5
    assert str(s) == "5/2"
    assert s.casimir() == 8.75
    np.testing.assert_array_equal(s.m_values(), [2.5, 1.5, 0.5, -0.5, -1.5, -2.5])
    with pytest.raises(TypeError):
        SpinValue(2.5)


def test_spin_half_matrices():
    ops = spin_matrices(HALF)
    np.testing.assert_array_equal(ops.sz, np.diag([0.5, -0.5]))
    np.testing.assert_array_equal(ops.sx, 0.5 * np.array([[0, 1], [1, 0]]))
    np.testing.assert_array_equal(ops.sy, 0.5 * np.array([[0, -1j], [1j, 0]]))


def test_spin_one_casimir():
    ops = spin_matrices(ONE)
    assert np.trace(ops.sz @ ops.sz).real == pytest.approx(2.0, abs=1e-15)
    np.testing.assert_allclose(ops.casimir(), 2 * np.eye(3), atol=1e-12)


def test_spin_five_halves_casimir():
    ops = spin_matrices(FIVE_HALVES)
    assert ops.dimension == 6
    np.testing.assert_allclose(ops.casimir(), 8.75 * np.eye(6), atol=1e-12)


@pytest.mark.parametrize("twice", range(1, 13))
def test_operator_algebra(twice):
    s = SpinValue(twice)
    o = spin_matrices(s)
    for a in (o.sx, o.sy, o.sz):
        np.testing.assert_allclose(a, a.conj().T, atol=0)
    comm = lambda a, b: a @ b - b @ a
    np.testing.assert_allclose(comm(o.sx, o.sy), 1j * o.sz, atol=1e-12)
    np.testing.assert_allclose(comm(o.sy, o.sz), 1j * o.sx, atol=1e-12)
    np.testing.assert_allclose(comm(o.sz, o.sx), 1j * o.sy, atol=1e-12)
    np.testing.assert_allclose(o.casimir(), s.casimir() * np.eye(twice + 1), atol=1e-12)


def test_table_one_spectrum():
    j = -282.0
    spec = multiplet_spectrum(FIVE_HALVES, FIVE_HALVES, j)
    assert [m.twice_spin for m in spec.multiplets] == [0, 2, 4, 6, 8, 10]
    assert spec.degeneracies.tolist() == [1, 3, 5, 7, 9, 11]
    assert spec.energies.tolist() == [0.0, -j, -3 * j, -6 * j, -10 * j, -15 * j]


def test_singlet_triplet():
    spec = multiplet_spectrum(HALF, HALF, 7.0)
    assert spec.degeneracies.tolist() == [1, 3]
    assert spec.energies.tolist() == [0.0, -7.0]


def test_mixed_pair_against_diagonalization():
    j = -3.7
    spec = multiplet_spectrum(ONE, HALF, j)
    assert spec.total_spins.tolist() == [0.5, 1.5]
    assert spec.energies.tolist() == [0.0, -1.5 * j]
    w = np.linalg.eigvalsh(dimer_hamiltonian(ONE, HALF, j, 0.0, 2.0))
    np.testing.assert_allclose(w - w.min(), spec.levels(), atol=1e-12)


def _shifted(levels, j):
    # zero the Smin multiplet: lowest level for J < 0, highest for J > 0
    if j < 0:
        return levels - levels.min()
    if j > 0:
        return levels - levels.max()
    return levels - levels[0]


@pytest.mark.parametrize("t1, t2", list(itertools.product(range(1, 6), repeat=2)))
@pytest.mark.parametrize("j", [-282.0, -1.0, 0.0, 13.5])
def test_brute_force_spectrum(t1, t2, j):
    s1, s2 = SpinValue(t1), SpinValue(t2)
    spec = multiplet_spectrum(s1, s2, j)
    assert spec.degeneracies.sum() == s1.multiplicity() * s2.multiplicity()
    w = np.sort(np.linalg.eigvalsh(dimer_hamiltonian(s1, s2, j, 0.0, 2.0)))
    expected = spec.levels()
    assert np.max(np.abs(_shifted(w, j) - expected)) <= 1e-9 * max(abs(j), 1.0)


@given(spins, spins, st.floats(-1e3, 1e3))
def test_spectrum_structure(s1, s2, j):
    spec = multiplet_spectrum(s1, s2, j)
    twice = [m.twice_spin for m in spec.multiplets]
    assert twice == list(range(abs(s1.twice_s - s2.twice_s), s1.twice_s + s2.twice_s + 1, 2))
    assert all(m.degeneracy == m.twice_spin + 1 for m in spec.multiplets)
    assert spec.multiplets[0].energy_K == 0.0
    assert sum(m.degeneracy for m in spec.multiplets) == s1.multiplicity() * s2.multiplicity()


@settings(max_examples=60, deadline=None)
@given(spins, spins, st.floats(-500, 500), st.floats(-1e5, 1e5), st.floats(0.5, 3.0))
def test_hamiltonian_commutes_with_total_sz(s1, s2, j, b, g):
    h = dimer_hamiltonian(s1, s2, j, b, g)
    np.testing.assert_allclose(h, h.conj().T, atol=0)
    sz = total_sz(s1, s2)
    comm = h @ sz - sz @ h
    assert np.linalg.norm(comm) <= 1e-10 * max(np.linalg.norm(h), 1e-300)


def test_singlet_triplet_hamiltonian():
    w, _ = diagonalize(dimer_hamiltonian(HALF, HALF, -10.0, 0.0, 2.0))
    # absolute energies are -J S1.S2: singlet at 3J/4, triplet at -J/4
    np.testing.assert_allclose(w - w[0], [0.0, 10.0, 10.0, 10.0], atol=1e-12)


def test_pure_zeeman():
    g, b = 2.1, 1.0e4
    w, _ = diagonalize(dimer_hamiltonian(HALF, HALF, 0.0, b, g))
    expected = sorted(-g * C_MU * b * m for m in (-1, 0, 0, 1))
    np.testing.assert_allclose(w, expected, atol=1e-14)


def test_dimension_cap():
    big = SpinValue(40)  # 41 x 41 = 1681 > 1024
    with pytest.raises(DimensionOverflow):
        dimer_hamiltonian(big, big, -1.0)
    assert dimer_hamiltonian(big, big, -1.0, max_dimension=2000).shape == (1681, 1681)


def test_diagonalize_identity():
    w, v = diagonalize(np.eye(5))
    np.testing.assert_array_equal(w, np.ones(5))


def test_diagonalize_sz():
    w, _ = diagonalize(spin_matrices(FIVE_HALVES).sz)
    np.testing.assert_allclose(w, [-2.5, -1.5, -0.5, 0.5, 1.5, 2.5], atol=1e-15)


def test_diagonalize_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        diagonalize(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(NotHermitian):
        diagonalize(np.zeros((2, 3)))


@settings(max_examples=40, deadline=None)
@given(spins, spins, st.floats(-500, 500), st.floats(-1e5, 1e5), st.floats(0.5, 3.0))
def test_diagonalize_contract(s1, s2, j, b, g):
    h = dimer_hamiltonian(s1, s2, j, b, g)
    w, v = diagonalize(h)
    assert np.all(np.diff(w) >= 0)
    norm = max(np.linalg.norm(h), 1e-300)
    assert np.linalg.norm(h - v @ np.diag(w) @ v.conj().T) <= 1e-9 * max(norm, 1.0)
    np.testing.assert_allclose(v.conj().T @ v, np.eye(len(w)), atol=1e-10)


def test_spectrum_rejects_nonfinite_j():
    with pytest.raises(ValueError):
        multiplet_spectrum(HALF, HALF, float("nan"))


@pytest.mark.parametrize("s", SPINS)
def test_multiplicity(s):
    assert s.multiplicity() == s.twice_s + 1
