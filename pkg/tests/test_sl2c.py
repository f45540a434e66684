from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from krein_photon import sl2c
from krein_photon.errors import NotUnimodularError

from conftest import reals, sl2_elements
from oracles import G, hat, lorentz_trace, sl2_exp


@given(sl2_elements())
def test_lorentz_matches_trace_formula(a):
    V = sl2c.lorentz_of(a)
    assert np.allclose(V, lorentz_trace(a), atol=1e-12 * max(1, np.abs(V).max()))


@given(sl2_elements(), sl2_elements())
def test_homomorphism(a, b):
    lhs = sl2c.lorentz_of(a @ b)
    rhs = sl2c.lorentz_of(a) @ sl2c.lorentz_of(b)
    assert np.abs(lhs - rhs).max() <= 1e-10 * max(1, np.abs(rhs).max())


@given(sl2_elements())
def test_lorentz_preserves_metric(a):
    V = sl2c.lorentz_of(a)
    assert np.abs(V.T @ G @ V - G).max() <= 1e-10 * max(1, np.abs(V).max()) ** 2
    assert V[0, 0] >= 1 - 1e-12


@given(sl2_elements())
def test_double_cover_kernel(a):
    assert np.array_equal(sl2c.lorentz_of(-a), sl2c.lorentz_of(a))


@given(sl2_elements(), st.lists(reals, min_size=4, max_size=4))
def test_lorentz_is_pauli_action(a, p):
    p = np.array(p)
    q = sl2c.lorentz_of(a) @ p
    assert np.allclose(hat(q), a @ hat(p) @ a.conj().T, atol=1e-10 * max(1, np.abs(a).max() ** 2))
    assert np.allclose(sl2c.pauli_action(a, p), q, atol=1e-10 * max(1, np.abs(q).max()))


@given(st.lists(reals, min_size=4, max_size=4))
def test_pauli_embedding_roundtrip_and_determinant(p):
    p = np.array(p)
    h = sl2c.pauli_embed(p)
    assert np.allclose(sl2c.pauli_unembed(h), p, atol=1e-14)
    assert np.isclose(np.linalg.det(h).real, sl2c.minkowski_dot(p, p), atol=1e-12)


def test_boost03_frozen_matrix():
    lam = 0.8
    c, s = np.cosh(lam), np.sinh(lam)
    expected = np.array([[c, 0, 0, -s], [0, 1, 0, 0], [0, 0, 1, 0], [-s, 0, 0, c]])
    assert np.allclose(sl2c.lorentz_of(sl2c.alpha03(lam)), expected, atol=1e-14)


@pytest.mark.parametrize(
    "make, generator",
    [
        (sl2c.alpha03, lambda t: [0, 0, -t / 2]),
        (sl2c.alpha23, lambda t: [-0.5j * t, 0, 0]),
        (sl2c.alpha13, lambda t: [0, 0.5j * t, 0]),
        (sl2c.alpha12, lambda t: [0, 0, -0.5j * t]),
    ],
)
def test_one_parameter_elements_match_expm(make, generator):
    for t in (-1.3, 0.0, 0.4, 2.9):
        assert np.allclose(make(t), sl2_exp(generator(t)), atol=1e-13)


@given(st.lists(st.complex_numbers(max_magnitude=2.0, allow_nan=False), min_size=3, max_size=3))
def test_exp_traceless_matches_expm(x):
    assert np.allclose(sl2c.exp_traceless(np.array(x)), sl2_exp(x), atol=1e-10 * np.exp(2 * np.abs(x).sum()))


def test_rotation_by_two_pi_is_minus_identity():
    for axis in (1, 2, 3):
        assert np.allclose(sl2c.rotation(axis, 2 * np.pi), -np.eye(2), atol=1e-14)
        assert np.allclose(sl2c.lorentz_of(sl2c.rotation(axis, 2 * np.pi)), np.eye(4), atol=1e-14)


def test_rotations_are_unitary_and_boosts_hermitian():
    r = sl2c.rotation(2, 0.9)
    b = sl2c.boost(1, 0.9)
    assert np.allclose(r @ r.conj().T, np.eye(2), atol=1e-15)
    assert np.allclose(b, b.conj().T, atol=1e-15)


@given(sl2_elements())
def test_inverse(a):
    assert np.allclose(a @ sl2c.sl2_inverse(a), np.eye(2), atol=1e-12 * max(1, np.abs(a).max() ** 2))


def test_as_sl2_rejects_non_unimodular():
    with pytest.raises(NotUnimodularError):
        sl2c.as_sl2(np.diag([2.0, 1.0]))
    with pytest.raises(NotUnimodularError):
        sl2c.as_sl2(np.eye(3))


def test_project_unimodular():
    a = np.array([[2.0, 1.0j], [0.5, 3.0]])
    proj = sl2c.project_unimodular(a)
    assert np.isclose(np.linalg.det(proj), 1.0, atol=1e-14)
    assert np.allclose(proj / a, proj[0, 0] / a[0, 0])
    with pytest.raises(NotUnimodularError):
        sl2c.project_unimodular(np.zeros((2, 2)))


@given(st.complex_numbers(max_magnitude=5.0, allow_nan=False), st.floats(0.0, 4 * np.pi, exclude_max=True))
def test_little_group_roundtrip(z, phi):
    g = sl2c.little_group_element(z, phi)
    assert sl2c.in_little_group(g)
    z2, phi2 = sl2c.little_group_params(g)
    assert abs(z2 - z) <= 1e-12 * max(1, abs(z))
    d = abs(phi2 - phi)
    assert min(d, 4 * np.pi - d) <= 1e-12


def test_little_group_fixes_reference_momentum():
    g = sl2c.little_group_element(0.3 - 1.1j, 1.7)
    assert np.allclose(sl2c.lorentz_of(g) @ sl2c.P_BAR, sl2c.P_BAR, atol=1e-14)
    assert not sl2c.in_little_group(sl2c.alpha03(0.2))
    with pytest.raises(ValueError):
        sl2c.in_little_group(g, tol=0.0)


def test_random_elements_are_unimodular(rng):
    for a in (sl2c.random_sl2_entries(rng, 100), sl2c.random_sl2(rng, 100, max_rapidity=2.0)):
        det = a[:, 0, 0] * a[:, 1, 1] - a[:, 0, 1] * a[:, 1, 0]
        assert np.allclose(det, 1.0, atol=1e-12)
