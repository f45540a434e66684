from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from krein_photon import field, krein, rep, sl2c

from conftest import cone_points, sl2_elements
from oracles import J, G, lorentz_trace, section_numeric

PHI = (
    rep.FrameMode("w1+", rep.Gaussian((1.0, 0.5, 0.2), 0.15))
    + rep.FrameMode("wr-2", rep.Gaussian((0.6, -0.8, 0.5), 0.12, 0.4 - 0.3j))
    + rep.VectorMode((0.2, -1.0, 0.5j, 0.3), rep.Gaussian((-0.4, 0.9, 1.1), 0.18))
)
SMOOTH = rep.VectorMode((1.0, 0.5j, -0.2, 0.1), rep.ScalarFunction(lambda p: np.cos(p[..., 1]) + 1j * np.sin(p[..., 3])))

translations = st.lists(st.floats(-2, 2), min_size=4, max_size=4).map(np.array)


def _group(a, alpha):
    return rep.GroupElement(a, alpha)


def _pullback(alpha, p):
    q = np.linalg.solve(lorentz_trace(alpha), p)
    q[0] = np.linalg.norm(q[1:])
    return q


@given(translations, sl2_elements(), cone_points())
def test_local_action_matches_direct_formula(a, alpha, p):
    g = _group(a, alpha)
    q = _pullback(alpha, p)
    expect = np.exp(1j * (a @ G @ p)) * lorentz_trace(alpha) @ SMOOTH(q)
    got = rep.act_local(g, SMOOTH)(p)
    assert np.abs(got - expect).max() <= 1e-10 * max(1, np.abs(expect).max())


@given(translations, sl2_elements(scale=1.0), cone_points())
def test_induced_action_matches_direct_formula(a, alpha, p):
    g = _group(a, alpha)
    q = _pullback(alpha, p)
    gamma = section_numeric(p) @ alpha @ np.linalg.inv(section_numeric(q))
    expect = np.exp(1j * (a @ G @ p)) * lorentz_trace(gamma) @ SMOOTH(q)
    got = rep.act_induced(g, SMOOTH)(p)
    assert np.abs(got - expect).max() <= 1e-9 * max(1, np.abs(expect).max())


@pytest.mark.parametrize("act", [rep.act_local, rep.act_conjugate, rep.act_induced])
@given(translations, sl2_elements(), translations, sl2_elements(), st.lists(cone_points(), min_size=5, max_size=5))
def test_two_path_group_law(act, a1, al1, a2, al2, pts):
    p = np.array(pts)
    g1, g2 = _group(a1, al1), _group(a2, al2)
    lhs = act(g1 @ g2, PHI)(p)
    rhs = act(g1, act(g2, PHI))(p)
    assert np.abs(lhs - rhs).max() <= 1e-10 * max(1, np.abs(rhs).max())


@given(translations, sl2_elements(), st.lists(cone_points(), min_size=5, max_size=5))
def test_intertwiner_commutes_with_actions(a, alpha, pts):
    p = np.array(pts)
    g = _group(a, alpha)
    lhs = rep.act_local(g, rep.intertwine_to_local(PHI))(p)
    rhs = rep.intertwine_to_local(rep.act_induced(g, PHI))(p)
    assert np.abs(lhs - rhs).max() <= 1e-10 * max(1, np.abs(rhs).max())
    back = rep.intertwine_to_induced(rep.intertwine_to_local(PHI))(p)
    assert np.allclose(back, PHI(p), atol=1e-12)


@given(translations, sl2_elements(), st.lists(cone_points(), min_size=5, max_size=5))
def test_conjugate_action_is_fiber_conjugate_of_local(a, alpha, pts):
    p = np.array(pts)
    g = _group(a, alpha)
    lhs = rep.act_conjugate(g, PHI)(p)
    rhs = rep.apply_fiber_symmetry(rep.act_local(g, rep.apply_fiber_symmetry(PHI)))(p)
    assert np.abs(lhs - rhs).max() <= 1e-10 * max(1, np.abs(rhs).max())


@given(sl2_elements(), cone_points())
def test_multiplier_is_krein_unitary(alpha, p):
    L = rep.multiplier(alpha, p)
    assert np.abs(L @ J @ L.T @ J - np.eye(4)).max() <= 1e-10 * max(1, np.abs(L).max()) ** 2


@given(sl2_elements(scale=1.0), sl2_elements(scale=1.0), cone_points())
def test_multiplier_cocycle(d, a, p):
    assert rep.multiplier_cocycle_check(d, a, p) <= 1e-10 * max(1, np.abs(rep.multiplier(d @ a, p)).max())


def test_identity_and_translation(rng):
    from krein_photon.cone import random_cone_points

    p = random_cone_points(rng, 50)
    for act in (rep.act_local, rep.act_conjugate, rep.act_induced):
        assert np.allclose(act(rep.GroupElement(), PHI)(p), PHI(p), atol=1e-15)
    a = np.array([0.3, -1.0, 0.2, 0.5])
    got = rep.act_local(rep.GroupElement.translation(a), PHI)(p)
    assert np.allclose(got, np.exp(1j * sl2c.minkowski_dot(a, p))[:, None] * PHI(p), atol=1e-15)


@given(translations, sl2_elements(), translations, sl2_elements())
def test_group_element_algebra(a1, al1, a2, al2):
    g1, g2 = _group(a1, al1), _group(a2, al2)
    e = g1 @ g1.inverse()
    assert np.allclose(e.a, 0, atol=1e-9 * max(1, np.abs(g1.V).max()) ** 2)
    assert np.allclose(e.alpha, np.eye(2), atol=1e-10 * max(1, np.abs(al1).max()) ** 2)
    g12 = g1 @ g2
    assert np.allclose(g12.V, g1.V @ g2.V, atol=1e-10 * max(1, np.abs(g1.V).max() * np.abs(g2.V).max()))


def test_wave_function_arithmetic(rng):
    from krein_photon.cone import random_cone_points

    p = random_cone_points(rng, 10)
    f = rep.FrameMode("w1-", rep.Gaussian((1, 0, 0), 0.5))
    g = rep.MomentumMode(rep.Constant(2.0))
    assert np.allclose((f + g)(p), f(p) + g(p))
    assert np.allclose((f - g)(p), f(p) - g(p))
    assert np.allclose((2j * f)(p), 2j * f(p))
    assert np.allclose((-f)(p), -f(p))
    assert np.allclose(g(p), 2 * p)


def test_frame_mode_rejects_unknown_label():
    with pytest.raises(ValueError):
        rep.FrameMode("w0", rep.Constant())
    with pytest.raises(ValueError):
        rep.Gaussian((1, 0, 0), 0.0)


def test_support_of_boosted_packet_covers_it():
    g = rep.GroupElement(alpha=sl2c.alpha03(1.2))
    moved = rep.act_local(g, PHI)
    q = field.ConeQuadrature.covering(moved)
    assert q.check_tails(moved) < 1e-6


def test_krein_product_invariant_under_actions():
    phi = rep.FrameMode("w1+", rep.Gaussian((1.0, 0.5, 0.2), 0.12)) + rep.FrameMode(
        "wr-2", rep.Gaussian((0.9, 0.6, 0.4), 0.12, 0.4 - 0.3j)
    )
    psi = rep.FrameMode("w1-", rep.Gaussian((1.1, 0.4, 0.3), 0.12)) + rep.FrameMode(
        "wr2", rep.Gaussian((1.0, 0.3, 0.5), 0.12, 0.5j)
    )
    base = field.krein_product(phi, psi)
    scale = np.sqrt(field.hilbert_product(phi, phi).real * field.hilbert_product(psi, psi).real)
    g = rep.GroupElement(np.array([0.2, 0.1, -0.4, 0.3]), sl2c.rotation(1, 0.7) @ sl2c.boost(2, 0.6))
    for act in (rep.act_local, rep.act_conjugate):
        assert abs(field.krein_product(act(g, phi), act(g, psi)) - base) <= 1e-6 * scale


def test_fiber_symmetry_values(rng):
    from krein_photon.cone import random_cone_points

    p = random_cone_points(rng, 20)
    got = rep.apply_fiber_symmetry(PHI)(p)
    assert np.allclose(got, np.einsum("nij,nj->ni", krein.fiber_symmetry(p), PHI(p)), atol=1e-13)
