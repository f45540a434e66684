from __future__ import annotations

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from krein_photon import field, krein, rep, sl2c, transversal
from krein_photon.cone import random_cone_points

from conftest import cone_points, sl2_elements
from oracles import J, lorentz_trace, section_numeric

P_EQ = np.array([1.0, 1.0, 0.0, 0.0])
angles = st.floats(-3.0, 3.0)

STATE = transversal.TransversalState.from_pair(
    rep.ScalarFunction(lambda x: np.cos(x[..., 1]) + 0.3j * x[..., 3]),
    rep.ScalarFunction(lambda x: np.exp(-x[..., 0]) * (1 + 0.5j * x[..., 2])),
)


def _oracle_theta(alpha, p):
    """Θ from frames read off numerically inverted section matrices."""
    q = np.linalg.solve(lorentz_trace(alpha), p)
    q[0] = np.linalg.norm(q[1:])
    wp = np.linalg.inv(lorentz_trace(section_numeric(p)))[:, 1:3]
    wq = np.linalg.inv(lorentz_trace(section_numeric(q)))[:, 1:3]
    T = wp.T @ J @ lorentz_trace(alpha) @ wq
    return T[0, 0], T[1, 0]


def _literal_13(angle, p):
    """The α₂₃ closed form evaluated with p¹ and p² interchanged, taken literally."""
    swapped = np.array([p[..., 0], p[..., 2], p[..., 1], p[..., 3]]).T if p.ndim == 2 else p[[0, 2, 1, 3]]
    return transversal.theta_special("23", angle, swapped)


# ------------------------------------------------------------- decomposition


def test_decompose_frame_vector():
    p = np.array([2.0, 0.3, 1.0, -np.sqrt(4 - 1.09)])
    c = transversal.decompose(krein.frame(p).w1_plus, p)
    assert np.allclose(c, [1, 0, 0, 0], atol=1e-15)


@given(cone_points())
def test_decompose_momentum_is_pure_f0_plus(p):
    r = np.linalg.norm(p[1:])
    c = transversal.decompose(p, p)
    assert np.allclose(c, [0, 0, np.sqrt(2) * r, 0], atol=1e-12 * r)


def test_decompose_reconstructs(rng):
    p = random_cone_points(rng, 100)
    v = rng.standard_normal((100, 4)) + 1j * rng.standard_normal((100, 4))
    assert np.allclose(transversal.decompose(v, p).reconstruct(p), v, atol=1e-12)


def test_projection_examples(rng):
    p = random_cone_points(rng, 30)
    state = transversal.project_tr(rep.FrameMode("w1-", rep.Constant(2.0)) + rep.FrameMode("w1+", rep.Constant(1j)))
    assert np.allclose(state(p), [[1j, 2.0]] * 30)
    null = transversal.project_tr(rep.FrameMode("wr-2", rep.Constant(3.0)))
    assert np.allclose(null(p), 0, atol=1e-15)


@given(cone_points())
def test_projector_properties(p):
    P = transversal.tr_projector(p)
    Jp = krein.fiber_symmetry(p)
    assert np.allclose(P @ P, P, atol=1e-12)
    assert np.allclose(J @ P.T @ J, P, atol=1e-12)
    assert np.abs(Jp @ P.T @ Jp - P).max() <= 1e-10 * np.abs(Jp).max() ** 2


# -------------------------------------------------------------------- phases


def test_theta_frozen_example():
    t = transversal.theta(sl2c.alpha23(0.7), P_EQ)
    assert t.cos == pytest.approx(np.cos(0.7), abs=1e-14)
    assert t.sin == pytest.approx(np.sin(0.7), abs=1e-14)


@given(sl2_elements(), cone_points())
def test_theta_matches_oracle(alpha, p):
    q = np.linalg.solve(lorentz_trace(alpha), p)
    assume(min(np.hypot(q[1], q[2]) / np.linalg.norm(q[1:]), np.hypot(p[1], p[2]) / p[0]) > 1e-6)
    c, s = _oracle_theta(alpha, p)
    t = transversal.theta(alpha, p)
    assert abs(t.cos - c) <= 1e-9 and abs(t.sin - s) <= 1e-9


@given(sl2_elements(), cone_points())
def test_theta_block_structure(alpha, p):
    T = transversal.transversal_block(alpha, p)
    assert abs(T[0, 0] - T[1, 1]) <= 1e-10
    assert abs(T[0, 1] + T[1, 0]) <= 1e-10
    assert abs(T[0, 0] ** 2 + T[1, 0] ** 2 - 1) <= 1e-10
    Tc = transversal.transversal_block(alpha, p, route="conjugate")
    assert np.abs(T - Tc).max() <= 1e-9


@given(sl2_elements(), cone_points())
def test_theta_single_valued_on_double_cover(alpha, p):
    a, b = transversal.theta(alpha, p), transversal.theta(-alpha, p)
    assert abs(a.cos - b.cos) <= 1e-12 and abs(a.sin - b.sin) <= 1e-12


@given(sl2_elements(scale=1.0), sl2_elements(scale=1.0), cone_points())
def test_theta_cocycle(a, b, p):
    q = rep._snap_to_cone(np.linalg.solve(lorentz_trace(a), p))
    z = lambda t: t.cos + 1j * t.sin  # noqa: E731
    lhs = z(transversal.theta(a @ b, p))
    rhs = z(transversal.theta(a, p)) * z(transversal.theta(b, q))
    assert abs(lhs - rhs) <= 1e-10


@pytest.mark.parametrize(
    "kind, make",
    [("03", sl2c.alpha03), ("12", sl2c.alpha12), ("23", sl2c.alpha23), ("13", sl2c.alpha13)],
)
def test_closed_forms(kind, make, rng):
    p = random_cone_points(rng, 200)
    t = rng.uniform(-3, 3, 200)
    got, ref = transversal.theta(make(t), p), transversal.theta_special(kind, t, p)
    assert np.abs(got.cos - ref.cos).max() <= 1e-10
    assert np.abs(got.sin - ref.sin).max() <= 1e-10


def test_literal_13_swap_has_opposite_sine(rng):
    # The interchange p¹ ↔ p² is a mirror of the transversal plane: it keeps cos Θ and flips sin Θ.
    p = random_cone_points(rng, 200)
    t = rng.uniform(-3, 3, 200)
    got, lit = transversal.theta(sl2c.alpha13(t), p), _literal_13(t, p)
    assert np.abs(got.cos - lit.cos).max() <= 1e-10
    assert np.abs(got.sin + lit.sin).max() <= 1e-10
    assert np.abs(got.sin - lit.sin).max() > 0.1


def test_theta_rejects_poles_without_fallback():
    from krein_photon.errors import DegenerateCoordinatesError

    with pytest.raises(DegenerateCoordinatesError):
        transversal.theta(sl2c.alpha03(0.2), np.array([1.0, 0, 0, 1.0]))


# ------------------------------------------------------------------ residues


@pytest.mark.parametrize("make", [sl2c.alpha12, sl2c.alpha23, sl2c.alpha13])
@given(angle=angles)
def test_rotations_leave_no_residue(make, angle):
    p = random_cone_points(np.random.default_rng(3), 40)
    assert np.abs(transversal.gauge_residue(make(angle), STATE, p)).max() <= 1e-12


@given(st.lists(st.floats(-2, 2), min_size=4, max_size=4), sl2_elements())
def test_residue_is_null_and_along_p(a, alpha):
    g = rep.GroupElement(np.array(a), alpha)
    p = random_cone_points(np.random.default_rng(5), 40)
    u = transversal.gauge_residue(g, STATE, p)
    s = max(1.0, np.abs(rep.act_local(g, transversal.embed(STATE))(p)).max())
    f = krein.frame(p)
    assert np.abs(np.einsum("ni,ij,nj->n", u.conj(), J, u)).max() <= 1e-10 * s ** 2
    assert np.abs(np.einsum("ni,ij,nj->n", f.w1_plus, J, u)).max() <= 1e-10 * s
    assert np.abs(np.einsum("ni,ij,nj->n", f.w1_minus, J, u)).max() <= 1e-10 * s
    gt = np.einsum("ni,ni->n", p, u) / np.einsum("ni,ni->n", p, p)
    assert np.abs(u - gt[:, None] * p).max() <= 1e-10 * s


def test_boost_residue_frozen_values():
    state = transversal.TransversalState.from_pair(rep.Constant(0.0), rep.Constant(1.0))
    u = transversal.gauge_residue(sl2c.alpha03(1.0), state, P_EQ)
    c = transversal.decompose(u, P_EQ)
    assert c.f0_plus == pytest.approx(np.sqrt(2) * np.tanh(1.0), abs=1e-14)
    assert abs(c.f0_minus) < 1e-15 and abs(c.f_plus) < 1e-15 and abs(c.f_minus) < 1e-15
    gt = field.nonlocal_gauge_function(sl2c.alpha03(1.0), state, P_EQ)
    assert gt == pytest.approx(np.tanh(1.0), abs=1e-14)


# -------------------------------------------------------- unitary action


def test_act_tr_identity_and_translation(rng):
    p = random_cone_points(rng, 30)
    assert np.allclose(transversal.act_tr(rep.GroupElement(), STATE)(p), STATE(p), atol=1e-15)
    a = np.array([1.0, 0.2, -0.3, 0.4])
    got = transversal.act_tr(rep.GroupElement.translation(a), STATE)(p)
    assert np.allclose(got, np.exp(1j * sl2c.minkowski_dot(a, p))[:, None] * STATE(p), atol=1e-15)


@given(sl2_elements(), sl2_elements())
def test_act_tr_group_law(a1, a2):
    p = random_cone_points(np.random.default_rng(8), 20)
    lhs = transversal.act_tr(a1 @ a2, STATE)(p)
    rhs = transversal.act_tr(a1, transversal.act_tr(a2, STATE))(p)
    assert np.abs(lhs - rhs).max() <= 1e-10 * max(1, np.abs(rhs).max())


@given(sl2_elements())
def test_act_tr_is_projection_of_local_action(alpha):
    p = random_cone_points(np.random.default_rng(9), 20)
    lhs = transversal.project_tr(rep.act_local(alpha, transversal.embed(STATE)))(p)
    rhs = transversal.act_tr(alpha, STATE)(p)
    assert np.abs(lhs - rhs).max() <= 1e-10 * max(1, np.abs(rep.act_local(alpha, transversal.embed(STATE))(p)).max())


def test_hilbert_norm_preserved_pointwise():
    # R(Θ) is orthogonal, so |(f₊, f₋)| at p equals |(f₊, f₋)| at Λp
    p = random_cone_points(np.random.default_rng(4), 50)
    alpha = sl2c.random_sl2_entries(np.random.default_rng(6))
    q = rep._snap_to_cone(np.linalg.solve(lorentz_trace(alpha), p.T).T)
    got = np.linalg.norm(transversal.act_tr(alpha, STATE)(p), axis=1)
    assert np.allclose(got, np.linalg.norm(STATE(q), axis=1), atol=1e-12)


# ------------------------------------------------------------------ helicity


def test_helicity_unit_columns():
    state = transversal.TransversalState.from_pair(rep.Constant(1.0), rep.Constant(0.0))
    h = transversal.helicity_diagonalize(state)(P_EQ)
    assert np.allclose(np.abs(h), 1 / np.sqrt(2), atol=1e-15)


@given(sl2_elements(), cone_points())
def test_helicity_diagonalises_rotation(alpha, p):
    t = transversal.theta(alpha, p)
    U = transversal.HELICITY_U
    D = np.linalg.inv(U) @ t.rotation() @ U
    m = transversal.helicity_multipliers(alpha, p)
    assert np.allclose(D, np.diag(m), atol=1e-10)
    assert np.allclose(np.abs(m), 1, atol=1e-10)


def test_rotation_multiplies_helicity_plus_one_by_minus_angle():
    theta_rot = 0.7
    state = transversal.TransversalState.from_pair(rep.Constant(0.4), rep.Constant(-1.1j))
    before = transversal.helicity_diagonalize(state)(P_EQ)
    after = transversal.helicity_diagonalize(transversal.act_tr(sl2c.alpha23(theta_rot), state))(P_EQ)
    assert after[0] == pytest.approx(np.exp(-1j * theta_rot) * before[0], abs=1e-14)
    assert after[1] == pytest.approx(np.exp(1j * theta_rot) * before[1], abs=1e-14)
