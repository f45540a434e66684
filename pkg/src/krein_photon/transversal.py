"""The transversal (physical) subspace and the unitary representation it carries.

A wave function splits pointwise in the eigenframe of ``B(p)``:

    φ(p) = w₁⁺ f₊ + w₁⁻ f₋ + w_{r⁻²} f₀₊ + w_{r²} f₀₋ .

The transversal states are those with ``f₀± = 0``. A Lorentz transformation
maps a transversal state to a transversal state plus a Krein-null residue
along ``p``; dropping the residue leaves the unitary action

    (f₊, f₋)(p) ↦ e^{ia·p} R(Θ(α,p)) (f₊, f₋)(Λ(α)p),   R = [[c, -s], [s, c]],

where ``c = cos Θ`` and ``s = sin Θ`` are read off with Krein pairings:

    cos Θ = ⟨w₁⁺(p), J V(α) w₁⁺(Λ(α)p)⟩,   sin Θ = ⟨w₁⁻(p), J V(α) w₁⁺(Λ(α)p)⟩.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .cone import boost_action, validate_cone
from .krein import fiber_symmetry, frame
from .rep import (
    Envelope,
    GroupElement,
    MomentumWaveFunction,
    _as_group,
    _mapped_support,
    _snap_to_cone,
    act_local,
)
from .sl2c import KREIN_J, as_sl2, lorentz_of, minkowski_dot

__all__ = [
    "HELICITY_U",
    "FrameCoefficients",
    "PhasePair",
    "TransversalState",
    "decompose",
    "tr_projector",
    "project_tr",
    "embed",
    "transversal_block",
    "theta",
    "theta_special",
    "gauge_residue",
    "act_tr",
    "helicity_diagonalize",
    "helicity_multipliers",
]

HELICITY_U = np.array([[-1j, -1j], [1.0, -1.0]], dtype=complex) / np.sqrt(2.0)
_HELICITY_U_INV = HELICITY_U.conj().T


class FrameCoefficients(NamedTuple):
    f_plus: np.ndarray
    f_minus: np.ndarray
    f0_plus: np.ndarray
    f0_minus: np.ndarray

    def reconstruct(self, p) -> np.ndarray:
        f = frame(p, pole_fallback=True)
        return sum(w * c[..., None] for w, c in zip(f[:4], self))


class PhasePair(NamedTuple):
    cos: np.ndarray
    sin: np.ndarray

    def rotation(self) -> np.ndarray:
        c, s = np.asarray(self.cos), np.asarray(self.sin)
        return np.stack([np.stack([c, -s], -1), np.stack([s, c], -1)], -2)


def _values(phi, p):
    return phi(p) if callable(phi) else np.asarray(phi)


def decompose(phi, p, pole_fallback: bool = False) -> FrameCoefficients:
    """Frame coefficients ``⟨w_λ(p), φ(p)⟩`` (the frame is real orthonormal).

    ``phi`` may be a wave function or an array of values at ``p``.
    """
    p = validate_cone(p)
    f = frame(p, pole_fallback=pole_fallback)
    v = _values(phi, p)
    return FrameCoefficients(*(np.einsum("...i,...i->...", w, v) for w in f[:4]))


def tr_projector(p, pole_fallback: bool = False) -> np.ndarray:
    """``P(p) = w₁⁺w₁⁺ᵀ + w₁⁻w₁⁻ᵀ``; idempotent and self-adjoint for both ``J`` and ``J′_p``."""
    f = frame(p, pole_fallback=pole_fallback)
    outer = lambda w: w[..., :, None] * w[..., None, :]  # noqa: E731
    return outer(f.w1_plus) + outer(f.w1_minus)


# --------------------------------------------------------- transversal states


class TransversalState:
    """Pair ``(f₊, f₋)`` of scalar cone functions; evaluates to ``(..., 2)``."""

    def __call__(self, p) -> np.ndarray:
        raise NotImplementedError

    def support_points(self):
        return None

    @staticmethod
    def from_pair(f_plus: Envelope, f_minus: Envelope) -> TransversalState:
        return _Pair(f_plus, f_minus)


@dataclass(frozen=True, eq=False)
class _Pair(TransversalState):
    f_plus: Envelope
    f_minus: Envelope

    def __call__(self, p):
        p = np.asarray(p, dtype=float)
        return np.stack(
            [np.broadcast_to(self.f_plus(p), p.shape[:-1]), np.broadcast_to(self.f_minus(p), p.shape[:-1])],
            axis=-1,
        ).astype(complex)

    def support_points(self):
        parts = [self.f_plus.support_points(), self.f_minus.support_points()]
        if any(s is None for s in parts):
            return None
        return np.vstack(parts)


@dataclass(frozen=True, eq=False)
class _Projected(TransversalState):
    inner: MomentumWaveFunction

    def __call__(self, p):
        c = decompose(self.inner, p, pole_fallback=True)
        return np.stack([c.f_plus, c.f_minus], axis=-1).astype(complex)

    def support_points(self):
        return self.inner.support_points()


@dataclass(frozen=True, eq=False)
class _TrAction(TransversalState):
    g: GroupElement
    inner: TransversalState

    def __call__(self, p):
        p = np.asarray(p, dtype=float)
        q = _snap_to_cone(boost_action(self.g.alpha, p))
        rot = theta(self.g.alpha, p, pole_fallback=True).rotation()
        phase = np.exp(1j * minkowski_dot(self.g.a, p))
        return phase[..., None] * np.einsum("...ij,...j->...i", rot, self.inner(q))

    def support_points(self):
        return _mapped_support(self.inner, self.g)


@dataclass(frozen=True, eq=False)
class _Helicity(TransversalState):
    inner: TransversalState

    def __call__(self, p):
        return self.inner(p) @ _HELICITY_U_INV.T

    def support_points(self):
        return self.inner.support_points()


@dataclass(frozen=True, eq=False)
class Embedded(MomentumWaveFunction):
    """``w₁⁺ f₊ + w₁⁻ f₋`` as a C^4 wave function."""

    state: TransversalState

    def __call__(self, p):
        p = np.asarray(p, dtype=float)
        f = frame(p, pole_fallback=True)
        s = self.state(p)
        return f.w1_plus * s[..., 0:1] + f.w1_minus * s[..., 1:2]

    def support_points(self):
        return self.state.support_points()


def project_tr(phi: MomentumWaveFunction) -> TransversalState:
    return _Projected(phi)


def embed(state: TransversalState) -> MomentumWaveFunction:
    return Embedded(state)


def act_tr(g, state: TransversalState) -> TransversalState:
    return _TrAction(_as_group(g), state)


def helicity_diagonalize(state: TransversalState) -> TransversalState:
    """``(f₁, f₋₁) = 𝒰⁻¹ (f₊, f₋)``; there ``act_tr`` multiplies by ``e^{-iΘ}, e^{+iΘ}``."""
    return _Helicity(state)


def helicity_multipliers(alpha, p, pole_fallback: bool = False) -> np.ndarray:
    """Diagonal of ``𝒰⁻¹ R(Θ) 𝒰``, i.e. ``(e^{-iΘ}, e^{+iΘ})``."""
    t = theta(alpha, p, pole_fallback=pole_fallback)
    z = t.cos + 1j * t.sin
    return np.stack([z.conj(), z], axis=-1)


# -------------------------------------------------------------------- phases


def transversal_block(alpha, p, route: str = "local", pole_fallback: bool = False) -> np.ndarray:
    """``T[i, j] = ⟨w_i(p), J M w_j(Λ(α)p)⟩`` for ``i, j ∈ (+, -)``.

    ``M = V(α)`` for ``route="local"``; ``route="conjugate"`` uses
    ``J′_p V(α) J′_{Λ(α)p}`` instead and yields the same block.
    """
    alpha = as_sl2(alpha)
    p = validate_cone(p)
    q = _snap_to_cone(boost_action(alpha, p))
    fp = frame(p, pole_fallback=pole_fallback)
    fq = frame(q, pole_fallback=pole_fallback)
    V = lorentz_of(alpha, validate=False)
    if route == "local":
        m = np.broadcast_to(V, p.shape[:-1] + (4, 4))
    elif route == "conjugate":
        m = fiber_symmetry(p) @ V @ fiber_symmetry(q)
    else:
        raise ValueError(f"unknown route {route!r}")
    src = np.stack([fq.w1_plus, fq.w1_minus], axis=-1)  # (..., 4, 2)
    dst = np.stack([fp.w1_plus, fp.w1_minus], axis=-1)
    return np.swapaxes(dst, -1, -2) @ KREIN_J @ m @ src


def theta(alpha, p, route: str = "local", pole_fallback: bool = False) -> PhasePair:
    """``(cos Θ(α,p), sin Θ(α,p))``, the rotation taking ``(f₊, f₋)(Λp)`` to the new pair at ``p``."""
    t = transversal_block(alpha, p, route=route, pole_fallback=pole_fallback)
    return PhasePair(t[..., 0, 0], t[..., 1, 0])


def theta_special(kind: str, angle, p) -> PhasePair:
    """Closed forms of Θ for the one-parameter elements ``α_{μν}``.

    ``kind`` is one of ``"03"``, ``"12"``, ``"23"``, ``"13"``. The ``"13"``
    form is the ``"23"`` form with ``p¹ ↔ p²``; that mirror reverses the
    orientation of the transversal plane, so the sine acquires a sign flip.
    """
    p = validate_cone(p)
    angle = np.asarray(angle, dtype=float)
    if kind in ("03", "12"):
        shape = np.broadcast_shapes(angle.shape, p.shape[:-1])
        return PhasePair(np.ones(shape), np.zeros(shape))
    if kind not in ("23", "13"):
        raise ValueError(f"unknown element {kind!r}")
    r = np.linalg.norm(p[..., 1:], axis=-1)
    p1, p2, p3 = p[..., 1], p[..., 2], p[..., 3]
    if kind == "13":
        p1, p2 = p2, p1
    rho = np.hypot(p1, p2)
    den = np.sqrt(p1 ** 2 + (p2 * np.cos(angle) + p3 * np.sin(angle)) ** 2)
    s = r * p1 * np.sin(angle) / (den * rho)
    c = (p2 * p3 * np.sin(angle) / rho + rho * np.cos(angle)) / den
    if kind == "13":
        s = -s
    return PhasePair(c, s)


def gauge_residue(g, state: TransversalState, p) -> np.ndarray:
    """``u = U(g)φ(p) - (embedded 𝕌(g)(f₊, f₋))(p)`` for ``φ = embed(state)``.

    ``u`` is Krein-null, Krein-orthogonal to ``w₁±(p)`` and parallel to ``p``;
    it vanishes for rotations and translations.
    """
    g = _as_group(g)
    p = validate_cone(p)
    return act_local(g, embed(state))(p) - embed(act_tr(g, state))(p)
