"""Poincaré double-cover actions on C^4-valued wave functions over the cone.

Wave functions are immutable expression trees, evaluated on demand at arrays
of cone points ``(..., 4) -> (..., 4)``. Boosted arguments are therefore exact
and all pointwise identities hold to rounding.

Three actions of ``g = (a, α)`` are provided:

* local:      ``e^{ia·p} V(α) φ(Λ(α)p)``
* conjugate:  ``e^{ia·p} J′_p V(α) J′_{Λ(α)p} φ(Λ(α)p)``
* induced:    ``e^{ia·p} V(γ(α,p)) ψ(Λ(α)p)``

and the intertwiner ``φ(p) = V(β(p))⁻¹ ψ(p)`` carries the induced picture to
the local one.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from numbers import Number

import numpy as np

from .cone import boost_action, cone_point, wigner_element
from .krein import FRAME_LABELS, fiber_symmetry, frame, section_lorentz, section_lorentz_inverse
from .sl2c import as_sl2, lorentz_of, minkowski_dot, sl2_inverse

__all__ = [
    "GroupElement",
    "Envelope",
    "Gaussian",
    "Constant",
    "ScalarFunction",
    "MomentumWaveFunction",
    "FrameMode",
    "VectorMode",
    "MomentumMode",
    "act_local",
    "act_conjugate",
    "act_induced",
    "intertwine_to_local",
    "intertwine_to_induced",
    "apply_fiber_symmetry",
    "multiplier",
    "multiplier_cocycle_check",
    "SUPPORT_SIGMAS",
]

# Gaussian envelopes are treated as supported in a ball of this many widths;
# the mass of a 3-d Gaussian outside 7σ is about 1e-10.
SUPPORT_SIGMAS = 7.0


def _snap_to_cone(q):
    q = np.array(q, dtype=float, copy=True)
    q[..., 0] = np.linalg.norm(q[..., 1:], axis=-1)
    return q


@dataclass(frozen=True, eq=False)
class GroupElement:
    """Element ``(a, α)`` of the semidirect product of translations and SL(2,C)."""

    a: np.ndarray = field(default_factory=lambda: np.zeros(4))
    alpha: np.ndarray = field(default_factory=lambda: np.eye(2, dtype=complex))

    def __post_init__(self):
        a = np.asarray(self.a, dtype=float)
        if a.shape != (4,):
            raise ValueError("translation must be a four-vector")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "alpha", as_sl2(np.asarray(self.alpha, dtype=complex)).copy())

    @classmethod
    def translation(cls, a) -> GroupElement:
        return cls(a=a)

    @classmethod
    def lorentz(cls, alpha) -> GroupElement:
        return cls(alpha=alpha)

    @property
    def V(self) -> np.ndarray:
        return lorentz_of(self.alpha)

    def compose(self, other: GroupElement) -> GroupElement:
        """``(a, α)∘(b, β) = (a + V(α) b, αβ)``."""
        return GroupElement(self.a + self.V @ other.a, self.alpha @ other.alpha)

    def inverse(self) -> GroupElement:
        ainv = sl2_inverse(self.alpha)
        return GroupElement(-lorentz_of(ainv) @ self.a, ainv)

    def __matmul__(self, other: GroupElement) -> GroupElement:
        return self.compose(other)


def _as_group(g) -> GroupElement:
    return g if isinstance(g, GroupElement) else GroupElement(alpha=g)


# ---------------------------------------------------------------- envelopes


class Envelope:
    """Scalar function on the cone."""

    def __call__(self, p) -> np.ndarray:
        raise NotImplementedError

    def support_points(self):
        """Spatial momenta covering the effective support, or ``None`` if unbounded."""
        return None


def _sphere_directions(n: int = 146) -> np.ndarray:
    # Fibonacci lattice plus the six axis directions
    k = np.arange(n) + 0.5
    z = 1 - 2 * k / n
    phi = np.pi * (1 + 5 ** 0.5) * k
    s = np.sqrt(1 - z * z)
    fib = np.stack([s * np.cos(phi), s * np.sin(phi), z], axis=1)
    return np.vstack([fib, np.eye(3), -np.eye(3)])


_DIRS = _sphere_directions()


@dataclass(frozen=True, eq=False)
class Gaussian(Envelope):
    """``amplitude · exp(-|p⃗ - center|² / (2σ²))``."""

    center: tuple[float, float, float]
    sigma: float
    amplitude: complex = 1.0

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError("Gaussian width must be positive")
        object.__setattr__(self, "center", tuple(float(c) for c in self.center))

    def __call__(self, p):
        p = np.asarray(p, dtype=float)
        d = p[..., 1:] - np.asarray(self.center)
        return self.amplitude * np.exp(-np.sum(d * d, axis=-1) / (2.0 * self.sigma ** 2))

    def support_points(self):
        c = np.asarray(self.center)
        return np.vstack([c, c + SUPPORT_SIGMAS * self.sigma * _DIRS])


@dataclass(frozen=True, eq=False)
class Constant(Envelope):
    value: complex = 1.0

    def __call__(self, p):
        p = np.asarray(p)
        return np.full(p.shape[:-1], self.value, dtype=complex)


@dataclass(frozen=True, eq=False)
class ScalarFunction(Envelope):
    """Wrap a vectorised callable ``(..., 4) -> (...)``."""

    fn: object
    support: object = None

    def __call__(self, p):
        return np.asarray(self.fn(np.asarray(p, dtype=float)), dtype=complex)

    def support_points(self):
        return None if self.support is None else np.asarray(self.support, dtype=float)


# ------------------------------------------------------------ wave functions


class MomentumWaveFunction:
    """Evaluable map from cone points to C^4."""

    def __call__(self, p) -> np.ndarray:
        raise NotImplementedError

    def support_points(self):
        return None

    def __add__(self, other):
        if not isinstance(other, MomentumWaveFunction):
            return NotImplemented
        return Sum((self, other))

    def __sub__(self, other):
        if not isinstance(other, MomentumWaveFunction):
            return NotImplemented
        return Sum((self, Scaled(-1.0, other)))

    def __mul__(self, c):
        if not isinstance(c, Number):
            return NotImplemented
        return Scaled(complex(c), self)

    __rmul__ = __mul__

    def __neg__(self):
        return Scaled(-1.0, self)


@dataclass(frozen=True, eq=False)
class Sum(MomentumWaveFunction):
    terms: tuple

    def __call__(self, p):
        p = np.asarray(p, dtype=float)
        out = np.zeros(p.shape[:-1] + (4,), dtype=complex)
        for t in self.terms:
            out = out + t(p)
        return out

    def support_points(self):
        parts = [t.support_points() for t in self.terms]
        if any(s is None for s in parts):
            return None
        return np.vstack(parts)


@dataclass(frozen=True, eq=False)
class Scaled(MomentumWaveFunction):
    c: complex
    inner: MomentumWaveFunction

    def __call__(self, p):
        return self.c * self.inner(p)

    def support_points(self):
        return self.inner.support_points()


@dataclass(frozen=True, eq=False)
class FrameMode(MomentumWaveFunction):
    """``w_label(p) · envelope(p)``; label in ``w1+, w1-, wr-2, wr2``.

    On the 3-axis the transversal vectors take their ``ϑ = 0`` limits.
    """

    label: str
    envelope: Envelope

    def __post_init__(self):
        if self.label not in FRAME_LABELS:
            raise ValueError(f"frame label must be one of {FRAME_LABELS}, got {self.label!r}")

    def __call__(self, p):
        w = frame(p, pole_fallback=True).by_label(self.label)
        return w * self.envelope(p)[..., None]

    def support_points(self):
        return self.envelope.support_points()


@dataclass(frozen=True, eq=False)
class VectorMode(MomentumWaveFunction):
    """Constant vector times a scalar envelope."""

    vector: tuple
    envelope: Envelope

    def __call__(self, p):
        return np.asarray(self.vector, dtype=complex) * self.envelope(p)[..., None]

    def support_points(self):
        return self.envelope.support_points()


@dataclass(frozen=True, eq=False)
class MomentumMode(MomentumWaveFunction):
    """The four-momentum itself times an envelope (a pure gauge direction)."""

    envelope: Envelope

    def __call__(self, p):
        p = np.asarray(p, dtype=float)
        return p * self.envelope(p)[..., None]

    def support_points(self):
        return self.envelope.support_points()


def _mapped_support(inner: MomentumWaveFunction, g: GroupElement):
    pts = inner.support_points()
    if pts is None:
        return None
    # p ↦ Λ(α)p pulls back supports through q ↦ V(α) q.
    q = cone_point(pts) @ g.V.T
    return q[:, 1:]


class _GroupNode(MomentumWaveFunction):
    def _pull(self, p):
        p = np.asarray(p, dtype=float)
        q = _snap_to_cone(boost_action(self.g.alpha, p))
        phase = np.exp(1j * minkowski_dot(self.g.a, p))
        return p, q, phase

    def support_points(self):
        return _mapped_support(self.inner, self.g)


@dataclass(frozen=True, eq=False)
class LocalAction(_GroupNode):
    g: GroupElement
    inner: MomentumWaveFunction

    def __call__(self, p):
        p, q, phase = self._pull(p)
        return phase[..., None] * (self.inner(q) @ self.g.V.T)


@dataclass(frozen=True, eq=False)
class ConjugateAction(_GroupNode):
    g: GroupElement
    inner: MomentumWaveFunction

    def __call__(self, p):
        p, q, phase = self._pull(p)
        m = fiber_symmetry(p) @ self.g.V @ fiber_symmetry(q)
        return phase[..., None] * np.einsum("...ij,...j->...i", m, self.inner(q))


@dataclass(frozen=True, eq=False)
class InducedAction(_GroupNode):
    g: GroupElement
    inner: MomentumWaveFunction

    def __call__(self, p):
        p, q, phase = self._pull(p)
        m = multiplier(self.g.alpha, p)
        return phase[..., None] * np.einsum("...ij,...j->...i", m, self.inner(q))


@dataclass(frozen=True, eq=False)
class Intertwined(MomentumWaveFunction):
    """``V(β(p))⁻¹ ψ(p)`` (``inverse=False``) or ``V(β(p)) φ(p)`` (``inverse=True``)."""

    inner: MomentumWaveFunction
    inverse: bool = False

    def __call__(self, p):
        p = np.asarray(p, dtype=float)
        m = section_lorentz(p) if self.inverse else section_lorentz_inverse(p)
        return np.einsum("...ij,...j->...i", m, self.inner(p))

    def support_points(self):
        return self.inner.support_points()


@dataclass(frozen=True, eq=False)
class FiberSymmetryApplied(MomentumWaveFunction):
    inner: MomentumWaveFunction

    def __call__(self, p):
        p = np.asarray(p, dtype=float)
        return np.einsum("...ij,...j->...i", fiber_symmetry(p), self.inner(p))

    def support_points(self):
        return self.inner.support_points()


# ------------------------------------------------------------------ actions


def act_local(g, phi: MomentumWaveFunction) -> MomentumWaveFunction:
    return LocalAction(_as_group(g), phi)


def act_conjugate(g, phi: MomentumWaveFunction) -> MomentumWaveFunction:
    return ConjugateAction(_as_group(g), phi)


def act_induced(g, psi: MomentumWaveFunction) -> MomentumWaveFunction:
    return InducedAction(_as_group(g), psi)


def intertwine_to_local(psi: MomentumWaveFunction) -> MomentumWaveFunction:
    return Intertwined(psi)


def intertwine_to_induced(phi: MomentumWaveFunction) -> MomentumWaveFunction:
    return Intertwined(phi, inverse=True)


def apply_fiber_symmetry(phi: MomentumWaveFunction) -> MomentumWaveFunction:
    return FiberSymmetryApplied(phi)


def multiplier(alpha, p) -> np.ndarray:
    """``Ł_{γ(α,p)} = V(γ(α,p))``, Krein-unitary for ``J = diag(-1,1,1,1)``."""
    return lorentz_of(wigner_element(alpha, p), validate=False)


def multiplier_cocycle_check(delta, alpha, p) -> float:
    """``max ‖Ł_{γ(δα,p)} - Ł_{γ(δ,p)} Ł_{γ(α,Λ(δ)p)}‖∞`` over the batch."""
    delta = as_sl2(delta)
    alpha = as_sl2(alpha)
    p = np.asarray(p, dtype=float)
    lhs = multiplier(delta @ alpha, p)
    rhs = multiplier(delta, p) @ multiplier(alpha, _snap_to_cone(boost_action(delta, p)))
    return float(np.max(np.abs(lhs - rhs)))

