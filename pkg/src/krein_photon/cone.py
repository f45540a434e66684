"""Forward light cone: coordinates, invariant measure, boost section, Wigner element.

Spherical coordinates follow the azimuth convention

    p = (r, r sinθ sinϑ, r sinθ cosϑ, r cosθ),

so ``ϑ = atan2(p1, p2)``. On the 3-axis (θ = 0 or π) the azimuth is set to 0.
"""
from __future__ import annotations

import numpy as np

from .errors import DegenerateCoordinatesError, DomainError
from .sl2c import P_BAR, as_sl2, lorentz_of, sl2_inverse

__all__ = [
    "P_BAR",
    "POLE_BAND",
    "cone_point",
    "from_spherical",
    "spherical",
    "on_pole",
    "validate_cone",
    "section",
    "boost_action",
    "wigner_element",
    "invariant_measure_weight",
    "random_cone_points",
    "spherical_grid",
]

POLE_BAND = 1e-3
CONE_TOL = 1e-9


def cone_point(p3) -> np.ndarray:
    """Lift spatial momenta to the cone: ``(|p⃗|, p⃗)``."""
    p3 = np.asarray(p3, dtype=float)
    return np.concatenate([np.linalg.norm(p3, axis=-1, keepdims=True), p3], axis=-1)


def from_spherical(r, theta, vartheta) -> np.ndarray:
    r, theta, vartheta = np.broadcast_arrays(
        np.asarray(r, float), np.asarray(theta, float), np.asarray(vartheta, float)
    )
    if np.any(r <= 0):
        raise DomainError("cone points need r > 0")
    st = np.sin(theta)
    return np.stack(
        [r, r * st * np.sin(vartheta), r * st * np.cos(vartheta), r * np.cos(theta)], axis=-1
    )


def validate_cone(p, tol: float = CONE_TOL) -> np.ndarray:
    """Return ``p`` as a float array after checking ``p0 = |p⃗| > 0``."""
    p = np.asarray(p, dtype=float)
    if p.shape[-1:] != (4,):
        raise DomainError(f"four-vectors need a trailing axis of length 4, got {p.shape}")
    r = np.linalg.norm(p[..., 1:], axis=-1)
    if np.any(~(r > 0)) or np.any(~(p[..., 0] > 0)):
        raise DomainError("cone points need r = |p⃗| > 0 and p0 > 0")
    if np.any(np.abs(p[..., 0] - r) > tol * r):
        raise DomainError("point is off the forward light cone (p0 != |p⃗|)")
    return p


def spherical(p):
    """``(r, θ, ϑ)`` of cone points, with ``ϑ ∈ [0, 2π)`` and ``ϑ := 0`` on the 3-axis."""
    p = validate_cone(p)
    rho = np.hypot(p[..., 1], p[..., 2])
    r = np.linalg.norm(p[..., 1:], axis=-1)
    theta = np.arctan2(rho, p[..., 3])
    vartheta = np.where(rho > 0, np.mod(np.arctan2(p[..., 1], p[..., 2]), 2 * np.pi), 0.0)
    return r, theta, vartheta


def on_pole(p):
    """True where the spatial momentum lies on the 3-axis."""
    p = np.asarray(p, dtype=float)
    return np.hypot(p[..., 1], p[..., 2]) == 0


def section(p) -> np.ndarray:
    """Boost section ``β(p)``, with ``β(p)^-1 p̄̂ β(p)^-1* = p̂`` and ``β(p̄) = 1``."""
    r, th, vt = spherical(p)
    c = np.cos(th / 2)
    s = np.sin(th / 2)
    em = np.exp(-0.5j * vt)
    ep = np.exp(0.5j * vt)
    rm = r ** -0.5
    rp = r ** 0.5
    out = np.empty(r.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = rm * c * em
    out[..., 0, 1] = -1j * rm * s * ep
    out[..., 1, 0] = -1j * rp * s * em
    out[..., 1, 1] = rp * c * ep
    return out


def boost_action(alpha, p) -> np.ndarray:
    """Momentum action ``Λ(α) p = V(α)^-1 p`` (an antihomomorphism in α)."""
    v_inv = lorentz_of(sl2_inverse(as_sl2(alpha)), validate=False)
    return np.einsum("...ij,...j->...i", v_inv, np.asarray(p, dtype=float))


def wigner_element(alpha, p, poles: str = "convention") -> np.ndarray:
    """``γ(α, p) = β(p) α β(Λ(α)p)^-1``, an element of the stabiliser of p̄.

    ``poles="convention"`` evaluates on the 3-axis with ``ϑ := 0`` (β stays
    finite there, so γ is still a stabiliser element); ``poles="raise"`` rejects
    such points with :class:`DegenerateCoordinatesError`.
    """
    alpha = as_sl2(alpha)
    p = validate_cone(p)
    q = boost_action(alpha, p)
    if poles == "raise" and (np.any(on_pole(p)) or np.any(on_pole(q))):
        raise DegenerateCoordinatesError("p or Λ(α)p lies on the 3-axis")
    if poles not in ("convention", "raise"):
        raise ValueError(f"unknown pole policy {poles!r}")
    q = _snap(q)
    return section(p) @ alpha @ sl2_inverse(section(q))


def _snap(q):
    # Λ(α)p is on the cone up to rounding; restore p0 = |p⃗| exactly.
    q = np.array(q, dtype=float, copy=True)
    q[..., 0] = np.linalg.norm(q[..., 1:], axis=-1)
    return q


def invariant_measure_weight(p):
    """Density ``1/(2r)`` of ``dμ`` relative to ``d³p``."""
    p = np.asarray(p, dtype=float)
    r = p if p.shape[-1:] != (4,) else np.linalg.norm(p[..., 1:], axis=-1)
    if np.any(~(r > 0)):
        raise DomainError("invariant measure weight needs r > 0")
    return 0.5 / r


def random_cone_points(
    rng: np.random.Generator,
    n: int,
    r_range: tuple[float, float] = (0.2, 5.0),
    pole_band: float = POLE_BAND,
) -> np.ndarray:
    """Random cone points, log-uniform in r and isotropic in direction.

    Directions with ``θ < pole_band`` or ``θ > π - pole_band`` are resampled.
    """
    out = np.empty((0, 3))
    cmax = np.cos(pole_band)
    while len(out) < n:
        d = rng.standard_normal((2 * n, 3))
        d /= np.linalg.norm(d, axis=1, keepdims=True)
        out = np.concatenate([out, d[np.abs(d[:, 2]) < cmax]])
    d = out[:n]
    r = np.exp(rng.uniform(np.log(r_range[0]), np.log(r_range[1]), n))
    return cone_point(r[:, None] * d)


def spherical_grid(
    n_r: int = 64,
    n_theta: int = 32,
    n_vartheta: int = 32,
    r_range: tuple[float, float] = (0.1, 10.0),
    pole_band: float = POLE_BAND,
) -> np.ndarray:
    """Deterministic ``(n_r, n_θ, n_ϑ, 4)`` grid keeping θ at least ``pole_band`` off the poles."""
    r = np.geomspace(r_range[0], r_range[1], n_r)
    th = np.linspace(pole_band, np.pi - pole_band, n_theta)
    vt = np.linspace(0.0, 2 * np.pi, n_vartheta, endpoint=False)
    R, T, W = np.meshgrid(r, th, vt, indexing="ij")
    return from_spherical(R, T, W)

