"""Pointwise Krein geometry over the cone.

At each cone point ``p`` with ``r = |p⃗|`` and ``n = p⃗/r``:

* ``B(p) = V(β(p))ᵀ V(β(p))`` with eigenvalues ``1, 1, r⁻², r²``;
* the orthonormal eigenframe ``w₁⁺, w₁⁻, w_{r⁻²}, w_{r²}``;
* the fibre fundamental symmetry ``J′_p = J B(p) = V(β(p))⁻¹ J V(β(p))``.

Every matrix here is real, so adjoints are transposes.
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .cone import on_pole, section, validate_cone
from .errors import DegenerateCoordinatesError
from .sl2c import KREIN_J, lorentz_of

__all__ = [
    "FRAME_LABELS",
    "PolarizationFrame",
    "gram",
    "gram_sqrt",
    "section_lorentz",
    "section_lorentz_inverse",
    "frame",
    "frame_vector",
    "fiber_symmetry",
    "krein_pair",
]

FRAME_LABELS = ("w1+", "w1-", "wr-2", "wr2")


class PolarizationFrame(NamedTuple):
    w1_plus: np.ndarray
    w1_minus: np.ndarray
    w_rm2: np.ndarray
    w_r2: np.ndarray
    r: np.ndarray

    def matrix(self) -> np.ndarray:
        """Frame vectors as the columns of a ``(..., 4, 4)`` orthogonal matrix."""
        return np.stack(self[:4], axis=-1)

    def eigenvalues(self) -> np.ndarray:
        one = np.ones_like(self.r)
        return np.stack([one, one, self.r ** -2, self.r ** 2], axis=-1)

    def by_label(self, label: str) -> np.ndarray:
        return self[FRAME_LABELS.index(label)]


def _radial(p):
    p = validate_cone(p)
    r = np.linalg.norm(p[..., 1:], axis=-1)
    return r, p[..., 1:] / r[..., None]


def gram(p) -> np.ndarray:
    """Closed-form ``B(p)``."""
    r, n = _radial(p)
    a = 0.5 * (r ** -2 + r ** 2)
    b = 0.5 * (r ** -2 - r ** 2)
    out = np.empty(r.shape + (4, 4))
    out[..., 0, 0] = a
    out[..., 0, 1:] = b[..., None] * n
    out[..., 1:, 0] = b[..., None] * n
    out[..., 1:, 1:] = np.eye(3) + (a - 1.0)[..., None, None] * n[..., :, None] * n[..., None, :]
    return out


def gram_sqrt(p) -> np.ndarray:
    """Positive square root of ``B(p)``, the same formula with ``r`` in place of ``r²``."""
    r, n = _radial(p)
    a = 0.5 * (1.0 / r + r)
    b = 0.5 * (1.0 / r - r)
    out = np.empty(r.shape + (4, 4))
    out[..., 0, 0] = a
    out[..., 0, 1:] = b[..., None] * n
    out[..., 1:, 0] = b[..., None] * n
    out[..., 1:, 1:] = np.eye(3) + (a - 1.0)[..., None, None] * n[..., :, None] * n[..., None, :]
    return out


def section_lorentz(p) -> np.ndarray:
    """``V(β(p))`` computed from the section through the spinor map."""
    return lorentz_of(section(p), validate=False)


def frame(p, pole_fallback: bool = False) -> PolarizationFrame:
    """Closed-form eigenframe of ``B(p)``.

    ``w₁±`` are undefined on the 3-axis. With ``pole_fallback=True`` they take
    their ``ϑ = 0`` limits there, ``(0,1,0,0)`` and ``(0,0,sgn p³,0)``, which
    match the section's azimuth convention; otherwise such points raise
    :class:`DegenerateCoordinatesError`.
    """
    r, n = _radial(p)
    p = np.asarray(p, dtype=float)
    pole = on_pole(p)
    if np.any(pole) and not pole_fallback:
        raise DegenerateCoordinatesError("w1± are undefined for p⃗ along the 3-axis")
    p1, p2, p3 = p[..., 1], p[..., 2], p[..., 3]
    rho = np.hypot(p1, p2)
    safe = np.where(pole, 1.0, rho)
    cv = np.where(pole, 1.0, p2 / safe)  # cos ϑ
    sv = np.where(pole, 0.0, p1 / safe)  # sin ϑ
    ct = p3 / r
    st = rho / r
    zero = np.zeros_like(r)
    w1p = np.stack([zero, cv, -sv, zero], axis=-1)
    w1m = np.stack([zero, sv * ct, cv * ct, -st], axis=-1)
    inv2 = 1.0 / np.sqrt(2.0)
    one = np.ones_like(r)
    w_rm2 = inv2 * np.concatenate([one[..., None], n], axis=-1)
    w_r2 = inv2 * np.concatenate([one[..., None], -n], axis=-1)
    return PolarizationFrame(w1p, w1m, w_rm2, w_r2, r)


def frame_vector(label: str, p, pole_fallback: bool = True) -> np.ndarray:
    return frame(p, pole_fallback=pole_fallback).by_label(label)


def section_lorentz_inverse(p, pole_fallback: bool = True) -> np.ndarray:
    """Closed-form ``V(β(p))⁻¹``.

    Its middle columns are ``w₁±(p)``; the outer ones mix time and the radial
    direction with the coefficients of ``√B``.
    """
    f = frame(p, pole_fallback=pole_fallback)
    r, n = _radial(p)
    a = 0.5 * (1.0 / r + r)
    b = 0.5 * (1.0 / r - r)
    col0 = np.concatenate([a[..., None], -b[..., None] * n], axis=-1)
    col3 = np.concatenate([-b[..., None], a[..., None] * n], axis=-1)
    return np.stack([col0, f.w1_plus, f.w1_minus, col3], axis=-1)


def fiber_symmetry(p) -> np.ndarray:
    """``J′_p = J B(p)``; an involution equal to ``V(β(p))⁻¹ J V(β(p))``."""
    return KREIN_J @ gram(p)


def krein_pair(u, v, J=KREIN_J):
    """``⟨u, J v⟩``, conjugate-linear in ``u``; broadcasts over leading axes."""
    u = np.asarray(u)
    v = np.asarray(v)
    return np.einsum("...i,ij,...j->...", u.conj(), np.asarray(J), v)
