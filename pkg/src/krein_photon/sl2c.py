"""SL(2,C), the Pauli embedding of four-vectors and the map onto Lorentz matrices.

Conventions
-----------
Four-vectors are arrays with a trailing axis of length 4, ``(p0, p1, p2, p3)``.
Group elements are complex arrays with trailing shape ``(2, 2)``. Every function
broadcasts over leading axes.

``lorentz_of(a)`` is the homomorphism ``V(a) = S (a ⊗ conj(a)) S^-1``; it agrees
with the Pauli action ``a p̂ a* = (V(a) p)^``. The momentum action used by the
representations is the antihomomorphism ``Λ(a) p = V(a)^-1 p`` (see
:func:`krein_photon.cone.boost_action`).
"""
from __future__ import annotations

import numpy as np

from .errors import NotUnimodularError

__all__ = [
    "PAULI",
    "METRIC",
    "KREIN_J",
    "S_MATRIX",
    "P_BAR",
    "minkowski_dot",
    "pauli_embed",
    "pauli_unembed",
    "as_sl2",
    "project_unimodular",
    "lorentz_of",
    "pauli_action",
    "little_group_element",
    "little_group_params",
    "in_little_group",
    "sl2_inverse",
    "exp_traceless",
    "rotation",
    "boost",
    "alpha03",
    "alpha12",
    "alpha13",
    "alpha23",
    "random_sl2",
    "random_sl2_entries",
]

PAULI = np.array(
    [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)

METRIC = np.diag([1.0, -1.0, -1.0, -1.0])

# fundamental symmetry J_pbar of (C^4, J)
KREIN_J = np.diag([-1.0, 1.0, 1.0, 1.0])

_R2 = np.sqrt(2.0)
# The matrix S of the construction carries entries ±√2, ±i√2; its rows have
# norm 2, so it is rescaled by 1/2 to be unitary. V is conjugation-invariant.
S_MATRIX = 0.5 * np.array(
    [
        [_R2, 0, 0, _R2],
        [0, _R2, _R2, 0],
        [0, 1j * _R2, -1j * _R2, 0],
        [_R2, 0, 0, -_R2],
    ],
    dtype=complex,
)
_S_INV = S_MATRIX.conj().T

P_BAR = np.array([1.0, 0.0, 0.0, 1.0])
_P_BAR_HAT = np.array([[2.0, 0.0], [0.0, 0.0]], dtype=complex)

UNIMODULAR_TOL = 1e-12


def minkowski_dot(p, q):
    """Minkowski pairing ``p0 q0 - p⃗·q⃗`` over the trailing axis."""
    p = np.asarray(p)
    q = np.asarray(q)
    return p[..., 0] * q[..., 0] - np.sum(p[..., 1:] * q[..., 1:], axis=-1)


def pauli_embed(p):
    """Return ``p̂ = p^μ σ_μ`` (hermitian, ``det p̂ = p·p``)."""
    p = np.asarray(p, dtype=float)
    return np.einsum("...m,mij->...ij", p.astype(complex), PAULI)


def pauli_unembed(h):
    """Inverse of :func:`pauli_embed` for hermitian ``h``: ``p^μ = tr(h σ_μ)/2``."""
    h = np.asarray(h, dtype=complex)
    return 0.5 * np.einsum("...ij,mji->...m", h, PAULI).real


def _det2(a):
    return a[..., 0, 0] * a[..., 1, 1] - a[..., 0, 1] * a[..., 1, 0]


def as_sl2(a, tol: float = UNIMODULAR_TOL) -> np.ndarray:
    """Validate and return ``a`` as a complex SL(2,C) array.

    The determinant check is relative to the squared entry scale, so products
    of moderately large elements still validate.
    """
    a = np.asarray(a, dtype=complex)
    if a.shape[-2:] != (2, 2):
        raise NotUnimodularError(f"expected trailing shape (2, 2), got {a.shape}")
    scale = np.maximum(1.0, np.max(np.abs(a), axis=(-2, -1)) ** 2)
    err = np.abs(_det2(a) - 1.0) / scale
    if np.any(err > tol):
        raise NotUnimodularError(f"|det - 1| = {np.max(err):.3e} exceeds {tol:g}")
    return a


def project_unimodular(a) -> np.ndarray:
    """Rescale ``a`` by ``det(a)^(-1/2)`` so that ``det = 1``."""
    a = np.asarray(a, dtype=complex)
    d = _det2(a)
    if np.any(d == 0):
        raise NotUnimodularError("singular matrix cannot be projected to SL(2,C)")
    return a / np.sqrt(d)[..., None, None]


def sl2_inverse(a) -> np.ndarray:
    """Inverse of a unimodular matrix (adjugate, no division)."""
    a = np.asarray(a, dtype=complex)
    out = np.empty_like(a)
    out[..., 0, 0] = a[..., 1, 1]
    out[..., 1, 1] = a[..., 0, 0]
    out[..., 0, 1] = -a[..., 0, 1]
    out[..., 1, 0] = -a[..., 1, 0]
    return out


def lorentz_of(a, validate: bool = True) -> np.ndarray:
    """Real 4x4 Lorentz matrix ``V(a) = S (a ⊗ ā) S^-1``.

    ``V`` is a homomorphism onto the proper orthochronous Lorentz group with
    kernel ``{±1}``.
    """
    a = as_sl2(a) if validate else np.asarray(a, dtype=complex)
    kron = np.einsum("...ij,...kl->...ikjl", a, a.conj())
    kron = kron.reshape(a.shape[:-2] + (4, 4))
    v = S_MATRIX @ kron @ _S_INV
    return v.real.copy()


def pauli_action(a, p) -> np.ndarray:
    """Four-vector ``q`` with ``q̂ = a p̂ a*`` (independent route to ``V(a) p``)."""
    a = np.asarray(a, dtype=complex)
    h = a @ pauli_embed(p) @ np.swapaxes(a.conj(), -1, -2)
    return pauli_unembed(h)


def little_group_element(z, phi) -> np.ndarray:
    """Element ``(z, φ)`` of the stabiliser of ``p̄ = (1,0,0,1)``.

    ``[[e^{iφ/2}, e^{iφ/2} z], [0, e^{-iφ/2}]]`` with ``φ ∈ [0, 4π)``.
    """
    z = np.asarray(z, dtype=complex)
    phi = np.asarray(phi, dtype=float)
    z, phi = np.broadcast_arrays(z, phi)
    h = np.exp(0.5j * phi)
    out = np.zeros(z.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = h
    out[..., 0, 1] = h * z
    out[..., 1, 1] = 1.0 / h
    return out


def little_group_params(g):
    """Recover ``(z, φ)`` from a stabiliser element; ``φ`` is in ``[0, 4π)``."""
    g = np.asarray(g, dtype=complex)
    phi = np.mod(2.0 * np.angle(g[..., 0, 0]), 4.0 * np.pi)
    # a tiny negative angle wraps to exactly 4π after rounding
    phi = np.where(phi >= 4.0 * np.pi, 0.0, phi)
    z = g[..., 0, 1] / g[..., 0, 0]
    return z, phi


def in_little_group(g, tol: float = 1e-10):
    """True iff ``‖g p̄̂ g* - p̄̂‖∞ ≤ tol``."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    g = np.asarray(g, dtype=complex)
    moved = g @ _P_BAR_HAT @ np.swapaxes(g.conj(), -1, -2)
    res = np.max(np.abs(moved - _P_BAR_HAT), axis=(-2, -1))
    return res <= tol


def exp_traceless(x) -> np.ndarray:
    """``exp(X)`` for traceless ``X = x·σ`` given the complex 3-vector ``x``.

    Uses ``exp(X) = cosh(s) 1 + sinh(s)/s X`` with ``s² = x·x``.
    """
    x = np.asarray(x, dtype=complex)
    s = np.sqrt(np.sum(x * x, axis=-1))
    small = np.abs(s) < 1e-8
    safe = np.where(small, 1.0, s)
    shc = np.where(small, 1.0 + s * s / 6.0, np.sinh(safe) / safe)
    X = np.einsum("...k,kij->...ij", x, PAULI[1:])
    eye = np.broadcast_to(np.eye(2, dtype=complex), X.shape)
    return np.cosh(s)[..., None, None] * eye + shc[..., None, None] * X


def rotation(axis: int, angle) -> np.ndarray:
    """Element whose ``V`` is the active right-handed rotation by ``angle`` about ``axis``."""
    angle = np.asarray(angle, dtype=float)
    x = np.zeros(angle.shape + (3,), dtype=complex)
    x[..., axis - 1] = -0.5j * angle
    return exp_traceless(x)


def boost(axis: int, rapidity) -> np.ndarray:
    """Element whose ``V`` boosts along ``axis``: ``V p̄ = e^λ p̄`` for ``axis=3``."""
    rapidity = np.asarray(rapidity, dtype=float)
    x = np.zeros(rapidity.shape + (3,), dtype=complex)
    x[..., axis - 1] = 0.5 * rapidity
    return exp_traceless(x)


# α_{μν}: Λ(α_{μν}(t)) = V(α_{μν}(t))^-1 is the rotation/boost in the μ-ν plane
# with (Λ p)^μ = p^μ cos t + p^ν sin t (resp. cosh/sinh for 0-3).


def alpha03(lam) -> np.ndarray:
    """Boost in the 0-3 plane: ``(Λ p)^0 = p^0 cosh λ + p^3 sinh λ``."""
    return boost(3, -np.asarray(lam, dtype=float))


def alpha12(theta) -> np.ndarray:
    """Rotation in the 1-2 plane (about the 3-axis)."""
    return rotation(3, theta)


def alpha23(theta) -> np.ndarray:
    """Rotation in the 2-3 plane: ``(Λ p)^2 = p^2 cos θ + p^3 sin θ``."""
    return rotation(1, theta)


def alpha13(theta) -> np.ndarray:
    """Rotation in the 1-3 plane: ``(Λ p)^1 = p^1 cos θ + p^3 sin θ``."""
    return rotation(2, -np.asarray(theta, dtype=float))


def random_sl2_entries(rng: np.random.Generator, size=None) -> np.ndarray:
    """Gaussian complex entries projected to ``det = 1``."""
    shape = (() if size is None else tuple(np.atleast_1d(size))) + (2, 2)
    a = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    return project_unimodular(a)


def random_sl2(rng: np.random.Generator, size=None, max_rapidity: float = 1.0) -> np.ndarray:
    """Random rotation times boost with rapidity uniform in ``[0, max_rapidity]``.

    Keeps ``‖V(a)‖`` bounded by ``e^{max_rapidity}``, which quadrature-backed
    checks need.
    """
    shape = () if size is None else tuple(np.atleast_1d(size))
    axis_r = rng.standard_normal(shape + (3,))
    axis_r /= np.linalg.norm(axis_r, axis=-1, keepdims=True)
    angle = rng.uniform(0.0, 4.0 * np.pi, shape)
    axis_b = rng.standard_normal(shape + (3,))
    axis_b /= np.linalg.norm(axis_b, axis=-1, keepdims=True)
    rap = rng.uniform(0.0, max_rapidity, shape)
    rot = exp_traceless(-0.5j * angle[..., None] * axis_r)
    bst = exp_traceless(0.5 * rap[..., None] * axis_b)
    return rot @ bst
