"""Cone quadrature, packet products, and the transform to position space.

Integrals over the cone use ``dμ = d³p / (2|p⃗|)``. Two node families are
available:

* spherical: Gauss-Legendre in ``r`` over a radial window, Gauss-Legendre in
  ``cos θ`` over a polar cap about an axis, periodic trapezoid in the azimuth;
* cartesian: a Gauss-Legendre tensor box in ``p⃗``, which lets position-space
  fields be evaluated separably on rectangular grids.

Sums over nodes are split into fixed chunks whose partial sums are combined
with ``math.fsum`` in chunk order, so results do not depend on the number of
worker threads (``KREIN_PHOTON_THREADS``).
"""
from __future__ import annotations

import json
import math
import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.special import roots_legendre

from .cone import cone_point
from .errors import DomainError, QuadratureAccuracyError, QuadratureAccuracyWarning
from .krein import FRAME_LABELS, gram
from .rep import FrameMode, Gaussian, MomentumWaveFunction, Sum
from .sl2c import KREIN_J, alpha03, lorentz_of
from .transversal import TransversalState, gauge_residue

__all__ = [
    "ConeQuadrature",
    "integrate",
    "hilbert_product",
    "krein_product",
    "PositionWaveFunction",
    "to_position",
    "position_krein_product",
    "nonlocal_gauge_function",
    "PacketTerm",
    "PacketSpec",
    "reference_packet",
    "reference_desk",
    "packet_desk",
    "cross_check",
    "boost_norm_ratios",
    "infrared_packet",
    "TAIL_TOL",
]

CHUNK = 4096
TAIL_TOL = 1e-6
_NORM = (2.0 * np.pi) ** -1.5


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("KREIN_PHOTON_THREADS", "1")))
    except ValueError:
        return 1


def _map_chunks(fn, n: int, chunk: int = CHUNK) -> list:
    slices = [slice(i, min(i + chunk, n)) for i in range(0, n, chunk)]
    workers = _threads()
    if workers > 1 and len(slices) > 1:
        with ThreadPoolExecutor(workers) as ex:
            return list(ex.map(fn, slices))
    return [fn(s) for s in slices]


def _fsum_complex(parts) -> complex:
    parts = list(parts)
    return complex(math.fsum(z.real for z in parts), math.fsum(z.imag for z in parts))


def _report(msg: str, strict: bool):
    if strict:
        raise QuadratureAccuracyError(msg)
    warnings.warn(msg, QuadratureAccuracyWarning, stacklevel=3)


def _basis(axis):
    axis = np.asarray(axis, dtype=float)
    axis = axis / np.linalg.norm(axis)
    helper = np.array([1.0, 0.0, 0.0]) if abs(axis[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    e1 = helper - axis * (helper @ axis)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(axis, e1)
    return np.stack([e1, e2, axis], axis=1)


def _gl(a: float, b: float, n: int):
    x, w = roots_legendre(n)
    return 0.5 * (b - a) * x + 0.5 * (b + a), 0.5 * (b - a) * w


@dataclass(frozen=True, eq=False)
class ConeQuadrature:
    """Nodes ``points (M, 4)`` on the cone with weights for ``∫ · dμ``."""

    points: np.ndarray
    weights: np.ndarray
    scheme: str
    config: dict = field(default_factory=dict)
    boundary: np.ndarray | None = None
    axes: tuple | None = None

    def __len__(self):
        return len(self.weights)

    @classmethod
    def spherical(
        cls,
        r_window: tuple[float, float],
        axis=(0.0, 0.0, 1.0),
        cap: float = np.pi,
        n_r: int = 64,
        n_theta: int = 32,
        n_vartheta: int = 32,
    ) -> ConeQuadrature:
        r_min, r_max = map(float, r_window)
        if not (0 <= r_min < r_max):
            raise DomainError(f"bad radial window {r_window}")
        r, wr = _gl(r_min, r_max, n_r)
        u, wu = _gl(math.cos(cap), 1.0, n_theta)
        phi = 2 * np.pi * np.arange(n_vartheta) / n_vartheta
        wphi = np.full(n_vartheta, 2 * np.pi / n_vartheta)
        R = _basis(axis)

        def lift(rr, uu, pp):
            s = np.sqrt(np.clip(1 - uu * uu, 0.0, None))
            local = np.stack([s * np.cos(pp), s * np.sin(pp), uu], axis=-1)
            return cone_point(rr[..., None] * (local @ R.T))

        Rg, Ug, Pg = np.meshgrid(r, u, phi, indexing="ij")
        W = (0.5 * Rg) * (wr[:, None, None] * wu[None, :, None] * wphi[None, None, :])
        # window surface, used by the tail check
        Ub, Pb = np.meshgrid(u, phi, indexing="ij")
        faces = []
        if r_min > 0:
            faces.append(lift(np.full_like(Ub, r_min), Ub, Pb).reshape(-1, 4))
        faces.append(lift(np.full_like(Ub, r_max), Ub, Pb).reshape(-1, 4))
        if cap < np.pi:
            Rb, Pb2 = np.meshgrid(r, phi, indexing="ij")
            faces.append(lift(Rb, np.full_like(Rb, math.cos(cap)), Pb2).reshape(-1, 4))
        config = {
            "scheme": "spherical",
            "n_r": n_r,
            "n_theta": n_theta,
            "n_vartheta": n_vartheta,
            "r_window": [r_min, r_max],
            "axis": [float(a) for a in R[:, 2]],
            "cap": float(cap),
        }
        return cls(lift(Rg, Ug, Pg).reshape(-1, 4), W.reshape(-1), "spherical", config, np.vstack(faces))

    @classmethod
    def cartesian(cls, center, half_width, n: int = 48) -> ConeQuadrature:
        """Gauss-Legendre tensor box ``center ± half_width`` in ``p⃗`` (must exclude the origin)."""
        center = np.asarray(center, dtype=float)
        hw = np.broadcast_to(np.asarray(half_width, dtype=float), (3,))
        lo, hi = center - hw, center + hw
        if np.all(lo <= 0) and np.all(hi >= 0):
            raise DomainError("cartesian box must not contain p⃗ = 0")
        nodes = [_gl(lo[k], hi[k], n) for k in range(3)]
        X, Y, Z = np.meshgrid(*(nd[0] for nd in nodes), indexing="ij")
        P = cone_point(np.stack([X, Y, Z], axis=-1))
        W = nodes[0][1][:, None, None] * nodes[1][1][None, :, None] * nodes[2][1][None, None, :]
        W = W / (2.0 * P[..., 0])
        faces = []
        for k in range(3):
            for edge in (lo[k], hi[k]):
                grids = [nd[0] for nd in nodes]
                grids[k] = np.array([edge])
                G = np.stack(np.meshgrid(*grids, indexing="ij"), axis=-1).reshape(-1, 3)
                faces.append(cone_point(G))
        config = {"scheme": "cartesian", "n": n, "center": center.tolist(), "half_width": hw.tolist()}
        axes = tuple(nd[0] for nd in nodes)
        return cls(P.reshape(-1, 4), W.reshape(-1), "cartesian", config, np.vstack(faces), axes)

    @classmethod
    def covering(
        cls,
        *phis,
        n_r: int = 64,
        n_theta: int = 32,
        n_vartheta: int = 32,
        margin: float = 0.05,
    ) -> ConeQuadrature:
        """Spherical quadrature whose window covers the effective supports of ``phis``."""
        clouds = [f.support_points() for f in phis]
        if any(c is None for c in clouds):
            raise DomainError("cannot choose a quadrature window for a wave function without bounded support")
        pts = np.vstack(clouds)
        norms = np.linalg.norm(pts, axis=1)
        centroid = pts.mean(axis=0)
        axis = centroid / np.linalg.norm(centroid) if np.linalg.norm(centroid) > 0 else np.array([0, 0, 1.0])
        nz = norms > 0
        cosang = np.clip(pts[nz] @ axis / norms[nz], -1.0, 1.0)
        cap = float(np.max(np.arccos(cosang))) * (1 + margin) + 1e-3
        if cap >= 0.9 * np.pi:
            cap = np.pi
        r_min = 0.0 if cap == np.pi else float(norms.min()) * (1 - margin)
        r_max = float(norms.max()) * (1 + margin)
        return cls.spherical((max(r_min, 0.0), r_max), axis, cap, n_r, n_theta, n_vartheta)

    def check_tails(self, *fns, tol: float = TAIL_TOL, strict: bool = False) -> float:
        """Largest ``|f|`` on the window surface relative to its largest node value."""
        worst = 0.0
        if self.boundary is None:
            return worst
        for f in fns:
            inner = np.max(np.abs(f(self.points)))
            if inner == 0:
                continue
            edge = np.max(np.abs(f(self.boundary)))
            worst = max(worst, float(edge / inner))
        if worst > tol:
            _report(f"integrand at the quadrature window edge is {worst:.2e} of its peak (tol {tol:g})", strict)
        return worst


def integrate(fn, q: ConeQuadrature) -> complex:
    """``∫ fn dμ`` for a scalar function ``fn: (..., 4) -> (...)``."""

    def part(s):
        return complex(np.sum(q.weights[s] * fn(q.points[s])))

    return _fsum_complex(_map_chunks(part, len(q)))


def _pointwise_product(phi, phi2, metric):
    def fn(p):
        a = phi(p)
        b = phi2(p)
        if metric is None:
            return np.einsum("...i,...i->...", a.conj(), b)
        m = metric(p) if callable(metric) else metric
        return np.einsum("...i,...ij,...j->...", a.conj(), m, b)

    return fn


def _product(phi, phi2, q, strict, metric):
    if q is None:
        q = ConeQuadrature.covering(phi, phi2)
    q.check_tails(phi, phi2, strict=strict)
    return integrate(_pointwise_product(phi, phi2, metric), q)


def hilbert_product(phi, phi2, q: ConeQuadrature | None = None, strict: bool = False) -> complex:
    """``∫ ⟨φ(p), B(p) φ′(p)⟩ dμ(p)`` (positive definite)."""
    return _product(phi, phi2, q, strict, gram)


def krein_product(phi, phi2, q: ConeQuadrature | None = None, strict: bool = False) -> complex:
    """``∫ ⟨φ(p), J φ′(p)⟩ dμ(p)`` (indefinite)."""
    return _product(phi, phi2, q, strict, KREIN_J)


# ------------------------------------------------------------ position space


@dataclass(frozen=True, eq=False)
class PositionWaveFunction:
    """``φ(x) = (2π)^{-3/2} ∫ φ̃(p) e^{-ip·x} dμ(p)``, evaluated by quadrature."""

    momentum: MomentumWaveFunction
    quadrature: ConeQuadrature

    def _coeffs(self):
        q = self.quadrature
        return q.points, (q.weights[:, None] * self.momentum(q.points)) * _NORM

    def _eval(self, x, dt: bool):
        x = np.asarray(x, dtype=float)
        flat = x.reshape(-1, 4)
        P, C = self._coeffs()
        if dt:
            C = -1j * P[:, :1] * C

        def part(s):
            ph = P[s, :1].T * flat[:, :1] - flat[:, 1:] @ P[s, 1:].T
            return np.exp(-1j * ph) @ C[s]

        parts = _map_chunks(part, len(P), chunk=max(1, CHUNK * 64 // max(1, len(flat))))
        out = np.zeros((len(flat), 4), dtype=complex)
        for z in parts:
            out += z
        return out.reshape(x.shape[:-1] + (4,))

    def __call__(self, x) -> np.ndarray:
        return self._eval(x, dt=False)

    def dt(self, x) -> np.ndarray:
        """``∂_t φ``, with ``-ip⁰`` inserted under the integral."""
        return self._eval(x, dt=True)

    def on_grid(self, t: float, xs, ys, zs, dt: bool = False) -> np.ndarray:
        """Field on the rectangular grid ``xs × ys × zs`` at time ``t``; shape ``(nx, ny, nz, 4)``.

        Cartesian quadratures factorise ``e^{ip⃗·x⃗}`` and are evaluated axis by
        axis; other quadratures fall back to direct evaluation.
        """
        xs, ys, zs = (np.asarray(v, dtype=float) for v in (xs, ys, zs))
        q = self.quadrature
        if q.axes is None:
            X, Y, Z = np.meshgrid(xs, ys, zs, indexing="ij")
            pts = np.stack([np.full_like(X, t), X, Y, Z], axis=-1)
            return self.dt(pts) if dt else self(pts)
        P, C = self._coeffs()
        if dt:
            C = -1j * P[:, :1] * C
        C = C * np.exp(-1j * P[:, 0] * t)[:, None]
        n = [len(a) for a in q.axes]
        C = C.reshape(n[0], n[1], n[2], 4)
        ex, ey, ez = (np.exp(1j * np.outer(a, v)) for a, v in zip(q.axes, (xs, ys, zs)))
        C = np.einsum("abcm,az->zbcm", C, ex)
        C = np.einsum("zbcm,by->zycm", C, ey)
        return np.einsum("zycm,cw->zywm", C, ez)


def to_position(phi: MomentumWaveFunction, q: ConeQuadrature | None = None, strict: bool = False):
    if q is None:
        q = ConeQuadrature.covering(phi)
    q.check_tails(phi, strict=strict)
    return PositionWaveFunction(phi, q)


def position_krein_product(
    phi: PositionWaveFunction,
    phi2: PositionWaveFunction,
    t: float,
    xgrid: Sequence[np.ndarray],
    strict: bool = False,
    tail_tol: float = 1e-4,
) -> complex:
    """``-i g^{μν} ∫ {φ̄_μ ∂_t φ′_ν - (∂_t φ_μ)‾ φ′_ν} d³x`` by trapezoid on a uniform grid.

    ``xgrid`` is ``(xs, ys, zs)``; the grid must resolve momentum differences
    (Nyquist) and hold the fields (edge values below ``tail_tol`` of the peak).
    """
    xs, ys, zs = (np.asarray(v, dtype=float) for v in xgrid)
    h = [float(np.mean(np.diff(v))) for v in (xs, ys, zs)]
    span = np.vstack([phi.quadrature.points[:, 1:], phi2.quadrature.points[:, 1:]])
    width = span.max(axis=0) - span.min(axis=0)
    if any(hk * wk >= 2 * np.pi for hk, wk in zip(h, width)):
        _report("position grid too coarse for the momentum support (aliasing)", strict)
    f = phi.on_grid(t, xs, ys, zs)
    g = phi2.on_grid(t, xs, ys, zs)
    fdt = phi.on_grid(t, xs, ys, zs, dt=True)
    gdt = phi2.on_grid(t, xs, ys, zs, dt=True)
    for field_vals in (f, g):
        peak = np.max(np.abs(field_vals))
        if peak > 0:
            edge = max(
                np.max(np.abs(field_vals[[0, -1]])),
                np.max(np.abs(field_vals[:, [0, -1]])),
                np.max(np.abs(field_vals[:, :, [0, -1]])),
            )
            if edge > tail_tol * peak:
                _report(f"field at the position grid edge is {edge / peak:.2e} of its peak", strict)
    j = np.diag(KREIN_J)
    dens = np.einsum("...m,m,...m->...", f.conj(), j, gdt) - np.einsum("...m,m,...m->...", fdt.conj(), j, g)
    total = _fsum_complex(dens.reshape(-1).tolist())
    return 1j * total * h[0] * h[1] * h[2]


# ---------------------------------------------------------------- gauge part


def nonlocal_gauge_function(alpha, state: TransversalState, p) -> np.ndarray:
    """Scalar ``g̃`` with ``U(α)φ - 𝕌(α)φ = g̃ · p`` pointwise."""
    p = np.asarray(p, dtype=float)
    u = gauge_residue(alpha, state, p)
    return np.einsum("...i,...i->...", p, u) / np.einsum("...i,...i->...", p, p)


# ------------------------------------------------------------------- packets


@dataclass(frozen=True)
class PacketTerm:
    label: str
    center: tuple[float, float, float]
    sigma: float
    amplitude: complex = 1.0

    def build(self) -> MomentumWaveFunction:
        return FrameMode(self.label, Gaussian(self.center, self.sigma, self.amplitude))


def _parse_amplitude(v) -> complex:
    if isinstance(v, (list, tuple)):
        if len(v) != 2:
            raise ValueError("complex amplitude must be [re, im]")
        return complex(float(v[0]), float(v[1]))
    if isinstance(v, str):
        return complex(v.replace(" ", ""))
    return complex(v)


@dataclass(frozen=True)
class PacketSpec:
    """Sum of frame modes with Gaussian envelopes, as read from JSON.

    ``{"terms": [{"label": "w1+", "center": [2, 0, 0], "sigma": 0.3,
    "amplitude": [1, 0]}]}``
    """

    terms: tuple[PacketTerm, ...]

    def __post_init__(self):
        if not self.terms:
            raise ValueError("a packet needs at least one term")
        for t in self.terms:
            if t.label not in FRAME_LABELS:
                raise ValueError(f"unknown frame label {t.label!r}")
            if not t.sigma > 0:
                raise ValueError("sigma must be positive")
            if np.linalg.norm(t.center) - 6.0 * t.sigma <= 0:
                raise DomainError("packet window would reach r = 0 (need |center| > 6 sigma)")

    @classmethod
    def from_dict(cls, d: dict) -> PacketSpec:
        terms = []
        for t in d["terms"]:
            center = tuple(float(c) for c in t["center"])
            if len(center) != 3:
                raise ValueError("center must have three components")
            terms.append(PacketTerm(str(t["label"]), center, float(t["sigma"]), _parse_amplitude(t.get("amplitude", 1.0))))
        return cls(tuple(terms))

    @classmethod
    def from_json(cls, text: str) -> PacketSpec:
        return cls.from_dict(json.loads(text))

    def to_dict(self) -> dict:
        return {
            "terms": [
                {
                    "label": t.label,
                    "center": list(t.center),
                    "sigma": t.sigma,
                    "amplitude": [t.amplitude.real, t.amplitude.imag],
                }
                for t in self.terms
            ]
        }

    def build(self) -> MomentumWaveFunction:
        modes = tuple(t.build() for t in self.terms)
        return modes[0] if len(modes) == 1 else Sum(modes)


def reference_packet() -> PacketSpec:
    """Transversal packet used for the momentum/position cross-check."""
    return PacketSpec(
        (
            PacketTerm("w1+", (2.0, 0.0, 0.0), 0.3, 1.0),
            PacketTerm("w1-", (2.0, 0.0, 0.0), 0.3, 0.5j),
        )
    )


def reference_desk(t: float = 0.0) -> dict:
    """Momentum box and position grid for desk-scale position products.

    The box is ``center ± 6σ`` with 48 Gauss-Legendre nodes per axis; the
    position grid has spacing 1.2 and extends 16 beyond the packet's light-front
    at time ``t`` in every direction.
    """
    h = 1.2
    lo, hi = -16.0 - abs(t), 16.0 + abs(t)
    n = int(round((hi - lo) / h)) + 1
    axis = lo + h * np.arange(n)
    return {
        "momentum_box": {"center": (2.0, 0.0, 0.0), "half_width": 1.8, "n": 48},
        "xgrid": (axis, axis, axis),
    }


def packet_desk(*specs: PacketSpec, t: float = 0.0, n: int = 48, max_points: int = 151) -> dict:
    """Desk for arbitrary packets, scaled the way :func:`reference_desk` is.

    The momentum box spans every term's ``center ± 6σ``. The position grid
    spacing keeps ``h · (box width) ≈ 4.32`` (below the aliasing limit 2π) and
    the grid reaches ``4.8/σ_min + |t|`` from the origin. For the reference
    packet this gives the reference desk's spacing and reach.
    """
    terms = [term for spec in specs for term in spec.terms]
    if not terms:
        raise ValueError("no packet terms given")
    lo = np.min([np.asarray(term.center) - 6 * term.sigma for term in terms], axis=0)
    hi = np.max([np.asarray(term.center) + 6 * term.sigma for term in terms], axis=0)
    if np.all(lo <= 0) and np.all(hi >= 0):
        raise DomainError("momentum box around the packets contains p = 0; use the spherical products")
    width = float(np.max(hi - lo))
    h = 4.32 / width
    reach = 4.8 / min(term.sigma for term in terms) + abs(t)
    m = int(np.ceil(2 * reach / h)) + 1
    if m > max_points:
        raise DomainError(f"position grid would need {m} points per axis (limit {max_points})")
    axis = -reach + h * np.arange(m)
    return {
        "momentum_box": {"center": tuple(map(float, (lo + hi) / 2)), "half_width": tuple(map(float, (hi - lo) / 2)), "n": n},
        "xgrid": (axis, axis, axis),
    }


def cross_check(phi: MomentumWaveFunction, times=(0.0,), desk: dict | None = None, strict: bool = False) -> dict:
    """Compare the momentum-side Krein product ``(φ, φ)`` with the position-side one.

    Discrepancies are relative to the packet scale ``∫ |φ|² dμ`` so that null
    packets are judged on the same footing as transversal ones.
    """
    box = (desk or reference_desk())["momentum_box"]
    q = ConeQuadrature.cartesian(box["center"], box["half_width"], box["n"])
    mom = krein_product(phi, phi, q, strict=strict)
    scale = integrate(_pointwise_product(phi, phi, None), q).real
    pos = to_position(phi, q, strict=strict)
    values = []
    for t in times:
        grid = (desk or reference_desk(t))["xgrid"]
        values.append(position_krein_product(pos, pos, t, grid, strict=strict))
    rel = [abs(v - mom) / scale for v in values]
    return {
        "momentum": mom,
        "position": values,
        "times": list(times),
        "scale": scale,
        "relative_discrepancy": rel,
    }


# ------------------------------------------------------------ unboundedness


def infrared_packet() -> MomentumWaveFunction:
    """``w₁⁻`` times a narrow Gaussian centred close to the tip of the cone."""
    return FrameMode("w1-", Gaussian((0.04, 0.0, 0.03), 0.01))


def _pullback_gram(V):
    def metric(q):
        p = np.asarray(q, dtype=float) @ V.T
        p[..., 0] = np.linalg.norm(p[..., 1:], axis=-1)
        return V.T @ gram(p) @ V

    return metric


def boost_norm_ratios(lams=(1.0, 2.0, 3.0, 4.0), phi: MomentumWaveFunction | None = None, **quad) -> list[float]:
    """``‖U(α₀₃(λ))φ‖ / ‖φ‖`` in the positive (B-weighted) norm for each λ.

    Invariance of ``dμ`` turns the boosted norm into
    ``∫ ⟨φ(q), V(α)ᵀ B(V(α)q) V(α) φ(q)⟩ dμ(q)``, which is evaluated on the
    quadrature of the unboosted packet.
    """
    phi = infrared_packet() if phi is None else phi
    q = ConeQuadrature.covering(phi, **quad)
    base = integrate(_pointwise_product(phi, phi, gram), q).real
    out = []
    for lam in lams:
        V = lorentz_of(alpha03(lam))
        n2 = integrate(_pointwise_product(phi, phi, _pullback_gram(V)), q).real
        out.append(math.sqrt(n2 / base))
    return out
