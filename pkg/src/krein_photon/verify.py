"""Seeded verification suites behind ``krein-photon verify``.

Each suite draws its samples from ``numpy.random.default_rng([seed, k])`` with
a fixed per-suite ``k``, so a suite gives the same report whether it runs alone
or inside ``all``.
"""
from __future__ import annotations

import json
import math
import time
import warnings
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.integrate import quad

from . import cone, krein, rep, sl2c, transversal
from . import field as fld
from .errors import QuadratureAccuracyWarning

__all__ = ["Check", "Report", "SUITES", "run_suite", "run"]

SCHEMA = 1


@dataclass
class Check:
    name: str
    anchor: str
    max_residual: float
    tolerance: float
    passed: bool = field(init=False)
    detail: dict | None = None

    def __post_init__(self):
        self.max_residual = float(self.max_residual)
        self.passed = bool(self.max_residual <= self.tolerance)


@dataclass
class Report:
    suite: str
    seed: int
    samples: int | None
    checks: list[Check]
    environment: dict
    warnings: list[str] = field(default_factory=list)
    wall_time: float | None = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failing(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        d = {
            "schema": SCHEMA,
            "suite": self.suite,
            "seed": self.seed,
            "samples": self.samples,
            "passed": self.passed,
            "n_checks": len(self.checks),
            "checks": [asdict(c) for c in self.checks],
            "environment": self.environment,
            "warnings": self.warnings,
        }
        if self.wall_time is not None:
            d["wall_time"] = self.wall_time
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def _inf(x) -> float:
    x = np.asarray(x)
    return float(np.max(np.abs(x))) if x.size else 0.0


def _rel(a, b) -> float:
    return _inf(np.asarray(a) - np.asarray(b)) / max(1.0, _inf(b))


# ---------------------------------------------------------------------- sl2c


def suite_sl2c(rng, samples):
    n = 1000 if samples is None else samples
    a = sl2c.random_sl2_entries(rng, n)
    b = sl2c.random_sl2_entries(rng, n)
    Va, Vb = sl2c.lorentz_of(a), sl2c.lorentz_of(b)
    g = sl2c.METRIC
    scale = np.maximum(1.0, np.max(np.abs(Va), axis=(-2, -1)))[:, None, None]
    lor = (np.swapaxes(Va, -1, -2) @ g @ Va - g) / scale ** 2
    hom = (sl2c.lorentz_of(a @ b) - Va @ Vb) / (scale * np.maximum(1.0, np.max(np.abs(Vb), axis=(-2, -1)))[:, None, None])
    kern = sl2c.lorentz_of(-a) - Va
    S = sl2c.S_MATRIX
    kron = np.einsum("...ij,...kl->...ikjl", a, a.conj()).reshape(n, 4, 4)
    c = 3.7 - 1.2j
    Vc = ((c * S) @ kron @ np.linalg.inv(c * S)).real
    p = rng.standard_normal((n, 4))
    dets = np.linalg.det(sl2c.pauli_embed(p)).real
    mink = sl2c.minkowski_dot(p, p)
    pa = sl2c.pauli_action(a, p)
    Vp = np.einsum("nij,nj->ni", Va, p)
    detV = np.linalg.det(Va)
    return [
        Check("lorentz-metric", "V(α)ᵀ g V(α) = g", _inf(lor), 1e-10),
        Check("homomorphism", "V(αβ) = V(α)V(β)", _inf(hom), 1e-10),
        Check("double-cover-kernel", "V(-α) = V(α)", _inf(kern), 1e-14),
        Check("s-normalisation", "V independent of the scale of S", _inf((Vc - Va) / scale), 1e-14),
        Check("pauli-consistency", "V(α)p = q with α p̂ α* = q̂", _inf((Vp - pa) / scale[:, :, 0]), 1e-10),
        Check("proper-orthochronous", "det V = 1 and V⁰₀ ≥ 1", max(_inf(detV - 1.0) / _inf(scale) ** 4, float(np.max(np.maximum(0.0, 1.0 - Va[:, 0, 0])))), 1e-10),
        Check("pauli-determinant", "det p̂ = p·p", _inf((dets - mink) / np.maximum(1.0, np.sum(p * p, axis=1))), 1e-12),
    ]


# ---------------------------------------------------------------------- cone


def suite_cone(rng, samples):
    n = 500 if samples is None else samples
    grid = cone.spherical_grid().reshape(-1, 4)
    bi = sl2c.sl2_inverse(cone.section(grid))
    sec = sl2c.pauli_action(bi, sl2c.P_BAR) - grid
    p = cone.random_cone_points(rng, n)
    d = sl2c.random_sl2_entries(rng, n)
    a = sl2c.random_sl2_entries(rng, n)
    gam = cone.wigner_element(a, p)
    pbh = np.array([[2, 0], [0, 0]], dtype=complex)
    stab = gam @ pbh @ np.swapaxes(gam.conj(), -1, -2) - pbh
    lhs = cone.wigner_element(d @ a, p)
    rhs = cone.wigner_element(d, p) @ cone.wigner_element(a, rep._snap_to_cone(cone.boost_action(d, p)))
    q = cone.boost_action(a, p)
    onc = sl2c.minkowski_dot(q, q) / np.sum(q * q, axis=1)
    checks = [
        Check("section-property", "β(p)⁻¹ p̄̂ β(p)⁻¹* = p̂", _inf(sec), 1e-10),
        Check("wigner-stabilises", "γ(α,p) p̄̂ γ(α,p)* = p̄̂", _inf(stab), 1e-10),
        Check("wigner-cocycle", "γ(δα,p) = γ(δ,p) γ(α,Λ(δ)p)", _inf(lhs - rhs) / max(1.0, _inf(lhs)), 1e-10),
        Check("multiplier-cocycle", "Q(δα,p) = Q(δ,p) Q(α,Λ(δ)p)", rep.multiplier_cocycle_check(d, a, p) / max(1.0, _inf(rep.multiplier(d @ a, p))), 1e-10),
        Check("boost-action-on-cone", "Λ(α)p stays on the forward cone", max(_inf(onc), float(np.max(np.maximum(0.0, -q[:, 0])))), 1e-10),
    ]
    if n:
        checks.append(_measure_invariance(rng, max(1, min(n, 5))))
    return checks


def _measure_invariance(rng, k):
    env = rep.Gaussian((1.5, -0.5, 1.0), 0.25)
    probe = rep.VectorMode((1.0, 0.0, 0.0, 0.0), env)
    base = fld.integrate(env, fld.ConeQuadrature.covering(probe)).real
    worst = 0.0
    for alpha in sl2c.random_sl2(rng, k, max_rapidity=1.0):
        moved = rep.act_local(rep.GroupElement(alpha=alpha), probe)
        qd = fld.ConeQuadrature.covering(moved)
        val = fld.integrate(lambda p: env(rep._snap_to_cone(cone.boost_action(alpha, p))), qd).real
        worst = max(worst, abs(val - base) / abs(base))
    return Check("measure-invariance", "∫ f∘Λ(α) dμ = ∫ f dμ", worst, 1e-6)


# --------------------------------------------------------------------- krein


def suite_krein(rng, samples):
    grid = cone.spherical_grid().reshape(-1, 4)
    n = 500 if samples is None else samples
    pts = np.vstack([grid, cone.random_cone_points(rng, n, r_range=(0.1, 10.0))])
    J = sl2c.KREIN_J
    I = np.eye(4)
    B = krein.gram(pts)
    sq = krein.gram_sqrt(pts)
    beta = cone.section(pts)
    kron = np.einsum("...ij,...kl->...ikjl", beta, beta.conj()).reshape(-1, 4, 4)
    Vc = sl2c.S_MATRIX @ kron @ sl2c.S_MATRIX.conj().T
    Vb = Vc.real
    VbT = np.swapaxes(Vb, -1, -2)
    f = krein.frame(pts)
    W = f.matrix()
    lam = f.eigenvalues()
    eig = np.einsum("nij,njk->nik", B, W) - W * lam[:, None, :]
    evals = np.sort(np.linalg.eigvalsh(B), axis=1)
    eig_rel = (evals - np.sort(lam, axis=1)) / np.sort(lam, axis=1)
    # eigenspace oracle: transversal projector from a numeric eigendecomposition
    w_num, v_num = np.linalg.eigh(B)
    near_one = np.abs(w_num - 1.0) < 1e-6
    far = np.abs(f.r - 1.0) > 1e-2
    P_num = np.einsum("nik,nk,njk->nij", v_num, near_one.astype(float), v_num)
    P_cf = transversal.tr_projector(pts)
    table = np.array(
        [
            [1, 0, 0, 0],
            [0, 1, 0, 0],
            [0, 0, 0, -1],
            [0, 0, -1, 0],
        ],
        dtype=float,
    )
    kt = np.swapaxes(W, -1, -2) @ J @ W - table
    Jp = krein.fiber_symmetry(pts)
    conj = np.linalg.solve(Vb, J @ Vb)
    act = np.einsum("nij,njk->nik", Jp, W) - np.stack([f.w1_plus, f.w1_minus, -f.w_r2 / f.r[:, None] ** 2, -f.w_rm2 * f.r[:, None] ** 2], axis=-1)
    scale = np.maximum(1.0, np.max(np.abs(B), axis=(-2, -1)))[:, None, None]
    return [
        Check("section-lorentz-real", "V(β(p)) is real", _inf(Vc.imag), 1e-14),
        Check("gram-closed-form", "B(p) = V(β(p))ᵀ V(β(p))", _inf((VbT @ Vb - B) / scale), 1e-10),
        Check("gram-eigenvalues", "eigenvalues of B(p) are 1, 1, r⁻², r²", _inf(eig_rel), 1e-10),
        Check("frame-eigenvectors", "B(p) w_λ = λ w_λ", _inf(eig / scale), 1e-10),
        Check("frame-eigenspaces", "transversal eigenspace matches numeric eigh", _inf((P_num - P_cf)[far]), 1e-10),
        Check("frame-orthonormal", "wᵀw = 1", _inf(np.swapaxes(W, -1, -2) @ W - I), 1e-12),
        Check("frame-completeness", "Σ w wᵀ = 1", _inf(W @ np.swapaxes(W, -1, -2) - I), 1e-12),
        Check("frame-krein-table", "Krein pairings of the frame", _inf(kt), 1e-12),
        Check("frame-transversal", "w₁± spatial and orthogonal to p⃗", max(_inf(f.w1_plus[:, 0]), _inf(f.w1_minus[:, 0]), _inf(np.einsum("ni,ni->n", f.w1_plus[:, 1:], pts[:, 1:]) / f.r), _inf(np.einsum("ni,ni->n", f.w1_minus[:, 1:], pts[:, 1:]) / f.r)), 1e-12),
        Check("sqrt-gram", "√B √B = B", _inf((sq @ sq - B) / scale), 1e-10),
        Check("bjbj-section", "V(β) J V(β)ᵀ J = 1", _inf((Vb @ J @ VbT @ J - I) / scale), 1e-10),
        Check("bjbj-section-transposed", "J V(β)ᵀ J V(β) = 1", _inf((J @ VbT @ J @ Vb - I) / scale), 1e-10),
        Check("bjbj-sqrt", "√B J √B J = 1", _inf((sq @ J @ sq @ J - I) / scale), 1e-10),
        Check("section-inverse-closed-form", "closed-form V(β(p))⁻¹", _inf((krein.section_lorentz_inverse(pts) @ Vb - I) / scale), 1e-10),
        Check("fiber-symmetry-conjugation", "J′_p = J B(p) = V(β)⁻¹ J V(β)", _inf((Jp - conj) / scale), 1e-10),
        Check("fiber-symmetry-involution", "(J′_p)² = 1", _inf((Jp @ Jp - I) / scale), 1e-10),
        Check("fiber-symmetry-frame-action", "J′ w₁± = w₁±, J′ w_{r⁻²} = -r⁻² w_{r²}", _inf(act / scale), 1e-10),
    ]


# ----------------------------------------------------------------------- rep


def _random_group(rng, rapidity=None):
    alpha = sl2c.random_sl2_entries(rng) if rapidity is None else sl2c.random_sl2(rng, max_rapidity=rapidity)
    return rep.GroupElement(rng.standard_normal(4), alpha)


def _test_packet():
    return (
        rep.FrameMode("w1+", rep.Gaussian((1.0, 0.5, 0.2), 0.15))
        + rep.FrameMode("wr-2", rep.Gaussian((0.6, -0.8, 0.5), 0.12, 0.4 - 0.3j))
        + rep.VectorMode((0.2, -1.0, 0.5j, 0.3), rep.Gaussian((-0.4, 0.9, 1.1), 0.18))
    )


def suite_rep(rng, samples):
    n_pts = 100 if samples is None else samples
    n_pairs = 50 if samples is None else min(50, samples)
    phi = _test_packet()
    p = cone.random_cone_points(rng, n_pts)
    law = {"local": 0.0, "conjugate": 0.0, "induced": 0.0}
    acts = {"local": rep.act_local, "conjugate": rep.act_conjugate, "induced": rep.act_induced}
    inter = equiv = kun = 0.0
    J = sl2c.KREIN_J
    for _ in range(n_pairs if n_pts else 0):
        g1, g2 = _random_group(rng), _random_group(rng)
        for k, act in acts.items():
            a = act(g1 @ g2, phi)(p)
            b = act(g1, act(g2, phi))(p)
            law[k] = max(law[k], _rel(a, b))
        a = rep.act_local(g1, rep.intertwine_to_local(phi))(p)
        b = rep.intertwine_to_local(rep.act_induced(g1, phi))(p)
        inter = max(inter, _rel(a, b))
        a = rep.act_conjugate(g1, phi)(p)
        b = rep.apply_fiber_symmetry(rep.act_local(g1, rep.apply_fiber_symmetry(phi)))(p)
        equiv = max(equiv, _rel(a, b))
        L = rep.multiplier(g1.alpha, p)
        kun = max(kun, _inf((L @ J @ np.swapaxes(L, -1, -2) @ J - np.eye(4)) / np.maximum(1.0, np.max(np.abs(L), axis=(-2, -1)))[:, None, None] ** 2))
    ident = rep.GroupElement()
    idres = max(_inf(act(ident, phi)(p) - phi(p)) for act in acts.values()) if n_pts else 0.0
    trans = rep.GroupElement.translation([0.7, 0.0, 0.0, 0.0])
    tres = _inf(rep.act_local(trans, phi)(p) - np.exp(0.7j * p[:, :1]) * phi(p)) if n_pts else 0.0
    checks = [
        Check("group-law-local", "U(g₁g₂) = U(g₁)U(g₂)", law["local"], 1e-10),
        Check("group-law-conjugate", "conjugate action is a representation", law["conjugate"], 1e-10),
        Check("group-law-induced", "induced action is a representation", law["induced"], 1e-10),
        Check("intertwiner", "U(g) W = W U_ind(g)", inter, 1e-10),
        Check("conjugate-equivalence", "conjugate action = J′ U(g) J′", equiv, 1e-10),
        Check("multiplier-krein-unitary", "Ł_γ J Ł_γᵀ J = 1", kun, 1e-10),
        Check("identity-action", "U(1) = 1", idres, 1e-14),
        Check("translation-phase", "U(a) φ(p) = e^{ia·p} φ(p)", tres, 1e-14),
    ]
    if n_pts:
        checks.append(_krein_isometry(rng, 3))
    return checks


def _krein_isometry(rng, k):
    phi = rep.FrameMode("w1+", rep.Gaussian((1.0, 0.5, 0.2), 0.12)) + rep.FrameMode(
        "wr-2", rep.Gaussian((0.9, 0.6, 0.4), 0.12, 0.4 - 0.3j)
    )
    psi = rep.FrameMode("w1-", rep.Gaussian((1.1, 0.4, 0.3), 0.12)) + rep.FrameMode(
        "wr2", rep.Gaussian((1.0, 0.3, 0.5), 0.12, 0.5j)
    )
    base = fld.krein_product(phi, psi)
    scale = math.sqrt(fld.integrate(lambda p: np.sum(abs(phi(p)) ** 2, -1), fld.ConeQuadrature.covering(phi)).real
                      * fld.integrate(lambda p: np.sum(abs(psi(p)) ** 2, -1), fld.ConeQuadrature.covering(psi)).real)
    worst = 0.0
    for _ in range(k):
        g = _random_group(rng, rapidity=1.0)
        for act in (rep.act_local, rep.act_conjugate):
            val = fld.krein_product(act(g, phi), act(g, psi))
            worst = max(worst, abs(val - base) / scale)
    return Check("krein-isometry-packets", "(U φ, J U ψ) = (φ, J ψ)", worst, 1e-6)


# --------------------------------------------------------------- transversal


def suite_transversal(rng, samples):
    n = 200 if samples is None else samples
    p = cone.random_cone_points(rng, n)
    a = sl2c.random_sl2_entries(rng, n)
    b = sl2c.random_sl2_entries(rng, n)
    J = sl2c.KREIN_J
    T = transversal.transversal_block(a, p)
    th = transversal.theta(a, p)
    th_neg = transversal.theta(-a, p)
    th_conj = transversal.theta(a, p, route="conjugate")
    q = rep._snap_to_cone(cone.boost_action(a, p))
    z = lambda t: t.cos + 1j * t.sin  # noqa: E731
    coc = z(transversal.theta(a @ b, p)) - z(th) * z(transversal.theta(b, q))
    checks = [
        Check("theta-diagonal", "Θ⁺₊ = Θ⁻₋", _inf(T[:, 0, 0] - T[:, 1, 1]), 1e-10),
        Check("theta-antisymmetry", "Θ⁺₋ = -Θ⁻₊", _inf(T[:, 0, 1] + T[:, 1, 0]), 1e-10),
        Check("theta-unit-circle", "cos²Θ + sin²Θ = 1", _inf(th.cos ** 2 + th.sin ** 2 - 1), 1e-10),
        Check("theta-single-valued", "Θ(-α,p) = Θ(α,p)", max(_inf(th.cos - th_neg.cos), _inf(th.sin - th_neg.sin)), 1e-12),
        Check("theta-cocycle", "Θ(αβ,p) = Θ(α,p) + Θ(β,Λ(α)p) mod 2π", _inf(coc), 1e-10),
        Check("theta-conjugate-route", "conjugate action generates the same phases", max(_inf(th.cos - th_conj.cos), _inf(th.sin - th_conj.sin)), 1e-10),
    ]
    t = rng.uniform(-3, 3, n)
    for kind, make in (("03", sl2c.alpha03), ("12", sl2c.alpha12), ("23", sl2c.alpha23), ("13", sl2c.alpha13)):
        got = transversal.theta(make(t), p)
        ref = transversal.theta_special(kind, t, p)
        checks.append(
            Check(f"theta-closed-form-{kind}", f"closed-form Θ for α_{kind}", max(_inf(got.cos - ref.cos), _inf(got.sin - ref.sin)), 1e-10)
        )
    # split of a boosted transversal state
    state = transversal.TransversalState.from_pair(
        rep.ScalarFunction(lambda x: np.cos(x[..., 1]) + 0.3j * x[..., 3]),
        rep.ScalarFunction(lambda x: np.exp(-x[..., 0]) * (1 + 0.5j * x[..., 2])),
    )
    null = orth = ray = rot = 0.0
    proj = 0.0
    for i in range(min(n, 20)):
        g = _random_group(rng)
        u = transversal.gauge_residue(g, state, p)
        val = np.abs(rep.act_local(g, transversal.embed(state))(p)).max(axis=1)
        s = np.maximum(1.0, val)
        fp = krein.frame(p)
        null = max(null, _inf(np.einsum("ni,ij,nj->n", u.conj(), J, u) / s ** 2))
        orth = max(orth, _inf(np.einsum("ni,ij,nj->n", fp.w1_plus, J, u) / s), _inf(np.einsum("ni,ij,nj->n", fp.w1_minus, J, u) / s))
        ray = max(ray, _inf(np.einsum("ni,ni->n", fp.w_r2, u) / s))
        a1 = transversal.project_tr(rep.act_local(g, transversal.embed(state)))(p)
        a2 = transversal.act_tr(g, state)(p)
        proj = max(proj, _inf((a1 - a2) / s[:, None]))
        for make in (sl2c.alpha12, sl2c.alpha23, sl2c.alpha13):
            rot = max(rot, _inf(transversal.gauge_residue(make(rng.uniform(-3, 3)), state, p)))
    P = transversal.tr_projector(p)
    Jp = krein.fiber_symmetry(p)
    PT = np.swapaxes(P, -1, -2)
    scale = np.maximum(1.0, np.max(np.abs(Jp), axis=(-2, -1)))[:, None, None] ** 2
    U = transversal.HELICITY_U
    diag = np.linalg.inv(U) @ th.rotation() @ U
    mult = transversal.helicity_multipliers(a, p)
    hel = max(_inf(diag[:, 0, 0] - mult[:, 0]), _inf(diag[:, 1, 1] - mult[:, 1]), _inf(diag[:, 0, 1]), _inf(diag[:, 1, 0]))
    checks += [
        Check("residue-krein-null", "(u, J u) = 0", null, 1e-10),
        Check("residue-krein-orthogonal", "(w₁±, J u) = 0", orth, 1e-10),
        Check("residue-along-p", "u has no w_{r²} component", ray, 1e-10),
        Check("residue-rotations", "rotations leave the transversal space invariant", rot, 1e-12),
        Check("act-tr-consistency", "P U(g) embed = 𝕌(g)", proj, 1e-10),
        Check("projector-idempotent", "P² = P", _inf(P @ P - P), 1e-12),
        Check("projector-krein-selfadjoint", "J′ Pᵀ J′ = P", _inf((Jp @ PT @ Jp - P) / scale), 1e-10),
        Check("helicity-diagonal", "𝒰⁻¹ R(Θ) 𝒰 = diag(e^{∓iΘ})", hel, 1e-10),
        Check("helicity-unitary", "𝒰*𝒰 = 1", _inf(U.conj().T @ U - np.eye(2)), 1e-15),
    ]
    return checks


# --------------------------------------------------------------------- field


def reference_mass(center, sigma) -> float:
    """``∫ exp(-|p⃗-c|²/2σ²) dμ`` reduced to one radial integral and done adaptively."""
    c = float(np.linalg.norm(center))
    s2 = sigma * sigma

    def f(r):
        return math.pi * s2 / c * (math.exp(-((r - c) ** 2) / (2 * s2)) - math.exp(-((r + c) ** 2) / (2 * s2)))

    return quad(f, 0.0, c + 20 * sigma, points=[c], epsabs=0.0, epsrel=1e-13, limit=200)[0]


# Boosts stretch a packet's support, so this check runs on a finer grid than the default.
LOCAL_LAW_GRID = {"n_r": 96, "n_theta": 48, "n_vartheta": 48}


def suite_field(rng, samples):
    checks = []
    center, sigma = (2.0, 0.0, 0.0), 0.3
    env = rep.Gaussian(center, sigma)
    q = fld.ConeQuadrature.covering(rep.FrameMode("w1+", env))
    ref = reference_mass(center, sigma)
    checks.append(Check("quadrature-reference-mass", "∫ G dμ against an adaptive reference", abs(fld.integrate(env, q).real / ref - 1), 1e-8))
    onshell = sl2c.minkowski_dot(q.points, q.points) / np.sum(q.points ** 2, axis=1)
    box = fld.reference_desk()["momentum_box"]
    qc = fld.ConeQuadrature.cartesian(box["center"], box["half_width"], box["n"])
    onshell_c = sl2c.minkowski_dot(qc.points, qc.points) / np.sum(qc.points ** 2, axis=1)
    checks.append(Check("on-shell-nodes", "p·p = 0 at every node", max(_inf(onshell), _inf(onshell_c)), 1e-12))

    phi = fld.reference_packet().build()
    cc = fld.cross_check(phi, times=(0.0, 2.0))
    checks.append(
        Check("position-krein-agreement", "position Krein product = momentum Krein product", max(cc["relative_discrepancy"]), 1e-3,
              {"momentum": cc["momentum"].real, "position": [v.real for v in cc["position"]], "times": cc["times"]})
    )
    pos_vals = cc["position"]
    checks.append(Check("position-time-independence", "position Krein product independent of t", abs(pos_vals[1] - pos_vals[0]) / abs(pos_vals[0]), 1e-3))
    null = fld.PacketSpec((fld.PacketTerm("wr2", center, sigma),)).build()
    checks.append(Check("position-null-packet", "null packet has zero Krein norm", fld.cross_check(null)["position"][0].__abs__() / cc["scale"], 1e-3))

    pos = fld.to_position(phi, qc)
    n = 100 if samples is None else samples
    x = np.column_stack([rng.uniform(-3, 3, n), rng.uniform(-4, 4, (n, 3))]) if n else np.zeros((0, 4))
    g = rep.GroupElement(alpha=sl2c.random_sl2(rng, max_rapidity=1.0))
    V = g.V
    if n:
        # a packet whose support ball stays clear of p = 0, so both sides get tight windows
        narrow = fld.PacketSpec(
            (fld.PacketTerm("w1+", center, 0.25), fld.PacketTerm("wr-2", center, 0.25, 0.3 - 0.4j))
        ).build()
        moved = rep.act_local(g, narrow)
        lhs = fld.to_position(moved, fld.ConeQuadrature.covering(moved, **LOCAL_LAW_GRID))(x)
        rhs = fld.to_position(narrow, fld.ConeQuadrature.covering(narrow, **LOCAL_LAW_GRID))(x @ np.linalg.inv(V).T) @ V.T
        loc = _inf(lhs - rhs) / _inf(rhs)
        a = np.array([0.5, 1.0, -0.3, 0.2])
        tr = _inf(fld.to_position(rep.act_local(rep.GroupElement.translation(a), phi), qc)(x) - pos(x - a)) / _inf(pos(x))
    else:
        loc = tr = 0.0
    checks.append(Check("local-transformation-law", "φ′(x) = V(α) φ(V(α)⁻¹x)", loc, 1e-6, {"quadrature": LOCAL_LAW_GRID}))
    checks.append(Check("translation-covariance", "φ′(x) = φ(x - a)", tr, 1e-8))
    checks.append(_wave_equation(pos))
    checks.append(_krein_isometry(rng, 2))
    ratios = fld.boost_norm_ratios()
    drops = max(0.0, -min(b - a for a, b in zip(ratios, ratios[1:])))
    checks.append(Check("boost-unboundedness", "‖U(α₀₃(λ))φ‖/‖φ‖ increases with λ", drops, 0.0, {"lambda": [1, 2, 3, 4], "ratios": ratios}))
    state = transversal.TransversalState.from_pair(rep.Constant(0.3), rep.Constant(1.0 - 0.2j))
    pp = cone.random_cone_points(rng, 50)
    gt = fld.nonlocal_gauge_function(sl2c.alpha03(0.8), state, pp)
    u = transversal.gauge_residue(sl2c.alpha03(0.8), state, pp)
    checks.append(Check("gauge-function", "U(α)φ - 𝕌(α)φ = g̃ p", _inf(gt[:, None] * pp - u), 1e-10))
    return checks


def _wave_equation(pos, h: float = 0.05):
    """Fourth-order central differences of □φ at a few points near the packet."""
    x0 = np.array([[0.0, 0.0, 0.0, 0.0], [1.0, 0.5, -0.5, 0.3], [2.0, 2.5, 0.4, -0.2]])
    stencil = np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / (12 * h * h)
    offs = np.arange(-2, 3) * h
    lap = np.zeros((len(x0), 4), dtype=complex)
    for mu, sign in zip(range(4), (1.0, -1.0, -1.0, -1.0)):
        pts = np.repeat(x0[:, None, :], 5, axis=1)
        pts[:, :, mu] += offs
        vals = pos(pts)
        lap += sign * np.einsum("k,nkm->nm", stencil, vals)
    scale = _inf(pos(x0))
    return Check("wave-equation", "□φ = 0 (finite differences)", _inf(lap) / scale, 1e-4)


SUITES = {
    "sl2c": (0, suite_sl2c),
    "cone": (1, suite_cone),
    "krein": (2, suite_krein),
    "rep": (3, suite_rep),
    "transversal": (4, suite_transversal),
    "field": (5, suite_field),
}


def _environment():
    return {
        "precision": "float64",
        "threads": fld._threads(),
        "quadrature": {"n_r": 64, "n_theta": 32, "n_vartheta": 32, "support_sigmas": rep.SUPPORT_SIGMAS},
    }


def run_suite(name: str, seed: int = 0, samples: int | None = None) -> tuple[list[Check], list[str]]:
    k, fn = SUITES[name]
    rng = np.random.default_rng([seed, k])
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", QuadratureAccuracyWarning)
        checks = fn(rng, samples)
    notes = sorted({str(w.message) for w in caught if issubclass(w.category, QuadratureAccuracyWarning)})
    return checks, [f"{name}: {m}" for m in notes]


def run(suite: str = "all", seed: int = 0, samples: int | None = None, timing: bool = False) -> Report:
    names = list(SUITES) if suite == "all" else [suite]
    if suite != "all" and suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    start = time.perf_counter()
    checks: list[Check] = []
    notes: list[str] = []
    if samples == 0:
        notes.append("samples=0: no checks were run (vacuous pass)")
    else:
        for name in names:
            c, w = run_suite(name, seed, samples)
            for chk in c:
                chk.name = f"{name}/{chk.name}"
            checks += c
            notes += w
    report = Report(suite, seed, samples, checks, _environment(), notes)
    if timing:
        report.wall_time = round(time.perf_counter() - start, 3)
    return report
