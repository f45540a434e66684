"""Krein-space toolkit for the single photon on the light cone.

Submodules, bottom up:

``sl2c``         spinor map ``α ↦ V(α)`` and one-parameter subgroups
``cone``         forward light cone, section ``β(p)``, Wigner elements
``krein``        ``B(p)``, ``√B(p)``, the eigenframe and ``J′_p``
``rep``          local, conjugate and induced actions on wave functions
``transversal``  physical subspace, phases ``Θ(α,p)``, helicity
``field``        quadrature, inner products, position-space fields
``verify``       seeded verification suites
"""
from __future__ import annotations

from . import cone, field, krein, rep, sl2c, transversal
from .errors import (
    DegenerateCoordinatesError,
    DomainError,
    KreinPhotonError,
    NotUnimodularError,
    QuadratureAccuracyError,
    QuadratureAccuracyWarning,
)
from .field import ConeQuadrature, PacketSpec, hilbert_product, krein_product, to_position
from .krein import fiber_symmetry, frame, gram, gram_sqrt
from .rep import FrameMode, Gaussian, GroupElement, act_conjugate, act_induced, act_local
from .sl2c import lorentz_of
from .transversal import act_tr, embed, project_tr, theta

__version__ = "0.1.0"

__all__ = [
    "cone",
    "field",
    "krein",
    "rep",
    "sl2c",
    "transversal",
    "KreinPhotonError",
    "NotUnimodularError",
    "DomainError",
    "DegenerateCoordinatesError",
    "QuadratureAccuracyError",
    "QuadratureAccuracyWarning",
    "ConeQuadrature",
    "PacketSpec",
    "hilbert_product",
    "krein_product",
    "to_position",
    "fiber_symmetry",
    "frame",
    "gram",
    "gram_sqrt",
    "FrameMode",
    "Gaussian",
    "GroupElement",
    "act_conjugate",
    "act_induced",
    "act_local",
    "lorentz_of",
    "act_tr",
    "embed",
    "project_tr",
    "theta",
]
