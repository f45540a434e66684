"""
Phases and helicity
===================

The rotation angle picked up by the transversal block and its diagonal form.
"""
from __future__ import annotations

import numpy as np

from krein_photon import sl2c, transversal

####################################################################
# A rotation about the first axis at ``p = (1, 1, 0, 0)`` turns the
# transversal block by exactly its angle.

p = np.array([1.0, 1.0, 0.0, 0.0])
ph = transversal.theta(sl2c.alpha23(0.7), p)
print(ph.cos, np.cos(0.7), ph.sin, np.sin(0.7))

####################################################################
# In the helicity basis the block is diagonal with unit phases.

print(np.round(transversal.helicity_multipliers(sl2c.alpha23(0.7), p), 12))

####################################################################
# The phase satisfies the cocycle rule along a product of elements.

rng = np.random.default_rng(0)
a, b = sl2c.random_sl2(rng, 2)
q = np.linalg.solve(sl2c.lorentz_of(a), p)
angle = lambda ph: np.arctan2(ph.sin, ph.cos)
lhs = angle(transversal.theta(a @ b, p))
rhs = angle(transversal.theta(a, p)) + angle(transversal.theta(b, q))
print(np.angle(np.exp(1j * (lhs - rhs))))
