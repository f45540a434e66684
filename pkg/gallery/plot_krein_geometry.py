"""
Krein geometry on the cone
==========================

The positive metric ``B(p)`` and the frame that diagonalises it.
"""
from __future__ import annotations

import numpy as np

from krein_photon import krein, sl2c

####################################################################
# A momentum on the cone with ``r = |p| = 2``. The eigenvalues of ``B``
# are ``1, 1, r**-2, r**2``.

p = np.array([2.0, 1.2, 0.0, 1.6])
B = krein.gram(p)
print(np.round(np.linalg.eigvalsh(B), 12))

####################################################################
# ``sqrtB`` squares back to ``B`` and ``B J B J`` is the identity.

R = krein.gram_sqrt(p)
J = sl2c.KREIN_J
print(np.abs(R @ R - B).max(), np.abs(B @ J @ B @ J - np.eye(4)).max())

####################################################################
# The frame: two transversal vectors and a null pair. The Krein table
# ``<w_i, J w_j>`` is unit on the transversal block and off-diagonal on
# the null pair.

f = krein.frame(p)
W = np.column_stack([f.w1_plus, f.w1_minus, f.w_rm2, f.w_r2])
print(np.round(W.conj().T @ J @ W, 12))
