"""
Packets in momentum and position space
======================================

The Krein product of a Gaussian packet computed on the cone and on a
spatial grid.
"""
from __future__ import annotations

from krein_photon import field

####################################################################
# The reference packet is transversal, so its Krein and Hilbert norms agree.

spec = field.reference_packet()
phi = spec.build()
print(field.krein_product(phi, phi), field.hilbert_product(phi, phi))

####################################################################
# The same product from the position-space field at two times.

cc = field.cross_check(phi, times=(0.0, 2.0))
print(cc["momentum"], cc["position"], cc["relative_discrepancy"])
