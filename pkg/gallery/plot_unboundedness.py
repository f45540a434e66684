"""
Growth under boosts
===================

The positive norm is not preserved by boosts. Its ratio grows with the
rapidity for a packet near the origin of momentum space.
"""
from __future__ import annotations

from krein_photon import field

####################################################################
# Norm ratios for rapidities 1 to 4.

lams = (1.0, 2.0, 3.0, 4.0)
for lam, ratio in zip(lams, field.boost_norm_ratios(lams)):
    print(f"lambda={lam:.0f}  ratio={ratio:.4f}")
