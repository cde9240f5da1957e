"""
Harder-Narasimhan and Jordan-Hoelder engines
============================================

Given an exact standard-region charge, every module has a unique
filtration with semistable factors of strictly decreasing phase, and
each semistable factor splits into maximal isotypic blocks.  Both
engines run over the category oracle with exact phase keys.
"""

import numpy as np

from cy2stab import heartlab, pimod
from cy2stab.kcharge import CentralCharge, ExactComplex


def charge(z_s0, z_s1):
    """Charge from its exact values on the two simple classes."""
    return CentralCharge(z_s1, z_s0 + z_s1)


cat = pimod.PiOracle(3)
s0, s1 = cat.simples()
m = pimod.PiModule(
    3,
    np.array([[1]], dtype=np.int64),
    np.zeros((1, 1), dtype=np.int64),
    np.zeros((1, 1), dtype=np.int64),
    np.zeros((1, 1), dtype=np.int64),
)

# Under Z(S0) = 1+i, Z(S1) = -1+i the submodule S1 destabilizes M.
Z = charge(ExactComplex.of(1, 1), ExactComplex.of(-1, 1))
filt = heartlab.hn_filter(cat, Z, m)
print("HN factors:")
for key, factor in filt.factors:
    print("  dims", factor.dims, "at phase ~", round(key.approx(), 4))

# Swapping the values makes M stable: a single factor, no equal-phase sub.
Z_swap = charge(ExactComplex.of(-1, 1), ExactComplex.of(1, 1))
print("swapped charge semistable:", heartlab.hn_filter(cat, Z_swap, m).is_semistable())

# Jordan-Hoelder blocks of a semistable object: S0 + S1 at a charge with
# equal phases splits into two isotypic blocks with vanishing forward Homs.
Z_eq = charge(ExactComplex.of(1, 1), ExactComplex.of(2, 2))
jh = heartlab.jh_blocks(cat, Z_eq, pimod.direct_sum(s0, s1))
print("\nblocks:", [b.dims for b in jh.blocks],
      "| Hom(A_i, B_i) dims:", list(jh.hom_certificates))

# The inequality chain: self-Ext of the object dominates the factor sums.
rep = heartlab.inequality_chain_check(cat, Z, m)
print("\ninequality chain:", rep.to_json())

# Phase-gap decomposability certificate on exact phase values.
verdict = heartlab.decomposability_certificate([2, 0.5 + 0.0])
print("gap certificate:", verdict.to_json())

# Rigid objects decompose into multiples of stable sphericals, and every
# stable object found has even self-Ext^1.
audit = heartlab.rigidity_spherical_audit(cat, Z, pimod.multiple(s0, 2))
print("rigidity audit:", audit.to_json())
