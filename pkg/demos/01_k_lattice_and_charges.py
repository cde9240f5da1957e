"""
The K-lattice and exact central charges
=======================================

Classes on the resolved A1 surface live in a rank-two lattice spanned by
the zero-section class [O_Z] and the point class [O_x].  Everything in
this walkthrough is exact: rational complex charges, sign-test phase
comparisons, and integer reflection formulas.
"""

from fractions import Fraction

from cy2stab import kcharge as kc

# The Euler pairing is symmetric, factors through the numerical lattice,
# and is pinned by chi(O_Z, O_Z) = 2 with [O_x] in the radical.
oz = kc.KClass(1, 0)
ox = kc.KClass(0, 1)
print("chi(O_Z, O_Z) =", kc.euler_form(oz, oz))
print("chi(O_x, anything) =", kc.euler_form(ox, kc.KClass(5, -3)))

# Line bundles: [O(t)] = [O] + t [O_x]; odd shifts flip the sign.
for t, shift in [(0, 0), (-1, 1), (2, 2)]:
    print(f"[O({t})[{shift}]] =", kc.class_of_line_bundle(t, shift))

# A central charge takes exact complex values on the basis.  This one
# sits in the standard region: both simple classes go strictly upper.
Z = kc.CentralCharge.standard_region(
    kc.ExactComplex.of(0, 1),          # Z(O_Z) = i
    kc.ExactComplex.of(1, 2),          # Z(O_x) = 1 + 2i
)
print("\nZ(O_Z(-1)[1]) =", Z.eval(kc.KClass(-1, 1)).approx())

# Phase comparisons are exact sign tests, no arctangents involved.
u, v = kc.KClass(1, 0), kc.KClass(0, 1)
print("compare phases of O_Z and O_x:", kc.phase_compare(Z, u, v).name)

# The rotation/scale action is stored symbolically; raw values never
# move, and every stored phase shifts by exactly the rotation parameter.
rotated = kc.rotate_scale(Z, x=Fraction(1, 2), t=1)
print("phase key before:", kc.phase_key(Z, u).approx())
print("phase key after rotating by t=1:", kc.phase_key(rotated, u).approx())

# Twisting reflects the lattice: an involution fixing the point class.
f = kc.KClass(1, 1)
tf = kc.twist_on_K(oz, f)
print("\ntwist of [O(1)] along [O_Z]:", tf)
print("twisting twice returns it:", kc.twist_on_K(oz, tf) == f)

# Sign and p-coordinates in the basis {[F], [O_x]}; the p-coordinate is
# twist-invariant, which drives the descent argument for sphericals.
s, p = kc.sign_and_p(oz, tf)
print("sign and p of the twist:", (s, p))

# The sign-comparison checker: when E and F carry opposite signs and the
# phases interleave strictly inside the window under E, the middle class
# S must carry the sign of F.  The report records every hypothesis.
report = kc.compare_signs_check(Z, kc.KClass(1, 0), kc.KClass(-1, 2), kc.KClass(-1, 1))
print("\nsign comparison report:", report.to_json())
