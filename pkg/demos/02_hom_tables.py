"""
Graded Hom tables between pushforward line bundles
==================================================

All graded Homs between O_Z(s) and O_Z(t) depend only on d = t - s and
are pinned by three vanishing clauses together with the constant Euler
characteristic 2.  The closed form, the clause predicates, and the
one-degree-promise checker are demonstrated here.
"""

from cy2stab import homtable as ht
from cy2stab.nfcalc import NormalForm, line_nf

# The table around the diagonal.
print("d = t - s | Hom^0  Hom^1  Hom^2")
for d in range(-4, 5):
    dims = ht.hom_dims_line(0, d)
    print(f"{d:>9} | {dims.d0:>5} {dims.d1:>6} {dims.d2:>6}")

# Every row has Euler characteristic 2 and mirror-symmetric corners.
dims = ht.hom_dims_line(0, 3)
print("\nEuler characteristic:", dims.euler())
print("Serre mirror:", dims.d2 == ht.hom_dims_line(3, 0).d0)

# Vanishing clauses: degree 0 vanishes for s > t, degree 1 inside the
# |s - t| < 2 band, degree 2 for s < t.
for (i, s, t) in [(0, 1, 0), (1, 0, 1), (2, 0, 1), (1, 0, 2)]:
    print(f"Hom^{i}(O({s}), O({t})) = 0?", ht.vanishing_predicate(i, s, t))

# Shifts move the table along the degree axis but never widen it past
# three consecutive degrees.
print("\nHom^*(O(-1)[1], O(0)) =", ht.hom_dims_shifted(-1, 1, 0, 0))

# The difference checker audits a normal form against the promise that
# all Homs into O_Z(t) concentrate in degree one.  O_Z itself against
# t = 0 violates the promise outright:
bad = ht.difference_check(line_nf(0, 0), 0)
print("\nO_Z vs t=0: promise ok?", bad.promise_ok,
      "| surviving lower bounds:", bad.promise_lower_bounds)

# A summand O(3) in degree zero trips clause (b): the implication
# "no Homs from H^-1 forces s - t < 0" fails, flagging the instance.
flagged = ht.difference_check(NormalForm.make(3, {0: (1, 0)}), 0)
for check in flagged.checks:
    print("clause", check.clause, "s =", check.s,
          "hypothesis", check.hypothesis, "conclusion", check.conclusion,
          "violated", check.violated)
