"""
Twist rewrite rules and the certified reduction pipeline
========================================================

Spherical objects on the local P^1 carry a normal form: per-degree
multiplicities of O_Z(v) and O_Z(v-1).  Single twists between adjacent
levels rewrite deterministically; composites of two adjacent twists act
as tensoring by O_Z(-2); and any pair of line-bundle shifts whose Homs
concentrate in degree one reduces to the standard pair {O_Z, O_Z(-1)[1]}
by an explicit certified word.
"""

from cy2stab import nfcalc as nf
from cy2stab import reduction as red

# The three deterministic twist rules.
print("T_{O(0)}(O(0))   =", nf.twist_line_on_line(0, 0, 0).to_json())
print("T_{O(-1)}(O(0))  =", nf.twist_line_on_line(-1, 0, 0).to_json())
print("T_{O(0)}(O(1))   =", nf.twist_line_on_line(0, 1, 0).to_json())

# Distance one downward is still deterministic but leaves the lines: the
# cone has two cohomologies and length three.
glued = nf.twist_line_on_line(0, -1, 0)
print("T_{O(0)}(O(-1))  =", glued.to_json(), "with l =", nf.length(glued))

# Distance two or more is refused: dimensions alone cannot name the cone.
try:
    nf.twist_line_on_line(0, 2, 0)
except nf.UnsupportedTwistDistance as exc:
    print("distance-2 twist refused:", exc)

# Words act exactly on the lattice; the adjacent composite is the
# tensor-by-O(-2) translation on every line class.
word = (nf.Tw(0), nf.Tw(-1))
for s in range(-2, 3):
    cls = nf.word_on_K(word, nf.line_nf(s, 0).kclass())
    print(f"composite on [O({s})] ->", cls)

# Reduction: the pair (O(2)[1], O(3)) is admissible; one composite plus
# one twist lands on the standard pair, every step certified against the
# lattice action and the Hom tables.
trace = red.reduce_pair(red.LinePair(2, 1, 3, 0))
print("\nreduction word:", [str(g) for g in trace.word])
for step in trace.steps:
    print(" ", step.flag, step.pair_before.to_json(), "->", step.pair_after.to_json())
print("final pair:", trace.final_pair.to_json(), "| swapped:", trace.swapped)

# Inadmissible input (equal twists) is rejected with the contradiction
# built into the classification.
try:
    red.reduce_pair(red.LinePair(0, 0, 0, 0))
except red.InadmissiblePair as exc:
    print("\ninadmissible pair:", exc)
