"""Exact-arithmetic workbench for stability conditions on the resolved A1 surface.

Subpackages
-----------
kcharge
    K-lattice, Euler form, central charges, exact phase comparison.
homtable
    Closed-form graded Hom dimensions between pushforward line bundles.
nfcalc
    Normal forms of spherical objects, twist rewrite rules, word calculus.
reduction
    Certified reduction of degree-one-concentrated line-bundle pairs to the
    standard pair {O_Z, O_Z(-1)[1]}.
pimod
    Concrete finite-length 2-Calabi-Yau category: nilpotent representations
    of the doubled Kronecker quiver with preprojective relations.
spectral
    Second-page bookkeeping and exact third-page Hom dimensions for
    two-term objects.
heartlab
    Harder-Narasimhan and Jordan-Hoelder engines plus the verification
    suites over a finite-length category oracle.
cli
    Batch JSON command-line front end.
"""

from cy2stab import (  # noqa: F401
    heartlab,
    homtable,
    kcharge,
    nfcalc,
    pimod,
    reduction,
    spectral,
)

__version__ = "0.1.0"
SCHEMA_VERSION = "1.0"
