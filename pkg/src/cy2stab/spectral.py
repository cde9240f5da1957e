"""Second-page bookkeeping for two-term objects and exact Hom dimensions.

A two-term object is a complex with heart cohomology H0 in degree 0, H1
in degree 1, and gluing datum e in Ext^2(H1, H0); the triple classifies
the object.  The second page

    E2^{p,q}(E, F) = sum over i of Hom^p(H^i(E), H^{i+q}(F))

carries the differential

    d2^{p,q}(+f_i) = (+/-) f_{i-1} . e_i(E)  -  e_{i+q}(F) . f_i

with sign (-1)^(p+q), vanishes outside the strip p in {0, 1, 2}, and the
sequence degenerates at the third page, giving exact graded Hom
dimensions as kernel/cokernel counts.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from cy2stab.kcharge import KClass
from cy2stab.pimod import (
    DegreeOverflow,
    ExtCocycle,
    PiModule,
    _ext_data,
    compose,
    ext_dims,
    hom_basis,
    kclass,
    rank,
    zero_cocycle,
    zero_module,
)

__all__ = [
    "DegreeOutOfStrip",
    "TwoTermObject",
    "two_term",
    "E2Page",
    "second_page",
    "d2",
    "hom_dims_via_E3",
    "sphericality_test",
    "SubquotientReport",
    "subquotient_inequality_check",
]


class DegreeOutOfStrip(ValueError):
    """Column index outside the Calabi-Yau strip {0, 1, 2}."""


@dataclass(frozen=True)
class TwoTermObject:
    """Object with heart cohomology H0 (degree 0), H1 (degree 1), class e.

    ``e`` is a degree-2 cocycle from H1 to H0, or None for the zero class
    (in particular whenever either cohomology vanishes).
    """

    H0: PiModule
    H1: PiModule
    e: Optional[ExtCocycle] = None

    def __post_init__(self) -> None:
        if self.H0.p != self.H1.p:
            raise ValueError("mixed field orders")
        if self.e is not None:
            if self.e.degree != 2:
                raise ValueError("gluing class must have degree 2")
            if self.e.src != self.H1 or self.e.dst != self.H0:
                raise ValueError("gluing class must map H1 to H0")

    @property
    def p(self) -> int:
        return self.H0.p

    def cohomology(self, i: int) -> PiModule:
        if i == 0:
            return self.H0
        if i == 1:
            return self.H1
        return zero_module(self.p)

    def e_class(self) -> ExtCocycle:
        if self.e is not None:
            return self.e
        return zero_cocycle(2, self.H1, self.H0)

    def kclass(self) -> KClass:
        return kclass(self.H0) - kclass(self.H1)

    def key(self) -> tuple:
        e = self.e_class()
        return (self.H0.key(), self.H1.key(), tuple(m.tobytes() for m in e.maps))


def two_term(H0: PiModule, H1: PiModule, e: Optional[ExtCocycle] = None) -> TwoTermObject:
    return TwoTermObject(H0, H1, e)


@dataclass(frozen=True)
class E2Page:
    """Dimension table of the second page, (p, q) -> dimension."""

    dims: tuple[tuple[tuple[int, int], int], ...]

    def dim(self, p: int, q: int) -> int:
        return dict(self.dims).get((p, q), 0)

    def to_json(self) -> dict:
        return {f"{p},{q}": d for (p, q), d in sorted(self.dims)}


def second_page(E: TwoTermObject, F: TwoTermObject) -> E2Page:
    """Nonzero E2^{p,q} dimensions; the strip p in {0,1,2} is automatic."""
    out = {}
    for q in (-1, 0, 1):
        for i in (0, 1):
            He = E.cohomology(i)
            Hf = F.cohomology(i + q)
            if He.is_zero() or Hf.is_zero():
                continue
            dims = ext_dims(He, Hf)
            for p in range(3):
                if dims[p]:
                    out[(p, q)] = out.get((p, q), 0) + dims[p]
    return E2Page(tuple(sorted(out.items())))


def d2(
    E: TwoTermObject,
    F: TwoTermObject,
    p: int,
    q: int,
    element: dict[int, ExtCocycle],
) -> dict[int, ExtCocycle]:
    """Evaluate d2^{p,q} on a cocycle-level element {i: f_i}.

    The output lives in E2^{p+2, q-1} and is indexed the same way.  For
    p in {1, 2} the target sits outside the strip, so the zero element is
    returned; columns outside {0, 1, 2} raise.
    """
    if p not in (0, 1, 2):
        raise DegreeOutOfStrip(f"column {p} outside the strip")
    if p >= 1:
        return {}
    sign = (-1) ** (p + q)
    eE = E.e_class()
    eF = F.e_class()
    out: dict[int, ExtCocycle] = {}
    for i in (0, 1):
        target_src = E.cohomology(i)
        target_dst = F.cohomology(i + q - 1)
        if target_src.is_zero() or target_dst.is_zero():
            continue
        total = zero_cocycle(2, target_src, target_dst)
        f_prev = element.get(i - 1)
        if f_prev is not None and i == 1:
            # f_{i-1} . e_i(E) with e_1(E): H1 -> H0[2]
            total = total.add(compose(f_prev, eE).scale(sign))
        f_cur = element.get(i)
        if f_cur is not None and i + q - 1 == 0 and i + q == 1:
            # e_{i+q}(F) . f_i with e_1(F): H1(F) -> H0(F)[2]
            total = total.add(compose(eF, f_cur).scale(-1))
        out[i] = total
    return {i: c for i, c in out.items() if not c.is_zero_cocycle()}


def _d2_rank(E: TwoTermObject, F: TwoTermObject, q: int) -> int:
    """Rank of d2^{0,q} as a map of cohomology-level spaces."""
    p_field = E.p
    eE = E.e_class()
    eF = F.e_class()
    # source basis: pairs over i of Hom(H^i E, H^{i+q} F)
    images = []
    target_pairs = []
    for i in (0, 1):
        src = E.cohomology(i)
        dst = F.cohomology(i + q)
        if src.is_zero() or dst.is_zero():
            continue
        for f in hom_basis(src, dst):
            parts: dict[int, ExtCocycle] = {}
            sign = (-1) ** q
            # contribution of f_i: output index i (as -e_F . f_i) and
            # output index i+1 (as (-1)^q f_i . e_E)
            if i + q == 1 and not F.cohomology(0).is_zero():
                parts[i] = compose(eF, f).scale(-1)
            if i == 0 and not E.cohomology(1).is_zero():
                out_dst = F.cohomology(q)
                if not out_dst.is_zero():
                    parts[1] = compose(f, eE).scale(sign)
            images.append(parts)
    if not images:
        return 0
    # flatten images into one long vector per source basis element, reduced
    # modulo coboundaries per output slot
    slots = sorted({i for parts in images for i in parts})
    if not slots:
        return 0
    slot_info = {}
    offset = 0
    for i in slots:
        src = E.cohomology(i)
        dst = F.cohomology(i + q - 1)
        data = _ext_data(src, dst)
        n = sum(r * c for r, c in data.c0_shapes)
        slot_info[i] = (offset, n, data)
        offset += n
    total_len = offset
    vecs = []
    for parts in images:
        v = np.zeros(total_len, dtype=np.int64)
        for i, coc in parts.items():
            off, n, _ = slot_info[i]
            v[off : off + n] = coc.flat()
        vecs.append(v)
    img_mat = np.array(vecs, dtype=np.int64)
    # modulo the coboundaries of each slot
    cob_rows = []
    for i in slots:
        off, n, data = slot_info[i]
        cb = data.d1_mat.T
        if cb.shape[0]:
            block = np.zeros((cb.shape[0], total_len), dtype=np.int64)
            block[:, off : off + n] = cb
            cob_rows.append(block)
    if cob_rows:
        cob = np.vstack(cob_rows)
        base = rank(cob, p_field)
        return rank(np.vstack([cob, img_mat]), p_field) - base
    return rank(img_mat, p_field)


def hom_dims_via_E3(E: TwoTermObject, F: TwoTermObject) -> dict[int, int]:
    """Graded Hom dimensions via third-page degeneration.

    Returns the full table over total degrees -1..3; entries are exact
    kernel/cokernel dimension counts of the explicit d2.
    """
    page = second_page(E, F)
    r0 = _d2_rank(E, F, 0)
    r1 = _d2_rank(E, F, 1)
    table = {
        -1: page.dim(0, -1),
        0: (page.dim(0, 0) - r0) + page.dim(1, -1),
        1: (page.dim(0, 1) - r1) + page.dim(1, 0) + (page.dim(2, -1) - r0),
        2: page.dim(1, 1) + (page.dim(2, 0) - r1),
        3: page.dim(2, 1),
    }
    return {n: d for n, d in table.items() if d}


def sphericality_test(E: TwoTermObject) -> bool:
    """Total self-Hom dimension over the heart-window degrees {0, 1, 2} is 2.

    The window restriction is deliberate: it is the reading under which
    consecutive-degree gluings of one simple count as spherical.
    """
    table = hom_dims_via_E3(E, E)
    return sum(table.get(n, 0) for n in (0, 1, 2)) == 2


@dataclass(frozen=True)
class SubquotientReport:
    q: int
    hom_dim: int
    ker_dim: int
    coker_dim: int
    middle_dim: int
    same_object: bool
    passed: bool

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "hom_dim": self.hom_dim,
            "ker_dim": self.ker_dim,
            "coker_dim": self.coker_dim,
            "middle_dim": self.middle_dim,
            "same_object": self.same_object,
            "passed": self.passed,
        }


def subquotient_inequality_check(
    E: TwoTermObject, F: TwoTermObject, q: int
) -> SubquotientReport:
    """Check dim Hom^{1+q} >= dim Ker d2^{0,q+1} + dim Coker d2^{0,q}.

    When E and F are the same object the middle column E2^{1,q} joins the
    right-hand side and the inequality is an equality of graded pieces.
    """
    page = second_page(E, F)
    table = hom_dims_via_E3(E, F)
    hom_dim = table.get(1 + q, 0)
    ker_dim = page.dim(0, q + 1) - _d2_rank(E, F, q + 1)
    coker_dim = page.dim(2, q - 1) - _d2_rank(E, F, q)
    same = E.key() == F.key()
    middle = page.dim(1, q) if same else 0
    rhs = ker_dim + coker_dim + middle
    return SubquotientReport(q, hom_dim, ker_dim, coker_dim, middle, same, hom_dim >= rhs)
