"""Closed-form graded Hom dimensions between pushforward line bundles.

On the resolved A1 surface, Hom^i(O_Z(s), O_Z(t)) depends only on
d = t - s and is pinned by the degeneration of the two-column second page
together with chi = 2.  The closed form lives here, along with the
vanishing clauses and the implication checks for one-degree-concentrated
Hom targets.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from cy2stab.nfcalc import InvalidNormalForm, NormalForm

__all__ = [
    "DegreeOutOfRange",
    "HomDims",
    "hom_dims_line",
    "hom_dims_shifted",
    "vanishing_predicate",
    "ClauseCheck",
    "DifferenceReport",
    "difference_check",
]


class DegreeOutOfRange(ValueError):
    """Cohomological degree outside the 2-Calabi-Yau strip {0, 1, 2}."""


@dataclass(frozen=True)
class HomDims:
    """Dimensions of Hom^0, Hom^1, Hom^2."""

    d0: int
    d1: int
    d2: int

    def __getitem__(self, i: int) -> int:
        return (self.d0, self.d1, self.d2)[i]

    def total(self) -> int:
        return self.d0 + self.d1 + self.d2

    def euler(self) -> int:
        return self.d0 - self.d1 + self.d2

    def to_json(self) -> dict:
        return {"0": self.d0, "1": self.d1, "2": self.d2}


def hom_dims_line(s: int, t: int) -> HomDims:
    """Graded Hom dimensions from O_Z(s) to O_Z(t); depends only on t - s."""
    d = t - s
    return HomDims(
        max(d + 1, 0),
        max(d - 1, 0) + max(-d - 1, 0),
        max(-d + 1, 0),
    )


def hom_dims_shifted(s: int, p: int, t: int, q: int) -> dict[int, int]:
    """Hom^i(O_Z(s)[p], O_Z(t)[q]) as a degree -> dimension map.

    The unshifted table appears at degree i - p + q; support stays inside
    three consecutive degrees.
    """
    base = hom_dims_line(s, t)
    out = {}
    for j in range(3):
        if base[j]:
            out[j + p - q] = base[j]
    return out


_CLAUSES = {
    0: lambda diff: diff > 0,
    1: lambda diff: abs(diff) < 2,
    2: lambda diff: diff < 0,
}


def vanishing_predicate(i: int, s: int, t: int) -> bool:
    """True iff Hom^i(O_Z(s), O_Z(t)) = 0, by the three vanishing clauses.

    (a) i = 0 and s - t > 0; (b) i = 1 and |s - t| < 2; (c) i = 2 and
    s - t < 0.
    """
    if i not in (0, 1, 2):
        raise DegreeOutOfRange(f"degree {i} outside {{0, 1, 2}}")
    return _CLAUSES[i](s - t)


@dataclass(frozen=True)
class ClauseCheck:
    clause: str
    q: int
    s: int
    hypothesis: bool
    conclusion: bool

    @property
    def violated(self) -> bool:
        return self.hypothesis and not self.conclusion

    def to_json(self) -> dict:
        return {
            "clause": self.clause,
            "q": self.q,
            "s": self.s,
            "hypothesis": self.hypothesis,
            "conclusion": self.conclusion,
            "violated": self.violated,
        }


@dataclass(frozen=True)
class DifferenceReport:
    promise_ok: bool
    promise_lower_bounds: dict[int, int]
    checks: tuple[ClauseCheck, ...] = field(default_factory=tuple)

    @property
    def any_violation(self) -> bool:
        return (not self.promise_ok) or any(c.violated for c in self.checks)

    def to_json(self) -> dict:
        return {
            "promise_ok": self.promise_ok,
            "promise_lower_bounds": {
                str(n): v for n, v in sorted(self.promise_lower_bounds.items())
            },
            "checks": [c.to_json() for c in self.checks],
            "any_violation": self.any_violation,
        }


def _second_page_dims(E: NormalForm, t: int) -> dict[tuple[int, int], int]:
    """dim E_2^{p,q'}(E, O_Z(t)) for the single-cohomology target.

    Only the i = -q' summand survives: Hom^p(H^{-q'}(E), O_Z(t)).
    """
    dims: dict[tuple[int, int], int] = {}
    for q, s, mult in E.summands():
        base = hom_dims_line(s, t)
        for p in range(3):
            if base[p]:
                key = (p, -q)
                dims[key] = dims.get(key, 0) + mult * base[p]
    return dims


def _promise_lower_bounds(E: NormalForm, t: int) -> dict[int, int]:
    """Guaranteed-surviving dimension of Hom^n(E, O_Z(t)) per degree n.

    Third-page pieces bound from below: Ker d2 on column 0, all of column
    1, Coker d2 on column 2.  The d2 ranks are unknown without gluing
    data, so kernels and cokernels are bounded by dimension counts.
    """
    e2 = _second_page_dims(E, t)

    def dim(p: int, q: int) -> int:
        return e2.get((p, q), 0)

    degrees = set()
    for (p, q) in e2:
        degrees.add(p + q)
    out = {}
    for n in degrees:
        lb = (
            max(dim(0, n) - dim(2, n - 1), 0)
            + dim(1, n - 1)
            + max(dim(2, n - 2) - dim(0, n - 1), 0)
        )
        if lb:
            out[n] = lb
    return out


def difference_check(E: NormalForm, t: int) -> DifferenceReport:
    """Clause-by-clause audit of a normal form against a one-degree promise.

    The promise states Hom^i(E, O_Z(t)) = 0 unless i = 1.  The report
    first bounds each graded Hom from below via the second page; a
    positive bound in degree n != 1 certifies the promise false.  Then,
    for every summand O_Z(s) of H^q(E): at q != 0 clause (a) demands
    |s - t| < 2; at q = 0 clause (b) (if Hom(H^-1(E), O_Z(t)) = 0)
    demands s - t < 0 and clause (c) (if Hom^2(H^1(E), O_Z(t)) = 0)
    demands s - t > 0.  Violated implications are flagged.
    """
    if not isinstance(E, NormalForm):
        raise InvalidNormalForm(f"not a normal form: {E!r}")

    bounds = _promise_lower_bounds(E, t)
    promise_ok = all(n == 1 for n in bounds)

    comp = E.comp_dict()

    def hom_dim_of_degree(q: int, hom_degree: int) -> int:
        if q not in comp:
            return 0
        f, g = comp[q]
        return f * hom_dims_line(E.v, t)[hom_degree] + g * hom_dims_line(
            E.v - 1, t
        )[hom_degree]

    hyp_b = hom_dim_of_degree(-1, 0) == 0
    hyp_c = hom_dim_of_degree(1, 2) == 0

    checks: list[ClauseCheck] = []
    for q, s, _ in E.summands():
        if q != 0:
            checks.append(ClauseCheck("a", q, s, True, abs(s - t) < 2))
        else:
            checks.append(ClauseCheck("b", q, s, hyp_b, s - t < 0))
            checks.append(ClauseCheck("c", q, s, hyp_c, s - t > 0))

    return DifferenceReport(promise_ok, bounds, tuple(checks))
