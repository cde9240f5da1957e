"""Certified reduction of admissible line-bundle pairs to the standard pair.

A pair (E, F) = (O_Z(m)[l], O_Z(n)[k]) with graded Homs concentrated in
degree one admits a word in line-bundle twists and shifts carrying it to
{O_Z, O_Z(-1)[1]}.  Concentration forces exactly one of two shapes:
m = n - 1 with l = k + 1, or n = m - 1 with l = k - 1.  The reduction
normalizes the shift, rewrites the second shape into the first, walks the
twist level into {0, 1} by the composite twists that act as tensoring by
O_Z(-2) or O_Z(2), and finishes with at most one twist.  Every step is
certified against the K-calculus and the Hom tables.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Sequence

from cy2stab.homtable import hom_dims_shifted
from cy2stab.kcharge import KClass, class_of_line_bundle
from cy2stab.nfcalc import (
    TENSOR_DOWN_FLAG,
    TENSOR_UP_FLAG,
    Generator,
    NormalForm,
    Shift,
    Tw,
    TwInv,
    length,
    line_nf,
    shift as nf_shift,
    twist_line_on_line,
    word_on_K,
    word_to_json,
)

__all__ = [
    "InadmissiblePair",
    "UnsupportedInstance",
    "LinePair",
    "PairCase",
    "classify_pair",
    "normalize_level",
    "finalize",
    "TraceStep",
    "ReductionTrace",
    "reduce_pair",
    "LemmaTTInstance",
    "LemmaTTReport",
    "lemma_tt_certify",
]


class InadmissiblePair(ValueError):
    """Graded Homs are not concentrated in degree one."""


class UnsupportedInstance(ValueError):
    """The model cannot realize or decide the instance."""


@dataclass(frozen=True)
class LinePair:
    """E = O_Z(m)[l] and F = O_Z(n)[k]."""

    m: int
    l: int
    n: int
    k: int

    def hom_tables(self) -> tuple[dict[int, int], dict[int, int]]:
        return (
            hom_dims_shifted(self.m, self.l, self.n, self.k),
            hom_dims_shifted(self.n, self.k, self.m, self.l),
        )

    def is_admissible(self) -> bool:
        fwd, bwd = self.hom_tables()
        return set(fwd) == {1} and set(bwd) == {1}

    def validate(self) -> None:
        if not self.is_admissible():
            raise InadmissiblePair(
                f"Hom(E, F) of {self} is not concentrated in degree 1"
            )

    def level(self) -> int:
        """Twist level v of the underlying pair {O(v), O(v-1)[1]} up to shift."""
        return max(self.m, self.n)

    def classes(self) -> tuple[KClass, KClass]:
        return (
            class_of_line_bundle(self.m, self.l),
            class_of_line_bundle(self.n, self.k),
        )

    def members(self) -> tuple[NormalForm, NormalForm]:
        return line_nf(self.m, self.l), line_nf(self.n, self.k)

    def to_json(self) -> dict:
        return {"E": f"O({self.m})[{self.l}]", "F": f"O({self.n})[{self.k}]"}


class PairCase(enum.Enum):
    M_EQ_N_MINUS_1_L1 = "m = n - 1 and l - k = 1"
    N_EQ_M_MINUS_1_Lm1 = "n = m - 1 and l - k = -1"


def classify_pair(p: LinePair) -> PairCase:
    """Admissible case of the pair, re-derived from the Hom tables.

    The shape test on (m, n, l, k) and the degree-concentration test must
    agree; a pair fitting neither shape is inadmissible, matching the
    impossibility of m = n.
    """
    p.validate()
    if p.m == p.n - 1 and p.l - p.k == 1:
        case = PairCase.M_EQ_N_MINUS_1_L1
        expected_degree_fwd = 1
    elif p.n == p.m - 1 and p.l - p.k == -1:
        case = PairCase.N_EQ_M_MINUS_1_Lm1
        expected_degree_fwd = 1
    else:
        raise InadmissiblePair(f"{p} fits neither admissible shape")
    fwd, _ = p.hom_tables()
    if set(fwd) != {expected_degree_fwd}:
        raise InadmissiblePair(f"{p}: Hom table contradicts the shape test")
    return case


@dataclass(frozen=True)
class TraceStep:
    generators: tuple[Generator, ...]
    flag: Optional[str]
    pair_before: LinePair
    pair_after: LinePair
    classes_before: tuple[KClass, KClass]
    classes_after: tuple[KClass, KClass]
    hom_before: dict[int, int]
    hom_after: dict[int, int]
    l_values: tuple[int, int]
    certified: bool

    def to_json(self) -> dict:
        return {
            "generators": word_to_json(self.generators),
            "flag": self.flag,
            "pair_before": self.pair_before.to_json(),
            "pair_after": self.pair_after.to_json(),
            "classes_before": [c.to_json() for c in self.classes_before],
            "classes_after": [c.to_json() for c in self.classes_after],
            "hom_before": {str(d): v for d, v in sorted(self.hom_before.items())},
            "hom_after": {str(d): v for d, v in sorted(self.hom_after.items())},
            "l_values": list(self.l_values),
            "certified": self.certified,
        }


@dataclass(frozen=True)
class ReductionTrace:
    steps: tuple[TraceStep, ...]
    final_pair: LinePair
    swapped: bool

    @property
    def word(self) -> tuple[Generator, ...]:
        out: list[Generator] = []
        for s in self.steps:
            out.extend(s.generators)
        return tuple(out)

    @property
    def word_length(self) -> int:
        return len(self.word)

    def final_classes(self) -> tuple[KClass, KClass]:
        return self.final_pair.classes()

    def to_json(self) -> dict:
        return {
            "steps": [s.to_json() for s in self.steps],
            "word": word_to_json(self.word),
            "final_pair": self.final_pair.to_json(),
            "swapped": self.swapped,
        }


def _apply_word_to_pair(
    p: LinePair, gens: Sequence[Generator], flag: Optional[str]
) -> LinePair:
    """Object-level effect of one certified step on both members."""
    if flag in (TENSOR_DOWN_FLAG, TENSOR_UP_FLAG):
        d = -2 if flag == TENSOR_DOWN_FLAG else 2
        return LinePair(p.m + d, p.l, p.n + d, p.k)
    if len(gens) == 1 and isinstance(gens[0], Shift):
        j = gens[0].n
        return LinePair(p.m, p.l + j, p.n, p.k + j)
    if len(gens) == 1 and isinstance(gens[0], Tw):
        t = gens[0].t
        e = twist_line_on_line(t, p.m, p.l).as_line()
        f = twist_line_on_line(t, p.n, p.k).as_line()
        return LinePair(e[0], e[1], f[0], f[1])
    raise UnsupportedInstance(f"unsupported step {gens}")


def _make_step(p: LinePair, gens: tuple[Generator, ...], flag: Optional[str]) -> tuple[TraceStep, LinePair]:
    after = _apply_word_to_pair(p, gens, flag)
    before_classes = p.classes()
    after_classes = after.classes()
    certified = tuple(word_on_K(gens, c) for c in before_classes) == after_classes
    after.validate()
    step = TraceStep(
        generators=gens,
        flag=flag,
        pair_before=p,
        pair_after=after,
        classes_before=before_classes,
        classes_after=after_classes,
        hom_before=p.hom_tables()[0],
        hom_after=after.hom_tables()[0],
        l_values=(1, 1),
        certified=certified,
    )
    if not certified:
        raise AssertionError(f"step {gens} failed K-certification")
    return step, after


def normalize_level(p: LinePair) -> tuple[LinePair, list[TraceStep]]:
    """Walk the twist level into {0, 1} by composite twists.

    Downward steps are [Tw(v), Tw(v-1)] (tensor by O(-2)); upward steps
    are [TwInv(v+1), TwInv(v+2)] (tensor by O(2)).  Levels move by two,
    so parity picks the endpoint.
    """
    classify_pair(p)
    steps: list[TraceStep] = []
    current = p
    while current.level() >= 2:
        v = current.level()
        step, current = _make_step(
            current, (Tw(v), Tw(v - 1)), TENSOR_DOWN_FLAG
        )
        steps.append(step)
    while current.level() <= -1:
        v = current.level()
        step, current = _make_step(
            current, (TwInv(v + 1), TwInv(v + 2)), TENSOR_UP_FLAG
        )
        steps.append(step)
    return current, steps


def finalize(p: LinePair) -> tuple[LinePair, list[TraceStep], bool]:
    """Finish a level-{0,1} pair: shift to k = 0, fold the second shape
    into the first, and apply the single twist at level one.

    Returns the final pair, the steps, and whether the standard objects
    ended up in the (F, E) slots (orientation swap).
    """
    case = classify_pair(p)
    if p.level() not in (0, 1):
        raise InadmissiblePair(f"finalize needs level 0 or 1, got {p.level()}")
    steps: list[TraceStep] = []
    current = p
    if current.k != 0:
        step, current = _make_step(current, (Shift(-current.k),), "shift")
        steps.append(step)
    swapped = False
    if case is PairCase.N_EQ_M_MINUS_1_Lm1:
        step, current = _make_step(current, (Shift(1),), "shift")
        steps.append(step)
        # now {E, F} = {O(m)[0], O(m-1)[1]}: the roles of the shapes swap
        swapped = True
    v = current.level()
    if v == 1:
        step, current = _make_step(current, (Tw(0),), "twist")
        steps.append(step)
    return current, steps, swapped


def reduce_pair(p: LinePair) -> ReductionTrace:
    """Full certified reduction; the final class multiset is the standard one."""
    leveled, steps = normalize_level(p)
    final, more, swapped = finalize(leveled)
    steps = steps + more
    classes = set()
    for c in final.classes():
        classes.add((c.a, c.b))
    if classes != {(1, 0), (-1, 1)}:
        raise AssertionError(f"reduction ended at {final}, not the standard pair")
    e_is_standard_first = final.classes()[0] == KClass(1, 0)
    return ReductionTrace(tuple(steps), final, not e_is_standard_first)


# ---------------------------------------------------------------------------
# length-descent certification in the module model


@dataclass(frozen=True)
class LemmaTTInstance:
    """Concrete model instance for the length-descent step.

    ``pieces`` lists (cohomological degree q, module) summands whose
    direct sum of shifts realizes the object; ``claimed_nf`` is its
    line-bundle normal form; F is the shift of a single line bundle
    O_Z(t)[f_shift] giving the twist parameter t.
    """

    pieces: tuple[tuple[int, object], ...]
    claimed_nf: NormalForm
    t: int
    f_shift: int = 0


@dataclass(frozen=True)
class LemmaTTReport:
    case: str
    prescribed_twist: int
    nf_before: NormalForm
    nf_after: NormalForm
    l_before: int
    l_after: int
    f_l_before: int
    f_l_after: int
    precondition_failure: Optional[str]
    passed: bool

    def to_json(self) -> dict:
        return {
            "case": self.case,
            "prescribed_twist": self.prescribed_twist,
            "nf_before": self.nf_before.to_json() if self.nf_before else None,
            "nf_after": self.nf_after.to_json() if self.nf_after else None,
            "l_before": self.l_before,
            "l_after": self.l_after,
            "f_l": [self.f_l_before, self.f_l_after],
            "precondition_failure": self.precondition_failure,
            "passed": self.passed,
        }


def _line_catalog(p: int, bound: int = 5):
    """Iso-class catalog (module, base normal form at degree zero)."""
    from cy2stab import pimod

    catalog = []
    for t in range(-bound, bound + 1):
        res = pimod.realize_line_bundle(t, p, bound)
        if isinstance(res, pimod.Unsupported):
            continue
        catalog.append((res.module, line_nf(t, -res.shift)))
    # the distance-one twist objects: glued two-level modules
    s0, s1 = pimod.S0(p), pimod.S1(p)
    eu = pimod.twist_simple(s1, s0)[1]
    catalog.append((eu, twist_line_on_line(0, -1, 1)))
    return catalog


def _nf_of_pieces(pieces, p: int) -> NormalForm:
    """Normal form of a sum of shifted modules via summand matching."""
    from cy2stab import pimod

    catalog = _line_catalog(p)
    counts: dict[tuple[int, int], int] = {}
    for q, module in pieces:
        if module.is_zero():
            continue
        for summand in pimod.indecomposable_summands(module):
            matched = None
            for cand, base_nf in catalog:
                if summand.dims == cand.dims and pimod.iso_test(summand, cand):
                    matched = base_nf
                    break
            if matched is None:
                raise UnsupportedInstance(
                    f"summand of dims {summand.dims} is not a cataloged object"
                )
            for qq, t, mult in nf_shift(matched, -q).summands():
                counts[(qq, t)] = counts.get((qq, t), 0) + mult
    if not counts:
        raise UnsupportedInstance("object is zero")
    levels = sorted({t for (_, t) in counts})
    if len(levels) > 2 or (len(levels) == 2 and levels[1] - levels[0] != 1):
        raise UnsupportedInstance(f"levels {levels} are not one or two adjacent")
    v = levels[-1]
    comps: dict[int, list[int]] = {}
    for (qq, t), mult in counts.items():
        fg = comps.setdefault(qq, [0, 0])
        fg[0 if t == v else 1] += mult
    return NormalForm.make(v, {q: tuple(fg) for q, fg in comps.items()})


def lemma_tt_certify(instance: LemmaTTInstance) -> LemmaTTReport:
    """Apply the prescribed twist in the model and verify the length drop.

    The prescribed twist is by O_Z(t) when the levels are {t+1, t} and by
    O_Z(t-1) when they are {t, t-1}; only twists by O_Z(0) and O_Z(-1)
    are realizable through the simples, anything else is unsupported.
    """
    from cy2stab import pimod

    pieces = instance.pieces
    if not pieces:
        raise UnsupportedInstance("empty instance")
    p = pieces[0][1].p
    nf = _nf_of_pieces(pieces, p)
    if nf != instance.claimed_nf:
        raise UnsupportedInstance(
            f"claimed normal form {instance.claimed_nf} does not match {nf}"
        )
    l_before = length(nf)
    t = instance.t
    failure = None
    if l_before <= 1:
        failure = "l(E) <= 1"
    levels = nf.levels()
    if failure is None and any(abs(s - t) >= 2 for s in levels):
        failure = "a summand twist is at distance >= 2 from t"
    if failure is not None:
        return LemmaTTReport(
            "", 0, nf, nf, l_before, l_before, 1, 1, failure, False
        )
    if levels <= {t + 1, t} and (t + 1) in levels:
        case, tau = "upper", t
    elif levels <= {t, t - 1}:
        case, tau = "lower", t - 1
    else:
        raise UnsupportedInstance(f"levels {levels} fit neither case for t={t}")
    if tau == 0:
        s_twist = pimod.S1(p)
    elif tau == -1:
        s_twist = pimod.S0(p)
    else:
        raise UnsupportedInstance(
            f"prescribed twist O({tau}) is not realizable through the simples"
        )

    out_pieces: dict[int, list] = {}
    for q, module in pieces:
        hm, h0, hp = pimod.twist_simple(s_twist, module)
        for dq, piece in ((-1, hm), (0, h0), (1, hp)):
            if not piece.is_zero():
                out_pieces.setdefault(q + dq, []).append(piece)
    merged = tuple(
        (q, pimod.direct_sum(*mods)) for q, mods in sorted(out_pieces.items())
    )
    nf_after = _nf_of_pieces(merged, p)
    l_after = length(nf_after)

    f_after_nf = twist_line_on_line(tau, t, instance.f_shift)
    f_l_after = length(f_after_nf)

    passed = l_after < l_before and f_l_after == 1
    return LemmaTTReport(
        case,
        tau,
        nf,
        nf_after,
        l_before,
        l_after,
        1,
        f_l_after,
        None,
        passed,
    )
