"""Filtration engines and verification suites over a finite-length heart.

The engines are generic over a category oracle exposing subobject
enumeration, quotients, graded Hom dimensions, direct sums, isomorphism
tests and K-classes (see ``pimod.PiOracle``).  Charges are the exact
central charges of ``kcharge`` read through the K-dictionary; phases are
exact comparator keys, never floats.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from cy2stab.kcharge import CentralCharge, ExactComplex, PhaseKey, _branch
from cy2stab import spectral as spectral_mod

__all__ = [
    "ChargeDegenerate",
    "NotSemistable",
    "HypothesisViolated",
    "PhasesNotDecreasing",
    "phase_key_of",
    "HNFiltration",
    "hn_filter",
    "JHBlocks",
    "jh_blocks",
    "MukaiReport",
    "mukai_check",
    "ChainReport",
    "inequality_chain_check",
    "Verdict",
    "decomposability_certificate",
    "RigidityReport",
    "rigidity_spherical_audit",
    "TwistLemmaReport",
    "twist_lemma_check",
    "stable_spherical_inventory",
]


class ChargeDegenerate(ValueError):
    """A nonzero heart class left the allowed half-plane or vanished."""


class NotSemistable(ValueError):
    """Jordan-Hoelder machinery needs a semistable input."""


class HypothesisViolated(ValueError):
    """A checker's stated hypotheses do not hold for the instance."""


class PhasesNotDecreasing(ValueError):
    """Phase lists must be strictly decreasing."""


def _phase_key_of_class(Z: CentralCharge, kcls) -> PhaseKey:
    z = Z.eval(kcls)
    if z.is_zero():
        raise ChargeDegenerate(f"charge vanishes on class {kcls}")
    b = _branch(z)
    if b not in (2, 3):
        raise ChargeDegenerate(
            f"class {kcls} maps outside the closed upper half-plane "
            "minus nonnegative reals"
        )
    if b == 3:
        return PhaseKey(Z.rot, 3, Fraction(0))
    return PhaseKey(Z.rot, 2, -z.re / z.im)


def phase_key_of(Z: CentralCharge, cat, M) -> PhaseKey:
    """Exact phase key of a nonzero heart object; branch 2 is the open
    upper half-plane, branch 3 the negative real axis."""
    return _phase_key_of_class(Z, cat.kclass(M))


@dataclass(frozen=True)
class HNFiltration:
    """Semistable factors with strictly decreasing exact phase keys."""

    factors: tuple[tuple[PhaseKey, object], ...]

    def __post_init__(self) -> None:
        keys = [k for k, _ in self.factors]
        if any(keys[i] <= keys[i + 1] for i in range(len(keys) - 1)):
            raise PhasesNotDecreasing("HN phases must strictly decrease")

    def phases(self) -> list[PhaseKey]:
        return [k for k, _ in self.factors]

    def objects(self) -> list:
        return [m for _, m in self.factors]

    def is_semistable(self) -> bool:
        return len(self.factors) == 1


def _max_destabilizer(cat, Z: CentralCharge, M):
    """Subobject with maximal phase, then maximal total dimension; unique.

    Phases only depend on the class, so the scan never builds modules.
    """
    best = None
    best_key = None
    ties = 0
    for pair in cat.list_subobjects(M):
        if pair.total_dim == 0:
            continue
        key = (_phase_key_of_class(Z, cat.pair_kclass(pair)), pair.total_dim)
        if best_key is None or key > best_key:
            best, best_key, ties = pair, key, 1
        elif key == best_key:
            ties += 1
    if best is None:
        raise ChargeDegenerate("no nonzero subobject")
    if ties != 1:
        raise AssertionError("maximal destabilizing subobject is not unique")
    return best, best_key[0]


def hn_filter(cat, Z: CentralCharge, M) -> HNFiltration:
    """Harder-Narasimhan filtration by repeated maximal destabilization.

    The charge must send every nonzero heart class into the closed upper
    half-plane minus the nonnegative reals; the rotation tag only offsets
    the reported keys.
    """
    if cat.is_zero(M):
        return HNFiltration(())
    factors = []
    current = M
    while not cat.is_zero(current):
        pair, key = _max_destabilizer(cat, Z, current)
        sub = cat.sub_module(current, pair)
        factors.append((key, sub))
        if sub.total_dim == current.total_dim:
            break
        current = cat.quotient(current, pair)
    filt = HNFiltration(tuple(factors))
    total = sum(f.total_dim for f in filt.objects())
    if total != M.total_dim:
        raise AssertionError("HN factors do not reassemble the object")
    return filt


def _is_semistable(cat, Z, M) -> bool:
    key = phase_key_of(Z, cat, M)
    for pair in cat.list_subobjects(M):
        if pair.total_dim in (0, M.total_dim):
            continue
        if _phase_key_of_class(Z, cat.pair_kclass(pair)) > key:
            return False
    return True


def _is_stable(cat, Z, M) -> bool:
    """No destabilizer and no proper nonzero subobject of the same phase.

    For semistable M every same-phase subobject is automatically
    semistable, so the scan stays at the class level.
    """
    key = phase_key_of(Z, cat, M)
    seen_semistable = True
    for pair in cat.list_subobjects(M):
        if pair.total_dim in (0, M.total_dim):
            continue
        sub_key = _phase_key_of_class(Z, cat.pair_kclass(pair))
        if sub_key > key:
            return False
        if sub_key == key:
            seen_semistable = False
    return seen_semistable


def _stable_factors(cat, Z, M) -> list:
    """Jordan-Hoelder stable factors of a semistable object, up to iso.

    A minimal same-phase subobject of a semistable object is stable, so
    the recursion peels those off.
    """
    if cat.is_zero(M):
        return []
    key = phase_key_of(Z, cat, M)
    best = None
    for pair in cat.list_subobjects(M):
        if pair.total_dim == 0:
            continue
        if _phase_key_of_class(Z, cat.pair_kclass(pair)) != key:
            continue
        if best is None or pair.total_dim < best.total_dim:
            best = pair
    sub = cat.sub_module(M, best)
    if best.total_dim == M.total_dim:
        return [sub]
    return [sub] + _stable_factors(cat, Z, cat.quotient(M, best))


@dataclass(frozen=True)
class JHBlocks:
    """Maximal isotypic subquotients of one semistable object."""

    phase: PhaseKey
    blocks: tuple
    stable_types: tuple
    hom_certificates: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "blocks": [b.to_json() for b in self.blocks],
            "hom_certificates": list(self.hom_certificates),
        }


def jh_blocks(cat, Z: CentralCharge, M, k: Optional[PhaseKey] = None) -> JHBlocks:
    """Greedy maximal isotypic subobjects A_i of the running quotients.

    Ties between maximal isotypic subobjects of different stable types are
    broken by a fixed total order on iso-classes (dimension vector, then
    canonical matrix encoding).  Certificates: Hom(A_i, B_i) = 0 for each
    running quotient and the block classes sum to [M].
    """
    if cat.is_zero(M):
        raise NotSemistable("zero object has no blocks")
    key = phase_key_of(Z, cat, M)
    if k is not None and k != key:
        raise NotSemistable(f"object has phase {key}, not {k}")
    if not _is_semistable(cat, Z, M):
        raise NotSemistable("object is not semistable")

    blocks = []
    types = []
    certs = []
    current = M
    while not cat.is_zero(current):
        iso_subs: dict[tuple, list] = {}
        type_reps: dict[tuple, object] = {}
        for pair in cat.list_subobjects(current):
            if pair.total_dim == 0:
                continue
            if _phase_key_of_class(Z, cat.pair_kclass(pair)) != key:
                continue
            sub = cat.sub_module(current, pair)
            sf = _stable_factors(cat, Z, sub)
            first = sf[0]
            if all(cat.iso_test(s, first) for s in sf[1:]):
                tk = cat.stable_type_key(first)
                iso_subs.setdefault(tk, []).append(pair)
                type_reps.setdefault(tk, first)
        if not iso_subs:
            raise AssertionError("semistable object with no isotypic subobject")
        candidates = {
            tk: cat.span(current, pairs) for tk, pairs in iso_subs.items()
        }
        maximal = {}
        for tk, span in candidates.items():
            if any(
                other != tk and cat.pair_contains(candidates[other], span)
                and candidates[other].total_dim > span.total_dim
                for other in candidates
            ):
                continue
            maximal[tk] = span
        tk = min(maximal)
        span = maximal[tk]
        block = cat.sub_module(current, span)
        quotient = cat.quotient(current, span)
        certs.append(cat.hom_dims(block, quotient)[0])
        blocks.append(block)
        types.append(type_reps[tk])
        current = quotient
    result = JHBlocks(key, tuple(blocks), tuple(types), tuple(certs))
    if any(c != 0 for c in certs):
        raise AssertionError("Hom(A_i, B_i) != 0: block extraction is wrong")
    total = cat.kclass(M)
    summed = None
    for b in blocks:
        summed = cat.kclass(b) if summed is None else summed + cat.kclass(b)
    if summed != total:
        raise AssertionError("block classes do not sum to the object class")
    return result


@dataclass(frozen=True)
class MukaiReport:
    lhs: int
    rhs: int
    passed: bool

    def to_json(self) -> dict:
        return {"lhs": self.lhs, "rhs": self.rhs, "passed": self.passed}


def mukai_check(cat, A, B, C, witness) -> MukaiReport:
    """Check (A,A)^1 + (C,C)^1 <= (B,B)^1 for a witnessed exact sequence.

    ``witness`` is a subobject pair of B whose submodule must be
    isomorphic to A and whose quotient must be isomorphic to C; the
    hypothesis (A,C)^0 = 0 is enforced.
    """
    sub = cat.sub_module(B, witness)
    quo = cat.quotient(B, witness)
    if not cat.iso_test(sub, A):
        raise HypothesisViolated("witness subobject is not isomorphic to A")
    if not cat.iso_test(quo, C):
        raise HypothesisViolated("witness quotient is not isomorphic to C")
    if cat.hom_dims(A, C)[0] != 0:
        raise HypothesisViolated("(A, C)^0 != 0")
    lhs = cat.hom_dims(A, A)[1] + cat.hom_dims(C, C)[1]
    rhs = cat.hom_dims(B, B)[1]
    return MukaiReport(lhs, rhs, lhs <= rhs)


@dataclass(frozen=True)
class ChainReport:
    self_ext: int
    cohomology_sum: int
    hn_sum: int
    jh_sum: int
    passed: bool

    def to_json(self) -> dict:
        return {
            "self_ext": self.self_ext,
            "cohomology_sum": self.cohomology_sum,
            "hn_sum": self.hn_sum,
            "jh_sum": self.jh_sum,
            "passed": self.passed,
        }


def inequality_chain_check(cat, Z: CentralCharge, E) -> ChainReport:
    """Verify (E,E)^1 >= sum_i (H^i,H^i)^1 >= sum_HN >= sum_JH-blocks.

    ``E`` is either a heart object (single cohomology) or a two-term
    spectral object, in which case the first quantity comes from the
    third-page dimensions.
    """
    if isinstance(E, spectral_mod.TwoTermObject):
        self_ext = spectral_mod.hom_dims_via_E3(E, E).get(1, 0)
        cohs = [E.H0, E.H1]
    else:
        self_ext = cat.hom_dims(E, E)[1]
        cohs = [E]
    cohs = [h for h in cohs if not cat.is_zero(h)]
    coh_sum = sum(cat.hom_dims(h, h)[1] for h in cohs)
    hn_factors = []
    for h in cohs:
        hn_factors.extend(hn_filter(cat, Z, h).objects())
    hn_sum = sum(cat.hom_dims(f, f)[1] for f in hn_factors)
    jh_sum = 0
    for f in hn_factors:
        for block in jh_blocks(cat, Z, f).blocks:
            jh_sum += cat.hom_dims(block, block)[1]
    passed = self_ext >= coh_sum >= hn_sum >= jh_sum
    return ChainReport(self_ext, coh_sum, hn_sum, jh_sum, passed)


@dataclass(frozen=True)
class Verdict:
    decomposable: bool
    gap_index: Optional[int] = None

    def to_json(self) -> dict:
        return {"decomposable": self.decomposable, "gap_index": self.gap_index}


def decomposability_certificate(
    phases: Sequence[Fraction | int | float], n: int = 2
) -> Verdict:
    """Certificate from a phase gap: a gap exceeding n - 1 forces a splitting.

    ``phases`` are exact rationals, strictly decreasing.
    """
    vals = [Fraction(x) for x in phases]
    for i in range(len(vals) - 1):
        if vals[i] <= vals[i + 1]:
            raise PhasesNotDecreasing(f"{vals[i]} <= {vals[i + 1]}")
    for s in range(1, len(vals)):
        if vals[s - 1] - vals[s] > n - 1:
            return Verdict(True, s)
    return Verdict(False, None)


@dataclass(frozen=True)
class RigidityReport:
    rigid: bool
    blocks_checked: int
    blocks_are_stable_multiples: bool
    stable_ext1_parities: tuple[int, ...]
    all_parities_even: bool
    passed: bool

    def to_json(self) -> dict:
        return {
            "rigid": self.rigid,
            "blocks_checked": self.blocks_checked,
            "blocks_are_stable_multiples": self.blocks_are_stable_multiples,
            "stable_ext1_parities": list(self.stable_ext1_parities),
            "all_parities_even": self.all_parities_even,
            "passed": self.passed,
        }


def rigidity_spherical_audit(cat, Z: CentralCharge, E) -> RigidityReport:
    """Audit the rigid-decomposition statement and Ext^1 parity of stables.

    For rigid E every block of every semistable factor must be a multiple
    of a stable spherical object; every stable object encountered must
    have even self-Ext^1.
    """
    rigid = cat.hom_dims(E, E)[1] == 0
    blocks_ok = True
    checked = 0
    parities = []
    for factor in hn_filter(cat, Z, E).objects():
        jh = jh_blocks(cat, Z, factor)
        for block, stype in zip(jh.blocks, jh.stable_types):
            checked += 1
            ext1_stable = cat.hom_dims(stype, stype)[1]
            parities.append(ext1_stable % 2)
            if rigid:
                n = block.total_dim // stype.total_dim
                is_multiple = cat.iso_test(block, cat.multiple(stype, n))
                spherical = sum(cat.hom_dims(stype, stype)) == 2
                if not (is_multiple and spherical):
                    blocks_ok = False
    even = all(p == 0 for p in parities)
    passed = even and (blocks_ok or not rigid)
    return RigidityReport(rigid, checked, blocks_ok, tuple(parities), even, passed)


def stable_spherical_inventory(cat, Z: CentralCharge, universe) -> list:
    """Stable spherical objects among the (iso-class) universe at Z."""
    out = []
    for M in universe:
        if cat.is_zero(M):
            continue
        if sum(cat.hom_dims(M, M)) != 2:
            continue
        if _is_stable(cat, Z, M):
            out.append(M)
    return out


@dataclass(frozen=True)
class TwistLemmaReport:
    hypotheses: dict
    window_checked: bool
    window_holds: bool
    nonsemistable_checked: bool
    nonsemistable_holds: bool
    zero_h0_checked: bool
    zero_h0_holds: bool
    kclass_certified: bool
    passed: bool

    def to_json(self) -> dict:
        return {
            "hypotheses": self.hypotheses,
            "window": [self.window_checked, self.window_holds],
            "nonsemistable": [self.nonsemistable_checked, self.nonsemistable_holds],
            "zero_h0": [self.zero_h0_checked, self.zero_h0_holds],
            "kclass_certified": self.kclass_certified,
            "passed": self.passed,
        }


def twist_lemma_check(
    cat,
    Z: CentralCharge,
    E,
    F,
    universe: Optional[Sequence] = None,
) -> TwistLemmaReport:
    """Check the twist conclusions for a stable spherical E at the window top.

    ``E`` is a module whose charge lies on the negative real axis, playing
    the phase-zero object after a one-step shift; ``F`` is a heart object
    with semistable factors strictly inside the window.  The inverse twist
    G = T_E^{-1}(F) is computed in the model and the conclusions are read
    off its filtration:

    * window membership: G has no piece in degree -1 and any degree-1
      piece is semistable at the window top;
    * non-semistability in the twisted condition (when the phase and
      nonvanishing hypotheses hold): G is not semistable;
    * vanishing of the twisted phase-zero factor (when F is spherical and
      stable sphericals of equal phases are isomorphic over ``universe``):
      the degree-1 piece has no window-top factor.
    """
    key_E = phase_key_of(Z, cat, E)
    if key_E.branch != 3:
        raise HypothesisViolated("Z(E) must be a negative real (window top)")
    if sum(cat.hom_dims(E, E)) != 2:
        raise HypothesisViolated("E is not spherical")
    if not _is_stable(cat, Z, E):
        raise HypothesisViolated("E is not stable")
    if cat.is_zero(F):
        raise HypothesisViolated("F is zero")

    hn_F = hn_filter(cat, Z, F)
    f_in_window = all(k.branch == 2 for k in hn_F.phases())
    if not f_in_window:
        raise HypothesisViolated("F has a factor at the window top")

    f_semistable = hn_F.is_semistable()
    hom_EF = cat.hom_dims(E, F)[1]  # Hom(E[-1], F) in the ambient category
    cor_applies = f_semistable and hom_EF != 0

    cor2_applies = False
    condition_b = None
    if cor_applies and sum(cat.hom_dims(F, F)) == 2:
        if universe is not None:
            stables = stable_spherical_inventory(cat, Z, universe)
            condition_b = True
            for i in range(len(stables)):
                for j in range(i + 1, len(stables)):
                    ki = phase_key_of(Z, cat, stables[i])
                    kj = phase_key_of(Z, cat, stables[j])
                    if ki == kj and not cat.iso_test(stables[i], stables[j]):
                        condition_b = False
            cor2_applies = condition_b
    hypotheses = {
        "hom_F_E_vanishes": True,  # negative-degree Hom of heart objects
        "f_strictly_inside_window": f_in_window,
        "f_semistable": f_semistable,
        "hom_E_F_nonzero": hom_EF != 0,
        "f_spherical": sum(cat.hom_dims(F, F)) == 2,
        "condition_b": condition_b,
    }

    g_minus, g_zero, g_plus = cat.twist_inverse(E, F)

    twisted_class = cat.kclass(F) - cat.kclass(E).scale(
        _euler(cat, E, F)
    )
    got_class = -cat.kclass(g_minus) + cat.kclass(g_zero) - cat.kclass(g_plus)
    kclass_ok = got_class == twisted_class

    plus_keys = (
        hn_filter(cat, Z, g_plus).phases() if not cat.is_zero(g_plus) else []
    )
    window_holds = cat.is_zero(g_minus) and all(k.branch == 3 for k in plus_keys)

    pieces = [m for m in (g_minus, g_zero, g_plus) if not cat.is_zero(m)]
    if len(pieces) != 1:
        g_semistable = False
    else:
        g_semistable = hn_filter(cat, Z, pieces[0]).is_semistable()
    nonsemi_holds = not g_semistable

    zero_h0_holds = all(k.branch != 3 for k in plus_keys)

    passed = (
        window_holds
        and (not cor_applies or nonsemi_holds)
        and (not cor2_applies or zero_h0_holds)
    )
    return TwistLemmaReport(
        hypotheses=hypotheses,
        window_checked=True,
        window_holds=window_holds,
        nonsemistable_checked=cor_applies,
        nonsemistable_holds=nonsemi_holds,
        zero_h0_checked=cor2_applies,
        zero_h0_holds=zero_h0_holds,
        kclass_certified=kclass_ok,
        passed=passed,
    )


def _euler(cat, M, N) -> int:
    d = cat.hom_dims(M, N)
    return d[0] - d[1] + d[2]
