import itertools
import random
from fractions import Fraction

import numpy as np
import pytest

from cy2stab import heartlab as hl
from cy2stab import pimod, spectral, universe
from cy2stab.kcharge import CentralCharge, ExactComplex


P = 3


def charge_simple_values(z_s0: ExactComplex, z_s1: ExactComplex) -> CentralCharge:
    """Charge with prescribed exact values on the two simple classes."""
    return CentralCharge(z_s1, z_s0 + z_s1)


Z_SPLIT = charge_simple_values(ExactComplex.of(1, 1), ExactComplex.of(-1, 1))
Z_SWAP = charge_simple_values(ExactComplex.of(-1, 1), ExactComplex.of(1, 1))


def ext_module(p=P):
    one = np.array([[1]], dtype=np.int64)
    zero = np.zeros((1, 1), dtype=np.int64)
    return pimod.PiModule(p, one, zero.copy(), zero.copy(), zero.copy())


@pytest.fixture(scope="module")
def cat():
    return pimod.PiOracle(P)


class TestHN:
    def test_charge_values(self, cat):
        s0, s1 = cat.simples()
        assert Z_SPLIT.eval(cat.kclass(s0)) == ExactComplex.of(1, 1)
        assert Z_SPLIT.eval(cat.kclass(s1)) == ExactComplex.of(-1, 1)

    def test_semistable_single_factor(self, cat):
        s0, _ = cat.simples()
        filt = hl.hn_filter(cat, Z_SPLIT, s0)
        assert filt.is_semistable()
        assert filt.objects()[0] == s0

    def test_destabilized_extension(self, cat):
        m = ext_module()
        filt = hl.hn_filter(cat, Z_SPLIT, m)
        dims = [f.dims for f in filt.objects()]
        assert dims == [(0, 1), (1, 0)]  # S_1 on top, then S_0
        approx = [k.approx() for k in filt.phases()]
        assert abs(approx[0] - 0.75) < 1e-9 and abs(approx[1] - 0.25) < 1e-9

    def test_swapped_charge_is_stable(self, cat):
        m = ext_module()
        filt = hl.hn_filter(cat, Z_SWAP, m)
        assert filt.is_semistable()
        assert hl._is_stable(cat, Z_SWAP, m)

    def test_phases_strictly_decrease_and_no_backward_homs(self, cat, universe22_nonzero, charge_grid_100):
        for Z in charge_grid_100[:10]:
            for m in universe22_nonzero:
                filt = hl.hn_filter(cat, Z, m)
                keys = filt.phases()
                objs = filt.objects()
                for i in range(len(keys) - 1):
                    assert keys[i] > keys[i + 1]
                for i in range(len(objs)):
                    for j in range(i + 1, len(objs)):
                        assert cat.hom_dims(objs[i], objs[j])[0] == 0

    def test_factor_classes_reassemble(self, cat, universe22_nonzero):
        for m in universe22_nonzero[::5]:
            filt = hl.hn_filter(cat, Z_SPLIT, m)
            total = None
            for f in filt.objects():
                total = cat.kclass(f) if total is None else total + cat.kclass(f)
            assert total == cat.kclass(m)

    def test_order_insensitive_to_enumeration(self, cat):
        class ShuffledOracle:
            def __init__(self, inner, seed):
                self._inner = inner
                self._rng = random.Random(seed)

            def list_subobjects(self, M):
                subs = list(self._inner.list_subobjects(M))
                self._rng.shuffle(subs)
                return subs

            def __getattr__(self, name):
                return getattr(self._inner, name)

        m = ext_module()
        base = hl.hn_filter(cat, Z_SPLIT, m)
        for seed in range(5):
            shuffled = hl.hn_filter(ShuffledOracle(cat, seed), Z_SPLIT, m)
            assert [f.dims for f in shuffled.objects()] == [
                f.dims for f in base.objects()
            ]
            for a, b in zip(shuffled.objects(), base.objects()):
                assert cat.iso_test(a, b)

    def test_degenerate_charge_rejected(self, cat):
        bad = charge_simple_values(ExactComplex.of(1, 0), ExactComplex.of(0, 1))
        with pytest.raises(hl.ChargeDegenerate):
            hl.hn_filter(cat, bad, pimod.S0(P))


class TestJH:
    def test_isotypic_multiple_is_one_block(self, cat):
        s0, _ = cat.simples()
        jh = hl.jh_blocks(cat, Z_SPLIT, pimod.multiple(s0, 2))
        assert len(jh.blocks) == 1
        assert jh.blocks[0].dims == (2, 0)

    def test_equal_phase_split_gives_two_blocks(self, cat):
        s0, s1 = cat.simples()
        Z = charge_simple_values(ExactComplex.of(1, 1), ExactComplex.of(2, 2))
        jh = hl.jh_blocks(cat, Z, pimod.direct_sum(s0, s1))
        assert len(jh.blocks) == 2
        assert all(c == 0 for c in jh.hom_certificates)

    def test_class_sum_and_certificates_sweep(self, cat, universe22_nonzero, charge_grid_100):
        for Z in charge_grid_100[:5]:
            for m in universe22_nonzero[::3]:
                for k, f in hl.hn_filter(cat, Z, m).factors:
                    jh = hl.jh_blocks(cat, Z, f)
                    total = None
                    for b in jh.blocks:
                        total = cat.kclass(b) if total is None else total + cat.kclass(b)
                    assert total == cat.kclass(f)
                    assert all(c == 0 for c in jh.hom_certificates)

    def test_not_semistable_rejected(self, cat):
        with pytest.raises(hl.NotSemistable):
            hl.jh_blocks(cat, Z_SPLIT, ext_module())

    def test_isotypic_blocks_are_multiples(self, cat, universe22_nonzero):
        for m in universe22_nonzero[::7]:
            for k, f in hl.hn_filter(cat, Z_SPLIT, m).factors:
                jh = hl.jh_blocks(cat, Z_SPLIT, f)
                for block, stype in zip(jh.blocks, jh.stable_types):
                    sf = hl._stable_factors(cat, Z_SPLIT, block)
                    assert all(cat.iso_test(x, sf[0]) for x in sf)


class TestMukai:
    def test_extension_instance(self, cat):
        s0, s1 = cat.simples()
        m = ext_module()
        witness = next(
            pair for pair in cat.list_subobjects(m) if pair.dims == (0, 1)
        )
        rep = hl.mukai_check(cat, s1, m, s0, witness)
        assert rep.passed and rep.lhs == 0 and rep.rhs == 2

    def test_degenerate_whole_object(self, cat):
        s0, _ = cat.simples()
        witness = next(
            pair for pair in cat.list_subobjects(s0) if pair.total_dim == 1
        )
        rep = hl.mukai_check(cat, s0, s0, pimod.zero_module(P), witness)
        assert rep.passed

    def test_hypothesis_violated(self, cat):
        s0, s1 = cat.simples()
        m = pimod.direct_sum(s0, s0)
        witness = next(
            pair for pair in cat.list_subobjects(m) if pair.total_dim == 1
        )
        with pytest.raises(hl.HypothesisViolated):
            hl.mukai_check(cat, s0, m, s0, witness)  # (A, C)^0 != 0

    def test_sweep_dims_22(self, cat, universe22_nonzero):
        checked = 0
        for b in universe22_nonzero:
            for pair in cat.list_subobjects(b):
                if pair.total_dim in (0, b.total_dim):
                    continue
                a, c = pimod.sub_quotient(b, pair)
                if cat.hom_dims(a, c)[0] != 0:
                    continue
                assert hl.mukai_check(cat, a, b, c, pair).passed
                checked += 1
        assert checked > 100


class TestInequalityChain:
    def test_semistable_collapse(self, cat):
        s0, _ = cat.simples()
        rep = hl.inequality_chain_check(cat, Z_SPLIT, s0)
        assert rep.passed and rep.self_ext == rep.cohomology_sum == 0

    def test_destabilized_extension(self, cat):
        rep = hl.inequality_chain_check(cat, Z_SPLIT, ext_module())
        assert rep.passed
        assert rep.self_ext == 2 and rep.hn_sum == 0 and rep.jh_sum == 0

    def test_two_term_object(self, cat):
        s0, s1 = cat.simples()
        E = spectral.TwoTermObject(s0, s1)
        rep = hl.inequality_chain_check(cat, Z_SPLIT, E)
        assert rep.passed

    def test_sweep(self, cat, universe22_nonzero, charge_grid_100):
        for Z in charge_grid_100[:4]:
            for m in universe22_nonzero[::4]:
                assert hl.inequality_chain_check(cat, Z, m).passed


class TestDecomposability:
    def test_wide_gap(self):
        v = hl.decomposability_certificate([Fraction(5, 2), Fraction(1)])
        assert v.decomposable and v.gap_index == 1

    def test_narrow_gaps(self):
        assert not hl.decomposability_certificate([Fraction(1), Fraction(1, 2)]).decomposable

    def test_single_phase(self):
        assert not hl.decomposability_certificate([Fraction(0)]).decomposable

    def test_not_decreasing(self):
        with pytest.raises(hl.PhasesNotDecreasing):
            hl.decomposability_certificate([Fraction(1), Fraction(1)])


class TestRigidity:
    def test_simple_rigid(self, cat):
        s0, _ = cat.simples()
        rep = hl.rigidity_spherical_audit(cat, Z_SPLIT, s0)
        assert rep.rigid and rep.passed and rep.blocks_checked == 1

    def test_multiple_of_simple(self, cat):
        s0, _ = cat.simples()
        rep = hl.rigidity_spherical_audit(cat, Z_SPLIT, pimod.multiple(s0, 2))
        assert rep.rigid and rep.passed

    def test_parity_sweep(self, cat, universe22_nonzero, charge_grid_100):
        for Z in charge_grid_100[:4]:
            for m in universe22_nonzero[::6]:
                rep = hl.rigidity_spherical_audit(cat, Z, m)
                assert rep.all_parities_even
                assert rep.passed


class TestStableInventory:
    def test_simples_always_stable(self, cat, universe22_nonzero):
        stables = hl.stable_spherical_inventory(cat, Z_SPLIT, universe22_nonzero)
        dims = {s.dims for s in stables}
        assert (1, 0) in dims and (0, 1) in dims

    def test_stables_have_even_ext1(self, cat, universe22_nonzero, charge_grid_100):
        for Z in charge_grid_100[:3]:
            for m in universe22_nonzero:
                if hl._is_stable(cat, Z, m):
                    assert cat.hom_dims(m, m)[1] % 2 == 0


def top_charge(vertex: int, c=Fraction(1), w=ExactComplex.of(0, 1)) -> CentralCharge:
    vals = {vertex: ExactComplex.of(-c, 0), 1 - vertex: w}
    return charge_simple_values(vals[0], vals[1])


class TestTwistLemma:
    def test_window_membership_basic(self, cat):
        s0, s1 = cat.simples()
        Z = top_charge(0)
        rep = hl.twist_lemma_check(cat, Z, s0, s1)
        assert rep.window_holds and rep.passed and rep.kclass_certified
        assert rep.nonsemistable_checked and rep.nonsemistable_holds

    def test_extension_not_semistable_after_twist(self, cat):
        s0, _ = cat.simples()
        Z = top_charge(0)
        F = ext_module()
        rep = hl.twist_lemma_check(cat, Z, s0, F)
        if rep.nonsemistable_checked:
            assert rep.nonsemistable_holds
        assert rep.passed

    def test_spherical_target_no_window_top_factor(self, cat, universe22_nonzero):
        s0, s1 = cat.simples()
        Z = top_charge(0)
        rep = hl.twist_lemma_check(cat, Z, s0, s1, universe=universe22_nonzero)
        assert rep.zero_h0_checked and rep.zero_h0_holds

    def test_lemma_only_instance(self, cat):
        s0, s1 = cat.simples()
        eu = pimod.twist_simple(s1, s0)[1]
        Z = top_charge(1)
        rep = hl.twist_lemma_check(cat, Z, s1, eu)
        assert rep.window_holds and rep.passed
        assert not rep.nonsemistable_checked  # Hom(E, F) = 0 here

    def test_hypothesis_failures_raise(self, cat):
        s0, s1 = cat.simples()
        with pytest.raises(hl.HypothesisViolated):
            hl.twist_lemma_check(cat, Z_SPLIT, s0, s1)  # E not at the top
        Z = top_charge(0)
        with pytest.raises(hl.HypothesisViolated):
            hl.twist_lemma_check(cat, Z, s0, pimod.multiple(s0, 1))  # F at the top

    def test_instance_family_passes(self, cat):
        instances = universe.twist_lemma_instances(P, seed=1, minimum=20)
        assert len(instances) >= 20
        for Z, E, F, univ in instances[:25]:
            rep = hl.twist_lemma_check(cat, Z, E, F, universe=univ)
            assert rep.passed and rep.kclass_certified
