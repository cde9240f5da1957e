import itertools
import random

import numpy as np
import pytest

from cy2stab import pimod, spectral
from cy2stab.kcharge import euler_form


P = 3


@pytest.fixture(scope="module")
def parts():
    s0, s1 = pimod.S0(P), pimod.S1(P)
    m_a = pimod.PiModule(
        P,
        np.array([[1]], dtype=np.int64),
        np.zeros((1, 1), dtype=np.int64),
        np.zeros((1, 1), dtype=np.int64),
        np.zeros((1, 1), dtype=np.int64),
    )
    m_b = pimod.PiModule(
        P,
        np.zeros((1, 1), dtype=np.int64),
        np.zeros((1, 1), dtype=np.int64),
        np.array([[1]], dtype=np.int64),
        np.zeros((1, 1), dtype=np.int64),
    )
    return s0, s1, m_a, m_b


def _sweep_objects(parts):
    """Two-term objects with parts among the simples and (1,1) modules."""
    s0, s1, m_a, m_b = parts
    zero = pimod.zero_module(P)
    pieces = [zero, s0, s1, m_a, m_b]
    out = []
    for h0, h1 in itertools.product(pieces, repeat=2):
        if h0.is_zero() and h1.is_zero():
            continue
        reps = pimod.ext2_basis(h1, h0)
        choices = [None] + reps[:1]
        for e in choices:
            out.append(spectral.TwoTermObject(h0, h1, e))
    return out


class TestSecondPage:
    def test_strip(self, parts):
        for E in _sweep_objects(parts):
            for F in _sweep_objects(parts)[:10]:
                page = spectral.second_page(E, F)
                assert all(0 <= p <= 2 for (p, _), _ in page.dims)

    def test_glued_needs_matching_class(self, parts):
        s0, s1, _, _ = parts
        e = pimod.ext2_basis(s0, s0)[0]
        with pytest.raises(ValueError):
            spectral.TwoTermObject(s1, s0, e)
        with pytest.raises(ValueError):
            bad = pimod.ext1_basis(s0, s0 if False else s1)  # degree-1 cocycle
            spectral.TwoTermObject(s1, s0, bad[0] if bad else None)


class TestD2:
    def test_vanishes_for_split_objects(self, parts):
        s0, s1, _, _ = parts
        E = spectral.TwoTermObject(s0, s1)
        elem = {0: pimod.hom_basis(s0, s0)[0]}
        assert spectral.d2(E, E, 0, 0, {}) == {}
        out = spectral.d2(E, E, 0, 1, {0: pimod.hom_basis(s0, s1)[0]} if pimod.hom_basis(s0, s1) else {})
        assert out == {}

    def test_identity_in_kernel(self, parts):
        s0, _, m_a, _ = parts
        for h in (s0, m_a):
            e_reps = pimod.ext2_basis(h, h)
            for e in [None] + e_reps[:1]:
                E = spectral.TwoTermObject(h, h, e)
                elem = {
                    0: pimod.identity_cocycle(h),
                    1: pimod.identity_cocycle(h),
                }
                out = spectral.d2(E, E, 0, 0, elem)
                for coc in out.values():
                    assert pimod.cocycle_is_coboundary(coc)

    def test_antidiagonal_detects_gluing(self, parts):
        s0, _, _, _ = parts
        e = pimod.ext2_basis(s0, s0)[0]
        E = spectral.TwoTermObject(s0, s0, e)
        elem = {
            0: pimod.identity_cocycle(s0),
            1: pimod.identity_cocycle(s0).scale(-1),
        }
        out = spectral.d2(E, E, 0, 0, elem)
        assert out, "(id, -id) must leave the kernel when e != 0 and char != 2"
        coc = out[1]
        assert not pimod.cocycle_is_coboundary(coc)
        # it is the multiple 2e of the gluing class
        assert pimod.cocycles_cohomologous(coc, e.scale(2))

    def test_out_of_strip(self, parts):
        s0, _, _, _ = parts
        E = spectral.TwoTermObject(s0, s0)
        with pytest.raises(spectral.DegreeOutOfStrip):
            spectral.d2(E, E, 3, 0, {})
        assert spectral.d2(E, E, 1, 0, {}) == {}

    def test_d2_after_d2_vanishes(self, parts):
        s0, _, m_a, _ = parts
        e = pimod.ext2_basis(s0, s0)[0]
        E = spectral.TwoTermObject(s0, s0, e)
        rng = random.Random(5)
        for q in (0, 1):
            for _ in range(5):
                elem = {}
                for i in (0, 1):
                    basis = pimod.hom_basis(E.cohomology(i), E.cohomology(i + q))
                    if basis:
                        coeffs = [rng.randrange(P) for _ in basis]
                        acc = None
                        for c, b in zip(coeffs, basis):
                            term = b.scale(c)
                            acc = term if acc is None else acc.add(term)
                        elem[i] = acc
                mid = spectral.d2(E, E, 0, q, elem)
                assert spectral.d2(E, E, 2, q - 1, mid) == {}


class TestHomDimsViaE3:
    def test_split_mixed(self, parts):
        s0, s1, _, _ = parts
        E = spectral.TwoTermObject(s0, s1)
        table = spectral.hom_dims_via_E3(E, E)
        assert table.get(1, 0) == 0

    def test_split_same_simple(self, parts):
        s0, _, _, _ = parts
        E = spectral.TwoTermObject(s0, s0)
        assert spectral.hom_dims_via_E3(E, E).get(1, 0) == 2

    def test_glued_same_simple(self, parts):
        s0, _, _, _ = parts
        e = pimod.ext2_basis(s0, s0)[0]
        E = spectral.TwoTermObject(s0, s0, e)
        table = spectral.hom_dims_via_E3(E, E)
        assert table.get(1, 0) == 0
        assert table.get(0, 0) == 1

    def test_matches_heart_objects(self, parts):
        s0, s1, m_a, _ = parts
        zero = pimod.zero_module(P)
        for h in (s0, s1, m_a):
            E = spectral.TwoTermObject(h, zero)
            table = spectral.hom_dims_via_E3(E, E)
            dims = pimod.ext_dims(h, h)
            assert table == {i: dims[i] for i in range(3) if dims[i]}

    def test_euler_consistency(self, parts):
        objs = _sweep_objects(parts)
        for E in objs:
            for F in objs[::3]:
                table = spectral.hom_dims_via_E3(E, F)
                alt = sum((-1) ** n * d for n, d in table.items())
                assert alt == euler_form(E.kclass(), F.kclass()), (E, F)

    def test_duality(self, parts):
        objs = _sweep_objects(parts)
        for E in objs[::2]:
            for F in objs[::5]:
                t_ef = spectral.hom_dims_via_E3(E, F)
                t_fe = spectral.hom_dims_via_E3(F, E)
                degrees = set(t_ef) | {2 - n for n in t_fe}
                for n in degrees:
                    assert t_ef.get(n, 0) == t_fe.get(2 - n, 0), (E, F, n)


class TestSphericality:
    def test_single_simple(self, parts):
        s0, _, _, _ = parts
        E = spectral.TwoTermObject(s0, pimod.zero_module(P))
        assert spectral.sphericality_test(E)

    def test_split_pair_not_spherical(self, parts):
        s0, _, _, _ = parts
        assert not spectral.sphericality_test(spectral.TwoTermObject(s0, s0))

    def test_glued_pair_spherical_in_window(self, parts):
        s0, _, _, _ = parts
        e = pimod.ext2_basis(s0, s0)[0]
        assert spectral.sphericality_test(spectral.TwoTermObject(s0, s0, e))


class TestSubquotientInequality:
    def test_zero_gluing_reduces_to_page_sum(self, parts):
        s0, s1, _, _ = parts
        E = spectral.TwoTermObject(s0, s1)
        for q in (-1, 0, 1):
            assert spectral.subquotient_inequality_check(E, E, q).passed

    def test_glued_self_q0(self, parts):
        s0, _, _, _ = parts
        e = pimod.ext2_basis(s0, s0)[0]
        E = spectral.TwoTermObject(s0, s0, e)
        rep = spectral.subquotient_inequality_check(E, E, 0)
        assert rep.passed

    def test_full_sweep(self, parts):
        objs = _sweep_objects(parts)
        for E in objs:
            for F in objs[::4]:
                for q in (-1, 0, 1):
                    assert spectral.subquotient_inequality_check(E, F, q).passed
