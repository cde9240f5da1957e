import itertools

import pytest

from cy2stab import nfcalc as nf
from cy2stab.kcharge import KClass, class_of_line_bundle, twist_on_K


class TestNormalForm:
    def test_canonical_drops_zero_components(self):
        e = nf.NormalForm.make(0, {0: (1, 0), 3: (0, 0)})
        assert e.comp_dict() == {0: (1, 0)}

    def test_relabels_when_f_column_empty(self):
        e = nf.NormalForm.make(5, {2: (0, 3)})
        assert e.v == 4 and e.comp_dict() == {2: (3, 0)}

    def test_empty_rejected(self):
        with pytest.raises(nf.InvalidNormalForm):
            nf.NormalForm.make(0, {})

    def test_negative_rejected(self):
        with pytest.raises(nf.InvalidNormalForm):
            nf.NormalForm.make(0, {0: (-1, 0)})

    def test_json_round_trip(self):
        e = nf.NormalForm.make(1, {-1: (0, 1), 0: (2, 1)})
        assert nf.NormalForm.from_json(e.to_json()) == e

    def test_kclass(self):
        e = nf.NormalForm.make(0, {0: (2, 0), 1: (0, 1)})
        # 2[O(0)] - [O(-1)]
        assert e.kclass() == KClass(2, 0) - KClass(1, -1)

    def test_as_line(self):
        assert nf.line_nf(3, -2).as_line() == (3, -2)
        with pytest.raises(nf.InvalidNormalForm):
            nf.NormalForm.make(0, {0: (2, 0)}).as_line()


class TestLength:
    def test_single(self):
        assert nf.length(nf.line_nf(0, 0)) == 1

    def test_sum(self):
        assert nf.length(nf.NormalForm.make(1, {1: (2, 0), 0: (0, 1)})) == 3

    def test_shift_invariant(self):
        e = nf.NormalForm.make(1, {1: (2, 0), 0: (0, 1)})
        for n in (-3, -1, 2, 7):
            assert nf.length(nf.shift(e, n)) == nf.length(e)

    def test_tensor_invariant(self):
        e = nf.NormalForm.make(1, {1: (2, 0), 0: (0, 1)})
        for k in (-4, -1, 3):
            assert nf.length(nf.tensor_line(e, k).form) == nf.length(e)


class TestShift:
    def test_structure_sheaf_shifted(self):
        assert nf.shift(nf.line_nf(0, 0), 1).comp_dict() == {-1: (1, 0)}

    def test_double_shift_identity(self):
        e = nf.NormalForm.make(2, {0: (1, 1)})
        assert nf.shift(nf.shift(e, 1), -1) == e

    def test_commutes_with_tensor(self):
        e = nf.NormalForm.make(2, {0: (1, 1), 2: (1, 0)})
        assert nf.shift(nf.tensor_line(e, -2).form, 3) == nf.tensor_line(
            nf.shift(e, 3), -2
        ).form


class TestTensorLine:
    def test_shift_down(self):
        r = nf.tensor_line(nf.line_nf(1, 0), -2)
        assert r.form == nf.line_nf(-1, 0)

    def test_identity(self):
        e = nf.NormalForm.make(0, {0: (1, 2)})
        r = nf.tensor_line(e, 0)
        assert r.form == e and r.in_group

    def test_parity_flag(self):
        e = nf.line_nf(1, 0)
        assert nf.tensor_line(e, -2).in_group
        assert not nf.tensor_line(e, 1).in_group


class TestTwistRules:
    def test_self_twist(self):
        assert nf.twist_line_on_line(0, 0, 0) == nf.line_nf(0, -1)

    def test_lower_neighbour_twist(self):
        assert nf.twist_line_on_line(-1, 0, 0) == nf.line_nf(-2, 1)

    def test_upper_neighbour(self):
        assert nf.twist_line_on_line(0, 1, 0) == nf.line_nf(-1, 1)

    def test_distance_one_down_gives_glued_form(self):
        e = nf.twist_line_on_line(0, -1, 0)
        assert e.comp_dict() == {0: (0, 1), 1: (2, 0)}
        assert nf.length(e) == 3

    def test_unsupported_distance(self):
        with pytest.raises(nf.UnsupportedTwistDistance):
            nf.twist_line_on_line(0, 2, 0)
        with pytest.raises(nf.UnsupportedTwistDistance):
            nf.twist_line_on_line(0, -2, 0)

    def test_k_class_consistency_exhaustive(self):
        for t in range(-8, 9):
            for s in (t - 1, t, t + 1):
                for n in (-2, 0, 1):
                    out = nf.twist_line_on_line(t, s, n)
                    expected = twist_on_K(
                        class_of_line_bundle(t, 0), class_of_line_bundle(s, n)
                    )
                    assert out.kclass() == expected, (t, s, n)

    def test_composite_acts_as_tensor_down(self):
        # [Tw(v), Tw(v-1)] on O(s)[n] when the intermediate stays a line
        for v in range(-8, 9):
            for s in (v, v + 1):
                for n in (-1, 0, 2):
                    mid = nf.twist_line_on_line(v, s, n)
                    t_mid, n_mid = mid.as_line()
                    out = nf.twist_line_on_line(v - 1, t_mid, n_mid)
                    assert out == nf.tensor_line(nf.line_nf(s, n), -2).form


class TestWords:
    def test_twist_generator(self):
        assert nf.word_on_K((nf.Tw(0),), KClass(1, 1)) == KClass(-1, 1)

    def test_composite_tensor_on_classes(self):
        for v in range(-8, 9):
            word = (nf.Tw(v), nf.Tw(v - 1))
            for s in range(-8, 9):
                got = nf.word_on_K(word, class_of_line_bundle(s, 0))
                assert got == class_of_line_bundle(s - 2, 0), (v, s)

    def test_empty_word(self):
        u = KClass(3, -2)
        assert nf.word_on_K((), u) == u

    def test_inverse_twist_same_reflection(self):
        u = KClass(1, 4)
        assert nf.word_on_K((nf.TwInv(2),), u) == nf.word_on_K((nf.Tw(2),), u)

    def test_shift_sign(self):
        u = KClass(2, -1)
        assert nf.word_on_K((nf.Shift(1),), u) == -u
        assert nf.word_on_K((nf.Shift(2),), u) == u

    def test_json_round_trip(self):
        word = (nf.Tw(0), nf.Shift(-1), nf.TwInv(-3))
        assert nf.word_from_json(nf.word_to_json(word)) == word

    def test_json_rejects_garbage(self):
        with pytest.raises(ValueError):
            nf.word_from_json(["Frob(2)"])
