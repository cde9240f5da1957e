import itertools

import pytest

from cy2stab import homtable as ht
from cy2stab.nfcalc import NormalForm, line_nf

from oracles import cech_line_cohomology, surface_hom_dims_oracle


class TestClosedForm:
    def test_spherical_diagonal(self):
        assert ht.hom_dims_line(0, 0) == ht.HomDims(1, 0, 1)

    def test_degree_two(self):
        assert ht.hom_dims_line(0, 2) == ht.HomDims(3, 1, 0)

    def test_serre_mirror_value(self):
        assert ht.hom_dims_line(2, 0) == ht.HomDims(0, 1, 3)

    def test_translation_invariance(self):
        for s, t in itertools.product(range(-10, 11), repeat=2):
            assert ht.hom_dims_line(s, t) == ht.hom_dims_line(0, t - s)

    def test_euler_and_mirror_sweep(self):
        for s, t in itertools.product(range(-10, 11), repeat=2):
            dims = ht.hom_dims_line(s, t)
            assert dims.euler() == 2
            assert dims.d2 == ht.hom_dims_line(t, s).d0

    def test_against_cech_page_oracle(self):
        # the two-row page oracle pins the table for |d| <= 4
        for d in range(-4, 5):
            dims = ht.hom_dims_line(0, d)
            assert (dims.d0, dims.d1, dims.d2) == surface_hom_dims_oracle(0, d), d

    def test_cech_oracle_matches_riemann_roch(self):
        for k in range(-6, 7):
            h0, h1 = cech_line_cohomology(k)
            assert h0 - h1 == k + 1


class TestShifted:
    def test_shift_concentrates(self):
        assert ht.hom_dims_shifted(-1, 1, 0, 0) == {1: 2}

    def test_unshifted(self):
        assert ht.hom_dims_shifted(0, 0, 0, 0) == {0: 1, 2: 1}

    def test_equal_shifts_cancel(self):
        assert ht.hom_dims_shifted(0, 5, 0, 5) == {0: 1, 2: 1}

    def test_three_consecutive_degrees(self):
        for s, p, t, q in itertools.product(range(-3, 4), range(-2, 3), range(-3, 4), range(-2, 3)):
            table = ht.hom_dims_shifted(s, p, t, q)
            if table:
                degs = sorted(table)
                assert degs[-1] - degs[0] <= 2


class TestVanishing:
    def test_clause_a(self):
        assert ht.vanishing_predicate(0, 1, 0)

    def test_clause_b(self):
        assert ht.vanishing_predicate(1, 0, 1)

    def test_clause_c(self):
        assert ht.vanishing_predicate(2, 0, 1)

    def test_degree_out_of_range(self):
        with pytest.raises(ht.DegreeOutOfRange):
            ht.vanishing_predicate(3, 0, 0)

    def test_matches_dimensions(self):
        for i in (0, 1, 2):
            for s, t in itertools.product(range(-10, 11), repeat=2):
                assert ht.vanishing_predicate(i, s, t) == (
                    ht.hom_dims_line(s, t)[i] == 0
                )


class TestDifferenceCheck:
    def test_clause_a_pass(self):
        e = NormalForm.make(1, {1: (1, 0)})  # O(1) in degree 1
        report = ht.difference_check(e, 0)
        assert report.promise_ok
        a_checks = [c for c in report.checks if c.clause == "a"]
        assert a_checks and not any(c.violated for c in a_checks)

    def test_clause_b_flagged(self):
        e = NormalForm.make(3, {0: (1, 0)})  # O(3) in degree 0
        report = ht.difference_check(e, 0)
        b_checks = [c for c in report.checks if c.clause == "b"]
        assert b_checks and all(c.hypothesis for c in b_checks)
        assert any(c.violated for c in b_checks)
        assert report.any_violation

    def test_promise_unsatisfied_for_structure_sheaf(self):
        report = ht.difference_check(line_nf(0, 0), 0)
        assert not report.promise_ok
        assert report.promise_lower_bounds.get(0, 0) >= 1
        assert report.any_violation

    def test_admissible_shape_is_clean(self):
        # O(0)[1] against t = 1: Homs concentrate in degree one
        report = ht.difference_check(NormalForm.make(0, {-1: (1, 0)}), 1)
        assert report.promise_ok
        assert not report.any_violation

    def test_glued_twist_output_flagged_at_negative_degree(self):
        # H^0 = O(-1), H^1 = O(0)^2 against t = 0 has a surviving
        # degree -1 piece Hom(H^1, O(0)), so the promise audit trips
        e = NormalForm.make(0, {0: (0, 1), 1: (2, 0)})
        report = ht.difference_check(e, 0)
        assert not report.promise_ok
        assert report.promise_lower_bounds.get(-1, 0) == 2

    def test_rejects_non_normal_form(self):
        with pytest.raises(ht.InvalidNormalForm):
            ht.difference_check({"v": 0}, 0)
