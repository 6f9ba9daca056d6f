import math

import pytest

from occ132 import (
    Solver,
    af_to_series,
    catalan_series,
    count_exact,
    count_exact_restricted,
    distribution,
    occurrence_closed_form,
    occurrence_series,
    restricted_series,
)
from occ132.shapes import CatalogError


class TestUnrestrictedSeries:
    def test_level0_is_catalan(self):
        assert occurrence_series(0, 6).integer_coeffs() == [1, 1, 2, 5, 14, 42, 132]

    def test_level1_binomials(self, catalog1):
        s = Solver(catalog1, 6).occurrence_series(1)
        assert s.integer_coeffs() == [0, 0, 0, 1, 5, 21, 84]
        big = Solver(catalog1, 20).occurrence_series(1)
        for n in range(3, 21):
            assert big[n] == math.comb(2 * n - 3, n - 3)

    def test_level2_small_values(self, catalog2):
        s = Solver(catalog2, 5).occurrence_series(2)
        assert s[4] == 4
        assert s[5] == 23

    def test_oracle_agreement_levels_up_to_3(self, catalog3):
        solver = Solver(catalog3, 8)
        for r in range(4):
            series = solver.occurrence_series(r)
            for n in range(9):
                assert series[n] == count_exact(n, r), (r, n)

    def test_catalog_too_small(self, catalog1):
        with pytest.raises(CatalogError):
            Solver(catalog1, 8).occurrence_series(2)

    def test_row_sums(self, catalog3):
        solver = Solver(catalog3, 8)
        for n in range(9):
            table = distribution(n)
            high = sum(c for r, c in table.counts.items() if r > 3)
            low = sum(int(solver.occurrence_series(r)[n]) for r in range(4))
            assert low + high == math.factorial(n)


class TestClosedForms:
    def test_level0(self, catalog1):
        cf = Solver(catalog1).occurrence_closed_form(0)
        assert (cf.p, cf.q, cf.d) == ((1,), (-1,), (0, 2))
        assert af_to_series(cf, 64) == catalan_series(64)

    def test_level1_matches_series_everywhere(self, catalog1):
        solver = Solver(catalog1, 64)
        assert af_to_series(solver.occurrence_closed_form(1), 64) == solver.occurrence_series(1)

    def test_level2_closed_form(self, catalog2):
        from occ132 import extract_pq

        form = extract_pq(Solver(catalog2).occurrence_closed_form(2), 2)
        assert form.polynomial
        assert [int(c) for c in form.P.as_polynomial()] == [-2, 3, 1]
        assert [int(c) for c in form.Q.as_polynomial()] == [2, -15, 29, -4, 2]

    def test_split_reassembles_exactly(self, catalog3):
        from occ132 import extract_pq, reassemble_pq

        solver = Solver(catalog3)
        for r in range(4):
            cf = solver.occurrence_closed_form(r)
            assert reassemble_pq(extract_pq(cf, r)) == cf


class TestRestricted:
    def test_k_zero_or_negative_is_zero(self, catalog1):
        solver = Solver(catalog1, 6)
        assert solver.restricted_series(0, 0).integer_coeffs() == [0] * 7
        assert solver.restricted_series(1, -3).integer_coeffs() == [0] * 7

    def test_k1_only_empty(self, catalog1):
        solver = Solver(catalog1, 6)
        assert solver.restricted_series(0, 1).integer_coeffs() == [1, 0, 0, 0, 0, 0, 0]
        assert solver.restricted_series(1, 1).integer_coeffs() == [0] * 7

    def test_k2_decreasing_only(self, catalog1):
        solver = Solver(catalog1, 6)
        assert solver.restricted_series(0, 2).integer_coeffs() == [1] * 7
        assert solver.restricted_series(1, 2).integer_coeffs() == [0] * 7

    def test_k3_is_rational_doubling(self, catalog1):
        # (1-x)/(1-2x): 1, 1, 2, 4, 8, ...
        s = Solver(catalog1, 10).restricted_series(0, 3)
        assert s.integer_coeffs() == [1] + [2 ** max(n - 1, 0) for n in range(1, 11)]

    def test_oracle_agreement(self, catalog2):
        solver = Solver(catalog2, 8)
        for r in range(3):
            for k in range(1, 7):
                series = solver.restricted_series(r, k)
                for n in range(9):
                    assert series[n] == count_exact_restricted(n, r, k), (r, k, n)

    def test_large_k_equals_unrestricted(self, catalog2):
        solver = Solver(catalog2, 8)
        for r in range(3):
            assert solver.restricted_series(r, 9) == solver.occurrence_series(r)


class TestModuleConveniences:
    def test_occurrence_series_builds_catalog(self):
        assert occurrence_series(1, 6).integer_coeffs() == [0, 0, 0, 1, 5, 21, 84]

    def test_occurrence_closed_form_convenience(self):
        assert af_to_series(occurrence_closed_form(0), 8) == catalan_series(8)

    def test_restricted_convenience(self):
        assert restricted_series(0, 2, 5).integer_coeffs() == [1] * 6
