from itertools import permutations, product

import pytest

from tevdeg.closedform import tev_genus0, tev_l1, tev_p1, tev_r2_l2, vtev_l1, vtev_pr
from tevdeg.core import CurveClass, NotBalanced, RegimeViolation, validate
from tevdeg.grr import tev_grr


def make(r, g, d, k, n=None):
    p, _ = validate(r, g, CurveClass(d, tuple(k)), n)
    return p


class TestGenus0:
    @pytest.mark.parametrize(
        "r,d,k,n,expected",
        [
            (2, 3, (1,), 5, 1),
            (2, 2, (1, 1), 3, 1),
            (3, 4, (2,), 5, 0),
        ],
    )
    def test_known_values(self, r, d, k, n, expected):
        assert tev_genus0(make(r, 0, d, k, n)) == expected

    def test_rejects_positive_genus(self):
        with pytest.raises(RegimeViolation):
            tev_genus0(make(2, 1, 5, (1,), 7))

    def test_symmetric_in_multiplicities(self):
        for k in permutations((2, 1, 1)):
            assert tev_genus0(make(3, 0, 8, k, 9)) == tev_genus0(make(3, 0, 8, (2, 1, 1), 9))

    def test_all_zero_multiplicities(self):
        p = make(2, 0, 2, (0, 0), 4)
        assert tev_genus0(p) == 1 == vtev_pr(2, 0)


class TestL1:
    @pytest.mark.parametrize(
        "r,g,d,k,n,expected",
        [
            (2, 1, 5, (1,), 7, 7),
            (2, 0, 3, (1,), 5, 1),
        ],
    )
    def test_known_values(self, r, g, d, k, n, expected):
        assert tev_l1(make(r, g, d, k, n)) == expected

    def test_geometric_range_required(self):
        with pytest.raises(RegimeViolation):
            tev_l1(make(2, 1, 3, (1,), 4))  # n - d = 1 < 2

    def test_agrees_with_virtual_in_overlap(self):
        for r, g, kk in product((2, 3), (0, 1, 2), (1, 2)):
            for d in range(1, 25):
                try:
                    p, rep = validate(r, g, CurveClass(d, (kk,)))
                except NotBalanced:
                    continue
                if not (rep.strong_inequality and rep.geometric_range):
                    continue
                assert tev_l1(p) == vtev_l1(p)


class TestVirtualL1:
    def test_wider_range(self):
        p = make(2, 1, 3, (1,), 4)  # n - d = 1: virtual only
        assert vtev_l1(p) == 4

    def test_rejects_n_equal_d(self):
        # at n - d = 0 the sum no longer computes the virtual count
        with pytest.raises(RegimeViolation):
            vtev_l1(make(2, 1, 1, (1,), 1))

    def test_coincides_with_geometric_value(self):
        assert vtev_l1(make(2, 0, 3, (1,), 5)) == 1


class TestR2L2:
    def test_genus0_matches_genus0_formula(self):
        for k1, k2 in product((1, 2), repeat=2):
            for d in range(1, 10):
                try:
                    p, rep = validate(2, 0, CurveClass(d, (k1, k2)))
                except NotBalanced:
                    continue
                if not (rep.strong_inequality and rep.geometric_range):
                    continue
                assert tev_r2_l2(p) == tev_genus0(p), (d, k1, k2)

    def test_matches_symbolic_engine_genus1(self):
        p = make(2, 1, 6, (1, 1), 8)
        assert tev_r2_l2(p) == tev_grr(p) == 32

    def test_degenerates_to_one_point_formula(self):
        # multiplicity zero at the second point imposes no condition
        p2 = make(2, 1, 5, (1, 0), 7)
        p1 = make(2, 1, 5, (1,), 7)
        assert tev_r2_l2(p2) == tev_l1(p1) == 7

    def test_rejects_wrong_shape(self):
        with pytest.raises(RegimeViolation):
            tev_r2_l2(make(2, 0, 3, (1,), 5))


class TestVtevPr:
    @pytest.mark.parametrize("r,g,expected", [(2, 0, 1), (2, 3, 27), (1, 2, 4), (3, 2, 16)])
    def test_values(self, r, g, expected):
        assert vtev_pr(r, g) == expected

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            vtev_pr(0, 1)


class TestTevP1:
    def test_genus0(self):
        assert tev_p1(0, 1, 3) == 1

    def test_genus1_degree1(self):
        # no degree-1 maps from a positive-genus curve exist
        assert tev_p1(1, 1, 2) == 0

    @pytest.mark.parametrize("g", range(5))
    def test_large_degree_stabilises(self, g):
        for d in range(g + 1, g + 4):
            n = 2 * d - g + 1
            assert tev_p1(g, d, n) == 2**g

    def test_balance_required(self):
        with pytest.raises(RegimeViolation):
            tev_p1(1, 2, 2)

    def test_small_values_nonnegative(self):
        for g in range(6):
            for d in range(g + 2):
                n = 2 * d - g + 1
                if n < 0:
                    continue
                assert tev_p1(g, d, n) >= 0
