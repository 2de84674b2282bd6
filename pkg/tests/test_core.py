import pytest
from hypothesis import given, strategies as st

from tevdeg.core import (
    CurveClass,
    MalformedClass,
    NotBalanced,
    SaeStatus,
    sae_status,
    strong_inequality_holds,
    validate,
)


class TestValidate:
    def test_n_derived(self):
        p, rep = validate(2, 0, CurveClass(3, (1,)))
        assert p.n == 5
        assert rep.balanced and rep.strong_inequality and rep.geometric_range

    def test_supplied_n_out_of_geometric_range(self):
        p, rep = validate(2, 1, CurveClass(3, (1,)), n=4)
        assert rep.balanced
        assert not rep.geometric_range  # n - d = 1 < g + 1 = 2
        assert rep.virtual_range

    def test_not_balanced(self):
        with pytest.raises(NotBalanced):
            validate(2, 0, CurveClass(3, (1,)), n=4)

    def test_no_integral_n(self):
        # anticanonical degree 3*1 - 1*0 = 3 is odd, r = 2
        with pytest.raises(NotBalanced):
            validate(2, 0, CurveClass(1, ()))

    def test_malformed(self):
        with pytest.raises(MalformedClass):
            validate(2, 0, CurveClass(3, (1, 1, 1, 1)))
        with pytest.raises(MalformedClass):
            CurveClass(3, (-1,))

    def test_preconditions(self):
        with pytest.raises(ValueError):
            validate(0, 0, CurveClass(1, ()))
        with pytest.raises(ValueError):
            validate(2, -1, CurveClass(1, ()))

    @given(
        st.integers(1, 5),
        st.integers(0, 3),
        st.integers(0, 30),
        st.lists(st.integers(0, 4), max_size=4),
    )
    def test_derived_n_is_reproduced(self, r, g, d, k):
        if len(k) > r + 1:
            return
        try:
            p, _ = validate(r, g, CurveClass(d, tuple(k)))
        except NotBalanced:
            return
        q, rep2 = validate(r, g, p.beta, n=p.n)
        assert q == p and rep2.balanced

    @given(st.integers(1, 5), st.integers(0, 3), st.integers(0, 30), st.lists(st.integers(0, 4), max_size=4))
    def test_reports_are_deterministic(self, r, g, d, k):
        if len(k) > r + 1:
            return
        try:
            _, rep1 = validate(r, g, CurveClass(d, tuple(k)))
            _, rep2 = validate(r, g, CurveClass(d, tuple(k)))
        except NotBalanced:
            return
        assert rep1 == rep2


class TestStrongInequality:
    @given(
        st.integers(1, 4),
        st.integers(0, 3),
        st.integers(0, 20),
        st.lists(st.integers(0, 5), max_size=5),
    )
    def test_matches_subset_bruteforce(self, r, g, d, k):
        from itertools import combinations

        if len(k) > r + 1:
            return
        beta = CurveClass(d, tuple(k))
        brute = all(
            d - sum(subset) > 2 * g - 1
            for size in range(min(len(k), r) + 1)
            for subset in combinations(k, size)
        )
        assert strong_inequality_holds(r, g, beta) == brute


class TestRegimeReport:
    @given(st.integers(1, 4), st.integers(0, 3), st.integers(1, 25), st.lists(st.integers(0, 3), max_size=3))
    def test_geometric_implies_virtual(self, r, g, d, k):
        if len(k) > r + 1:
            return
        try:
            _, rep = validate(r, g, CurveClass(d, tuple(k)))
        except NotBalanced:
            return
        if rep.geometric_range:
            assert rep.virtual_range

    def test_engines_for_l1_geometric(self):
        _, rep = validate(2, 0, CurveClass(3, (1,)))
        assert {"grr", "residue-l1", "closed-l1", "closed-genus0", "qh", "virtual-l1"} <= \
            rep.engines_available

    def test_engines_virtual_only(self):
        # n - d = 0: no virtual-range engine except the definition-level one
        _, rep = validate(2, 1, CurveClass(1, (1,)), n=1)
        assert rep.engines_available == {"qh"}

    def test_engines_require_stability(self):
        # g = 0, n = 2 is an unstable domain: no engine is offered
        _, rep = validate(2, 0, CurveClass(1, (1,)), n=2)
        assert rep.engines_available == frozenset()


class TestSaeStatus:
    @pytest.mark.parametrize(
        "r,ell,expected",
        [
            (5, 2, SaeStatus.FAILS),
            (4, 2, SaeStatus.FAILS),
            (3, 4, SaeStatus.HOLDS),
            (2, 9, SaeStatus.UNKNOWN),
            (3, 5, SaeStatus.UNKNOWN),
            (2, 8, SaeStatus.HOLDS),
            (7, 1, SaeStatus.HOLDS),
            (1, 0, SaeStatus.HOLDS),
            (4, 1, SaeStatus.HOLDS),
        ],
    )
    def test_table(self, r, ell, expected):
        assert sae_status(r, ell) is expected

    @given(st.integers(4, 10))
    def test_monotone_flip_at_two_points(self, r):
        assert sae_status(r, 1) is SaeStatus.HOLDS
        assert sae_status(r, 2) is SaeStatus.FAILS

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            sae_status(0, 1)
        with pytest.raises(ValueError):
            sae_status(2, -1)
