import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tevdeg.cohring import (
    AlgebraSignature,
    IndexOutOfRange,
    NonNilpotent,
    SignatureMismatch,
    e_gen,
    eta,
    exp_nilpotent,
    geom_inverse_one_plus,
    integrate,
    integrate_product,
    one,
    pow_int,
    scalar,
    taubar,
    theta,
    xbar,
    zero,
    zeta_gen,
)


def random_element(sig, rng, n_terms=4, max_coeff=3):
    """Random element assembled as a sum of random generator products."""
    gens = [e_gen(sig, a) for a in range(1, 2 * sig.g + 1)]
    for j, ki in enumerate(sig.k):
        if ki > 0:
            gens.append(eta(sig, j + 1))
            gens.extend(zeta_gen(sig, j + 1, a) for a in range(1, 2 * sig.g + 1))
    out = zero(sig)
    for _ in range(n_terms):
        term = scalar(sig, Fraction(rng.randint(-max_coeff, max_coeff)))
        for _ in range(rng.randint(0, 3)):
            term = term * rng.choice(gens)
        out = out + term
    return out


def random_monomial(sig, rng):
    elem = one(sig)
    gens = [e_gen(sig, a) for a in range(1, 2 * sig.g + 1)]
    for j, ki in enumerate(sig.k):
        if ki > 0:
            gens.append(eta(sig, j + 1))
            gens.extend(zeta_gen(sig, j + 1, a) for a in range(1, 2 * sig.g + 1))
    for _ in range(rng.randint(0, 4)):
        elem = elem * rng.choice(gens)
    return elem


class TestMultiplication:
    def test_anticommutation(self):
        sig = AlgebraSignature(1, (0,))
        e1, e2 = e_gen(sig, 1), e_gen(sig, 2)
        assert e1 * e2 == -(e2 * e1)
        assert not (e1 * e2).is_zero()

    def test_square_zero(self):
        sig = AlgebraSignature(1, (0,))
        e1 = e_gen(sig, 1)
        assert (e1 * e1).is_zero()

    def test_eta_cap(self):
        sig = AlgebraSignature(0, (1,))
        et = eta(sig, 1)
        assert not et.is_zero()
        assert (et * et).is_zero()  # 2*2 exceeds the factor cap 2k = 2

    def test_mixed_cap(self):
        # with k=1 and g=1: eta * zeta has factor degree 3 > 2
        sig = AlgebraSignature(1, (1,))
        assert (eta(sig, 1) * zeta_gen(sig, 1, 1)).is_zero()

    def test_signature_mismatch(self):
        a = one(AlgebraSignature(1, (1,)))
        b = one(AlgebraSignature(1, (2,)))
        with pytest.raises(SignatureMismatch):
            a * b

    def test_index_out_of_range(self):
        sig = AlgebraSignature(1, (1, 0))
        with pytest.raises(IndexOutOfRange):
            eta(sig, 3)
        with pytest.raises(IndexOutOfRange):
            zeta_gen(sig, 2, 1)  # factor 2 has k = 0
        with pytest.raises(IndexOutOfRange):
            e_gen(sig, 3)

    @pytest.mark.parametrize("seed", range(6))
    def test_graded_commutativity(self, seed):
        rng = random.Random(seed)
        sig = AlgebraSignature(2, (1, 1))
        a, b = random_monomial(sig, rng), random_monomial(sig, rng)
        da, db = a.homogeneous_degree(), b.homogeneous_degree()
        if a.is_zero() or b.is_zero():
            return
        sign = -1 if (da % 2) and (db % 2) else 1
        assert a * b == (b * a) * sign

    @pytest.mark.parametrize("seed", range(6))
    def test_associativity(self, seed):
        rng = random.Random(100 + seed)
        sig = AlgebraSignature(2, (1, 2))
        a = random_element(sig, rng)
        b = random_element(sig, rng)
        c = random_element(sig, rng)
        assert (a * b) * c == a * (b * c)

    @pytest.mark.parametrize("seed", range(6))
    def test_distributivity(self, seed):
        rng = random.Random(200 + seed)
        sig = AlgebraSignature(1, (2, 1))
        a, b, c = (random_element(sig, rng) for _ in range(3))
        assert a * (b + c) == a * b + a * c


class TestTautologicalClasses:
    def test_theta_genus0(self):
        assert theta(AlgebraSignature(0, (1,))).is_zero()

    def test_theta_genus1(self):
        sig = AlgebraSignature(1, (0,))
        assert theta(sig) == e_gen(sig, 1) * e_gen(sig, 2)

    def test_taubar_no_other_factors(self):
        sig = AlgebraSignature(2, (3,))
        assert taubar(sig, 1).is_zero()

    def test_taubar_l1_shape(self):
        # with one positive factor, every other index sees the same pair sum
        sig = AlgebraSignature(1, (2, 0, 0))
        tau = taubar(sig, 2)
        assert tau == zeta_gen(sig, 1, 1) * zeta_gen(sig, 1, 2)
        assert taubar(sig, 3) == tau

    def test_xbar_l1_shape(self):
        sig = AlgebraSignature(1, (2, 0))
        expected = e_gen(sig, 1) * zeta_gen(sig, 1, 2) - e_gen(sig, 2) * zeta_gen(sig, 1, 1)
        assert xbar(sig, 2) == expected

    def test_taubar_cross_terms(self):
        sig = AlgebraSignature(1, (1, 1, 0))
        tau = taubar(sig, 3)
        z = lambda i, a: zeta_gen(sig, i, a)
        assert tau == z(1, 1) * z(1, 2) + z(1, 1) * z(2, 2) + z(2, 1) * z(1, 2) + z(2, 1) * z(2, 2)


class TestSeries:
    def test_exp_zero(self):
        sig = AlgebraSignature(1, (1,))
        assert exp_nilpotent(zero(sig)) == one(sig)

    def test_geometric_inverse(self):
        sig = AlgebraSignature(0, (1,))
        et = eta(sig, 1)
        assert geom_inverse_one_plus(et) == one(sig) - et
        assert pow_int(et, -1) == one(sig) - et

    def test_pow_times_inverse(self):
        sig = AlgebraSignature(0, (3,))
        et = eta(sig, 1)
        assert pow_int(et, 5) * pow_int(et, -5) == one(sig)

    def test_exp_theta_genus2(self):
        sig = AlgebraSignature(2, (0,))
        th = theta(sig)
        assert exp_nilpotent(th) == one(sig) + th + th * th * Fraction(1, 2)

    def test_non_nilpotent_rejected(self):
        sig = AlgebraSignature(1, (1,))
        with pytest.raises(NonNilpotent):
            exp_nilpotent(one(sig))
        with pytest.raises(NonNilpotent):
            pow_int(one(sig) + eta(sig, 1), 2)

    @given(st.integers(-6, 6), st.integers(-6, 6))
    @settings(max_examples=30)
    def test_pow_int_additive_in_exponent(self, m, n):
        sig = AlgebraSignature(0, (2,))
        et = eta(sig, 1)
        assert pow_int(et, m) * pow_int(et, n) == pow_int(et, m + n)


class TestIntegrate:
    @pytest.mark.parametrize("g,expected", [(0, 1), (1, 1), (2, 2), (3, 6)])
    def test_theta_power_is_factorial(self, g, expected):
        sig = AlgebraSignature(g, (0,))
        assert integrate(theta(sig) ** g) == expected

    def test_eta_top_power(self):
        sig = AlgebraSignature(0, (3,))
        assert integrate(eta(sig, 1) ** 3) == 1

    def test_split_factors_multiply(self):
        sig = AlgebraSignature(0, (2, 1))
        assert integrate(eta(sig, 1) ** 2 * eta(sig, 2)) == 1

    def test_non_top_degree_vanishes(self):
        sig = AlgebraSignature(1, (1,))
        assert integrate(one(sig)) == 0
        assert integrate(theta(sig)) == 0

    def test_unpaired_zetas_vanish(self):
        sig = AlgebraSignature(1, (2, 1))
        # full e-part, eta powers at cap, but zetas from different factors
        elem = (
            theta(sig)
            * zeta_gen(sig, 1, 1)
            * zeta_gen(sig, 2, 2)
            * eta(sig, 1)
            * eta(sig, 2) ** 0
        )
        assert integrate(elem) == 0

    def test_paired_zetas(self):
        sig = AlgebraSignature(1, (1,))
        elem = theta(sig) * zeta_gen(sig, 1, 1) * zeta_gen(sig, 1, 2)
        assert integrate(elem) == 1

    def test_linearity(self):
        rng = random.Random(5)
        sig = AlgebraSignature(1, (1, 1))
        a, b = random_element(sig, rng), random_element(sig, rng)
        assert integrate(a + b) == integrate(a) + integrate(b)
        assert integrate(a * 7) == 7 * integrate(a)

    def test_fubini_on_split_monomials(self):
        # u purely Jacobian, v purely symmetric-product: the joint integral is
        # the product of the per-factor pairings (here 2 and 1, and 2 and -3).
        g = 2
        sig = AlgebraSignature(g, (2,))
        u = theta(sig) ** g
        v = zeta_gen(sig, 1, 1) * zeta_gen(sig, 1, 3) * eta(sig, 1)
        assert integrate(theta(AlgebraSignature(g, (0,))) ** g) == 2
        assert integrate(u * v) == 2
        assert integrate(u * (v * (-3))) == -6

    @pytest.mark.parametrize("seed", range(8))
    def test_integrate_product_matches_full_product(self, seed):
        rng = random.Random(300 + seed)
        sig = AlgebraSignature(2, (2, 1))
        a = random_element(sig, rng, n_terms=6)
        b = random_element(sig, rng, n_terms=6)
        assert integrate_product(a, b) == integrate(a * b)

    def test_integrate_product_genus0(self):
        sig = AlgebraSignature(0, (2, 1))
        a = (one(sig) + eta(sig, 1)) ** 2
        b = eta(sig, 2) * eta(sig, 1)
        assert integrate_product(a, b) == integrate(a * b)
