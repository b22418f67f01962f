"""Family constructors: recurrence and generating-function routes must agree,
companion sequences obey their shifted recurrence, and the hypergeometric
sums match hand-computed values."""

import math
from fractions import Fraction as F

import pytest

from dops.families import (
    FamilyParamError,
    HypParams,
    LagParams,
    MLParams,
    hyp_laguerre,
    hyp_quasi,
    laguerre_q_sequence,
    laguerre_type_by_gf,
    laguerre_type_by_recurrence,
    ml_by_gf,
    ml_by_recurrence,
    ml_q_sequence,
    ml_sequence_from_coefficients,
)
from dops.polynomials import Poly, binomial, delta_w

X = Poly.x()

ML_GRID = [
    MLParams(1, 1, -1),
    MLParams(1, 2, F(1, 2)),
    MLParams(1, 0, -1),
    MLParams(1, F(1, 3), F(-2, 5)),
    MLParams(2, 1, -1, [1]),
    MLParams(2, 2, F(1, 2), [F(-1, 3)]),
    MLParams(2, 0, -1, [F(1, 2)]),
    MLParams(3, 1, -1, [1, F(1, 2)]),
    MLParams(3, 2, F(1, 2), [F(-1, 3), F(1, 5)]),
    MLParams(3, 0, -1, [F(1, 2), -1]),
]

LAG_GRID = [
    LagParams(1, 1),
    LagParams(1, 1, -1),
    LagParams(2, F(1, 2), F(-3, 2), 0, [1, F(1, 3)]),
    LagParams(2, 1, -2, F(1, 2), [0, 1]),
    LagParams(3, F(2, 3), F(5, 4), F(-1, 3), [1, F(1, 2), F(-2, 5)]),
]


class TestMLParams:
    def test_rejects_equal_ratio_parameters(self):
        with pytest.raises(FamilyParamError, match="alpha must differ from beta"):
            MLParams(1, 1, 1)

    def test_requires_matching_c_length(self):
        with pytest.raises(FamilyParamError):
            MLParams(2, 1, -1)
        with pytest.raises(FamilyParamError):
            MLParams(1, 1, -1, [1])

    def test_b_conversion(self):
        p = MLParams(3, 1, -1, [F(1, 2), F(1, 3)])
        assert p.b(0) == F(1, 2)       # 1! c_1
        assert p.b(1) == 2 * F(1, 3)   # 2! c_2
        assert p.b(2) == 0             # zero from d-1 on
        assert p.b(5) == 0


class TestMLFamilies:
    def test_classical_values(self):
        polys = ml_by_recurrence(MLParams(1, 1, -1), 4)
        assert polys[0] == Poly.one()
        assert polys[1] == X
        assert polys[2] == Poly([0, 0, 1])
        assert polys[3] == Poly([0, 2, 0, 1])
        assert polys[4] == Poly([0, 0, 8, 0, 1])

    def test_initial_data(self):
        p = MLParams(2, 2, F(1, 2), [F(3, 7)])
        polys = ml_by_recurrence(p, 1)
        assert polys[0] == Poly.one()
        assert polys[1] == X + Poly.const(p.b(0))

    def test_order_zero(self):
        assert ml_by_gf(MLParams(1, 1, -1), 0) == [Poly.one()]

    @pytest.mark.parametrize("p", ML_GRID, ids=str)
    def test_routes_agree(self, p):
        assert ml_by_recurrence(p, 15) == ml_by_gf(p, 15)

    @pytest.mark.parametrize("p", ML_GRID, ids=str)
    def test_monic_of_full_degree(self, p):
        for n, poly in enumerate(ml_by_recurrence(p, 12)):
            assert poly.degree == n
            assert poly.is_monic()

    def test_charlier_limit_is_appell(self):
        p = MLParams(2, 0, -1, [F(1, 2)])
        polys = ml_by_gf(p, 10)
        for n in range(10):
            assert delta_w(polys[n + 1], p.w) == polys[n] * (n + 1)


class TestMLCompanions:
    def test_classical_companions(self):
        p = MLParams(1, 1, -1)
        q = ml_q_sequence(ml_by_recurrence(p, 4), p.w)
        assert q[0] == Poly.one()
        assert q[1] == Poly([1, 1])
        assert q[2] == Poly([2, 2, 1])

    def test_appell_companions_equal_family(self):
        p = MLParams(1, 0, -1)
        polys = ml_by_recurrence(p, 8)
        assert ml_q_sequence(polys, p.w) == polys[:-1]

    @pytest.mark.parametrize("p", ML_GRID, ids=str)
    def test_companion_band_recurrence(self, p):
        # The companion sequence satisfies the same band recurrence with the
        # constant term shifted by alpha and the two-back bracket advanced by
        # one step of alpha*beta.
        n_max = 13
        q = ml_q_sequence(ml_by_recurrence(p, n_max), p.w)
        alpha, beta = p.alpha, p.beta
        for n in range(len(q) - 1):
            nxt = (X + Poly.const((alpha + beta) * n + p.b(0) + alpha)) * q[n]
            if n >= 1:
                nxt -= q[n - 1] * (n * (n * alpha * beta + (alpha + beta) * p.b(0) - p.b(1)))
            for k in range(2, min(n, p.d) + 1):
                coef = (p.b(k) - (alpha + beta) * k * p.b(k - 1)
                        + alpha * beta * k * (k - 1) * p.b(k - 2))
                nxt += q[n - k] * (binomial(n, k) * coef)
            assert q[n + 1] == nxt, f"companion recurrence broke at n={n}"

    @pytest.mark.parametrize("p", ML_GRID, ids=str)
    def test_companions_monic(self, p):
        for n, poly in enumerate(ml_q_sequence(ml_by_recurrence(p, 10), p.w)):
            assert poly.degree == n
            assert poly.is_monic()


class TestLaguerreFamilies:
    def test_normalization(self):
        assert laguerre_type_by_gf(LagParams(2, 1, 3, F(5, 7), [1, 2]), 0) == [Poly.one()]

    def test_degree_one(self):
        p = LagParams(2, F(1, 2), F(2, 3), F(-1, 5), [4, F(1, 6)])
        expect = X + Poly.const(p.a * (p.theta - p.beta_exp) + p.b[1])
        assert laguerre_type_by_gf(p, 1)[1] == expect
        assert laguerre_type_by_recurrence(p, 1)[1] == expect

    def test_plain_exponential_case(self):
        assert laguerre_type_by_gf(LagParams(1, 1), 2)[2] == Poly([0, 2, 1])

    @pytest.mark.parametrize("p", LAG_GRID, ids=str)
    def test_routes_agree(self, p):
        assert laguerre_type_by_recurrence(p, 12) == laguerre_type_by_gf(p, 12)

    @pytest.mark.parametrize("p", LAG_GRID, ids=str)
    def test_monic_of_full_degree(self, p):
        for n, poly in enumerate(laguerre_type_by_recurrence(p, 10)):
            assert poly.degree == n
            assert poly.is_monic()

    def test_b0_only_affects_removed_constant(self):
        base = LagParams(2, 1, -2, 0, [0, 1])
        moved = LagParams(2, 1, -2, 0, [F(7, 3), 1])
        assert laguerre_type_by_gf(base, 8) == laguerre_type_by_gf(moved, 8)

    def test_theta_is_an_x_shift(self):
        from dops.polynomials import shift
        p = LagParams(2, 1, -2, F(1, 2), [0, 1])
        base = laguerre_type_by_recurrence(LagParams(2, 1, -2, 0, [0, 1]), 8)
        shifted = laguerre_type_by_recurrence(p, 8)
        for n in range(9):
            assert shifted[n] == shift(base[n], p.a * p.theta)

    def test_derivative_companions_shift_exponent(self):
        # Q_n = P'_{n+1}/(n+1) is the family with beta_exp lowered by one.
        p = LagParams(2, F(1, 2), F(-3, 2), 0, [1, F(1, 3)])
        lowered = LagParams(2, F(1, 2), F(-5, 2), 0, [1, F(1, 3)])
        q = laguerre_q_sequence(laguerre_type_by_recurrence(p, 9))
        assert q == laguerre_type_by_recurrence(lowered, 8)

    def test_rejects_zero_scale(self):
        with pytest.raises(FamilyParamError, match="a must be nonzero"):
            LagParams(1, 0)


class TestConfluentLimit:
    @pytest.mark.parametrize("d,a,c", [
        (1, F(1, 2), []),
        (2, 1, [F(1, 3)]),
        (2, F(-2, 3), [F(1, 2)]),
    ])
    def test_equal_ratio_parameters_give_laguerre(self, d, a, c):
        # The band recurrence coefficients are polynomial in (alpha, beta), so
        # their value at the confluent point alpha = beta = a is the exact
        # w -> 0 limit; it must coincide with the derivative-operator family
        # under b_i = i! c_i, beta_exp = 0, theta = 0.
        def b(k):
            return math.factorial(k + 1) * c[k] if 0 <= k < len(c) else F(0)

        confluent = ml_sequence_from_coefficients(a, a, b, 8, d)
        lag_b = [F(0)] + [math.factorial(i) * c[i - 1] for i in range(1, d)]
        assert confluent == laguerre_type_by_recurrence(LagParams(d, a, 0, 0, lag_b), 8)


class TestHypFamilies:
    def test_base_cases(self):
        p = HypParams(2, [0, 0])
        assert hyp_laguerre(p, 0) == Poly.one()
        assert hyp_laguerre(p, 1) == Poly([1, -1])
        assert hyp_laguerre(p, 2) == Poly([1, -2, F(1, 4)])

    def test_quasi_base_cases(self):
        p = HypParams(1, [1])
        assert hyp_quasi(p, 0, 1, 0) == Poly.one()
        assert hyp_quasi(p, 0, 1, 1) == Poly([1, -1])

    def test_quasi_reduces_when_first_parameter_aligns(self):
        # With alpha_1 = beta + d*l the extra numerator cancels against the
        # alpha_1 denominator and the combination is the plain family with
        # beta in the first slot.
        p = HypParams(2, [F(5, 2), F(4, 3)])
        beta = p.alphavec[0] - 2  # d*l = 2
        reduced = HypParams(2, [beta, F(4, 3)])
        for n in range(7):
            assert hyp_quasi(p, beta, 1, n) == hyp_laguerre(reduced, n)

    def test_rejects_negative_integer_parameters(self):
        with pytest.raises(FamilyParamError):
            HypParams(1, [-2])
        with pytest.raises(FamilyParamError):
            hyp_quasi(HypParams(1, [1]), -3, 1, 2)

    def test_degree_and_value_at_zero(self):
        p = HypParams(2, [F(1, 2), F(4, 3)])
        for n in range(8):
            poly = hyp_laguerre(p, n)
            assert poly.degree == n
            assert poly(0) == 1
