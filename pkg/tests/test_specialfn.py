import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oscspec.specialfn import (AjSequence, a_coefficients, bessel_j,
                               bessel_j_grid, f_factor, laguerre,
                               log_factorial_ratio)


def laguerre_exact(k: int, m: int, x: Fraction) -> Fraction:
    """Independent oracle: explicit coefficients in exact rational arithmetic.

    L_k^{(m)}(x) = sum_{i=0}^k (-1)^i binom(k+m, k-i) x^i / i!
    """
    total = Fraction(0)
    for i in range(k + 1):
        total += (-1) ** i * Fraction(math.comb(k + m, k - i)) \
            * x**i / Fraction(math.factorial(i))
    return total


def bessel_series(n: int, x: float) -> float:
    """Ascending power series of J_n, for small arguments only."""
    total = 0.0
    term = (x / 2.0) ** n / math.factorial(n)
    for t in range(60):
        total += term
        term *= -(x / 2.0) ** 2 / ((t + 1) * (n + t + 1))
    return total


class TestLaguerre:
    def test_degree_zero(self):
        for m in (0, 3, 17):
            assert laguerre(0, m, 1.7) == 1.0

    def test_degree_one(self):
        assert laguerre(1, 0, 2.0) == pytest.approx(-1.0, abs=1e-15)

    def test_degree_two(self):
        # L_2^{(1)}(x) = 3 - 3x + x^2/2
        assert laguerre(2, 1, 0.5) == pytest.approx(1.625, abs=1e-14)

    def test_against_rational_oracle(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            k = int(rng.integers(0, 21))
            m = int(rng.integers(0, 21))
            num = int(rng.integers(-500, 501))
            x = Fraction(num, 10)  # |x| <= 50
            exact = float(laguerre_exact(k, m, x))
            got = laguerre(k, m, float(x))
            assert got == pytest.approx(exact, rel=1e-10, abs=1e-12)

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            laguerre(-1, 0, 1.0)
        with pytest.raises(ValueError):
            laguerre(1, 0, math.inf)


class TestBessel:
    def test_at_zero(self):
        assert bessel_j(0, 0.0) == 1.0
        assert bessel_j(3, 0.0) == 0.0

    def test_first_zero_of_j0(self):
        # locate the first zero of J_0 by bisection on the power series
        lo, hi = 2.0, 3.0
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            if bessel_series(0, lo) * bessel_series(0, mid) <= 0:
                hi = mid
            else:
                lo = mid
        root = 0.5 * (lo + hi)
        assert root == pytest.approx(2.404825557695773, abs=1e-12)
        assert abs(bessel_j(0, 2.404825557695773)) < 1e-10
        assert abs(bessel_j(0, root)) < 1e-10

    def test_matches_power_series(self):
        for n in range(11):
            for x in np.linspace(0.1, 10.0, 23):
                assert bessel_j(n, float(x)) == pytest.approx(
                    bessel_series(n, float(x)), abs=1e-10)

    def test_grid_matches_scalar(self):
        xs = np.linspace(0.3, 40.0, 50)
        vals = bessel_j_grid(4, xs)
        for x, v in zip(xs, vals):
            assert v == pytest.approx(bessel_j(4, float(x)), abs=1e-12)

    def test_unit_bound(self):
        rng = np.random.default_rng(3)
        for _ in range(100):
            n = int(rng.integers(0, 40))
            x = float(rng.uniform(0, 200))
            assert abs(bessel_j(n, x)) <= 1.0 + 1e-12

    def test_decay_bound(self):
        # |J_n(x)| <= 4 x^(-1/2) for x >= 2n (sampled; the full grid is in
        # the acceptance suite)
        for n in (0, 5, 20, 50):
            xs = np.linspace(max(2 * n, 0.1), 2 * n + 100, 101)
            vals = bessel_j_grid(n, xs)
            assert np.all(np.abs(vals) <= 4.0 / np.sqrt(xs) + 1e-14)

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            bessel_j(-1, 1.0)
        with pytest.raises(ValueError):
            bessel_j(0, -1.0)
        with pytest.raises(ValueError):
            bessel_j(10**6 + 1, 1.0)


class TestLogFactorialRatio:
    def test_empty_product(self):
        assert log_factorial_ratio(5, 5) == 0.0

    def test_small_cases(self):
        assert log_factorial_ratio(0, 2) == pytest.approx(-0.5 * math.log(2))
        assert log_factorial_ratio(10, 12) == pytest.approx(
            -0.5 * (math.log(11) + math.log(12)))

    def test_precondition(self):
        with pytest.raises(ValueError):
            log_factorial_ratio(3, 2)


class TestFFactor:
    def test_known_values(self):
        assert f_factor(7, 7) == 1.0
        assert f_factor(0, 1) == pytest.approx(1.0, rel=1e-14)
        assert f_factor(0, 2) == pytest.approx(8.0 / 9.0, rel=1e-13)

    def test_range(self):
        rng = np.random.default_rng(11)
        for _ in range(300):
            kp = int(rng.integers(0, 501))
            k = int(rng.integers(0, kp + 1))
            f = f_factor(k, kp)
            assert 0.0 < f <= 1.0 + 1e-13

    def test_precondition(self):
        with pytest.raises(ValueError):
            f_factor(3, 1)


class TestAjCoefficients:
    def test_leading_values(self):
        for k, kp in ((0, 0), (3, 9), (5, 5)):
            seq = a_coefficients(k, kp, 2)
            assert seq.values[0] == 1.0
            assert seq.values[1] == 0.0
            assert seq.values[2] == pytest.approx(0.5 * (kp - k + 1))

    def test_a3_for_equal_indices(self):
        # j=2: 3 A_3 = (2 + 0) A_1 - 11 A_0 = -11
        seq = a_coefficients(5, 5, 3)
        assert seq.values[3] == pytest.approx(-11.0 / 3.0, rel=1e-15)

    @given(k=st.integers(0, 60), dm=st.integers(0, 40), jmax=st.integers(3, 40))
    @settings(max_examples=60, deadline=None)
    def test_recurrence_invariant(self, k, dm, jmax):
        kp = k + dm
        seq = a_coefficients(k, kp, jmax)
        assert isinstance(seq, AjSequence)
        a = seq.values
        for j in range(2, jmax):
            lhs = (j + 1) * a[j + 1]
            rhs = (j + kp - k) * a[j - 1] - (kp + k + 1) * a[j - 2]
            assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-9)

    def test_growth_bound(self):
        # |A_j| <= (k'+k+1)^(j/3) for k' >= 2 and 0 <= k'-k <= k'^(2/3)
        rng = np.random.default_rng(5)
        for _ in range(100):
            kp = int(rng.integers(2, 2000))
            dm = int(rng.integers(0, int(kp ** (2.0 / 3.0)) + 1))
            k = kp - dm
            if k < 0:
                continue
            seq = a_coefficients(k, kp, 60)
            s = kp + k + 1
            for j, aj in enumerate(seq.values):
                assert abs(aj) <= s ** (j / 3.0) * (1 + 1e-12)
