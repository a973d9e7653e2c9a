import unittest
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import mpmath

from zetalab.exceptions import DomainError
from zetalab.utils.exactnum import bernoulli, binomial, euler_number, harmonic
from zetalab.utils.specfun import PrecisionContext, eta_half, to_mpf


class BernoulliTests(unittest.TestCase):

    def test_small_values(self):
        self.assertEqual(bernoulli(0), 1)
        self.assertEqual(bernoulli(1), Fraction(-1, 2))
        self.assertEqual(bernoulli(2), Fraction(1, 6))
        self.assertEqual(bernoulli(4), Fraction(-1, 30))
        self.assertEqual(bernoulli(12), Fraction(-691, 2730))

    def test_odd_indices_vanish(self):
        for n in (3, 5, 7, 51):
            self.assertEqual(bernoulli(n), 0)

    def test_b40(self):
        self.assertEqual(bernoulli(40), Fraction(-261082718496449122051, 13530))

    def test_recurrence_holds(self):
        for m in range(1, 30):
            total = sum(binomial(m + 1, k) * bernoulli(k) for k in range(m + 1))
            self.assertEqual(total, 0, m)

    def test_matches_zeta_at_200_digits(self):
        with mpmath.workdps(200):
            for n in range(1, 61):
                value = (-1) ** (n - 1) * 2 * mpmath.factorial(2 * n) * mpmath.zeta(2 * n) / (2 * mpmath.pi) ** (2 * n)
                exact = to_mpf(bernoulli(2 * n))
                self.assertLess(abs(value - exact), mpmath.mpf(10) ** -180 * abs(exact), n)

    def test_negative_index_rejected(self):
        with self.assertRaises(DomainError):
            bernoulli(-1)

    def test_concurrent_access_agrees(self):
        indices = list(range(0, 120, 2))
        with ThreadPoolExecutor(max_workers=8) as pool:
            results = list(pool.map(bernoulli, indices * 4))
        expected = [bernoulli(n) for n in indices] * 4
        self.assertEqual(results, expected)


class EulerNumberTests(unittest.TestCase):

    def test_known_values(self):
        self.assertEqual([euler_number(n) for n in (0, 2, 4, 6, 8)], [1, -1, 5, -61, 1385])

    def test_e20(self):
        self.assertEqual(euler_number(20), 370371188237525)

    def test_odd_indices_vanish(self):
        self.assertEqual(euler_number(7), 0)

    def test_recurrence_holds(self):
        # sum_k C(2n, 2k) E_2k = 0 for n >= 1
        for n in range(1, 61):
            total = sum(binomial(2 * n, 2 * k) * euler_number(2 * k) for k in range(n + 1))
            self.assertEqual(total, 0, n)

    def test_matches_eta_half(self):
        ctx = PrecisionContext(60)
        with ctx.workdps():
            for n in range(16):
                value = (-1) ** n * 2 * mpmath.factorial(2 * n) * eta_half(2 * n + 1, ctx) / mpmath.pi ** (2 * n + 1)
                exact = to_mpf(euler_number(2 * n))
                self.assertLess(abs(value - exact), mpmath.mpf(10) ** -50 * abs(exact), n)


class HarmonicTests(unittest.TestCase):

    def test_values(self):
        self.assertEqual(harmonic(1), 1)
        self.assertEqual(harmonic(4), Fraction(25, 12))
        self.assertEqual(harmonic(3, 2), Fraction(49, 36))

    def test_empty_sum(self):
        self.assertEqual(harmonic(0, 5), 0)

    def test_bad_order(self):
        with self.assertRaises(DomainError):
            harmonic(3, 0)

    def test_successive_difference(self):
        for k in range(1, 6):
            for n in range(1, 31):
                self.assertEqual(harmonic(n, k) - harmonic(n - 1, k), Fraction(1, n ** k), (n, k))


class BinomialTests(unittest.TestCase):

    def test_values(self):
        self.assertEqual(binomial(6, 2), 15)
        self.assertEqual(binomial(5, 0), 1)

    def test_k_above_n(self):
        with self.assertRaises(DomainError):
            binomial(2, 3)


if __name__ == '__main__':
    unittest.main()
