import unittest
from fractions import Fraction

import mpmath

from zetalab.exceptions import SeriesError
from zetalab.utils.laurent import (
    TRIG_TAGS, FunctionKind, PowerSeries, cauchy_product, chi_series, closed_form_series,
    digamma_expansion_at, digamma_product_series, digamma_product_value, digamma_sym_series,
    evaluate_series, oracle_series, reciprocal_series,
)
from zetalab.utils.specfun import PrecisionContext

CTX = PrecisionContext(30)


class FunctionKindTests(unittest.TestCase):

    def test_parse(self):
        self.assertEqual(FunctionKind.parse('coth2'), FunctionKind('coth2'))
        self.assertEqual(FunctionKind.parse('digamma_at(3)').n, 3)
        self.assertEqual(FunctionKind.parse('digamma_at:-2').lowest, -1)
        self.assertEqual(FunctionKind.parse('CSCH').radius, 'pi')
        self.assertEqual(FunctionKind('sech').radius, 'pi/2')

    def test_unknown(self):
        with self.assertRaises(SeriesError):
            FunctionKind.parse('tanh')
        with self.assertRaises(SeriesError):
            FunctionKind('coth', 2)


class PowerSeriesTests(unittest.TestCase):

    def test_mixed_coefficients_rejected(self):
        with self.assertRaises(SeriesError):
            PowerSeries(0, (Fraction(1), mpmath.mpf(1)))

    def test_coefficient_beyond_order(self):
        series = PowerSeries(-1, (1, 0, 2))
        self.assertEqual(series.order, 2)
        self.assertEqual(series.coefficient(-3), 0)
        with self.assertRaises(SeriesError):
            series.coefficient(2)

    def test_reciprocal_of_zero_lead(self):
        with self.assertRaises(SeriesError):
            reciprocal_series(PowerSeries(0, (0, 1)))

    def test_reciprocal(self):
        one_minus_x = PowerSeries(0, (1, -1, 0, 0))
        self.assertEqual(reciprocal_series(one_minus_x).coeffs, (1, 1, 1, 1))

    def test_product_order(self):
        a = PowerSeries(-1, (1, 0, 1))
        b = PowerSeries(0, (1, 2, 3, 4))
        product = cauchy_product(a, b)
        self.assertEqual(product.lowest, -1)
        self.assertEqual(product.order, 2)
        self.assertEqual(product.coeffs, (1, 2, 4))


class TrigExpansionTests(unittest.TestCase):

    def test_coth4_constant(self):
        series = closed_form_series(FunctionKind('coth4'), 10)
        self.assertEqual(series.coefficient(0), Fraction(26, 45))
        self.assertEqual(series.coefficient(2), Fraction(64, 945))

    def test_sech(self):
        series = closed_form_series(FunctionKind('sech'), 8)
        self.assertEqual([series.coefficient(e) for e in (0, 2, 4, 6)],
                         [1, Fraction(-1, 2), Fraction(5, 24), Fraction(-61, 720)])

    def test_csch(self):
        series = closed_form_series(FunctionKind('csch'), 2)
        self.assertEqual(series.lowest, -1)
        self.assertEqual(series.coefficient(-1), 1)
        self.assertEqual(series.coefficient(1), Fraction(-1, 6))

    def test_coth2_and_coth3(self):
        self.assertEqual(closed_form_series(FunctionKind('coth2'), 4).coefficient(2), Fraction(1, 15))
        self.assertEqual(closed_form_series(FunctionKind('coth3'), 4).coefficient(1), Fraction(4, 15))

    def test_closed_forms_match_oracle(self):
        for tag in TRIG_TAGS:
            kind = FunctionKind(tag)
            with self.subTest(tag=tag):
                closed = closed_form_series(kind, 40)
                oracle = oracle_series(kind, 40)
                self.assertEqual(closed.lowest, oracle.lowest)
                self.assertEqual(closed.coeffs, oracle.coeffs)

    def test_coth2_minus_csch2_is_one(self):
        coth2 = closed_form_series(FunctionKind('coth2'), 40)
        csch2 = closed_form_series(FunctionKind('csch2'), 40)
        self.assertEqual(coth2.lowest, csch2.lowest)
        difference = {e: c - csch2.coefficient(e) for e, c in coth2.terms()}
        self.assertEqual(difference.pop(0), 1)
        self.assertTrue(all(c == 0 for c in difference.values()))

    def test_evaluation_inside_radius(self):
        series = closed_form_series(FunctionKind('csch'), 40)
        value, bound = evaluate_series(series, 1, CTX)
        with CTX.workdps():
            self.assertLess(abs(value - mpmath.csch(1)), bound + mpmath.mpf(10) ** -25)

    def test_evaluation_outside_radius(self):
        with self.assertRaises(SeriesError):
            evaluate_series(closed_form_series(FunctionKind('sech'), 10), 2, CTX)

    def test_pole_at_zero(self):
        with self.assertRaises(SeriesError):
            evaluate_series(closed_form_series(FunctionKind('coth'), 10), 0, CTX)


class DigammaExpansionTests(unittest.TestCase):

    def test_regular_point(self):
        series = digamma_expansion_at(1, 40, CTX)
        value, _ = evaluate_series(series, mpmath.mpf('0.1'), CTX)
        with CTX.workdps():
            self.assertLess(abs(value - mpmath.digamma(mpmath.mpf('1.1'))), mpmath.mpf(10) ** -25)

    def test_pole(self):
        series = digamma_expansion_at(-2, 40, CTX)
        self.assertEqual(series.lowest, -1)
        value, _ = evaluate_series(series, mpmath.mpf('0.1'), CTX)
        with CTX.workdps():
            self.assertLess(abs(value - mpmath.digamma(mpmath.mpf('-1.9'))), mpmath.mpf(10) ** -25)

    def test_shifted_expansions_at_40_digits(self):
        ctx = PrecisionContext(40)
        for n in (1, 3, -2):
            series = digamma_expansion_at(n, 60, ctx)
            for x in ('0.25', '-0.25'):
                with self.subTest(n=n, x=x):
                    value, _ = evaluate_series(series, mpmath.mpf(x), ctx)
                    with ctx.workdps():
                        self.assertLess(abs(value - mpmath.digamma(n + mpmath.mpf(x))), mpmath.mpf(10) ** -30)

    def test_symmetric_sum_alternates(self):
        x = mpmath.mpf('0.3')
        with CTX.workdps():
            direct = 2 * mpmath.re(mpmath.digamma(mpmath.mpc(0, x))) + 2 * mpmath.euler
        true_value, _ = evaluate_series(digamma_sym_series(60, CTX, 'alternating'), x, CTX)
        plain_value, _ = evaluate_series(digamma_sym_series(60, CTX, 'plain'), x, CTX)
        with CTX.workdps():
            self.assertLess(abs(true_value - direct), mpmath.mpf(10) ** -20)
            self.assertGreater(abs(plain_value - direct), mpmath.mpf(10) ** -4)

    def test_digamma_product_sign_patterns(self):
        order = 12
        ix = digamma_product_series(order, CTX, 'ix')
        real = digamma_product_series(order, CTX, 'real')
        alternating = chi_series(order, CTX, 'alternating')
        negated = chi_series(order, CTX, 'negated')
        with CTX.workdps():
            for e in range(0, order):
                self.assertLess(abs(ix.coefficient(e) - alternating.coefficient(e)), mpmath.mpf(10) ** -20, e)
                self.assertLess(abs(real.coefficient(e) - negated.coefficient(e)), mpmath.mpf(10) ** -20, e)

    def test_digamma_product_value(self):
        series = digamma_product_series(50, CTX, 'ix')
        value, _ = evaluate_series(series, mpmath.mpf('0.1'), CTX)
        with CTX.workdps():
            self.assertLess(abs(value - digamma_product_value('0.1', CTX, 'ix')), mpmath.mpf(10) ** -20)

    def test_chi_series_needs_order(self):
        with self.assertRaises(SeriesError):
            chi_series(1, CTX)


if __name__ == '__main__':
    unittest.main()
