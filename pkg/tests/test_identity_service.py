import unittest
from fractions import Fraction

import mpmath

from zetalab.exceptions import DivergentTermError, DomainError
from zetalab.services.identity_service import (
    CORRECTED_PASSES, PASS, UNDEFINED, fit_polynomial, identity_service,
)
from zetalab.utils.exactnum import bernoulli
from zetalab.utils.specfun import PiGraded, PrecisionContext

CTX = PrecisionContext(20)


class PolynomialFitTests(unittest.TestCase):

    def test_quadratic(self):
        self.assertEqual(fit_polynomial(lambda n: Fraction(n * n + 1), 1), (1, 0, 1))

    def test_constant(self):
        self.assertEqual(fit_polynomial(lambda n: Fraction(-3, 2), 3), (Fraction(-3, 2),))

    def test_no_fit(self):
        with self.assertRaises(DomainError):
            fit_polynomial(lambda n: Fraction(2) ** n, 1, max_degree=3)


class ExactIdentityTests(unittest.TestCase):

    def test_passing_sweeps(self):
        for identity_id in ('I26', 'I27', 'I28', 'I31', 'I32', 'I34', 'I36', 'I37'):
            with self.subTest(identity=identity_id):
                spec = identity_service.get(identity_id)
                report = identity_service.sweep_identity(identity_id, range(spec.minimum, spec.minimum + 12))
                self.assertEqual(report.verdict, PASS)
                self.assertTrue(all(i.residual == 0 for i in report.instances))

    def test_i27_numeric_consistency(self):
        instance = identity_service.evaluate_identity('I27', 3)
        with mpmath.workdps(50):
            numeric = mpmath.fsum(mpmath.zeta(2 * k) * mpmath.zeta(8 - 2 * k) for k in range(0, 4))
            self.assertLess(abs(instance.lhs.to_mpf() - numeric), mpmath.mpf(10) ** -40)

    def test_gosper_value(self):
        self.assertEqual(identity_service.evaluate_identity('I31', 4).lhs, Fraction(1, 240))

    def test_half_integer_eta(self):
        instance = identity_service.evaluate_identity('I36', 1)
        self.assertEqual(instance.lhs, PiGraded({6: Fraction(1, 8)}))
        self.assertTrue(instance.holds)

    def test_euler_numbers_identity(self):
        instance = identity_service.evaluate_identity('I37', 1)
        self.assertEqual(instance.lhs, 6)
        self.assertEqual(instance.rhs, 6)

    def test_below_minimum(self):
        with self.assertRaises(DomainError):
            identity_service.evaluate_identity('I32', 2)

    def test_unknown(self):
        with self.assertRaises(DomainError):
            identity_service.get('I99')


class ErrataIdentityTests(unittest.TestCase):

    def test_i29(self):
        instance = identity_service.evaluate_identity('I29', 1)
        self.assertEqual(instance.residual, PiGraded({4: Fraction(1, 1440)}))
        report = identity_service.sweep_identity('I29', range(1, 11))
        self.assertEqual(report.verdict, CORRECTED_PASSES)
        self.assertEqual(report.corrected_id, 'I29-corrected')
        corrected = identity_service.get('I29-corrected')
        self.assertEqual(corrected.corrected_of, 'I29')
        self.assertTrue(identity_service.evaluate_identity('I29-corrected', 1).holds)

    def test_i30(self):
        self.assertEqual(identity_service.evaluate_identity('I30', 1).residual, Fraction(1, 240))
        report = identity_service.sweep_identity('I30', range(1, 11))
        self.assertEqual(report.verdict, CORRECTED_PASSES)
        self.assertEqual(report.corrected_verdict, PASS)

    def test_i30_correction_coefficient(self):
        corrected = identity_service.derive_corrected('I30')
        for n in range(1, 8):
            instance = identity_service.evaluate_identity(corrected.id, n)
            self.assertEqual(instance.rhs, -(2 * n + 1) * bernoulli(2 * n + 2))
            self.assertTrue(instance.holds)

    def test_i33(self):
        self.assertEqual(identity_service.evaluate_identity('I33', 3).residual, Fraction(901, 10800))
        report = identity_service.sweep_identity('I33', range(3, 15))
        self.assertEqual(report.verdict, CORRECTED_PASSES)
        instance = identity_service.evaluate_identity('I33-corrected', 3)
        self.assertEqual(instance.rhs, Fraction(-1, 4))

    def test_i35(self):
        residual = identity_service.evaluate_identity('I35', 2).residual
        self.assertEqual(residual, PiGraded({0: Fraction(7, 10), 8: Fraction(1, 450)}))
        report = identity_service.sweep_identity('I35', range(2, 14))
        self.assertEqual(report.verdict, CORRECTED_PASSES)
        self.assertEqual(identity_service.evaluate_identity('I35-corrected', 2).rhs, Fraction(7, 10))

    def test_no_correction_for_passing_identity(self):
        with self.assertRaises(DomainError):
            identity_service.derive_corrected('I28')


class NumericIdentityTests(unittest.TestCase):

    def test_i44_odd_only(self):
        report = identity_service.sweep_identity('I44', range(2, 8), CTX)
        self.assertEqual([i.n for i in report.instances], [3, 5, 7])
        self.assertEqual(report.verdict, PASS)
        with self.assertRaises(DomainError):
            identity_service.evaluate_identity('I44', 4, CTX)

    def test_i44_empty_domain(self):
        with self.assertRaises(DomainError):
            identity_service.sweep_identity('I44', [2, 4], CTX)

    def test_i47(self):
        report = identity_service.sweep_identity('I47', range(2, 7), CTX)
        self.assertEqual(report.verdict, PASS)

    def test_numeric_needs_context(self):
        with self.assertRaises(DomainError):
            identity_service.evaluate_identity('I47', 3)

    def test_divergent_forms(self):
        with self.assertRaises(DivergentTermError):
            identity_service.evaluate_identity('I45', 5, CTX)
        report = identity_service.sweep_identity('I46', range(4, 9), CTX)
        self.assertEqual(report.verdict, UNDEFINED)
        self.assertEqual([i.n for i in report.instances], [4, 6, 8])
        self.assertIn('zeta(1)', report.instances[0].note)
        self.assertIsNone(report.corrected_id)


class ErrataLedgerTests(unittest.TestCase):

    def test_expansion_checks(self):
        checks = identity_service.expansion_checks(CTX, order=40)
        holding = {(c['check'], c['variant'], c['pattern']) for c in checks if c['matches']}
        self.assertIn(('T38', 'ix', 'alternating'), holding)
        self.assertNotIn(('T38', 'ix', 'plain'), holding)
        self.assertIn(('E43', 'ix', 'alternating'), holding)
        self.assertIn(('E43', 'real', 'negated'), holding)
        self.assertNotIn(('E43', 'real', 'plain'), holding)

    def test_ledger_entries(self):
        entries = identity_service.errata_report(CTX, include_representations=False)
        printed = {entry.printed_id for entry in entries}
        self.assertEqual(printed, {'I29', 'I30', 'I33', 'I35', 'I45', 'I46', 'T38', 'E43'})
        by_id = {entry.printed_id: entry for entry in entries}
        self.assertEqual(by_id['I30'].residual, Fraction(1, 240))
        self.assertEqual(by_id['I30'].corrected_verdict, PASS)
        self.assertIsNone(by_id['I45'].residual)


if __name__ == '__main__':
    unittest.main()
