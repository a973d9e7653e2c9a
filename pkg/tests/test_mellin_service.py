import unittest
from fractions import Fraction

import mpmath

from zetalab.exceptions import DomainError
from zetalab.services.mellin_service import QuadratureConfig, TailTerm, mellin_service
from zetalab.utils.specfun import PrecisionContext

CFG = QuadratureConfig(ctx=PrecisionContext(20))


class TailTermTests(unittest.TestCase):

    def test_power_tail(self):
        with mpmath.workdps(30):
            value = TailTerm(1).integral(-3, 10)
            self.assertLess(abs(value - mpmath.mpf(1) / 200), mpmath.mpf(10) ** -25)

    def test_log_tail(self):
        with mpmath.workdps(30):
            # int_T^oo ln(x) / x^2 dx = (ln T + 1) / T
            value = TailTerm(1, 0, 1).integral(-2, 10)
            expected = (mpmath.log(10) + 1) / 10
            self.assertLess(abs(value - expected), mpmath.mpf(10) ** -25)

    def test_divergent_tail(self):
        with self.assertRaises(DomainError):
            TailTerm(1, 1).integral(-2, 10)


class RegistryTests(unittest.TestCase):

    def test_registry_ids(self):
        ids = [rep.id for rep in mellin_service.registry()]
        self.assertEqual(ids, ['R1', 'R2', 'R3', 'R7', 'R8', 'R9', 'R10', 'R11', 'R12', 'R13', 'R38', 'R42', 'ROB'])

    def test_unknown_id(self):
        with self.assertRaises(DomainError):
            mellin_service.get('R99')

    def test_default_grid_skips_excluded_point(self):
        grid = mellin_service.default_grid(mellin_service.get('R2'))
        self.assertEqual(grid, [Fraction(-2, 3), Fraction(-1, 3), Fraction(1, 12), Fraction(1, 3), Fraction(2, 3)])

    def test_outside_strip(self):
        with self.assertRaises(DomainError):
            mellin_service.integrate(mellin_service.get('R8'), Fraction(5, 2), CFG)

    def test_excluded_point(self):
        with self.assertRaises(DomainError):
            mellin_service.integrate(mellin_service.get('R2'), 0, CFG)

    def test_integrand_uses_series_near_zero(self):
        rep = mellin_service.get('R9')
        with mpmath.workdps(30):
            x = mpmath.mpf('0.05')
            direct = rep.direct(x, mpmath.mpf(1))
            value = mellin_service.integrand_value(rep, x, 1, CFG)
            self.assertLess(abs(value - direct), mpmath.mpf(10) ** -15)

    def test_r1_series_near_zero(self):
        rep = mellin_service.get('R1')
        with mpmath.workdps(30):
            x, s = mpmath.mpf('0.05'), mpmath.mpf('1.5')
            value = mellin_service.integrand_value(rep, x, s, CFG)
            self.assertLess(abs(value - rep.direct(x, s)), mpmath.mpf(10) ** -25)

    def test_series_starts_at_small_x_exponent(self):
        ctx = PrecisionContext(20)
        for rep in mellin_service.registry():
            with self.subTest(rep=rep.id):
                s = mellin_service.default_grid(rep)[2]
                terms = rep.near_terms(s, ctx, 20)
                self.assertEqual(terms[0][0], rep.small_x_exponent)
                self.assertNotEqual(terms[0][1], 0)


class VerificationTests(unittest.TestCase):

    def test_single_points(self):
        cases = {'R2': Fraction(1, 2), 'R3': Fraction(1, 2), 'R7': Fraction(1, 2),
                 'R9': Fraction(1), 'R10': Fraction(1), 'R13': Fraction(1, 2)}
        for rep_id, s in cases.items():
            with self.subTest(rep=rep_id):
                report = mellin_service.verify_representation(mellin_service.get(rep_id), [s], CFG)
                self.assertTrue(report.passed, report.max_residual)

    def test_digamma_representation(self):
        report = mellin_service.verify_representation(mellin_service.get('R38'), [Fraction(1, 2)], CFG)
        self.assertTrue(report.passed, report.max_residual)

    def test_report_dict(self):
        report = mellin_service.verify_representation(mellin_service.get('R2'), [Fraction(1, 2)], CFG)
        data = report.to_dict()
        self.assertEqual(data['id'], 'R2')
        self.assertTrue(data['pass'])
        self.assertEqual(len(data['points']), 1)

    def test_printed_prefactor_fails(self):
        rep = mellin_service.get('R11')
        printed = mellin_service.evaluate_point(rep, Fraction(1), CFG, prefactor=rep.printed_prefactor)
        verified = mellin_service.evaluate_point(rep, Fraction(1), CFG)
        self.assertGreater(printed.residual, 1)
        self.assertLess(verified.residual, CFG.tolerance)

    def test_bridge(self):
        residual = mellin_service.bridge_residual(Fraction(1, 2), CFG)
        self.assertLess(residual, mpmath.mpf(10) ** -10)


class QuadratureAccuracyTests(unittest.TestCase):
    """Default grids at 30 digits, including the points next to the top of each strip"""

    cfg = QuadratureConfig(ctx=PrecisionContext(30))

    def test_every_entry_on_default_grid(self):
        for rep in mellin_service.registry():
            with self.subTest(rep=rep.id):
                report = mellin_service.verify_representation(rep, cfg=self.cfg)
                self.assertEqual(len(report.points), 5)
                self.assertTrue(report.passed, f"{rep.id}: {mpmath.nstr(report.max_residual, 5)}")

    def test_error_bound_covers_actual_error_at_top_of_strip(self):
        ctx = self.cfg.ctx
        for rep in mellin_service.registry():
            if rep.id == 'R42':
                continue  # chi(s) on the left is itself a truncated sum
            with self.subTest(rep=rep.id):
                s = mellin_service.default_grid(rep)[-1]
                result = mellin_service.integrate(rep, s, self.cfg)
                with ctx.workdps():
                    s_value = mpmath.mpf(s.numerator) / s.denominator
                    exact = rep.lhs(s_value, ctx) / rep.prefactor(s_value)
                    self.assertLessEqual(abs(result.value - exact), result.error_bound)
                    self.assertLess(result.error_bound, ctx.tolerance(5))

    def test_doubled_cutoff_and_halved_panels_agree(self):
        finer = QuadratureConfig(ctx=self.cfg.ctx, cutoff_scale=2, panel_width=1)
        cases = (('R8', Fraction(5, 3)), ('R1', Fraction(11, 6)), ('R7', Fraction(5, 6)), ('R38', Fraction(1, 2)))
        for rep_id, s in cases:
            with self.subTest(rep=rep_id):
                rep = mellin_service.get(rep_id)
                base = mellin_service.integrate(rep, s, self.cfg)
                other = mellin_service.integrate(rep, s, finer)
                self.assertEqual(other.cutoff, 2 * base.cutoff)
                with self.cfg.ctx.workdps():
                    self.assertLessEqual(abs(base.value - other.value), base.error_bound + other.error_bound)

    def test_verify_all_uses_requested_grid_size(self):
        reports = mellin_service.verify_all(15, ids=['R2', 'R9'], points=2)
        self.assertEqual([r.id for r in reports], ['R2', 'R9'])
        self.assertEqual([len(r.points) for r in reports], [2, 2])
        self.assertTrue(all(r.passed for r in reports))

    def test_verify_all_rejects_empty_grid(self):
        with self.assertRaises(DomainError):
            mellin_service.verify_all(15, ids=['R2'], points=0)


if __name__ == '__main__':
    unittest.main()
