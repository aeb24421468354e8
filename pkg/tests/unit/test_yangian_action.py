import os
import unittest
from fractions import Fraction
from unittest.mock import patch

from models.polynomial import ParamPoly
from services.lie_basis import BasisConventionError, ModifiedLabel, modified_principal, principal_matrix
from services.verify_service import SuiteConfig, run_suite
from services.yangian_action import (delta_j_linear, delta_j_of, delta_j_principal, delta_Jx_casimir,
                                     delta_Jx_explicit, spectrum, theorem_action, verify_bell, verify_casimir,
                                     verify_commutation_lemma, verify_coproduct, verify_j2_spectrum,
                                     verify_main_theorem)

SLOW = os.environ.get('RUN_SLOW_TESTS') == '1'


class TestTheoremAction(unittest.TestCase):
    def test_n2_example(self):
        """J(T[1,2]) on Ψ(1,1) at N=2 has coefficient a - b - 1"""
        a, b = ParamPoly.a(2), ParamPoly.b(2)
        coefficient, target = theorem_action(1, 2, 1, 1, 2)
        self.assertEqual(coefficient, a - b - 1)
        self.assertEqual(target, (1, 2))

    def test_row_shift(self):
        targets = [theorem_action(2, 1, k, m, 3)[1] for k in range(1, 4) for m in range(1, 4)]
        self.assertEqual(targets, [((k % 3) + 1, m) for k in range(1, 4) for m in range(1, 4)])

    def test_identity_label_rejected(self):
        with self.assertRaises(ValueError):
            theorem_action(1, 1, 1, 1, 3)
        with self.assertRaises(ValueError):
            delta_Jx_explicit(ModifiedLabel(3, 1, 1))


class TestCoproduct(unittest.TestCase):
    def test_linear_extension_matches_generators(self):
        label = ModifiedLabel(3, 2, 3)
        x = modified_principal(3, 2, 3)
        self.assertEqual(delta_j_linear(3, x), delta_Jx_casimir(label))

    def test_principal_generators_need_no_phase(self):
        for n in (2, 3):
            for i in range(n):
                for j in range(n):
                    if (i, j) == (0, 0):
                        continue
                    self.assertEqual(delta_j_principal(n, i, j),
                                     delta_j_of(n, principal_matrix(n, i, j)))

    def test_linear_extension_on_mixed_combination(self):
        n = 2
        x = principal_matrix(n, 1, 0) + principal_matrix(n, 0, 1).scale(3) + principal_matrix(n, 1, 1)
        self.assertEqual(delta_j_linear(n, x), delta_j_of(n, x))

    def test_linear_extension_needs_traceless(self):
        with self.assertRaises(ValueError):
            delta_j_linear(2, modified_principal(2, 1, 1))

    def test_suites_pass(self):
        for n in (2, 3):
            for suite in (verify_main_theorem, verify_coproduct, verify_bell):
                report = suite(n)
                self.assertTrue(report.passed, (suite.__name__, n, [i.id for i in report.failures]))

    @unittest.skipUnless(SLOW, 'set RUN_SLOW_TESTS=1 for the N=4,5 sweeps')
    def test_main_theorem_larger_n(self):
        for n in (4, 5):
            self.assertTrue(verify_main_theorem(n).passed)
            self.assertTrue(verify_coproduct(n).passed)


class TestCasimirs(unittest.TestCase):
    def test_spectrum_suites(self):
        for n in (2, 3):
            for suite in (verify_j2_spectrum, verify_casimir, verify_commutation_lemma):
                report = suite(n)
                self.assertTrue(report.passed, (suite.__name__, n, [i.id for i in report.failures]))

    def test_adjoint_casimir_constant(self):
        report = verify_j2_spectrum(2)
        self.assertEqual(report.extras['derived'],
                         {'adjoint_casimir_c': '4', 'antipode_shift_c_over_4': '1'})

    def test_scalar_locus_n2(self):
        record = spectrum(2, Fraction(1, 2), Fraction(-1, 2), check_operator=True)
        self.assertTrue(record.scalar)
        self.assertEqual(record.rho, 0)
        self.assertTrue(record.checked_against_operator)
        self.assertEqual(record.j2[0]['value'], record.j2[1]['value'])

    def test_zero_parameters(self):
        for n in (2, 3, 4):
            record = spectrum(n, 0, 0)
            values = {entry['on']: entry['value'] for entry in record.j2}
            self.assertEqual(values['Vad'], Fraction(-n, 4))
            self.assertEqual(values['V0'], Fraction(-n * (n * n - 1), 4))
            self.assertFalse(record.scalar)

    def test_generic_pair_is_not_scalar(self):
        record = spectrum(3, 1, 0, check_operator=True)
        self.assertFalse(record.scalar)
        self.assertIsNone(record.rho)
        self.assertTrue(record.checked_against_operator)
        self.assertEqual([entry['multiplicity'] for entry in record.j2], [1, 8])
        self.assertEqual(record.to_dict()['i2'][1]['value'], '6/1')

    def test_basis_independence_item(self):
        report = verify_j2_spectrum(2)
        self.assertEqual(report.items[0].id, 'basis-independence')
        self.assertTrue(report.items[0].passed)

    def test_construction_errors_are_not_verdicts(self):
        with patch('services.yangian_action.casimir_J2_principal',
                   side_effect=BasisConventionError('T[2,1] differs')):
            report = run_suite('j2', 2, SuiteConfig(ns=[2], suites=['j2']))
        self.assertEqual([item.id for item in report.items], ['j2:error'])
        self.assertIn('BasisConventionError', report.items[0].lhs)

    @unittest.skipUnless(SLOW, 'set RUN_SLOW_TESTS=1 for N=4')
    def test_casimir_n4(self):
        self.assertTrue(verify_casimir(4).passed)
        self.assertTrue(verify_commutation_lemma(4).passed)


if __name__ == '__main__':
    unittest.main()
