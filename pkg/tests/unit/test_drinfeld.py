import itertools
import os
import unittest
from fractions import Fraction

from models.matrix import Matrix
from models.report import SuiteReport
from services.drinfeld import (DrinfeldChecker, _item, degenerate_triples, matrix_ratio,
                               symmetrized_product, verify_drinfeld_relations)
from services.lie_basis import modified_principal, unit_matrix

SLOW = os.environ.get('RUN_SLOW_TESTS') == '1'


class TestSymmetrizer(unittest.TestCase):
    def test_invariant_under_permutation(self):
        x, y, z = unit_matrix(3, 1, 2), unit_matrix(3, 2, 3), modified_principal(3, 2, 1)
        reference = symmetrized_product(x, y, z)
        for p, q, r in itertools.permutations((x, y, z)):
            self.assertEqual(symmetrized_product(p, q, r), reference)

    def test_cube_of_one_matrix(self):
        """{x, x, x} = x³/4 since the six orderings coincide"""
        x = modified_principal(2, 1, 2)
        self.assertEqual(symmetrized_product(x, x, x), (x @ x @ x).scale(Fraction(1, 4)))


class TestMatrixRatio(unittest.TestCase):
    def test_proportional_sides(self):
        m = modified_principal(3, 2, 2)
        self.assertEqual(matrix_ratio(m.scale(3), m), '3')
        self.assertIsNone(matrix_ratio(m, modified_principal(3, 1, 2)))
        self.assertIsNone(matrix_ratio(m, Matrix.zeros(3, 3)))
        self.assertIsNone(matrix_ratio(Matrix.zeros(3, 3), m))

    def test_vanishing_left_side_is_noted_not_normalized(self):
        report = SuiteReport('drinfeld', 3)
        item = _item(report, 'cubic:sample', Matrix.zeros(3, 3), modified_principal(3, 2, 2))
        self.assertFalse(item.passed)
        self.assertEqual(item.detail['note'], 'left side vanishes, right side does not')
        self.assertNotIn('normalization', report.extras)

    def test_constant_factor_is_recorded(self):
        report = SuiteReport('drinfeld', 3)
        m = modified_principal(3, 2, 2)
        _item(report, 'cubic:sample', m.scale(-2), m)
        self.assertEqual(report.extras['normalization'], {'cubic:sample': '-2'})


class TestDrinfeldChecker(unittest.TestCase):
    def setUp(self):
        self.checker = DrinfeldChecker(2)

    def test_degenerate_triples(self):
        names = [name for name, _ in degenerate_triples(self.checker)]
        self.assertEqual(names, ['x=y', 'x=z', 'y=z', 'x=y=z', 'diagonal'])

    def test_cubic_left_side_vanishes_on_equal_arguments(self):
        x = self.checker.basis[0]
        lhs, _ = self.checker.cubic_sides(x, x, x)
        self.assertTrue(lhs.is_zero())

    def test_n2_is_exhaustive(self):
        report = verify_drinfeld_relations(2)
        cubic = [item for item in report.items if item.id.startswith('cubic:')]
        quintic = [item for item in report.items if item.id.startswith('quintic:')]
        self.assertEqual(len(cubic), 27)
        self.assertEqual(len(quintic), 81)
        self.assertEqual(report.extras['form'], 'trace form (x|y) = tr(xy), dual-pair summation')
        self.assertTrue(report.passed, [item.id for item in report.failures])
        self.assertNotIn('normalization', report.extras)

    def test_n3_sampled_relations_hold(self):
        report = verify_drinfeld_relations(3, samples=1, seed=11, quintic_samples=1)
        self.assertTrue(report.passed, [item.id for item in report.failures])
        self.assertNotIn('normalization', report.extras)

    @unittest.skipUnless(SLOW, 'set RUN_SLOW_TESTS=1 for the sampled N=3 run')
    def test_n3_sampling(self):
        report = verify_drinfeld_relations(3, samples=20, seed=7)
        self.assertTrue(any(item.id.startswith('cubic:T[') for item in report.items))
        self.assertTrue(any(item.id.startswith('cubic:x=y=z') for item in report.items))


if __name__ == '__main__':
    unittest.main()
