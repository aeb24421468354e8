import unittest
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from models.cyclotomic import CycNum, omega_power
from models.matrix import (DimensionMismatchError, EchelonSpan, Matrix, commutator, kron,
                           unit_matrix_raw)
from models.polynomial import LaurentPoly, ParamPoly

ENTRY = st.integers(min_value=-3, max_value=3)


def small_matrices(n=3, size=2):
    return st.lists(st.lists(ENTRY, min_size=size, max_size=size), min_size=size, max_size=size) \
        .map(lambda rows: Matrix(n, rows))


class TestMatrixBasics(unittest.TestCase):
    def test_identity_and_units(self):
        e12 = unit_matrix_raw(3, 3, 1, 2)
        e21 = unit_matrix_raw(3, 3, 2, 1)
        self.assertEqual(commutator(e12, e21), unit_matrix_raw(3, 3, 1, 1) - unit_matrix_raw(3, 3, 2, 2))
        self.assertEqual(Matrix.identity(3, 3) @ e12, e12)
        self.assertTrue(Matrix.identity(3, 4).is_scalar())
        self.assertFalse(e12.is_scalar())

    def test_unit_labels_are_checked(self):
        with self.assertRaises(ValueError):
            unit_matrix_raw(3, 3, 0, 1)

    def test_shape_mismatch(self):
        with self.assertRaises(DimensionMismatchError):
            Matrix.identity(2, 2) @ Matrix.identity(2, 3)
        with self.assertRaises(DimensionMismatchError):
            Matrix.identity(2, 2) + Matrix.identity(2, 3)

    def test_kron_block_layout(self):
        left = Matrix(2, [[1, 2], [3, 4]])
        right = Matrix(2, [[0, 1], [1, 0]])
        product = kron(left, right)
        self.assertEqual(product.shape, (4, 4))
        self.assertEqual(product[0, 1], 1)
        self.assertEqual(product[1, 2], 2)
        self.assertEqual(product[3, 2], 4)
        self.assertEqual(product[2, 2], 0)

    def test_domains_widen(self):
        a = ParamPoly.a(2)
        param = Matrix(2, [[a, 0], [0, 1]])
        self.assertIs((param + Matrix.identity(2, 2)).domain, ParamPoly)
        self.assertEqual(param.substitute(Fraction(1, 2), 0), Matrix(2, [[Fraction(1, 2), 0], [0, 1]]))
        with self.assertRaises(TypeError):
            param + Matrix(2, [[LaurentPoly.x(2), 0], [0, 0]])

    def test_determinant_and_rank(self):
        w = omega_power(3, 1)
        vandermonde = Matrix(3, [[1, 1, 1], [1, w, w * w], [1, w * w, w]])
        self.assertEqual(vandermonde.rank(), 3)
        det = vandermonde.determinant()
        self.assertFalse(det.is_zero())
        self.assertEqual(det * det, -27)
        singular = Matrix(3, [[1, 2], [2, 4]])
        self.assertEqual(singular.rank(), 1)
        self.assertEqual(singular.determinant(), 0)

    def test_adjoint_conjugates(self):
        w = omega_power(4, 1)
        m = Matrix(4, [[w, 1], [0, w * w]])
        self.assertEqual(m.adjoint(), Matrix(4, [[w ** 3, 0], [1, -1]]))

    def test_differences_are_one_based(self):
        left = Matrix.identity(2, 2)
        right = Matrix(2, [[1, 0], [5, 1]])
        self.assertEqual(left.differences(right), [{'row': 2, 'col': 1, 'lhs': '0', 'rhs': '5'}])

    def test_dict_round_trip(self):
        m = Matrix(3, [[omega_power(3, 1), ParamPoly.b(3)], [0, Fraction(-2, 5)]])
        self.assertEqual(Matrix.from_dict(m.to_dict()), m)
        self.assertEqual(Matrix.from_dict(Matrix.identity(5, 2).to_dict()), Matrix.identity(5, 2))

    def test_apply(self):
        m = Matrix(2, [[1, 2], [3, 4]])
        self.assertEqual(m.apply([1, -1]), (CycNum.rational(2, -1), CycNum.rational(2, -1)))


class TestEchelonSpan(unittest.TestCase):
    def test_growth_and_membership(self):
        span = EchelonSpan(3, 3)
        self.assertTrue(span.add([1, 2, 0]))
        self.assertTrue(span.add([0, 1, 1]))
        self.assertFalse(span.add([1, 3, 1]))
        self.assertTrue(span.contains([2, 5, 1]))
        self.assertFalse(span.contains([0, 0, 1]))
        self.assertEqual(span.dimension, 2)
        self.assertEqual(span.codimension(), 1)

    def test_zero_vector_never_grows(self):
        self.assertFalse(EchelonSpan(2, 2).add([0, 0]))


class TestMatrixRing(unittest.TestCase):
    @settings(max_examples=30, deadline=None)
    @given(small_matrices(), small_matrices(), small_matrices())
    def test_associative_and_distributive(self, x, y, z):
        self.assertEqual((x @ y) @ z, x @ (y @ z))
        self.assertEqual(x @ (y + z), x @ y + x @ z)

    @settings(max_examples=30, deadline=None)
    @given(small_matrices(), small_matrices())
    def test_jacobi_and_trace(self, x, y):
        self.assertEqual(commutator(x, y).trace(), 0)
        self.assertEqual((x @ y).transpose(), y.transpose() @ x.transpose())


if __name__ == '__main__':
    unittest.main()
