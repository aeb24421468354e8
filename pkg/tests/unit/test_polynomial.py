import unittest
from fractions import Fraction

from models.cyclotomic import CycNum, omega_power
from models.polynomial import LaurentPoly, ParamPoly


class TestParamPoly(unittest.TestCase):
    def setUp(self):
        self.a = ParamPoly.a(3)
        self.b = ParamPoly.b(3)

    def test_arithmetic_and_degrees(self):
        square = (self.a - self.b) ** 2
        self.assertEqual(square, self.a * self.a - 2 * self.a * self.b + self.b * self.b)
        self.assertEqual(square.degree(), (2, 2))
        self.assertEqual(square.total_degree(), 2)
        self.assertTrue((self.a - self.a).is_zero())

    def test_constants_compare_with_scalars(self):
        self.assertEqual(ParamPoly.constant(3, 5), 5)
        self.assertEqual(ParamPoly.zero(3), 0)
        self.assertNotEqual(self.a, 0)

    def test_specialize(self):
        expression = self.a * omega_power(3, 1) - self.b + Fraction(3, 2)
        value = expression.specialize('1/2', '-1')
        self.assertEqual(value, omega_power(3, 1) * Fraction(1, 2) + Fraction(5, 2))

    def test_ratio(self):
        left = (self.a - self.b - 1) * 4
        right = self.a - self.b - 1
        self.assertEqual(left.ratio_to(right), 4)
        self.assertIsNone((self.a + 1).ratio_to(self.a - 1))

    def test_mixing_domains_is_rejected(self):
        with self.assertRaises(TypeError):
            self.a + LaurentPoly.x(3)

    def test_negative_exponents_are_rejected(self):
        with self.assertRaises(ValueError):
            ParamPoly(3, {(-1, 0): 1})

    def test_json_round_trip(self):
        expression = self.a * omega_power(3, 2) - self.b * self.b / 3
        self.assertEqual(ParamPoly.from_json(expression.to_json()), expression)
        self.assertEqual(ParamPoly.from_json({'terms': []}, order=3), 0)

    def test_string_form(self):
        self.assertEqual(str(self.a - self.b - 1), 'a - b - 1')


class TestLaurentPoly(unittest.TestCase):
    def test_swap_variables(self):
        x, y = LaurentPoly.x(2), LaurentPoly.y(2)
        self.assertEqual((x * x * y + 3).swap_variables(), y * y * x + 3)

    def test_substitute(self):
        x, y = LaurentPoly.x(4), LaurentPoly.y(4)
        value = (y - x + x * y).substitute(2, Fraction(1, 3))
        self.assertEqual(value, CycNum.rational(4, Fraction(1, 3) - 2 + Fraction(2, 3)))


if __name__ == '__main__':
    unittest.main()
