import json
import os
import tempfile
import unittest
from fractions import Fraction

from models.matrix import Matrix
from services.lie_basis import flip_matrix, principal_matrix, unit_matrix
from services.rtt_principal import (CONFIRMED, REJECTED, STANDARD, TRANSPOSED, LinearIndex,
                                    PatternError, check_principal_relation, evaluation_T,
                                    get_pattern, load_patterns, parse_patterns, principal_series,
                                    search_principal_patterns, search_report, verify_fourier_roundtrip,
                                    verify_gl_layer, verify_principal_relation, verify_rtt,
                                    verify_ybe, yang_r_matrix)

SLOW = os.environ.get('RUN_SLOW_TESTS') == '1'
PATTERNS_FILE = os.path.join(os.path.dirname(__file__), '..', '..', 'data', 'principal_patterns.json')


class TestRMatrix(unittest.TestCase):
    def test_r_at_one(self):
        r = yang_r_matrix(2)
        self.assertEqual(r.substitute(1, 0), Matrix.identity(2, 4) - flip_matrix(2))

    def test_ybe(self):
        for n in (2, 3):
            report = verify_ybe(n)
            self.assertTrue(report.passed, [item.id for item in report.failures])

    def test_small_n_rejected(self):
        with self.assertRaises(ValueError):
            yang_r_matrix(1)


class TestEvaluationRepresentation(unittest.TestCase):
    def test_t11(self):
        t11 = evaluation_T(2)[(1, 1)]
        self.assertEqual(t11.constant, Matrix.identity(2, 2))
        self.assertEqual(t11.pole, unit_matrix(2, 1, 1))
        self.assertTrue(t11.coefficient(2).is_zero())

    def test_conventions_transpose_the_pole(self):
        self.assertEqual(evaluation_T(3, TRANSPOSED)[(1, 2)].pole, unit_matrix(3, 2, 1))
        with self.assertRaises(ValueError):
            evaluation_T(3, 'sideways')

    def test_gl_layer(self):
        standard = verify_gl_layer(3, STANDARD)
        self.assertTrue(standard.passed)
        self.assertEqual(standard.extras['printed_form'], 'fails')
        self.assertFalse(verify_gl_layer(3, TRANSPOSED).passed)

    def test_rtt_and_negative_control(self):
        for n in (2, 3):
            report = verify_rtt(n)
            self.assertTrue(report.passed, [item.id for item in report.failures])
            self.assertEqual([item.id for item in report.items],
                             ['rtt:standard', 'gl-layer:standard', 'negative-control:transposed'])

    def test_transposed_convention_fails(self):
        report = verify_rtt(2, TRANSPOSED)
        self.assertFalse(report.passed)
        self.assertEqual(report.items[0].status, 'fail')

    @unittest.skipUnless(SLOW, 'set RUN_SLOW_TESTS=1 for N=4')
    def test_rtt_n4(self):
        self.assertTrue(verify_rtt(4).passed)
        self.assertTrue(verify_ybe(4).passed)


class TestPrincipalSeries(unittest.TestCase):
    def test_constant_layer(self):
        self.assertEqual(principal_series(3, 0, 0).value.constant, Matrix.identity(3, 3))
        self.assertTrue(principal_series(3, 1, 0).value.constant.is_zero())
        self.assertTrue(principal_series(3, 0, 2).value.constant.is_zero())

    def test_pole_layer(self):
        for n in (2, 3, 4):
            for i in range(n):
                for j in range(n):
                    expected = principal_matrix(n, -i, j).scale(Fraction(1, n))
                    self.assertEqual(principal_series(n, i, j).value.pole, expected)
                    self.assertEqual(principal_series(n, i, j, TRANSPOSED).value.pole,
                                     expected.transpose())

    def test_fourier_roundtrip(self):
        for n in (2, 3, 4):
            self.assertTrue(verify_fourier_roundtrip(n).passed)


class TestPatterns(unittest.TestCase):
    def test_linear_index(self):
        index = LinearIndex.parse('2i - 3b + 1')
        self.assertEqual(index.evaluate(4, {'i': 1, 'j': 0, 'k': 0, 'l': 0, 'a': 0, 'b': 1}), 0)
        self.assertTrue(index.uses('i'))
        self.assertFalse(index.uses('l'))
        self.assertEqual(LinearIndex.parse('k+a').evaluate(3, dict(i=0, j=0, k=2, l=0, a=2, b=0)), 1)

    def test_malformed_expressions(self):
        for text in ('k+', 'x', '', 'k**a'):
            with self.assertRaises(PatternError):
                LinearIndex.parse(text)

    def test_default_family(self):
        patterns = load_patterns(PATTERNS_FILE)
        names = [p.name for p in patterns]
        self.assertEqual(len(patterns), 6)
        self.assertIn('as-printed', names)
        self.assertIn('l-restored', names)
        self.assertFalse(get_pattern(patterns, 'as-printed').mentions_l())
        with self.assertRaises(PatternError):
            get_pattern(patterns, 'no-such-pattern')

    def test_bad_files(self):
        with self.assertRaises(PatternError):
            parse_patterns({'patterns': [{'name': 'short', 'slots': ['i', 'j']}]})
        with self.assertRaises(PatternError):
            parse_patterns({'patterns': [{'name': 'p', 'slots': ['i'] * 8},
                                         {'name': 'p', 'slots': ['j'] * 8}]})
        with tempfile.NamedTemporaryFile('w', suffix='.json', delete=False) as handle:
            handle.write('{not json')
        try:
            with self.assertRaises(PatternError):
                load_patterns(handle.name)
        finally:
            os.remove(handle.name)

    def test_round_trip_through_json(self):
        patterns = load_patterns(PATTERNS_FILE)
        payload = {'patterns': [p.to_dict() for p in patterns]}
        self.assertEqual(parse_patterns(json.loads(json.dumps(payload))), patterns)


class TestPrincipalRelation(unittest.TestCase):
    def setUp(self):
        self.patterns = load_patterns(PATTERNS_FILE)

    def test_second_factor_pattern_holds(self):
        pattern = get_pattern(self.patterns, 'second-factor-l')
        for n in (2, 3):
            result = check_principal_relation(n, pattern)
            self.assertTrue(result.holds, result.counterexample)
            self.assertEqual(result.checked, n ** 4)

    def test_suite_finds_a_relation(self):
        report = verify_principal_relation(2, self.patterns)
        self.assertTrue(report.passed)
        self.assertEqual(report.items[0].id, 'relation-found')
        self.assertIn('holds:second-factor-l', [item.id for item in report.items])
        self.assertEqual(set(report.extras['patterns']), {p.name for p in self.patterns})

    def test_search_verdicts(self):
        patterns = [get_pattern(self.patterns, 'second-factor-l'),
                    get_pattern(self.patterns, 'as-printed')]
        verdicts = search_principal_patterns(patterns, screen_n=2, confirm_ns=(3,))
        self.assertEqual(verdicts[0].verdict, CONFIRMED)
        self.assertIn(verdicts[1].verdict, (CONFIRMED, REJECTED, 'spurious'))
        report = search_report(verdicts, screen_n=2, confirm_ns=(3,))
        self.assertTrue(report.passed)
        self.assertEqual(report.extras['as_printed'], verdicts[1].verdict)
        self.assertIn('confirmed:second-factor-l', [item.id for item in report.items])

    @unittest.skipUnless(SLOW, 'set RUN_SLOW_TESTS=1 for the N=4 confirmation')
    def test_confirmation_at_n4(self):
        pattern = get_pattern(self.patterns, 'second-factor-l')
        self.assertTrue(check_principal_relation(4, pattern).holds)


if __name__ == '__main__':
    unittest.main()
