import json
import os
import tempfile
import unittest
from unittest.mock import patch

from click.testing import CliRunner

from app import cli
from models.report import ReportItem, SuiteReport
from services import verify_service

PATTERNS_FILE = os.path.join(os.path.dirname(__file__), '..', '..', 'data', 'principal_patterns.json')


def _broken_ybe(n, config):
    report = SuiteReport('ybe', n)
    report.add(ReportItem.truth('ybe', False, 'lhs', 'rhs'))
    return report


class TestCLI(unittest.TestCase):
    def setUp(self):
        self.runner = CliRunner()
        self.tmp = tempfile.TemporaryDirectory()
        patcher = patch('app.configure_logging')
        patcher.start()
        self.addCleanup(patcher.stop)

    def tearDown(self):
        self.tmp.cleanup()

    def invoke(self, *args):
        return self.runner.invoke(cli, list(args))

    def test_verify_writes_reports(self):
        result = self.invoke('verify', '--n', '2', '--suite', 'basis,ybe', '--jobs', '1',
                             '--out', self.tmp.name)
        self.assertEqual(result.exit_code, 0, result.output)
        self.assertEqual(sorted(os.listdir(self.tmp.name)), ['basis-n2.json', 'ybe-n2.json'])
        with open(os.path.join(self.tmp.name, 'ybe-n2.json'), encoding='utf-8') as handle:
            payload = json.load(handle)
        self.assertEqual(payload['summary']['status'], 'pass')
        self.assertIn('PASS', result.output)

    def test_failing_suite_exits_nonzero(self):
        with patch.dict(verify_service.SUITES, {'ybe': _broken_ybe}):
            result = self.invoke('verify', '--n', '2', '--suite', 'ybe', '--jobs', '1',
                                 '--out', self.tmp.name)
        self.assertEqual(result.exit_code, 1)
        self.assertIn('FAIL ybe', result.output)
        with open(os.path.join(self.tmp.name, 'ybe-n2.json'), encoding='utf-8') as handle:
            self.assertEqual(json.load(handle)['summary']['failed'], 1)

    def test_gates_are_usage_errors(self):
        result = self.invoke('verify', '--n', '7', '--suite', 'drinfeld', '--out', self.tmp.name)
        self.assertEqual(result.exit_code, 2)
        self.assertIn('--allow-expensive', result.output)
        self.assertEqual(os.listdir(self.tmp.name), [])

    def test_bad_arguments(self):
        self.assertEqual(self.invoke('verify', '--n', '1', '--suite', 'basis').exit_code, 2)
        self.assertEqual(self.invoke('verify', '--n', '2', '--suite', 'unknown').exit_code, 2)
        self.assertEqual(self.invoke('verify', '--n', '2', '--suite', 'j2', '--a', '1').exit_code, 2)
        self.assertEqual(self.invoke('verify', '--n', '2', '--suite', 'principal-relation',
                                     '--patterns', os.path.join(self.tmp.name, 'missing.json'),
                                     '--out', self.tmp.name).exit_code, 2)

    def test_action_table(self):
        result = self.invoke('action', '--n', '2', '--i', '1', '--j', '2')
        self.assertEqual(result.exit_code, 0, result.output)
        self.assertIn('(1,1) -> (a - b - 1) * Psi(1,2)', result.output)

    def test_action_json(self):
        result = self.invoke('action', '--n', '3', '--i', '2', '--j', '1', '--json')
        self.assertEqual(result.exit_code, 0, result.output)
        payload = json.loads(result.output)
        self.assertEqual(len(payload['rows']), 9)
        self.assertEqual(payload['rows'][0]['target'], [2, 1])

    def test_action_rejects_identity(self):
        self.assertEqual(self.invoke('action', '--n', '3', '--i', '1', '--j', '1').exit_code, 2)
        self.assertEqual(self.invoke('action', '--n', '3', '--i', '4', '--j', '1').exit_code, 2)
        self.assertEqual(self.invoke('action', '--n', '2..3', '--i', '1', '--j', '2').exit_code, 2)

    def test_spectrum_scalar_locus(self):
        result = self.invoke('spectrum', '--n', '2', '--a', '1/2', '--b=-1/2', '--check-operator')
        self.assertEqual(result.exit_code, 0, result.output)
        payload = json.loads(result.output)
        self.assertTrue(payload['scalar'])
        self.assertEqual(payload['rho'], '0/1')

    def test_subrep_verdict(self):
        result = self.invoke('subrep', '--n', '2', '--a', '1', '--b', '0')
        self.assertEqual(result.exit_code, 0, result.output)
        self.assertIn('V0 invariant; quotient = adjoint', result.output)
        gated = self.invoke('subrep', '--n', '4', '--a', '1', '--b', '0', '--burnside')
        self.assertEqual(gated.exit_code, 2)

    def test_relation_search(self):
        result = self.invoke('relation-search', '--patterns', PATTERNS_FILE, '--confirm-n', '3',
                             '--out', self.tmp.name)
        self.assertEqual(result.exit_code, 0, result.output)
        self.assertIn('second-factor-l', result.output)
        self.assertTrue(os.path.exists(os.path.join(self.tmp.name, 'relation-search-n2.json')))


if __name__ == '__main__':
    unittest.main()
