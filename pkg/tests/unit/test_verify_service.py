import os
import tempfile
import unittest
from fractions import Fraction
from unittest.mock import patch

from services import verify_service
from services.report_writer import load_report
from services.verify_service import (SUITE_NAMES, SuiteConfig, SuiteConfigError, VerifyService,
                                     all_passed, parse_suites, run_suite)

PATTERNS_FILE = os.path.join(os.path.dirname(__file__), '..', '..', 'data', 'principal_patterns.json')


def _explode(n, config):
    raise RuntimeError('kernel blew up')


class TestSuiteSelection(unittest.TestCase):
    def test_parse_suites(self):
        self.assertEqual(parse_suites('all'), list(SUITE_NAMES))
        self.assertEqual(parse_suites('ybe, basis'), ['ybe', 'basis'])
        with self.assertRaises(SuiteConfigError):
            parse_suites('basis,nonsense')
        with self.assertRaises(SuiteConfigError):
            parse_suites(' , ')

    def test_tasks_follow_canonical_order(self):
        config = SuiteConfig(ns=[3, 2, 3], suites=['ybe', 'basis'])
        self.assertEqual(config.tasks(), [('basis', 2), ('basis', 3), ('ybe', 2), ('ybe', 3)])


class TestSuiteGates(unittest.TestCase):
    def test_drinfeld_gate(self):
        config = SuiteConfig(ns=[7], suites=['drinfeld'])
        with self.assertRaises(SuiteConfigError):
            config.validate()
        SuiteConfig(ns=[7], suites=['drinfeld'], allow_expensive=True).validate()

    def test_burnside_gate_only_when_requested(self):
        SuiteConfig(ns=[5], suites=['subrep']).validate()
        with self.assertRaises(SuiteConfigError):
            SuiteConfig(ns=[5], suites=['subrep'], burnside=True).validate()

    def test_bad_values(self):
        for config in (SuiteConfig(ns=[1], suites=['basis']),
                       SuiteConfig(ns=[2], suites=['basis'], jobs=0),
                       SuiteConfig(ns=[2], suites=['spin-chain'])):
            with self.assertRaises(SuiteConfigError):
                config.validate()


class TestRunSuite(unittest.TestCase):
    def test_errors_become_a_failing_item(self):
        config = SuiteConfig(ns=[2], suites=['basis'])
        with patch.dict(verify_service.SUITES, {'basis': _explode}):
            report = run_suite('basis', 2, config)
        self.assertFalse(report.passed)
        self.assertEqual([item.id for item in report.items], ['basis:error'])
        self.assertIn('RuntimeError: kernel blew up', report.items[0].lhs)

    def test_missing_pattern_file_is_reported(self):
        config = SuiteConfig(ns=[2], suites=['principal-relation'], patterns_file='/nonexistent.json')
        report = run_suite('principal-relation', 2, config)
        self.assertEqual(report.items[0].id, 'principal-relation:error')

    def test_service_writes_reports(self):
        with tempfile.TemporaryDirectory() as tmp:
            config = SuiteConfig(ns=[2], suites=['ybe', 'principal-relation'], out_dir=tmp, jobs=1,
                                 patterns_file=PATTERNS_FILE)
            service = VerifyService(config)
            self.assertEqual(service.jobs, 1)
            reports, paths = service.run_and_write()
            self.assertTrue(all_passed(reports))
            self.assertEqual([os.path.basename(p) for p in paths],
                             ['ybe-n2.json', 'principal-relation-n2.json'])
            self.assertEqual(load_report(paths[1]).suite, 'principal-relation')

    def test_representation_suites_pass_at_n2(self):
        config = SuiteConfig(ns=[2], suites=list(SUITE_NAMES), patterns_file=PATTERNS_FILE)
        for suite in ('basis', 'main-theorem', 'coproduct', 'j2', 'bell', 'casimir',
                      'commutation', 'subrep', 'drinfeld', 'rtt'):
            report = run_suite(suite, 2, config)
            self.assertTrue(report.passed, (suite, [item.id for item in report.failures]))

    def test_repeated_pairs_are_collapsed(self):
        config = SuiteConfig(ns=[2], suites=['subrep'], pairs=[(1, 0), (Fraction(1), 0), (0, 1)])
        self.assertEqual(config.pairs, [(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))])
        with tempfile.TemporaryDirectory() as tmp:
            config = SuiteConfig(ns=[2], suites=['subrep'], pairs=[(1, 0), (1, 0)], out_dir=tmp, jobs=1)
            reports, paths = VerifyService(config).run_and_write()
            self.assertEqual(len(reports[0].items), 1)
            self.assertEqual(load_report(paths[0]).items[0].id, 'verdict:a=1,b=0')

    def test_service_validates_on_construction(self):
        with self.assertRaises(SuiteConfigError):
            VerifyService(SuiteConfig(ns=[4], suites=['drinfeld']))

    def test_default_jobs_follow_suite_count(self):
        service = VerifyService(SuiteConfig(ns=[2], suites=['basis', 'ybe', 'rtt']))
        self.assertEqual(service.jobs, 3)


if __name__ == '__main__':
    unittest.main()
