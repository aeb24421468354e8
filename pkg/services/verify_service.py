import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from models.report import ReportItem, SuiteReport
from services.drinfeld import verify_drinfeld_relations
from services.lie_basis import verify_basis
from services.report_writer import ReportWriter
from services.rtt_principal import (load_patterns, verify_fourier_roundtrip,
                                    verify_principal_relation, verify_rtt, verify_ybe)
from services.subrep import verify_subrep
from services.yangian_action import (spectrum, verify_bell, verify_casimir, verify_commutation_lemma,
                                     verify_coproduct, verify_j2_spectrum, verify_main_theorem)

logger = logging.getLogger(__name__)

SUITE_NAMES = ('basis', 'bell', 'coproduct', 'main-theorem', 'j2', 'casimir', 'commutation',
               'drinfeld', 'subrep', 'ybe', 'rtt', 'principal-relation')


class SuiteConfigError(ValueError):
    """The requested run violates a suite gate or names an unknown suite."""


@dataclass
class SuiteConfig:
    ns: List[int]
    suites: List[str]
    pairs: List[Tuple[Fraction, Fraction]] = field(default_factory=list)
    out_dir: str = 'reports'
    jobs: Optional[int] = None
    allow_expensive: bool = False
    burnside: Optional[bool] = None
    patterns_file: str = 'data/principal_patterns.json'
    max_drinfeld_n: int = 3
    max_burnside_n: int = 3
    drinfeld_samples: int = 20
    seed: int = 0

    def __post_init__(self):
        # report item ids are keyed by the (a, b) pair
        self.pairs = list(dict.fromkeys((Fraction(a), Fraction(b)) for a, b in self.pairs))

    def validate(self) -> None:
        unknown = [s for s in self.suites if s not in SUITE_NAMES]
        if unknown:
            raise SuiteConfigError(f"Unknown suite(s): {', '.join(unknown)}")
        if not self.ns or any(n < 2 for n in self.ns):
            raise SuiteConfigError("N must be at least 2")
        if self.jobs is not None and self.jobs < 1:
            raise SuiteConfigError("--jobs must be positive")
        if self.allow_expensive:
            return
        too_big = [n for n in self.ns if n > self.max_drinfeld_n]
        if 'drinfeld' in self.suites and too_big:
            raise SuiteConfigError(f"drinfeld suite is limited to N <= {self.max_drinfeld_n} "
                                   f"(requested {too_big}); pass --allow-expensive to override")
        too_big = [n for n in self.ns if n > self.max_burnside_n]
        if 'subrep' in self.suites and self.burnside and too_big:
            raise SuiteConfigError(f"Burnside closure is limited to N <= {self.max_burnside_n} "
                                   f"(requested {too_big}); pass --allow-expensive to override")

    def tasks(self) -> List[Tuple[str, int]]:
        """(suite, N) jobs in report order: suites in canonical order, then N ascending."""
        ordered = [s for s in SUITE_NAMES if s in self.suites]
        return [(suite, n) for suite in ordered for n in sorted(set(self.ns))]


def parse_suites(text: str) -> List[str]:
    if text.strip() == 'all':
        return list(SUITE_NAMES)
    suites = [part.strip() for part in text.split(',') if part.strip()]
    unknown = [s for s in suites if s not in SUITE_NAMES]
    if unknown or not suites:
        raise SuiteConfigError(f"Unknown suite(s): {', '.join(unknown) or text!r}; "
                               f"choose from {', '.join(SUITE_NAMES)} or 'all'")
    return suites


def _j2_suite(n: int, config: SuiteConfig) -> SuiteReport:
    report = verify_j2_spectrum(n)
    if config.pairs:
        report.extras['specializations'] = [spectrum(n, a, b).to_dict() for a, b in config.pairs]
    return report


def _drinfeld_suite(n: int, config: SuiteConfig) -> SuiteReport:
    report = verify_drinfeld_relations(n, samples=config.drinfeld_samples, seed=config.seed)
    if n > config.max_drinfeld_n:
        warning = f"drinfeld suite at N={n} beyond the N<={config.max_drinfeld_n} budget"
        logger.warning(warning)
        report.warnings.append(warning)
    return report


def _subrep_suite(n: int, config: SuiteConfig) -> SuiteReport:
    return verify_subrep(n, pairs=config.pairs or None, burnside=config.burnside,
                         max_burnside_n=config.max_burnside_n,
                         allow_expensive=config.allow_expensive)


def _rtt_suite(n: int, config: SuiteConfig) -> SuiteReport:
    report = verify_rtt(n)
    report.extend(verify_fourier_roundtrip(n).items)
    return report


def _principal_relation_suite(n: int, config: SuiteConfig) -> SuiteReport:
    return verify_principal_relation(n, load_patterns(config.patterns_file))


SUITES: Dict[str, Callable[[int, SuiteConfig], SuiteReport]] = {
    'basis': lambda n, config: verify_basis(n),
    'bell': lambda n, config: verify_bell(n),
    'coproduct': lambda n, config: verify_coproduct(n, samples=config.drinfeld_samples,
                                                     seed=config.seed),
    'main-theorem': lambda n, config: verify_main_theorem(n),
    'j2': _j2_suite,
    'casimir': lambda n, config: verify_casimir(n),
    'commutation': lambda n, config: verify_commutation_lemma(n),
    'drinfeld': _drinfeld_suite,
    'subrep': _subrep_suite,
    'ybe': lambda n, config: verify_ybe(n),
    'rtt': _rtt_suite,
    'principal-relation': _principal_relation_suite,
}


def run_suite(suite: str, n: int, config: SuiteConfig) -> SuiteReport:
    """Run one suite at one N; unexpected exceptions become a single failing item."""
    logger.info(f"Starting suite {suite} at N={n}")
    try:
        report = SUITES[suite](n, config)
        report.suite = suite
    except Exception as e:
        logger.exception(f"Suite {suite} at N={n} raised")
        report = SuiteReport(suite, n)
        report.add(ReportItem(f"{suite}:error", 'fail', f"{type(e).__name__}: {e}", None))
    for item in report.failures:
        logger.error(f"{suite} N={n}: item {item.id} failed")
    summary = report.summary()
    logger.info(f"Finished suite {suite} at N={n}: {summary['passed']}/{summary['total']} passed")
    return report


def _run_task(task: Tuple[str, int, SuiteConfig]) -> SuiteReport:
    suite, n, config = task
    return run_suite(suite, n, config)


class VerifyService:
    """Runs the selected (suite, N) jobs and hands the reports to the writer."""

    def __init__(self, config: SuiteConfig):
        config.validate()
        self.config = config
        self.writer = ReportWriter(config.out_dir)

    @property
    def jobs(self) -> int:
        return self.config.jobs or max(1, len(set(self.config.suites)))

    def run(self) -> List[SuiteReport]:
        tasks = [(suite, n, self.config) for suite, n in self.config.tasks()]
        if self.jobs > 1 and len(tasks) > 1:
            with ProcessPoolExecutor(max_workers=self.jobs) as executor:
                return list(executor.map(_run_task, tasks))
        return [_run_task(task) for task in tasks]

    def run_and_write(self) -> Tuple[List[SuiteReport], List[str]]:
        reports = self.run()
        return reports, self.writer.write_all(reports)


def all_passed(reports: Sequence[SuiteReport]) -> bool:
    return all(report.passed for report in reports)
