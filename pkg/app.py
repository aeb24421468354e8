import json
import logging
import os
from typing import List

import click

from config import Config
from models.cyclotomic import parse_rational
from services.report_writer import ReportWriter
from services.rtt_principal import PatternError, load_patterns, search_principal_patterns, search_report
from services.subrep import analyze_subrep
from services.verify_service import (SuiteConfig, SuiteConfigError, VerifyService, all_passed,
                                     parse_suites)
from services.yangian_action import spectrum, theorem_action

logger = logging.getLogger(__name__)

_logging_configured = False


def configure_logging(level: str = None, log_file: str = None):
    """Install the stream + file handlers once per process."""
    global _logging_configured
    if _logging_configured:
        return
    handlers = [logging.StreamHandler()]
    log_file = Config.LOG_FILE if log_file is None else log_file
    if log_file:
        handlers.append(logging.FileHandler(log_file, mode='a'))
    logging.basicConfig(
        level=getattr(logging, (level or Config.LOG_LEVEL), logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=handlers
    )
    _logging_configured = True


class NRange(click.ParamType):
    """An integer N or an inclusive range 'lo..hi'."""
    name = 'n'

    def convert(self, value, param, ctx):
        if isinstance(value, list):
            return value
        text = str(value).strip()
        try:
            if '..' in text:
                low, high = (int(part) for part in text.split('..', 1))
            else:
                low = high = int(text)
        except ValueError:
            self.fail(f"{value!r} is neither an integer nor a range like 2..4", param, ctx)
        if low < 2 or high < low:
            self.fail(f"{value!r} must select N >= 2 in increasing order", param, ctx)
        return list(range(low, high + 1))


class Rational(click.ParamType):
    """Exact rational written as an integer or p/q."""
    name = 'p/q'

    def convert(self, value, param, ctx):
        try:
            return parse_rational(value)
        except (ValueError, ZeroDivisionError) as e:
            self.fail(str(e), param, ctx)


N_RANGE = NRange()
RATIONAL = Rational()


def _single_n(ns: List[int], command: str) -> int:
    if len(ns) != 1:
        raise click.BadParameter(f"{command} takes a single N, not a range", param_hint='--n')
    return ns[0]


def _factor_text(text: str) -> str:
    """Parenthesize sums so they read as a single factor."""
    return f"({text})" if ' ' in text.strip() else text


def _echo_json(payload):
    click.echo(json.dumps(payload, indent=2, ensure_ascii=False))


@click.group()
@click.option('--log-level', default=None, help='Overrides LOG_LEVEL.')
def cli(log_level):
    """Exact verification of the principal Yangian realization on V ⊗ V*."""
    configure_logging(level=log_level.upper() if log_level else None)


@cli.command()
@click.option('--n', 'ns', type=N_RANGE, default='2..4', show_default=True)
@click.option('--suite', 'suites', default='all', show_default=True,
              help='Comma-separated suite names or "all".')
@click.option('--a', 'a_values', type=RATIONAL, multiple=True, help='Parameter a, paired with --b.')
@click.option('--b', 'b_values', type=RATIONAL, multiple=True, help='Parameter b, paired with --a.')
@click.option('--out', 'out_dir', default=None, help='Report directory (YANGIAN_REPORT_DIR).')
@click.option('--jobs', type=int, default=None, help='Worker processes (default: one per suite).')
@click.option('--patterns', 'patterns_file', default=None, help='Principal-relation pattern file.')
@click.option('--allow-expensive', is_flag=True, help='Lift the N <= 3 gates of drinfeld/Burnside.')
@click.option('--burnside/--no-burnside', default=None, help='Force or skip the Burnside closure.')
def verify(ns, suites, a_values, b_values, out_dir, jobs, patterns_file, allow_expensive, burnside):
    """Run verification suites and write one JSON report per (suite, N)."""
    if len(a_values) != len(b_values):
        raise click.UsageError('--a and --b must be given the same number of times')
    try:
        config = SuiteConfig(
            ns=ns, suites=parse_suites(suites), pairs=list(zip(a_values, b_values)),
            out_dir=out_dir or Config.REPORT_DIR, jobs=jobs if jobs is not None else Config.DEFAULT_JOBS,
            allow_expensive=allow_expensive, burnside=burnside,
            patterns_file=patterns_file or Config.PATTERNS_FILE,
            max_drinfeld_n=Config.MAX_DRINFELD_N, max_burnside_n=Config.MAX_BURNSIDE_N,
            drinfeld_samples=Config.DRINFELD_SAMPLES, seed=Config.RANDOM_SEED)
        service = VerifyService(config)
    except SuiteConfigError as e:
        raise click.UsageError(str(e))
    if 'principal-relation' in config.suites and not os.path.exists(config.patterns_file):
        raise click.BadParameter(f"pattern file {config.patterns_file} does not exist",
                                 param_hint='--patterns')

    reports, paths = service.run_and_write()
    for report, path in zip(reports, paths):
        summary = report.summary()
        click.echo(f"{report.suite:<20} N={report.n}  {summary['status'].upper():<4} "
                   f"{summary['passed']}/{summary['total']}  {path}")
        for item in report.failures:
            click.echo(f"    FAIL {item.id}")
    if not all_passed(reports):
        raise SystemExit(1)


@cli.command()
@click.option('--n', 'ns', type=N_RANGE, required=True)
@click.option('--i', 'i', type=int, required=True)
@click.option('--j', 'j', type=int, required=True)
@click.option('--json', 'as_json', is_flag=True, help='Emit the table as JSON.')
def action(ns, i, j, as_json):
    """Tabulate J(T_i^(j)) on the Bell basis: (k, m) -> coefficient, target."""
    n = _single_n(ns, 'action')
    if not (1 <= i <= n and 1 <= j <= n):
        raise click.BadParameter(f"labels must lie in 1..{n}", param_hint='--i/--j')
    if (i, j) == (1, 1):
        raise click.BadParameter('T[1,1] is the identity, not an sl_N generator',
                                 param_hint='--i/--j')
    rows = []
    for k in range(1, n + 1):
        for m in range(1, n + 1):
            coefficient, target = theorem_action(i, j, k, m, n)
            rows.append({'k': k, 'm': m, 'coefficient': str(coefficient),
                         'target': list(target)})
    if as_json:
        _echo_json({'n': n, 'i': i, 'j': j, 'rows': rows})
        return
    click.echo(f"J(T[{i},{j}]) on Psi(k,m), N={n}")
    for row in rows:
        click.echo(f"({row['k']},{row['m']}) -> {_factor_text(row['coefficient'])} * "
                   f"Psi({row['target'][0]},{row['target'][1]})")


@cli.command(name='spectrum')
@click.option('--n', 'ns', type=N_RANGE, required=True)
@click.option('--a', 'a', type=RATIONAL, required=True)
@click.option('--b', 'b', type=RATIONAL, required=True)
@click.option('--check-operator', is_flag=True, help='Also diagonalize J² in the Bell basis.')
def spectrum_command(ns, a, b, check_operator):
    """J² and I² eigenvalues on W with the scalar-action flag."""
    n = _single_n(ns, 'spectrum')
    record = spectrum(n, a, b, check_operator=check_operator)
    _echo_json(record.to_dict())
    if check_operator and not record.checked_against_operator:
        raise SystemExit(1)


@cli.command()
@click.option('--n', 'ns', type=N_RANGE, required=True)
@click.option('--a', 'a', type=RATIONAL, required=True)
@click.option('--b', 'b', type=RATIONAL, required=True)
@click.option('--burnside/--no-burnside', default=None)
@click.option('--allow-expensive', is_flag=True)
@click.option('--json', 'as_json', is_flag=True)
def subrep(ns, a, b, burnside, allow_expensive, as_json):
    """Decide which of V0, V_ad is invariant at the given parameters."""
    n = _single_n(ns, 'subrep')
    try:
        report = analyze_subrep(n, a, b, burnside=burnside, max_burnside_n=Config.MAX_BURNSIDE_N,
                                allow_expensive=allow_expensive)
    except ValueError as e:
        raise click.UsageError(str(e))
    if as_json:
        _echo_json(report.to_dict())
    else:
        click.echo(report.verdict_line())
        for warning in report.warnings:
            click.echo(f"warning: {warning}")


@cli.command(name='relation-search')
@click.option('--patterns', 'patterns_file', default=None, help='Pattern file (YANGIAN_PATTERNS_FILE).')
@click.option('--screen-n', type=int, default=2, show_default=True)
@click.option('--confirm-n', 'confirm', type=N_RANGE, default='3..4', show_default=True)
@click.option('--out', 'out_dir', default=None)
@click.option('--jobs', type=int, default=1, show_default=True)
def relation_search(patterns_file, screen_n, confirm, out_dir, jobs):
    """Screen the principal-relation candidates and confirm survivors at larger N."""
    if screen_n < 2:
        raise click.BadParameter('must be at least 2', param_hint='--screen-n')
    path = patterns_file or Config.PATTERNS_FILE
    try:
        patterns = load_patterns(path)
    except PatternError as e:
        raise click.BadParameter(str(e), param_hint='--patterns')
    verdicts = search_principal_patterns(patterns, screen_n=screen_n, confirm_ns=confirm,
                                         jobs=max(1, jobs))
    for verdict in verdicts:
        click.echo(f"{verdict.pattern.name:<24} {verdict.verdict}")
    report = search_report(verdicts, screen_n=screen_n, confirm_ns=confirm)
    written = ReportWriter(out_dir or Config.REPORT_DIR).write(report)
    click.echo(f"report: {written}")
    if not report.passed:
        raise SystemExit(1)


if __name__ == '__main__':
    cli()
