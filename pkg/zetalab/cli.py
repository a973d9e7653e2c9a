"""
zetalab command line

Exact numbers, Laurent expansions, Mellin representation checks, identity
sweeps and the errata ledger. Results go to stdout; logs go to stderr and
the optional rotating log file.
"""
import functools
import io
import logging
import os
from fractions import Fraction
from logging.handlers import RotatingFileHandler
from typing import Any, Dict, List, Optional

import click
import mpmath

from zetalab import __version__
from zetalab.config import Config, RunConfig, load_run_config
from zetalab.exceptions import ZetalabError
from zetalab.services.identity_service import FAIL, UNDEFINED, identity_service
from zetalab.services.mellin_service import QuadratureConfig, mellin_service
from zetalab.utils.exactnum import bernoulli, euler_number, harmonic
from zetalab.utils.laurent import (
    FunctionKind, closed_form_series, digamma_product_value, evaluate_series, oracle_series,
)
from zetalab.utils.reporting import emit
from zetalab.utils.specfun import PrecisionContext, euler_sum_H

logger = logging.getLogger(__name__)

LOG_FORMAT = '%(asctime)s %(levelname)s: %(message)s [in %(pathname)s:%(lineno)d]'

_installed_handlers: List[logging.Handler] = []


def configure_logging(level: str = Config.LOG_LEVEL, log_file: Optional[str] = Config.LOG_FILE) -> None:
    """Console logging on stderr, plus a rotating file when a log file is configured"""
    root = logging.getLogger()
    for handler in _installed_handlers:
        root.removeHandler(handler)
    _installed_handlers.clear()

    formatter = logging.Formatter(LOG_FORMAT)
    console = logging.StreamHandler()
    console.setFormatter(formatter)
    _installed_handlers.append(console)

    if log_file:
        try:
            log_dir = os.path.dirname(log_file)
            if log_dir:
                os.makedirs(log_dir, exist_ok=True)
            file_handler = RotatingFileHandler(log_file, maxBytes=Config.MAX_LOG_SIZE, backupCount=Config.LOG_BACKUPS)
            file_handler.setFormatter(formatter)
            _installed_handlers.append(file_handler)
        except (PermissionError, OSError):
            # Fallback to console logging if file logging fails
            pass

    for handler in _installed_handlers:
        root.addHandler(handler)
    root.setLevel(getattr(logging, level.upper(), logging.WARNING))


def run_options(func):
    """--digits/--format/--parallelism/--config shared by every command"""
    func = click.option('--config', 'config_path', type=click.Path(dir_okay=False), default=None,
                        help='key=value config file (digits, format, parallelism)')(func)
    func = click.option('--parallelism', type=int, default=None, help='Process pool size for --all runs')(func)
    func = click.option('--format', 'fmt', type=click.Choice(Config.FORMATS), default=None, help='Output format')(func)
    func = click.option('--digits', type=int, default=None, help='Requested decimal digits')(func)
    return func


def usage_errors(func):
    """Turn library errors into usage errors (exit 2)"""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except ZetalabError as e:
            logger.error(f"{func.__name__}: {e}")
            raise click.UsageError(str(e)) from e
    return wrapper


def _run_config(config_path, digits, fmt, parallelism) -> RunConfig:
    return load_run_config(config_path, digits=digits, format=fmt, parallelism=parallelism)


def _output(run: RunConfig, payload: Any, rows: List[Dict[str, Any]], title: str) -> None:
    buffer = io.StringIO()
    emit(payload, rows, run.format, buffer, run.digits, title)
    click.echo(buffer.getvalue(), nl=False)


def _parse_range(ctx, param, value: Optional[str]) -> Optional[List[int]]:
    """'5' or '1..50'"""
    if value is None:
        return None
    try:
        if '..' in value:
            low, high = (int(part) for part in value.split('..', 1))
            return list(range(low, high + 1))
        return [int(value)]
    except ValueError:
        raise click.BadParameter(f"expected an integer or a range like 1..50, got {value!r}") from None


def _parse_exact(ctx, param, values):
    try:
        return [Fraction(v) for v in values]
    except (ValueError, ZeroDivisionError):
        raise click.BadParameter(f"expected rational values like 3/2 or 0.75, got {values!r}") from None


@click.group()
@click.version_option(__version__, prog_name='zetalab')
@click.option('--log-level', default=Config.LOG_LEVEL, show_default=True, help='Logging level')
@click.option('--log-file', default=Config.LOG_FILE, help='Rotating log file (console only when unset)')
def main(log_level, log_file):
    """Zeta integral representations, Laurent series and summation identities"""
    configure_logging(log_level, log_file)


def _number_rows(name: str, values) -> List[Dict[str, Any]]:
    return [{'index': index, name: value} for index, value in values]


@main.command('bernoulli')
@run_options
@click.option('--n', 'indices', type=int, multiple=True, required=True, help='Index, repeatable')
@usage_errors
def bernoulli_command(indices, digits, fmt, parallelism, config_path):
    """Bernoulli numbers B_n (B_1 = -1/2)"""
    run = _run_config(config_path, digits, fmt, parallelism)
    rows = _number_rows('value', [(n, bernoulli(n)) for n in indices])
    _output(run, rows, rows, 'Bernoulli numbers')


@main.command('euler')
@run_options
@click.option('--n', 'indices', type=int, multiple=True, required=True, help='Index, repeatable')
@usage_errors
def euler_command(indices, digits, fmt, parallelism, config_path):
    """Euler numbers E_n (E_2 = -1)"""
    run = _run_config(config_path, digits, fmt, parallelism)
    rows = _number_rows('value', [(n, euler_number(n)) for n in indices])
    _output(run, rows, rows, 'Euler numbers')


@main.command('harmonic')
@run_options
@click.option('--n', 'indices', type=int, multiple=True, required=True, help='Index, repeatable')
@click.option('--k', 'order', type=int, default=1, show_default=True, help='Generalized harmonic order')
@usage_errors
def harmonic_command(indices, order, digits, fmt, parallelism, config_path):
    """Generalized harmonic numbers H_n^(k)"""
    run = _run_config(config_path, digits, fmt, parallelism)
    rows = [{'index': n, 'k': order, 'value': harmonic(n, order)} for n in indices]
    _output(run, rows, rows, 'Harmonic numbers')


def _laurent_agreement(kind: FunctionKind, series, order: int, ctx: PrecisionContext) -> Optional[bool]:
    """Closed form against an independent evaluation at x = 1/10"""
    if kind.is_trig:
        oracle = oracle_series(kind, order)
        return oracle.lowest == series.lowest and oracle.coeffs == series.coeffs
    with ctx.workdps():
        x = mpmath.mpf(1) / 10
        value, bound = evaluate_series(series, x, ctx)
        if kind.tag == 'digamma_at':
            direct = mpmath.digamma(kind.n + x)
        elif kind.tag == 'chi_series':
            # the plain chi pattern is minus the real-x digamma product
            direct = -digamma_product_value(x, ctx, 'real')
        else:
            direct = 2 * mpmath.re(mpmath.digamma(mpmath.mpc(0, x))) + 2 * mpmath.euler
        return bool(abs(value - direct) <= 10 * bound + ctx.tolerance(10))


@main.command('laurent')
@run_options
@click.option('--kind', required=True, help='coth, coth2, coth3, coth4, csch, csch2, sech, sech2, '
                                            'digamma_sym, digamma_at(n) or chi_series')
@click.option('--order', type=int, default=Config.SERIES_ORDER, show_default=True,
              help='Truncation: exponents below this are kept')
@click.option('--exact/--numeric', default=None, help='Exact rational or decimal coefficients')
@usage_errors
def laurent_command(kind, order, exact, digits, fmt, parallelism, config_path):
    """Laurent/Taylor expansion with a closed-form vs oracle agreement flag"""
    run = _run_config(config_path, digits, fmt, parallelism)
    ctx = PrecisionContext(run.digits)
    kind = FunctionKind.parse(kind)
    if exact and not kind.is_trig:
        raise click.UsageError(f"{kind} has no exact coefficients; use --numeric")

    series = closed_form_series(kind, order, ctx)
    agreement = _laurent_agreement(kind, series, order, ctx)
    if exact is False:
        with ctx.workdps():
            series = series.to_numeric()

    payload = {'kind': str(kind), 'series': series.to_dict(run.digits), 'agreement': agreement}
    rows = [{'exponent': e, 'coefficient': c} for e, c in series.terms()]
    _output(run, payload, rows, f"{kind} through x^{order - 1} (agreement: {agreement})")


@main.command('verify-mellin')
@run_options
@click.option('--id', 'rep_id', default=None, help='Representation id, e.g. R9')
@click.option('--all', 'run_all', is_flag=True, help='Verify every registry entry')
@click.option('--s', 's_values', multiple=True, callback=_parse_exact, help='Grid point, repeatable (with --id)')
@click.option('--points', type=int, default=Config.GRID_POINTS, show_default=True, help='Default grid size')
@usage_errors
def verify_mellin_command(rep_id, run_all, s_values, points, digits, fmt, parallelism, config_path):
    """Check integral representations by quadrature; exit 1 if any fails"""
    run = _run_config(config_path, digits, fmt, parallelism)
    if run_all == bool(rep_id):
        raise click.UsageError('give exactly one of --id or --all')
    if run_all and s_values:
        raise click.UsageError('--s needs a single --id')

    if run_all:
        reports = mellin_service.verify_all(run.digits, run.parallelism, points=points)
    else:
        rep = mellin_service.get(rep_id)
        cfg = QuadratureConfig(ctx=PrecisionContext(run.digits))
        grid = list(s_values) or mellin_service.default_grid(rep, points)
        reports = [mellin_service.verify_representation(rep, grid, cfg)]

    rows = [
        {'id': r.id, 's': p.s, 'lhs': p.lhs, 'rhs': p.rhs, 'residual': p.residual, 'pass': r.passed}
        for r in reports for p in r.points
    ]
    _output(run, reports, rows, 'Mellin representation checks')
    if not all(r.passed for r in reports):
        click.get_current_context().exit(1)


@main.command('identity')
@run_options
@click.option('--id', 'identity_id', default=None, help='Identity id, e.g. I28 or I30-corrected')
@click.option('--all', 'run_all', is_flag=True, help='Sweep every printed identity')
@click.option('--n', 'n_range', callback=_parse_range, default=None, help='Parameter value or range a..b')
@usage_errors
def identity_command(identity_id, run_all, n_range, digits, fmt, parallelism, config_path):
    """Sweep summation identities; exit 1 on a failure without a passing correction"""
    run = _run_config(config_path, digits, fmt, parallelism)
    if run_all == bool(identity_id):
        raise click.UsageError('give exactly one of --id or --all')

    ctx = PrecisionContext(run.digits)
    if run_all and n_range is None:
        reports = identity_service.sweep_all(run.digits, run.parallelism)
    elif run_all:
        reports = [identity_service.sweep_identity(spec.id, n_range, ctx) for spec in identity_service.registry()]
    else:
        reports = [identity_service.sweep_identity(identity_id, n_range, ctx)]

    rows = []
    for report in reports:
        failing = [i.n for i in report.instances if not i.holds]
        rows.append({
            'id': report.id,
            'verdict': report.verdict,
            'checked': len(report.instances),
            'first_failure': failing[0] if failing else None,
            'corrected_id': report.corrected_id,
            'corrected_verdict': report.corrected_verdict,
        })
    _output(run, reports, rows, 'Identity sweeps')
    if any(r.verdict in (FAIL, UNDEFINED) for r in reports):
        click.get_current_context().exit(1)


@main.command('errata')
@run_options
@click.option('--skip-representations', is_flag=True, help='Leave out the quadrature-based prefactor checks')
@usage_errors
def errata_command(skip_representations, digits, fmt, parallelism, config_path):
    """Print the errata ledger"""
    run = _run_config(config_path, digits, fmt, parallelism)
    entries = identity_service.errata_report(PrecisionContext(run.digits),
                                             include_representations=not skip_representations)
    rows = []
    for entry in entries:
        row = entry.to_dict()
        row['at'] = ', '.join(f"{key}={value}" for key, value in entry.at.items())
        rows.append(row)
    _output(run, entries, rows, 'Errata')


@main.command('euler-sum')
@run_options
@click.option('--m', 'm', required=True, help='Exponent m > 1 (integer or rational)')
@usage_errors
def euler_sum_command(m, digits, fmt, parallelism, config_path):
    """sum_{n>=1} H_n / n^m"""
    run = _run_config(config_path, digits, fmt, parallelism)
    try:
        m_value = Fraction(m)
    except (ValueError, ZeroDivisionError):
        raise click.BadParameter(f"expected a rational exponent, got {m!r}", param_hint='--m') from None
    exponent = m_value.numerator if m_value.denominator == 1 else m_value
    value = euler_sum_H(exponent, PrecisionContext(run.digits))
    payload = {'m': m_value, 'value': value}
    _output(run, payload, [payload], 'Euler sum')


if __name__ == '__main__':
    main()
