# utils/reporting.py - report serialization and verification event logging

import csv
import json
import logging
from dataclasses import asdict, is_dataclass
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, TextIO

import mpmath
from rich.console import Console
from rich.table import Table

from zetalab.exceptions import ConfigError
from zetalab.utils.specfun import PiGraded

logger = logging.getLogger(__name__)


def log_verification_event(event_type: str, details: str) -> None:
    """
    Log a verification event (failed check, errata detection, quadrature warning)

    Args:
        event_type: Short upper-case event name
        details: Human readable details
    """
    logger.warning(f"VERIFICATION EVENT - {event_type}: {details}")


def decimal_string(value, digits: int) -> str:
    """Decimal string with the requested significant digits"""
    if isinstance(value, mpmath.mpc) and value.imag == 0:
        value = value.real
    return mpmath.nstr(value, digits)


def exact_to_dict(value) -> Dict[str, Any]:
    """
    Exact values as {"num", "den"} plus "pi_power" for single pi-graded terms;
    mixed pi-graded sums become {"terms": [...]}
    """
    if isinstance(value, (int, Fraction)):
        value = Fraction(value)
        return {'num': value.numerator, 'den': value.denominator}
    if isinstance(value, PiGraded):
        if value.is_zero():
            return {'num': 0, 'den': 1}
        terms = [
            {'num': coeff.numerator, 'den': coeff.denominator, 'pi_power': power}
            for power, coeff in value.terms
        ]
        return terms[0] if len(terms) == 1 else {'terms': terms}
    raise TypeError(f"{type(value).__name__} is not an exact value")


def jsonable(value, digits: int):
    """Recursively convert report structures to JSON-ready values"""
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, (Fraction, PiGraded)):
        return exact_to_dict(value)
    if isinstance(value, (mpmath.mpf, mpmath.mpc)):
        return decimal_string(value, digits)
    if isinstance(value, float):
        return decimal_string(mpmath.mpf(value), digits)
    if is_dataclass(value) and not isinstance(value, type):
        if hasattr(value, 'to_dict'):
            return jsonable(value.to_dict(), digits)
        return jsonable(asdict(value), digits)
    if isinstance(value, dict):
        return {str(k): jsonable(v, digits) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v, digits) for v in value]
    return str(value)


def flat_string(value, digits: int) -> str:
    """One-cell rendering for CSV and text tables"""
    if isinstance(value, (Fraction, PiGraded)):
        return str(value)
    if isinstance(value, (mpmath.mpf, mpmath.mpc)):
        return decimal_string(value, digits)
    if value is None:
        return ''
    return str(value)


def write_json(payload: Any, stream: TextIO, digits: int) -> None:
    json.dump(jsonable(payload, digits), stream, indent=2, sort_keys=True)
    stream.write('\n')


def write_csv(rows: List[Dict[str, Any]], stream: TextIO, digits: int,
              fieldnames: Optional[Iterable[str]] = None) -> None:
    fieldnames = list(fieldnames or (rows[0].keys() if rows else []))
    writer = csv.DictWriter(stream, fieldnames=fieldnames, lineterminator='\n')
    writer.writeheader()
    for row in rows:
        writer.writerow({key: flat_string(row.get(key), digits) for key in fieldnames})


def write_text(rows: List[Dict[str, Any]], stream: TextIO, digits: int, title: Optional[str] = None) -> None:
    """Render rows as a rich table"""
    table = Table(title=title)
    columns = list(rows[0].keys()) if rows else []
    for column in columns:
        table.add_column(column)
    for row in rows:
        table.add_row(*(flat_string(row.get(column), digits) for column in columns))
    Console(file=stream, width=200, no_color=True).print(table)


def emit(payload: Any, rows: List[Dict[str, Any]], fmt: str, stream: TextIO,
         digits: int, title: Optional[str] = None) -> None:
    """
    Write a result in the requested format

    JSON gets the full structured payload; CSV and text get the flat rows.
    """
    if fmt == 'json':
        write_json(payload, stream, digits)
    elif fmt == 'csv':
        write_csv(rows, stream, digits)
    elif fmt == 'text':
        write_text(rows, stream, digits, title)
    else:
        raise ConfigError(f"Unknown output format {fmt!r}")
