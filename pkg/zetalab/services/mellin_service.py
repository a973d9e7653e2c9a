"""
Mellin Service - registry and numerical verification of the integral representations
Handles integrand evaluation, quadrature with analytic tails and per-grid verification
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import mpmath

from zetalab.config import Config
from zetalab.exceptions import DomainError
from zetalab.utils.exactnum import bernoulli
from zetalab.utils.laurent import (
    FunctionKind, closed_form_series, digamma_product_series, digamma_sym_series,
)
from zetalab.utils.reporting import log_verification_event
from zetalab.utils.specfun import PrecisionContext, chi, eta_half, euler_gamma, gamma_fn, to_mpf, zeta

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TailTerm:
    """c * x^power * ln(x)^log_power, the large-x behaviour of an integrand"""
    coefficient: Any
    power: int = 0
    log_power: int = 0

    def integral(self, kernel_exponent, cutoff):
        """
        Closed form of int_T^oo x^kernel * c x^power ln^j x dx

        With p = kernel + power and a = -(p+1) > 0 this is
        c * Gamma(j+1, a ln T) / a^(j+1).
        """
        a = -(kernel_exponent + self.power + 1)
        if a <= 0:
            raise DomainError(f"Tail term x^{self.power} diverges against the kernel at this s")
        j = self.log_power
        return to_mpf(self.coefficient) * mpmath.gammainc(j + 1, a * mpmath.log(cutoff)) / a ** (j + 1)


@dataclass(frozen=True)
class QuadratureConfig:
    """Quadrature layout: series head below x0, tanh-sinh to split, Gauss-Legendre panels to T, closed tail"""
    ctx: PrecisionContext = field(default_factory=PrecisionContext)
    split_point: Any = Config.SPLIT_POINT
    series_threshold: Any = Config.SERIES_THRESHOLD
    panel_width: Any = Config.PANEL_WIDTH
    cutoff_scale: int = 1

    def cutoff(self, decay) -> Any:
        """T = max(30, 1.2 * working digits * ln 10 / decay), scaled for self-consistency checks"""
        base = max(mpmath.mpf(30), mpmath.mpf('1.2') * self.ctx.working_digits * mpmath.ln10 / decay)
        return mpmath.ceil(base) * self.cutoff_scale

    @property
    def tolerance(self):
        return mpmath.mpf(10) ** (10 - self.ctx.digits)


@dataclass(frozen=True)
class RepresentationSpec:
    """One integral representation prefactor(s) * int_0^oo x^kernel(s) f(x, s) dx = lhs(s)"""
    id: str
    formula: str
    strip: Tuple[Fraction, Fraction]
    direct: Callable[[Any, Any], Any]
    # (s, ctx, order) -> ((exponent, coefficient), ...) of f(x, s) at x = 0, exponents below order
    near_terms: Callable[[Any, PrecisionContext, int], Sequence[Tuple[int, Any]]]
    small_x_exponent: int
    tail: Callable[[Any, PrecisionContext, Any], List[TailTerm]]
    decay: Callable[[], Any]
    prefactor: Callable[[Any], Any]
    lhs: Callable[[Any, PrecisionContext], Any]
    excluded: Tuple[Fraction, ...] = ()
    kernel: Callable[[Any], Any] = lambda s: -s - 1
    printed_prefactor: Optional[Callable[[Any], Any]] = None
    printed_note: str = ''

    def contains(self, s) -> bool:
        low, high = self.strip
        return to_mpf(low) < s < to_mpf(high)

    def near_zero(self, x, s, ctx: PrecisionContext):
        return _poly_value(self.near_terms(s, ctx, Config.SERIES_ORDER), x)


@dataclass
class IntegralResult:
    value: Any
    error_bound: Any
    cutoff: Any


@dataclass
class VerificationPoint:
    s: Fraction
    lhs: Any
    rhs: Any
    residual: Any
    error_bound: Any = None

    def to_dict(self) -> Dict[str, Any]:
        return {'s': self.s, 'lhs': self.lhs, 'rhs': self.rhs, 'residual': self.residual}


@dataclass
class VerificationReport:
    id: str
    digits: int
    points: List[VerificationPoint]
    max_residual: Any
    tolerance: Any
    passed: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            'id': self.id,
            'digits': self.digits,
            'points': [p.to_dict() for p in self.points],
            'max_residual': self.max_residual,
            'pass': self.passed,
        }


# Integrand pieces

def _sin_half(s):
    return mpmath.sinpi(s / 2)


def _cos_half(s):
    return mpmath.cospi(s / 2)


def _poly_value(terms: Sequence[Tuple[int, Any]], x):
    return mpmath.fsum(to_mpf(c) * x ** e for e, c in terms)


@lru_cache(maxsize=32)
def _regular_part(tag: str, shift: int = 0, order: int = Config.SERIES_ORDER) -> Tuple[Tuple[int, Fraction], ...]:
    """Positive-exponent part of an exact hyperbolic expansion, after multiplying by x^shift"""
    series = closed_form_series(FunctionKind(tag), order).shifted(shift)
    return tuple((e, c) for e, c in series.terms() if e > 0 and c != 0)


def _hyperbolic_terms(tag: str, shift: int = 0, sign: int = 1):
    def terms(s, ctx, order):
        return tuple((e, sign * c) for e, c in _regular_part(tag, shift, order))
    return terms


@lru_cache(maxsize=16)
def _digamma_sym_terms(ctx: PrecisionContext, order: int):
    with ctx.workdps():
        return tuple((e, c) for e, c in digamma_sym_series(order, ctx).terms() if c != 0)


@lru_cache(maxsize=16)
def _digamma_product_terms(ctx: PrecisionContext, order: int):
    with ctx.workdps():
        series = digamma_product_series(order, ctx, 'ix')
        # the product is even in x; odd coefficients are rounding noise
        return tuple((e, c) for e, c in series.terms() if e > 0 and e % 2 == 0)


@lru_cache(maxsize=64)
def _r1_terms(s, ctx: PrecisionContext, order: int):
    """
    x coth x (1 - (x / sinh x)^s) in powers of x^2, from
    ln(sinh x / x) = sum 2^2n B_2n x^2n / (2n (2n)!) and x coth x = sum 2^2n B_2n x^2n / (2n)!
    """
    with ctx.workdps():
        s = to_mpf(s)
        top = (order - 1) // 2
        log_ratio = [mpmath.mpf(0)] + [
            -s * to_mpf(Fraction(4 ** n) * bernoulli(2 * n) / (2 * n * factorial(2 * n)))
            for n in range(1, top + 1)
        ]
        # exp of a series without constant term: h_n = (1/n) sum k g_k h_(n-k)
        power = [mpmath.mpf(1)]
        for n in range(1, top + 1):
            power.append(mpmath.fsum(k * log_ratio[k] * power[n - k] for k in range(1, n + 1)) / n)
        x_coth = [to_mpf(Fraction(4 ** n) * bernoulli(2 * n) / factorial(2 * n)) for n in range(top + 1)]
        return tuple(
            (2 * n, -mpmath.fsum(x_coth[k] * power[n - k] for k in range(n)))
            for n in range(1, top + 1)
        )


def _sinh_ratio_excess(x):
    """sinh(x)/x - 1 without cancellation for small x"""
    if x >= Config.SERIES_THRESHOLD:
        return mpmath.sinh(x) / x - 1
    total, k, term = mpmath.mpf(0), 1, mpmath.mpf(1)
    while True:
        term = x ** (2 * k) / factorial(2 * k + 1)
        total += term
        if term < mpmath.eps * total:
            return total
        k += 1


def _r1_function(x, s):
    # x coth x (1 - (x / sinh x)^s), the u-integrand of R1 times u^(s+1)
    return -x * mpmath.coth(x) * mpmath.expm1(-s * mpmath.log1p(_sinh_ratio_excess(x)))


def _digamma_ix(x):
    return mpmath.digamma(mpmath.mpc(0, x))


def _r38_direct(x, s):
    return 2 * mpmath.re(_digamma_ix(x)) + 2 * mpmath.euler


def _r42_direct(x, s):
    psi = _digamma_ix(x)
    return mpmath.re(psi) ** 2 + mpmath.im(psi) ** 2 - 1 / x ** 2 - mpmath.euler ** 2 - mpmath.pi ** 2 / 3


def _asymptotic_coefficients(cutoff) -> List[Any]:
    """
    a_k = (-1)^k B_2k / (2k) for Re psi(ix) ~ ln x - sum_k a_k x^-2k, stopping
    before the first term that is below the working epsilon at x = T
    """
    coeffs = []
    k = 1
    while True:
        a_k = (-1) ** k * to_mpf(bernoulli(2 * k)) / (2 * k)
        if abs(a_k) / cutoff ** (2 * k) < mpmath.eps:
            return coeffs
        coeffs.append(a_k)
        k += 1
        if k > 400:
            log_verification_event("QUADRATURE_WARNING", f"digamma asymptotic series not converged at T={cutoff}")
            return coeffs


def _tail_r38(s, ctx, cutoff) -> List[TailTerm]:
    terms = [TailTerm(2, 0, 1), TailTerm(2 * euler_gamma(ctx), 0, 0)]
    terms += [TailTerm(-2 * a_k, -2 * k, 0) for k, a_k in enumerate(_asymptotic_coefficients(cutoff), start=1)]
    return terms


def _tail_r42(s, ctx, cutoff) -> List[TailTerm]:
    # |psi(ix)|^2 with Re psi = ln x - A(x) and Im psi = 1/(2x) + pi/2 up to e^(-2 pi x)
    coeffs = _asymptotic_coefficients(cutoff)
    terms = [
        TailTerm(1, 0, 2),
        TailTerm(mpmath.mpf(-3) / 4, -2, 0),
        TailTerm(mpmath.pi / 2, -1, 0),
        TailTerm(-euler_gamma(ctx) ** 2 - mpmath.pi ** 2 / 12, 0, 0),
    ]
    terms += [TailTerm(-2 * a_k, -2 * k, 1) for k, a_k in enumerate(coeffs, start=1)]
    squares: Dict[int, Any] = {}
    for k, a_k in enumerate(coeffs, start=1):
        for l, a_l in enumerate(coeffs, start=1):
            if k + l <= len(coeffs):
                squares[k + l] = squares.get(k + l, 0) + a_k * a_l
    terms += [TailTerm(c, -2 * m, 0) for m, c in sorted(squares.items())]
    return terms


def _fixed_tail(*pairs: Tuple[Any, int]):
    terms = [TailTerm(c, q, 0) for c, q in pairs]

    def tail(s, ctx, cutoff):
        return terms
    return tail


def _fraction_strip(low, high) -> Tuple[Fraction, Fraction]:
    return Fraction(low), Fraction(high)


def _build_registry() -> Dict[str, RepresentationSpec]:
    entries = [
        RepresentationSpec(
            id='R1',
            formula='zeta(s) = pi^(s-1) sin(pi s/2) int_0^oo coth(u) (u^-s - sinh(u)^-s) du',
            strip=_fraction_strip(1, 2),
            direct=_r1_function,
            near_terms=_r1_terms,
            small_x_exponent=2,
            tail=_fixed_tail((1, 1)),
            decay=lambda: mpmath.mpf(1),
            prefactor=lambda s: mpmath.pi ** (s - 1) * _sin_half(s),
            lhs=lambda s, ctx: zeta(s, ctx),
        ),
        RepresentationSpec(
            id='R2',
            formula='int_0^oo x^(-s-1) (csch x - 1/x) dx = (2^-s - 1) pi^-s zeta(s+1) / cos(pi s/2)',
            strip=_fraction_strip(-1, 1),
            excluded=(Fraction(0),),
            direct=lambda x, s: mpmath.csch(x) - 1 / x,
            near_terms=_hyperbolic_terms('csch'),
            small_x_exponent=1,
            tail=_fixed_tail((-1, -1)),
            decay=lambda: mpmath.mpf(1),
            prefactor=lambda s: mpmath.mpf(1),
            lhs=lambda s, ctx: (mpmath.power(2, -s) - 1) * mpmath.pi ** (-s) * zeta(s + 1, ctx) / _cos_half(s),
        ),
        RepresentationSpec(
            id='R3',
            formula='zeta(s) = -pi^(s-1) sin(pi s/2)/(s-1) int_0^oo x^(1-s) (csch^2 x - 1/x^2) dx',
            strip=_fraction_strip(0, 2),
            excluded=(Fraction(1),),
            direct=lambda x, s: (x / mpmath.sinh(x)) ** 2 - 1,
            near_terms=_hyperbolic_terms('csch2', shift=2),
            small_x_exponent=2,
            tail=_fixed_tail((-1, 0)),
            decay=lambda: mpmath.mpf(2),
            prefactor=lambda s: -mpmath.pi ** (s - 1) * _sin_half(s) / (s - 1),
            lhs=lambda s, ctx: zeta(s, ctx),
        ),
        RepresentationSpec(
            id='R7',
            formula='zeta(s+1) = cos(pi s/2) pi^s int_0^oo x^(-s-1) (coth x - 1/x) dx',
            strip=_fraction_strip(0, 1),
            direct=lambda x, s: mpmath.coth(x) - 1 / x,
            near_terms=_hyperbolic_terms('coth'),
            small_x_exponent=1,
            tail=_fixed_tail((1, 0), (-1, -1)),
            decay=lambda: mpmath.mpf(2),
            prefactor=lambda s: _cos_half(s) * mpmath.pi ** s,
            lhs=lambda s, ctx: zeta(s + 1, ctx),
        ),
        RepresentationSpec(
            id='R8',
            formula='zeta(s+2) = pi^(s+1) sin(pi s/2)/(s+1) int_0^oo x^(-s-1) (coth^2 x - 1/x^2 - 2/3) dx',
            strip=_fraction_strip(0, 2),
            direct=lambda x, s: mpmath.coth(x) ** 2 - 1 / x ** 2 - mpmath.mpf(2) / 3,
            near_terms=_hyperbolic_terms('coth2'),
            small_x_exponent=2,
            tail=_fixed_tail((Fraction(1, 3), 0), (-1, -2)),
            decay=lambda: mpmath.mpf(2),
            prefactor=lambda s: mpmath.pi ** (s + 1) * _sin_half(s) / (s + 1),
            lhs=lambda s, ctx: zeta(s + 2, ctx),
        ),
        RepresentationSpec(
            id='R9',
            formula='zeta(s+2) = pi^(s+1) sin(pi s/2)/(s+1) int_0^oo x^(-s-1) (csch^2 x - 1/x^2 + 1/3) dx',
            strip=_fraction_strip(0, 2),
            direct=lambda x, s: mpmath.csch(x) ** 2 - 1 / x ** 2 + mpmath.mpf(1) / 3,
            near_terms=_hyperbolic_terms('csch2'),
            small_x_exponent=2,
            tail=_fixed_tail((Fraction(1, 3), 0), (-1, -2)),
            decay=lambda: mpmath.mpf(2),
            prefactor=lambda s: mpmath.pi ** (s + 1) * _sin_half(s) / (s + 1),
            lhs=lambda s, ctx: zeta(s + 2, ctx),
        ),
        RepresentationSpec(
            id='R10',
            formula='eta(s+1, 1/2) = -pi^s sin(pi s/2) int_0^oo x^(-s-1) (sech x - 1) dx',
            strip=_fraction_strip(0, 2),
            direct=lambda x, s: mpmath.sech(x) - 1,
            near_terms=_hyperbolic_terms('sech'),
            small_x_exponent=2,
            tail=_fixed_tail((-1, 0)),
            decay=lambda: mpmath.mpf(1),
            prefactor=lambda s: -mpmath.pi ** s * _sin_half(s),
            lhs=lambda s, ctx: eta_half(s + 1, ctx),
        ),
        RepresentationSpec(
            id='R11',
            formula='zeta(s+2) = -pi^(s+1) sin(pi s/2)/((s+1)(2^(s+2)-1)) int_0^oo x^(-s-1) (sech^2 x - 1) dx',
            strip=_fraction_strip(0, 2),
            direct=lambda x, s: mpmath.sech(x) ** 2 - 1,
            near_terms=_hyperbolic_terms('sech2'),
            small_x_exponent=2,
            tail=_fixed_tail((-1, 0)),
            decay=lambda: mpmath.mpf(2),
            prefactor=lambda s: -mpmath.pi ** (s + 1) * _sin_half(s) / ((s + 1) * (mpmath.power(2, s + 2) - 1)),
            lhs=lambda s, ctx: zeta(s + 2, ctx),
            printed_prefactor=lambda s: mpmath.pi ** (s + 1) * _sin_half(s) / ((s + 1) * (mpmath.power(2, s + 2) - 1)),
            printed_note='printed prefactor lacks the overall minus sign',
        ),
        RepresentationSpec(
            id='R12',
            formula='(s+1)(s+2) zeta(s+3)/2 - pi^2 zeta(s+1) = -pi^(s+2) cos(pi s/2) '
                    'int_0^oo x^(-s-1) (coth^3 x - 1/x^3 - 1/x) dx',
            strip=_fraction_strip(0, 1),
            direct=lambda x, s: mpmath.coth(x) ** 3 - 1 / x ** 3 - 1 / x,
            near_terms=_hyperbolic_terms('coth3'),
            small_x_exponent=1,
            tail=_fixed_tail((1, 0), (-1, -1), (-1, -3)),
            decay=lambda: mpmath.mpf(2),
            prefactor=lambda s: -mpmath.pi ** (s + 2) * _cos_half(s),
            lhs=lambda s, ctx: (s + 1) * (s + 2) * zeta(s + 3, ctx) / 2 - mpmath.pi ** 2 * zeta(s + 1, ctx),
            printed_prefactor=lambda s: mpmath.pi ** (s + 2) * _cos_half(s),
            printed_note='printed prefactor lacks the overall minus sign',
        ),
        RepresentationSpec(
            id='R13',
            formula='(s+2)(s+3) zeta(s+4)/6 - 4 pi^2 zeta(s+2)/3 = -pi^(s+3) sin(pi s/2)/(s+1) '
                    'int_0^oo x^(-s-1) (coth^4 x - 1/x^4 - 4/(3x^2) - 26/45) dx',
            strip=_fraction_strip(0, 2),
            direct=lambda x, s: (mpmath.coth(x) ** 4 - 1 / x ** 4 - mpmath.mpf(4) / (3 * x ** 2)
                                 - mpmath.mpf(26) / 45),
            near_terms=_hyperbolic_terms('coth4'),
            small_x_exponent=2,
            tail=_fixed_tail((Fraction(19, 45), 0), (Fraction(-4, 3), -2), (-1, -4)),
            decay=lambda: mpmath.mpf(2),
            prefactor=lambda s: -mpmath.pi ** (s + 3) * _sin_half(s) / (s + 1),
            lhs=lambda s, ctx: ((s + 2) * (s + 3) * zeta(s + 4, ctx) / 6
                                - 4 * mpmath.pi ** 2 * zeta(s + 2, ctx) / 3),
            printed_prefactor=lambda s: mpmath.pi ** (s + 3) * _sin_half(s) / (s + 1),
            printed_note='printed prefactor lacks the overall minus sign',
        ),
        RepresentationSpec(
            id='R38',
            formula='zeta(s+1) = sin(pi s/2)/pi int_0^oo x^(-s-1) (psi(ix) + psi(-ix) + 2 gamma) dx',
            strip=_fraction_strip(0, 1),
            direct=_r38_direct,
            near_terms=lambda s, ctx, order: _digamma_sym_terms(ctx, order),
            small_x_exponent=2,
            tail=_tail_r38,
            decay=lambda: 2 * mpmath.pi,
            prefactor=lambda s: _sin_half(s) / mpmath.pi,
            lhs=lambda s, ctx: zeta(s + 1, ctx),
            printed_prefactor=lambda s: -mpmath.pi / _sin_half(s),
            printed_note='printed prefactor -pi/sin(pi s/2) should read sin(pi s/2)/pi',
        ),
        RepresentationSpec(
            id='R42',
            formula='pi chi(s+1) = sin(pi s/2) int_0^oo x^(-s-1) (psi(ix) psi(-ix) - 1/x^2 - gamma^2 - pi^2/3) dx',
            strip=_fraction_strip(0, 1),
            direct=_r42_direct,
            near_terms=lambda s, ctx, order: _digamma_product_terms(ctx, order),
            small_x_exponent=2,
            tail=_tail_r42,
            decay=lambda: 2 * mpmath.pi,
            prefactor=lambda s: _sin_half(s) / mpmath.pi,
            lhs=lambda s, ctx: chi(s + 1, ctx),
        ),
        RepresentationSpec(
            id='ROB',
            formula='int_0^oo x^(z-1) (1/x - csch x) dx = 2 (2^-z - 1) Gamma(z) zeta(z)',
            strip=_fraction_strip(-1, 1),
            excluded=(Fraction(0),),
            direct=lambda x, s: 1 / x - mpmath.csch(x),
            near_terms=_hyperbolic_terms('csch', sign=-1),
            small_x_exponent=1,
            tail=_fixed_tail((1, -1)),
            decay=lambda: mpmath.mpf(1),
            prefactor=lambda s: mpmath.mpf(1),
            lhs=lambda s, ctx: 2 * (mpmath.power(2, -s) - 1) * gamma_fn(s, ctx) * zeta(s, ctx),
            kernel=lambda s: s - 1,
        ),
    ]
    return {entry.id: entry for entry in entries}


class MellinService:
    """Service class for the integral representation registry"""

    def __init__(self):
        self._registry = _build_registry()

    def registry(self) -> List[RepresentationSpec]:
        return list(self._registry.values())

    def get(self, rep_id: str) -> RepresentationSpec:
        try:
            return self._registry[rep_id.upper()]
        except KeyError:
            raise DomainError(f"Unknown representation {rep_id!r}; known: {', '.join(self._registry)}") from None

    @staticmethod
    def default_grid(rep: RepresentationSpec, points: int = Config.GRID_POINTS) -> List[Fraction]:
        """Equispaced interior points; a point on an excluded value moves a quarter step right"""
        low, high = rep.strip
        step = (high - low) / (points + 1)
        grid = []
        for i in range(1, points + 1):
            s = low + i * step
            if s in rep.excluded:
                s += step / 4
            grid.append(s)
        return grid

    def _check_point(self, rep: RepresentationSpec, s) -> None:
        if not rep.contains(s):
            raise DomainError(f"s = {s} is outside the strip {rep.strip[0]} < s < {rep.strip[1]} of {rep.id}")
        if any(s == to_mpf(e) for e in rep.excluded):
            raise DomainError(f"s = {s} is an excluded removable singularity of {rep.id}")

    def integrand_value(self, rep: RepresentationSpec, x, s, cfg: Optional[QuadratureConfig] = None):
        """Subtracted integrand f(x, s); near zero it comes from the series expansion"""
        cfg = cfg or QuadratureConfig()
        with cfg.ctx.workdps():
            x, s = to_mpf(x), to_mpf(s)
            if x <= 0:
                raise DomainError(f"integrand needs x > 0 (got {x})")
            if x < to_mpf(cfg.series_threshold):
                return rep.near_zero(x, s, cfg.ctx)
            return rep.direct(x, s)

    def _head_integral(self, rep: RepresentationSpec, s, kernel, x0, ctx: PrecisionContext):
        """
        int_0^x0 x^kernel f(x, s) dx from the series of f at 0, term by term

        Each term c x^e contributes c x0^p / p with p = kernel + e + 1 > 0. The
        order is chosen so x0^order is below the working epsilon against a
        unit radius of convergence; the bound is the size of the last two terms.
        """
        order = int(mpmath.ceil(ctx.working_digits / -mpmath.log10(x0))) + 10
        pieces = []
        for e, c in rep.near_terms(s, ctx, order):
            if e < rep.small_x_exponent:
                raise DomainError(f"{rep.id}: series term x^{e} below the declared small-x exponent")
            p = kernel + e + 1
            pieces.append(to_mpf(c) * mpmath.power(x0, p) / p)
        value = mpmath.fsum(pieces)
        bound = mpmath.fsum(abs(piece) for piece in pieces[-2:])
        return value, bound

    def integrate(self, rep: RepresentationSpec, s, cfg: Optional[QuadratureConfig] = None) -> IntegralResult:
        """
        int_0^oo x^kernel(s) f(x, s) dx

        (0, x0] is integrated in closed form from the series of f at 0, so the
        algebraic endpoint singularity never meets a quadrature node;
        tanh-sinh covers [x0, split] and Gauss-Legendre panels [split, T]; the
        tail terms are integrated in closed form on [T, oo) and the
        exponentially small remainder is bounded by T^2 e^(-decay T).
        """
        cfg = cfg or QuadratureConfig()
        ctx = cfg.ctx
        with ctx.workdps():
            s = to_mpf(s)
            self._check_point(rep, s)
            kernel = rep.kernel(s)
            if kernel + rep.small_x_exponent + 1 <= 0:
                raise DomainError(f"{rep.id} is not integrable at 0 for s = {mpmath.nstr(s, 8)}")
            threshold = to_mpf(cfg.series_threshold)
            split = to_mpf(cfg.split_point)
            if not 0 < threshold < min(split, 1):
                raise DomainError(f"series threshold {cfg.series_threshold} must lie in (0, min(split, 1))")
            decay = rep.decay()
            cutoff = cfg.cutoff(decay)

            def function(x):
                # the subtracted integrands cancel a few digits below x = 1
                with mpmath.extraprec(40):
                    return x ** kernel * rep.direct(x, s)

            head, head_err = self._head_integral(rep, s, kernel, threshold, ctx)
            middle, middle_err = mpmath.quad(function, [threshold, split], error=True)
            panels = int(mpmath.ceil((cutoff - split) / to_mpf(cfg.panel_width)))
            nodes = mpmath.linspace(split, cutoff, panels + 1)
            body, body_err = mpmath.quad(function, nodes, method='gauss-legendre', error=True)
            tail = mpmath.fsum(term.integral(kernel, cutoff) for term in rep.tail(s, ctx, cutoff))
            remainder = cutoff ** 2 * mpmath.exp(-decay * cutoff)

            value = head + middle + body + tail
            rounding = 1000 * mpmath.eps * (abs(head) + abs(middle) + abs(body) + abs(tail) + 1)
            bound = head_err + middle_err + body_err + remainder + rounding
            logger.debug(f"{rep.id} s={mpmath.nstr(s, 8)} T={cutoff} panels={panels} bound={mpmath.nstr(bound, 3)}")
            if bound > ctx.tolerance():
                log_verification_event(
                    "QUADRATURE_WARNING",
                    f"{rep.id} at s={mpmath.nstr(s, 8)}: error bound {mpmath.nstr(bound, 3)} above 1e-{ctx.digits}"
                )
            return IntegralResult(value=value, error_bound=bound, cutoff=cutoff)

    def evaluate_point(self, rep: RepresentationSpec, s, cfg: QuadratureConfig,
                       prefactor: Optional[Callable[[Any], Any]] = None) -> VerificationPoint:
        """prefactor * integral against lhs at one s"""
        ctx = cfg.ctx
        result = self.integrate(rep, s, cfg)
        with ctx.workdps():
            s_value = to_mpf(s)
            lhs = rep.lhs(s_value, ctx)
            rhs = (prefactor or rep.prefactor)(s_value) * result.value
            residual = abs(rhs - lhs) / abs(lhs) if lhs != 0 else abs(rhs)
        return VerificationPoint(s=Fraction(s), lhs=lhs, rhs=rhs, residual=residual, error_bound=result.error_bound)

    def verify_representation(self, rep: RepresentationSpec, s_points: Optional[Sequence] = None,
                              cfg: Optional[QuadratureConfig] = None) -> VerificationReport:
        """
        Verify one representation on a grid of real s inside its strip

        Returns:
            VerificationReport; passed iff every relative residual is within
            10^-(digits-10)
        """
        cfg = cfg or QuadratureConfig()
        grid = list(s_points) if s_points is not None else self.default_grid(rep)
        grid = [Fraction(s) for s in grid]
        if not grid:
            raise DomainError(f"No grid points to verify {rep.id}")
        logger.info(f"Verifying {rep.id} at {len(grid)} points, {cfg.ctx.digits} digits")

        points = [self.evaluate_point(rep, s, cfg) for s in grid]
        with cfg.ctx.workdps():
            max_residual = max(p.residual for p in points)
            passed = bool(max_residual <= cfg.tolerance)
        if not passed:
            log_verification_event(
                "REPRESENTATION_FAILED",
                f"{rep.id}: max relative residual {mpmath.nstr(max_residual, 5)} at {cfg.ctx.digits} digits"
            )
        return VerificationReport(
            id=rep.id, digits=cfg.ctx.digits, points=points,
            max_residual=max_residual, tolerance=cfg.tolerance, passed=passed,
        )

    def verify_all(self, digits: int, parallelism: int = 1, ids: Optional[Sequence[str]] = None,
                   points: int = Config.GRID_POINTS) -> List[VerificationReport]:
        """Verify several representations on their default grids, in a process pool when parallelism > 1"""
        if points < 1:
            raise DomainError(f"grid needs at least one point (got {points})")
        ids = [self.get(rep_id).id for rep_id in (ids or list(self._registry))]
        if parallelism <= 1 or len(ids) == 1:
            return [_verify_worker(rep_id, digits, points) for rep_id in ids]
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            return list(pool.map(_verify_worker, ids, [digits] * len(ids), [points] * len(ids)))

    def printed_prefactor_errata(self, cfg: Optional[QuadratureConfig] = None) -> List[Dict[str, Any]]:
        """
        Evaluate each printed prefactor that differs from the verified one at
        the middle grid point and report both residuals
        """
        cfg = cfg or QuadratureConfig()
        findings = []
        for rep in self.registry():
            if rep.printed_prefactor is None:
                continue
            grid = self.default_grid(rep)
            s = grid[len(grid) // 2]
            verified = self.evaluate_point(rep, s, cfg)
            printed = self.evaluate_point(rep, s, cfg, prefactor=rep.printed_prefactor)
            findings.append({
                'id': rep.id,
                's': s,
                'printed_residual': printed.residual,
                'verified_residual': verified.residual,
                'note': rep.printed_note,
            })
            log_verification_event("PRINTED_PREFACTOR", f"{rep.id}: {rep.printed_note}")
        return findings

    def bridge_residual(self, z, cfg: Optional[QuadratureConfig] = None):
        """
        The csch transform seen from both sides: int x^(z-1) (1/x - csch x) dx
        equals minus the R2 integral at s = -z
        """
        cfg = cfg or QuadratureConfig()
        ob = self.integrate(self.get('ROB'), z, cfg)
        r2 = self.integrate(self.get('R2'), -Fraction(z), cfg)
        with cfg.ctx.workdps():
            return abs(ob.value + r2.value)


def _verify_worker(rep_id: str, digits: int, points: int = Config.GRID_POINTS) -> VerificationReport:
    cfg = QuadratureConfig(ctx=PrecisionContext(digits))
    rep = mellin_service.get(rep_id)
    return mellin_service.verify_representation(rep, mellin_service.default_grid(rep, points), cfg)


# Global instance
mellin_service = MellinService()
