"""
Truncated Laurent series around x = 0

Closed-form generators for the hyperbolic and digamma expansions, an
independent oracle built by series algebra from the sinh/cosh Taylor
series, and evaluation with a truncation error bound.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Any, Dict, List, Optional, Tuple, Union

import mpmath

from zetalab.config import Config
from zetalab.exceptions import SeriesError
from zetalab.utils.exactnum import euler_number, harmonic
from zetalab.utils.specfun import (
    DEFAULT_CONTEXT, PrecisionContext, chi, to_mpf, zeta_even_exact,
)

logger = logging.getLogger(__name__)

Coefficient = Union[Fraction, Any]  # Fraction, or an mpmath mpf/mpc

RADII = ('pi', 'pi/2', '1', 'inf')

TRIG_TAGS = ('coth', 'coth2', 'coth3', 'coth4', 'csch', 'csch2', 'sech', 'sech2')
DIGAMMA_TAGS = ('digamma_sym', 'digamma_at', 'chi_series')

_TAG_RADIUS = {
    'coth': 'pi', 'coth2': 'pi', 'coth3': 'pi', 'coth4': 'pi',
    'csch': 'pi', 'csch2': 'pi',
    'sech': 'pi/2', 'sech2': 'pi/2',
    'digamma_sym': '1', 'digamma_at': '1', 'chi_series': '1',
}

_TAG_LOWEST = {
    'coth': -1, 'coth2': -2, 'coth3': -3, 'coth4': -4,
    'csch': -1, 'csch2': -2, 'sech': 0, 'sech2': 0,
    'digamma_sym': 0, 'chi_series': 0,
}

# Sign patterns for even series sum_n p(n) * 2 * a_n * x^2n
SIGN_PATTERNS = ('plain', 'alternating', 'negated')


def radius_value(name: str):
    """Numeric radius for a radius name"""
    if name == 'pi':
        return +mpmath.pi
    if name == 'pi/2':
        return mpmath.pi / 2
    if name == '1':
        return mpmath.mpf(1)
    if name == 'inf':
        return mpmath.inf
    raise SeriesError(f"Unknown radius {name!r}")


def _is_exact(value) -> bool:
    return isinstance(value, (Fraction, int))


@dataclass(frozen=True)
class FunctionKind:
    """A named expansion; digamma_at carries the integer shift n"""
    tag: str
    n: Optional[int] = None

    def __post_init__(self):
        if self.tag not in TRIG_TAGS + DIGAMMA_TAGS:
            raise SeriesError(f"Unknown function kind {self.tag!r}")
        if (self.tag == 'digamma_at') != (self.n is not None):
            raise SeriesError("digamma_at needs an integer shift n and no other kind takes one")

    @classmethod
    def parse(cls, text: str) -> 'FunctionKind':
        """Parse 'coth2' or 'digamma_at(3)' / 'digamma_at:-2'"""
        text = text.strip().lower()
        for sep_open, sep_close in (('(', ')'), (':', '')):
            if text.startswith('digamma_at' + sep_open):
                raw = text[len('digamma_at') + 1:]
                if sep_close:
                    raw = raw.rstrip(sep_close)
                try:
                    return cls('digamma_at', int(raw))
                except ValueError as e:
                    raise SeriesError(f"Bad digamma_at shift in {text!r}") from e
        return cls(text)

    @property
    def is_trig(self) -> bool:
        return self.tag in TRIG_TAGS

    @property
    def radius(self) -> str:
        return _TAG_RADIUS[self.tag]

    @property
    def lowest(self) -> int:
        if self.tag == 'digamma_at':
            return -1 if self.n <= 0 else 0
        return _TAG_LOWEST[self.tag]

    def __str__(self):
        return f"digamma_at({self.n})" if self.tag == 'digamma_at' else self.tag


@dataclass(frozen=True)
class PowerSeries:
    """
    sum_{e = lowest}^{order - 1} coeffs[e - lowest] * x^e

    Coefficients are either all exact (Fraction) or all numeric (mpmath);
    mixing the two only happens through an explicit to_numeric().
    """
    lowest: int
    coeffs: Tuple[Coefficient, ...]
    radius: str = 'inf'

    def __post_init__(self):
        if self.radius not in RADII:
            raise SeriesError(f"Unknown radius {self.radius!r}")
        object.__setattr__(self, 'coeffs', tuple(self.coeffs))
        kinds = {_is_exact(c) for c in self.coeffs}
        if len(kinds) > 1:
            raise SeriesError("Series mixes exact and numeric coefficients")
        if kinds == {True}:
            object.__setattr__(self, 'coeffs', tuple(Fraction(c) for c in self.coeffs))

    @property
    def order(self) -> int:
        return self.lowest + len(self.coeffs)

    @property
    def exact(self) -> bool:
        return all(isinstance(c, Fraction) for c in self.coeffs)

    def coefficient(self, exponent: int) -> Coefficient:
        if exponent >= self.order:
            raise SeriesError(f"x^{exponent} lies beyond the truncation order {self.order}")
        if exponent < self.lowest:
            return Fraction(0) if self.exact else mpmath.mpf(0)
        return self.coeffs[exponent - self.lowest]

    def terms(self) -> List[Tuple[int, Coefficient]]:
        return [(self.lowest + i, c) for i, c in enumerate(self.coeffs)]

    def truncated(self, order: int) -> 'PowerSeries':
        if order > self.order:
            raise SeriesError(f"Cannot extend a series of order {self.order} to {order}")
        if order <= self.lowest:
            return PowerSeries(order, (), self.radius)
        return PowerSeries(self.lowest, self.coeffs[:order - self.lowest], self.radius)

    def shifted(self, k: int) -> 'PowerSeries':
        """Multiply by x^k"""
        return PowerSeries(self.lowest + k, self.coeffs, self.radius)

    def scaled(self, factor) -> 'PowerSeries':
        return PowerSeries(self.lowest, tuple(c * factor for c in self.coeffs), self.radius)

    def to_numeric(self) -> 'PowerSeries':
        """Promote exact coefficients to mpf at the current precision"""
        if not self.exact:
            return self
        return PowerSeries(self.lowest, tuple(to_mpf(c) for c in self.coeffs), self.radius)

    def real_part(self) -> 'PowerSeries':
        if self.exact:
            return self
        return PowerSeries(self.lowest, tuple(mpmath.re(c) for c in self.coeffs), self.radius)

    def _aligned(self, other: 'PowerSeries'):
        if self.exact != other.exact and self.coeffs and other.coeffs:
            raise SeriesError("Cannot combine exact and numeric series without to_numeric()")
        lowest = min(self.lowest, other.lowest)
        order = min(self.order, other.order)
        return lowest, order

    def __add__(self, other: 'PowerSeries') -> 'PowerSeries':
        lowest, order = self._aligned(other)
        coeffs = tuple(self.coefficient(e) + other.coefficient(e) for e in range(lowest, order))
        return PowerSeries(lowest, coeffs, _nearer_radius(self.radius, other.radius))

    def __neg__(self) -> 'PowerSeries':
        return self.scaled(-1)

    def __sub__(self, other: 'PowerSeries') -> 'PowerSeries':
        return self + (-other)

    def to_dict(self, digits: int = 30) -> Dict[str, Any]:
        """JSON-ready form; exact coefficients as {num, den}, numeric ones as decimal strings"""
        coeffs: List[Any] = []
        for c in self.coeffs:
            if isinstance(c, Fraction):
                coeffs.append({'num': c.numerator, 'den': c.denominator})
            else:
                coeffs.append(mpmath.nstr(c, digits))
        return {'lowest': self.lowest, 'order': self.order, 'radius': self.radius, 'coeffs': coeffs}


def _nearer_radius(a: str, b: str) -> str:
    return a if radius_value(a) <= radius_value(b) else b


def cauchy_product(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    """Truncated product; exact through min(a.order + b.lowest, b.order + a.lowest) - 1"""
    if a.coeffs and b.coeffs and a.exact != b.exact:
        raise SeriesError("Cannot multiply exact and numeric series without to_numeric()")
    lowest = a.lowest + b.lowest
    order = min(a.order + b.lowest, b.order + a.lowest)
    zero = Fraction(0) if a.exact else mpmath.mpf(0)
    coeffs = []
    for e in range(lowest, order):
        acc = zero
        for i, ca in enumerate(a.coeffs):
            j = e - a.lowest - i - b.lowest
            if 0 <= j < len(b.coeffs):
                acc += ca * b.coeffs[j]
        coeffs.append(acc)
    return PowerSeries(lowest, tuple(coeffs), _nearer_radius(a.radius, b.radius))


def reciprocal_series(a: PowerSeries, radius: Optional[str] = None) -> PowerSeries:
    """
    1/a with the same number of terms

    The radius of 1/a depends on the zeros of a, so callers that know it pass
    it in; otherwise the radius of a is kept.
    """
    if not a.coeffs or a.coeffs[0] == 0:
        raise SeriesError("Reciprocal needs a non-zero leading coefficient")
    lead = a.coeffs[0]
    inverse = [1 / lead if not a.exact else Fraction(1) / lead]
    for k in range(1, len(a.coeffs)):
        acc = sum((a.coeffs[j] * inverse[k - j] for j in range(1, k + 1)), Fraction(0) if a.exact else mpmath.mpf(0))
        inverse.append(-acc / lead)
    return PowerSeries(-a.lowest, tuple(inverse), radius or a.radius)


def evaluate_series(series: PowerSeries, x, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """
    Sum the truncated series at x

    Returns (value, bound) where bound estimates the discarded tail as a
    geometric series in |x|/radius, scaled by the largest normalised
    magnitude |c_e| * radius^e among the last few stored coefficients.
    """
    with ctx.workdps():
        x = mpmath.mpmathify(x)
        radius = radius_value(series.radius)
        if abs(x) >= radius:
            raise SeriesError(f"|x| = {mpmath.nstr(abs(x), 8)} outside the radius {series.radius}")
        if x == 0 and any(e < 0 and c != 0 for e, c in series.terms()):
            raise SeriesError("Series has a pole at x = 0")

        value = mpmath.fsum(
            (to_mpf(c) if isinstance(c, Fraction) else c) * mpmath.power(x, e)
            for e, c in series.terms() if c != 0
        )
        if radius == mpmath.inf or x == 0:
            return value, mpmath.mpf(0)

        ratio = abs(x) / radius
        tail_terms = [(e, c) for e, c in series.terms() if c != 0 and e >= 0][-4:]
        if not tail_terms:
            return value, mpmath.mpf(0)
        scale = max(abs(to_mpf(c) if isinstance(c, Fraction) else c) * radius ** e for e, c in tail_terms)
        bound = scale * ratio ** series.order / (1 - ratio)
        return value, bound


def _zeta_ratio(n: int) -> Fraction:
    """zeta(2n) / pi^2n"""
    return zeta_even_exact(n).coefficient(2 * n)


def _trig_coefficient(tag: str, e: int) -> Fraction:
    c = _zeta_ratio
    if tag == 'coth':
        if e % 2 == 0:
            return Fraction(0)
        n = (e + 1) // 2
        return 2 * (-1) ** (n - 1 if n else 1) * c(n)
    if tag == 'csch':
        if e % 2 == 0:
            return Fraction(0)
        n = (e + 1) // 2
        return 2 * (-1) ** n * (1 - Fraction(2) ** (1 - 2 * n)) * c(n)
    if tag == 'sech':
        return Fraction(euler_number(e), factorial(e)) if e % 2 == 0 else Fraction(0)
    if tag == 'sech2':
        if e % 2:
            return Fraction(0)
        n = e // 2
        return 2 * (-1) ** n * (2 * n + 1) * (2 ** (2 * n + 2) - 1) * c(n + 1)
    if tag in ('coth2', 'csch2'):
        if e % 2:
            return Fraction(0)
        if e == -2:
            return Fraction(1)
        if e == 0:
            return Fraction(2, 3) if tag == 'coth2' else Fraction(-1, 3)
        n = e // 2
        return 2 * (-1) ** (n + 1) * (2 * n + 1) * c(n + 1)
    if tag == 'coth3':
        if e % 2 == 0:
            return Fraction(0)
        if e in (-3, -1):
            return Fraction(1)
        n = (e - 1) // 2
        return 2 * (-1) ** (n + 1) * ((n + 1) * (2 * n + 3) * c(n + 2) - c(n + 1))
    if tag == 'coth4':
        if e % 2:
            return Fraction(0)
        if e == -4:
            return Fraction(1)
        if e == -2:
            return Fraction(4, 3)
        if e == 0:
            return Fraction(26, 45)
        n = e // 2
        return 2 * (-1) ** n * (2 * n + 1) * (
            Fraction((2 * n + 2) * (2 * n + 3), 6) * c(n + 2) - Fraction(4, 3) * c(n + 1)
        )
    raise SeriesError(f"No closed form for {tag!r}")


def _pattern_sign(n: int, pattern: str) -> int:
    if pattern == 'plain':
        return 1
    if pattern == 'alternating':
        return 1 if n % 2 else -1  # (-1)^(n-1)
    if pattern == 'negated':
        return -1
    raise SeriesError(f"Unknown sign pattern {pattern!r}")


def digamma_expansion_at(n: int, order: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> PowerSeries:
    """
    psi(n + x) around x = 0

    For n <= 0 the pole at -m (m = -n) gives
        -1/x + H_m - gamma + sum_k (H_m^(k+1) + (-1)^(k+1) zeta(k+1)) x^k
    and for n >= 1 the regular expansion is
        H_{n-1} - gamma + sum_k (-1)^(k+1) (zeta(k+1) - H_{n-1}^(k+1)) x^k
    """
    if order < 0:
        raise SeriesError(f"order must be >= 0 (got {order})")
    with ctx.workdps():
        coeffs: List[Any] = []
        if n <= 0:
            m = -n
            coeffs.append(mpmath.mpf(-1))
            coeffs.append(to_mpf(harmonic(m)) - mpmath.euler)
            for k in range(1, order):
                sign = 1 if k % 2 else -1
                coeffs.append(to_mpf(harmonic(m, k + 1)) + sign * mpmath.zeta(k + 1))
            return PowerSeries(-1, tuple(coeffs[:order + 1]), '1')
        base = n - 1
        coeffs.append(to_mpf(harmonic(base)) - mpmath.euler)
        for k in range(1, order):
            sign = 1 if k % 2 else -1
            coeffs.append(sign * (mpmath.zeta(k + 1) - to_mpf(harmonic(base, k + 1))))
        return PowerSeries(0, tuple(coeffs[:order]), '1')


def digamma_sym_series(order: int, ctx: PrecisionContext = DEFAULT_CONTEXT,
                       pattern: str = 'alternating') -> PowerSeries:
    """
    psi(ix) + psi(-ix) + 2 gamma as an even series with coefficients
    p(n) * 2 zeta(2n+1) at x^2n; the alternating pattern is the true expansion
    """
    with ctx.workdps():
        coeffs = []
        for e in range(0, order):
            if e == 0 or e % 2:
                coeffs.append(mpmath.mpf(0))
            else:
                n = e // 2
                coeffs.append(_pattern_sign(n, pattern) * 2 * mpmath.zeta(2 * n + 1))
        return PowerSeries(0, tuple(coeffs), '1')


def chi_series(order: int, ctx: PrecisionContext = DEFAULT_CONTEXT, pattern: str = 'plain') -> PowerSeries:
    """Even series with p(n) * 2 chi(2n+1) at x^2n for n >= 1 and no constant term"""
    if order < 2:
        raise SeriesError(f"chi_series needs order >= 2 (got {order})")
    with ctx.workdps():
        coeffs = [mpmath.mpf(0)]
        for e in range(1, order):
            if e % 2:
                coeffs.append(mpmath.mpf(0))
            else:
                n = e // 2
                coeffs.append(_pattern_sign(n, pattern) * 2 * chi(2 * n + 1, ctx))
        return PowerSeries(0, tuple(coeffs), '1')


def _substituted(series: PowerSeries, factor) -> PowerSeries:
    """series(factor * x) for a constant factor"""
    return PowerSeries(
        series.lowest,
        tuple(c * mpmath.power(factor, e) for e, c in series.terms()),
        series.radius,
    )


def digamma_product_series(order: int, ctx: PrecisionContext = DEFAULT_CONTEXT,
                           variant: str = 'ix') -> PowerSeries:
    """
    Series-algebra expansion of the symmetric digamma product with its
    singular part and constant removed

        variant 'ix':   psi(ix) psi(-ix) - 1/x^2 - gamma^2 - pi^2/3
        variant 'real': psi(x) psi(-x) + 1/x^2 - gamma^2 - pi^2/3

    Built as the Cauchy product of the psi expansions at +z and -z.
    """
    if variant not in ('ix', 'real'):
        raise SeriesError(f"Unknown digamma product variant {variant!r}")
    if order < 1:
        raise SeriesError(f"order must be >= 1 (got {order})")
    with ctx.workdps():
        psi = digamma_expansion_at(0, order + 2, ctx)
        unit = mpmath.mpc(0, 1) if variant == 'ix' else mpmath.mpf(1)
        product = cauchy_product(_substituted(psi, unit), _substituted(psi, -unit)).real_part()
        # the x^-2 term is exactly the +-1/x^2 being removed; x^-1 vanishes by symmetry
        coeffs = [product.coefficient(e) for e in range(0, order)]
        coeffs[0] -= mpmath.euler ** 2 + mpmath.pi ** 2 / 3
        return PowerSeries(0, tuple(coeffs), '1')


def digamma_product_value(x, ctx: PrecisionContext = DEFAULT_CONTEXT, variant: str = 'ix'):
    """Direct value of the digamma product expression from complex digamma"""
    with ctx.workdps():
        x = mpmath.mpf(x)
        constant = mpmath.euler ** 2 + mpmath.pi ** 2 / 3
        if variant == 'ix':
            z = mpmath.mpc(0, x)
            return mpmath.re(mpmath.digamma(z) * mpmath.digamma(-z)) - 1 / x ** 2 - constant
        if variant == 'real':
            return mpmath.digamma(x) * mpmath.digamma(-x) + 1 / x ** 2 - constant
        raise SeriesError(f"Unknown digamma product variant {variant!r}")


@lru_cache(maxsize=64)
def _exact_base(order: int):
    """sinh(x)/x and cosh(x) Taylor series through x^(order-1)"""
    sinh_over_x = tuple(Fraction(1, factorial(e + 1)) if e % 2 == 0 else Fraction(0) for e in range(order))
    cosh = tuple(Fraction(1, factorial(e)) if e % 2 == 0 else Fraction(0) for e in range(order))
    return PowerSeries(0, sinh_over_x, 'inf'), PowerSeries(0, cosh, 'inf')


def oracle_series(kind: FunctionKind, order: int = Config.SERIES_ORDER) -> PowerSeries:
    """
    Independent exact expansion of a hyperbolic kind by series algebra

    csch = x^-1 / (sinh(x)/x), coth = cosh * csch, sech = 1 / cosh, and the
    powers by repeated Cauchy products. Digamma kinds have no exact oracle.
    """
    if not kind.is_trig:
        raise SeriesError(f"No exact oracle for {kind}; compare digamma kinds by value")
    if order < kind.lowest:
        raise SeriesError(f"order {order} is below the lowest exponent {kind.lowest} of {kind}")
    work = order + 10
    sinh_over_x, cosh = _exact_base(work)
    csch = reciprocal_series(sinh_over_x, 'pi').shifted(-1)
    coth = cauchy_product(cosh, csch)
    sech = reciprocal_series(cosh, 'pi/2')
    coth2 = cauchy_product(coth, coth)
    built = {
        'coth': coth,
        'csch': csch,
        'sech': sech,
        'coth2': coth2,
        'csch2': cauchy_product(csch, csch),
        'sech2': cauchy_product(sech, sech),
        'coth3': cauchy_product(coth2, coth),
        'coth4': cauchy_product(coth2, coth2),
    }[kind.tag]
    return built.truncated(order)


def closed_form_series(kind: FunctionKind, order: int = Config.SERIES_ORDER,
                       ctx: PrecisionContext = DEFAULT_CONTEXT) -> PowerSeries:
    """
    Expansion of kind through x^(order-1) from its closed form

    Hyperbolic kinds have exact Fraction coefficients (zeta(2n) / pi^2n is
    rational); digamma kinds are numeric at ctx precision.
    """
    if order < kind.lowest:
        raise SeriesError(f"order {order} is below the lowest exponent {kind.lowest} of {kind}")
    if kind.is_trig:
        coeffs = tuple(_trig_coefficient(kind.tag, e) for e in range(kind.lowest, order))
        return PowerSeries(kind.lowest, coeffs, kind.radius)
    if kind.tag == 'digamma_at':
        return digamma_expansion_at(kind.n, order, ctx)
    if kind.tag == 'digamma_sym':
        return digamma_sym_series(order, ctx)
    return chi_series(order, ctx)
