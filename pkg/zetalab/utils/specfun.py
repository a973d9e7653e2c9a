"""
Special functions at arbitrary precision

Thin, domain-checked layer over mpmath: zeta, Hurwitz zeta, Dirichlet eta,
eta(s, 1/2), gamma, digamma, Euler's constant, chi(s) and the Euler sums
sum H_n / n^m. Also the exact pi-graded values of zeta at even integers and
of eta(s, 1/2) at odd integers.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, Mapping, Optional, Tuple, Union

import mpmath

from zetalab.exceptions import DomainError
from zetalab.utils.exactnum import bernoulli, euler_number

logger = logging.getLogger(__name__)

ComplexValue = mpmath.mpc
Real = Union[int, Fraction, str, float, mpmath.mpf]


@dataclass(frozen=True)
class PrecisionContext:
    """Requested decimal digits plus guard digits used internally"""
    digits: int = 50
    guard: Optional[int] = field(default=None)

    def __post_init__(self):
        if self.digits < 10:
            raise DomainError(f"digits must be >= 10 (got {self.digits})")
        if self.guard is None:
            object.__setattr__(self, 'guard', max(10, self.digits // 5))

    @property
    def working_digits(self) -> int:
        return self.digits + self.guard

    def workdps(self):
        """Context manager switching mpmath to the working precision"""
        return mpmath.workdps(self.working_digits)

    def tolerance(self, slack: int = 0):
        """10^-(digits - slack) as an mpf"""
        return mpmath.mpf(10) ** (slack - self.digits)


DEFAULT_CONTEXT = PrecisionContext()


def to_mpf(value: Real):
    """Convert an int, Fraction, decimal string or mpf to an mpf at current precision"""
    if isinstance(value, Fraction):
        return mpmath.mpf(value.numerator) / value.denominator
    return mpmath.mpf(value)


def _is_nonpositive_integer(z) -> bool:
    z = mpmath.mpmathify(z)
    if isinstance(z, mpmath.mpc):
        if z.imag != 0:
            return False
        z = z.real
    return z <= 0 and mpmath.isint(z)


class PiGraded:
    """
    Exact value sum_k q_k * pi^k with rational q_k

    Identities among zeta(even) values reduce to rational equalities in this
    representation; mixed powers appear only when a printed formula is wrong.
    """
    __slots__ = ('_terms',)

    def __init__(self, terms: Optional[Mapping[int, Union[Fraction, int]]] = None):
        self._terms: Dict[int, Fraction] = {
            int(power): Fraction(coeff) for power, coeff in (terms or {}).items() if coeff != 0
        }

    @classmethod
    def coerce(cls, value) -> 'PiGraded':
        if isinstance(value, PiGraded):
            return value
        if isinstance(value, (int, Fraction)):
            return cls({0: value})
        raise TypeError(f"Cannot treat {type(value).__name__} as an exact pi-graded value")

    @property
    def terms(self) -> Tuple[Tuple[int, Fraction], ...]:
        return tuple(sorted(self._terms.items()))

    def coefficient(self, power: int) -> Fraction:
        return self._terms.get(power, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_homogeneous(self) -> bool:
        return len(self._terms) <= 1

    def __add__(self, other):
        other = PiGraded.coerce(other)
        merged = dict(self._terms)
        for power, coeff in other._terms.items():
            merged[power] = merged.get(power, Fraction(0)) + coeff
        return PiGraded(merged)

    __radd__ = __add__

    def __neg__(self):
        return PiGraded({p: -c for p, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-PiGraded.coerce(other))

    def __rsub__(self, other):
        return PiGraded.coerce(other) - self

    def __mul__(self, other):
        other = PiGraded.coerce(other)
        product: Dict[int, Fraction] = {}
        for p1, c1 in self._terms.items():
            for p2, c2 in other._terms.items():
                product[p1 + p2] = product.get(p1 + p2, Fraction(0)) + c1 * c2
        return PiGraded(product)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = PiGraded.coerce(other)
        if len(other._terms) != 1:
            raise ZeroDivisionError("division only by a single non-zero pi-graded term")
        (power, coeff), = other._terms.items()
        return PiGraded({p - power: c / coeff for p, c in self._terms.items()})

    def as_rational(self) -> Fraction:
        """The value as a Fraction; only valid when no power of pi remains"""
        if any(power != 0 for power in self._terms):
            raise ValueError(f"{self} still carries powers of pi")
        return self.coefficient(0)

    def to_mpf(self):
        return mpmath.fsum(to_mpf(c) * mpmath.pi ** p for p, c in self._terms.items())

    def __eq__(self, other):
        try:
            return self._terms == PiGraded.coerce(other)._terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(self.terms)

    def __repr__(self):
        return f"PiGraded({dict(self.terms)!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for power, coeff in self.terms:
            parts.append(str(coeff) if power == 0 else f"{coeff}*pi^{power}")
        return " + ".join(parts)


def zeta_even_exact(n: int) -> PiGraded:
    """
    zeta(2n) = (-1)^(n-1) B_2n (2 pi)^(2n) / (2 (2n)!) as an exact pi-graded value

    n = 0 is accepted and gives zeta(0) = -1/2, where the same relation holds.
    """
    if not isinstance(n, int) or n < 0:
        raise DomainError(f"zeta_even_exact needs an integer n >= 0 (got {n!r})")
    sign = -1 if (n - 1) % 2 else 1
    coeff = sign * bernoulli(2 * n) * Fraction(2 ** (2 * n), 2 * factorial(2 * n))
    return PiGraded({2 * n: coeff})


def eta_half_exact(k: int) -> PiGraded:
    """eta(2k+1, 1/2) = (-1)^k E_2k pi^(2k+1) / (2 (2k)!) as an exact pi-graded value"""
    if not isinstance(k, int) or k < 0:
        raise DomainError(f"eta_half_exact needs an integer k >= 0 (got {k!r})")
    coeff = Fraction((-1) ** k * euler_number(2 * k), 2 * factorial(2 * k))
    return PiGraded({2 * k + 1: coeff})


def zeta(s: Real, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Riemann zeta for real s != 1"""
    with ctx.workdps():
        s = to_mpf(s)
        if s == 1:
            raise DomainError("zeta has a pole at s = 1")
        return mpmath.zeta(s)


def hurwitz_zeta(s: Real, a: Real, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Hurwitz zeta sum_{n>=0} (n+a)^-s for a > 0, s != 1"""
    with ctx.workdps():
        s, a = to_mpf(s), to_mpf(a)
        if a <= 0:
            raise DomainError(f"hurwitz_zeta needs a > 0 (got {a})")
        if s == 1:
            raise DomainError("hurwitz_zeta has a pole at s = 1")
        return mpmath.zeta(s, a)


def dirichlet_eta(s: Real, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Dirichlet eta (1 - 2^(1-s)) zeta(s); entire, ln 2 at s = 1"""
    with ctx.workdps():
        return mpmath.altzeta(to_mpf(s))


def eta_half(s: Real, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """
    eta(s, 1/2) = sum_{n>=0} (-1)^n (n + 1/2)^-s = 2^s beta(s)

    With this sign convention eta(s, 1) is the usual Dirichlet eta and the
    Euler numbers come out as E_2n = (-1)^n 2 (2n)! eta(2n+1, 1/2) / pi^(2n+1).
    """
    with ctx.workdps():
        s = to_mpf(s)
        if s == 1:
            return mpmath.pi / 2
        # beta(s) = 4^-s (zeta(s, 1/4) - zeta(s, 3/4))
        return mpmath.power(2, -s) * (mpmath.zeta(s, mpmath.mpf(1) / 4) - mpmath.zeta(s, mpmath.mpf(3) / 4))


def digamma(z, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Digamma psi(z) for real or complex z off the non-positive integers"""
    with ctx.workdps():
        z = mpmath.mpmathify(z)
        if _is_nonpositive_integer(z):
            raise DomainError(f"digamma has a pole at z = {z}")
        return mpmath.digamma(z)


def euler_gamma(ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Euler-Mascheroni constant"""
    with ctx.workdps():
        return +mpmath.euler


def gamma_fn(z: Real, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Gamma function for real z off the non-positive integers"""
    with ctx.workdps():
        z = to_mpf(z)
        if _is_nonpositive_integer(z):
            raise DomainError(f"gamma has a pole at z = {z}")
        return mpmath.gamma(z)


def euler_sum_cutoff(ctx: PrecisionContext) -> int:
    return max(10 ** 4, ctx.digits * 200)


@lru_cache(maxsize=256)
def _euler_sum_h(m, ctx: PrecisionContext, cutoff: int):
    with ctx.workdps():
        m_value = to_mpf(m)
        integer_power = int(m_value) if mpmath.isint(m_value) else None
        harmonic_n = mpmath.mpf(0)
        head = mpmath.mpf(0)
        for n in range(1, cutoff + 1):
            harmonic_n += mpmath.mpf(1) / n
            if integer_power is not None:
                head += harmonic_n / n ** integer_power
            else:
                head += harmonic_n / mpmath.power(n, m_value)

        # Tail n > cutoff from H_n = ln n + gamma + 1/(2n) - sum_k B_2k / (2k n^2k)
        a = cutoff + 1
        tail = (-mpmath.zeta(m_value, a, derivative=1)
                + mpmath.euler * mpmath.zeta(m_value, a)
                + mpmath.zeta(m_value + 1, a) / 2)
        eps = mpmath.eps
        k = 1
        while True:
            term = to_mpf(bernoulli(2 * k)) / (2 * k) * mpmath.zeta(m_value + 2 * k, a)
            tail -= term
            if k >= 6 and abs(term) < eps * abs(tail):
                break
            k += 1
        logger.debug(f"euler_sum_H(m={m}) cutoff={cutoff} asymptotic terms={k}")
        return head + tail


def euler_sum_H(m: Real, ctx: PrecisionContext = DEFAULT_CONTEXT, cutoff: Optional[int] = None):
    """
    sum_{n>=1} H_n / n^m for m > 1

    Direct summation up to the cutoff plus the tail from the asymptotic
    expansion of H_n summed with Hurwitz zeta values.
    """
    with ctx.workdps():
        if to_mpf(m) <= 1:
            raise DomainError(f"euler_sum_H diverges for m <= 1 (got {m})")
    return _euler_sum_h(m, ctx, cutoff or euler_sum_cutoff(ctx))


def chi(s: Real, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """chi(s) = sum psi(n) n^-s = sum H_n n^-s - gamma zeta(s) - zeta(s+1), s > 1"""
    with ctx.workdps():
        s_value = to_mpf(s)
        if s_value <= 1:
            raise DomainError(f"chi diverges for s <= 1 (got {s})")
        return euler_sum_H(s, ctx) - mpmath.euler * mpmath.zeta(s_value) - mpmath.zeta(s_value + 1)
