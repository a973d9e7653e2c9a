"""
Exact arithmetic for the classical number sequences
Bernoulli and Euler numbers, generalized harmonic numbers and binomials
"""
import logging
import threading
from fractions import Fraction
from math import comb
from typing import List

from zetalab.exceptions import DomainError

logger = logging.getLogger(__name__)

# Rational is the exact fraction type used throughout; always in lowest terms
Rational = Fraction

_lock = threading.Lock()
_bernoulli_table: List[Fraction] = [Fraction(1)]
_euler_even_table: List[int] = [1]  # E_0, E_2, E_4, ...


def _require_index(n: int, name: str = "n") -> None:
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise DomainError(f"{name} must be a non-negative integer (got {n!r})")


def bernoulli(n: int) -> Fraction:
    """
    Bernoulli number B_n with the convention B_1 = -1/2

    Computed from sum_{k=0}^{n} C(n+1, k) B_k = 0 and memoized. Odd indices
    from 3 on are zero and never touch the table.
    """
    _require_index(n)
    if n == 1:
        return Fraction(-1, 2)
    if n % 2:
        return Fraction(0)
    with _lock:
        while len(_bernoulli_table) <= n:
            m = len(_bernoulli_table)
            if m % 2:
                # odd slots hold B_1 and the zeros; recurrence needs B_1
                _bernoulli_table.append(Fraction(-1, 2) if m == 1 else Fraction(0))
                continue
            acc = sum(comb(m + 1, k) * _bernoulli_table[k] for k in range(0, m, 2))
            acc += (m + 1) * Fraction(-1, 2)
            _bernoulli_table.append(-acc / (m + 1))
        return _bernoulli_table[n]


def euler_number(n: int) -> int:
    """
    Euler number E_n (secant numbers with sign): 1, -1, 5, -61, ...

    Uses the recurrence sum_{k=0}^{m} C(2m, 2k) E_{2k} = 0 for m >= 1, which
    is the coefficient form of cosh(x) * sech(x) = 1.
    """
    _require_index(n)
    if n % 2:
        return 0
    m = n // 2
    with _lock:
        while len(_euler_even_table) <= m:
            j = len(_euler_even_table)
            _euler_even_table.append(
                -sum(comb(2 * j, 2 * k) * _euler_even_table[k] for k in range(j))
            )
        return _euler_even_table[m]


def harmonic(n: int, k: int = 1) -> Fraction:
    """Generalized harmonic number H_n^(k) = sum_{l=1}^{n} l^-k; H_0^(k) = 0"""
    _require_index(n)
    if not isinstance(k, int) or k < 1:
        raise DomainError(f"k must be a positive integer (got {k!r})")
    return sum((Fraction(1, l ** k) for l in range(1, n + 1)), Fraction(0))


def binomial(n: int, k: int) -> int:
    """Binomial coefficient C_n^k for 0 <= k <= n"""
    _require_index(n)
    _require_index(k, "k")
    if k > n:
        raise DomainError(f"binomial requires k <= n (got n={n}, k={k})")
    return comb(n, k)
