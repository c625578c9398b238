"""Exact rational arithmetic: Bernoulli numbers and polynomials, fractional
parts, generalized Bernoulli numbers and p-adic valuations.

Rationals are :class:`fractions.Fraction`, which is always kept in lowest
terms with a positive denominator.  ``B_1 = -1/2`` throughout.
"""
from __future__ import annotations

import math
import threading
from fractions import Fraction
from math import comb
from typing import Dict, List

__all__ = [
    "Rational",
    "BernoulliCache",
    "bernoulli_number",
    "bernoulli_numbers",
    "bernoulli_poly",
    "frac_part",
    "gen_bernoulli",
    "gen_bernoulli_power_sums",
    "gen_bernoulli_table",
    "padic_valuation",
    "is_prime",
    "primes_between",
    "von_staudt_clausen_denominator_primes",
    "bernoulli_cache",
    "INFINITY",
]

Rational = Fraction
INFINITY = math.inf


class BernoulliCache:
    """Memo table ``m -> B_m`` filled by the recurrence
    ``sum_{k=0}^{n} C(n+1, k) B_k = 0``.

    Reads are lock-free; extension of the table happens under a lock, so two
    threads racing on the same index both observe the same value.
    """

    def __init__(self) -> None:
        self._table: List[Fraction] = [Fraction(1)]
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._table)

    def get(self, m: int) -> Fraction:
        if m < 0:
            raise ValueError(f"Bernoulli index must be >= 0, got {m}")
        table = self._table
        if m < len(table):
            return table[m]
        with self._lock:
            self._extend(m)
        return self._table[m]

    def _extend(self, m: int) -> None:
        table = self._table
        for n in range(len(table), m + 1):
            if n >= 3 and n % 2 == 1:
                table.append(Fraction(0))
                continue
            s = Fraction(0)
            for k in range(n):
                bk = table[k]
                if bk:
                    s += comb(n + 1, k) * bk
            table.append(-s / (n + 1))

    def snapshot(self) -> Dict[int, Fraction]:
        return dict(enumerate(self._table))

    def load(self, values: Dict[int, Fraction]) -> None:
        """Preload a contiguous prefix ``0..k`` (e.g. from a disk cache)."""
        with self._lock:
            k = len(self._table)
            while k in values:
                self._table.append(Fraction(values[k]))
                k += 1


_CACHE = BernoulliCache()


def bernoulli_number(m: int) -> Fraction:
    """Return ``B_m`` (with ``B_1 = -1/2``), memoized."""
    return _CACHE.get(m)


def bernoulli_numbers(m: int) -> List[Fraction]:
    """Return ``[B_0, ..., B_m]``."""
    _CACHE.get(m)
    return [_CACHE.get(k) for k in range(m + 1)]


def bernoulli_cache() -> BernoulliCache:
    return _CACHE


def bernoulli_poly(m: int, x) -> Fraction:
    """``B_m(x) = sum_k C(m, k) B_k x^(m-k)`` evaluated exactly."""
    if m < 0:
        raise ValueError(f"degree must be >= 0, got {m}")
    x = Fraction(x)
    # Horner in x over the coefficients C(m,k) B_k, k = 0..m.
    acc = Fraction(0)
    for k in range(m + 1):
        acc = acc * x + comb(m, k) * bernoulli_number(k)
    return acc


def frac_part(a) -> Fraction:
    """Fractional part in ``[0, 1)``."""
    a = Fraction(a)
    return a - (a.numerator // a.denominator)


def _check_quadratic(chi) -> None:
    if not getattr(chi, "is_quadratic_or_trivial", False):
        raise ValueError("only quadratic or trivial characters are supported")


def gen_bernoulli(m: int, chi) -> Fraction:
    """``B_{m,chi} = f^(m-1) sum_{a=1}^{f} chi(a) B_m(a/f)`` by the defining sum.

    ``chi`` is a primitive character with attributes ``conductor`` and
    ``__call__``; only real-valued (quadratic or trivial) characters are
    accepted, so the result is rational.
    """
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    _check_quadratic(chi)
    f = chi.conductor
    s = Fraction(0)
    for a in range(1, f + 1):
        v = chi(a)
        if v:
            s += v * bernoulli_poly(m, Fraction(a, f))
    return Fraction(f) ** (m - 1) * s


def gen_bernoulli_power_sums(m: int, chi) -> Fraction:
    """Same value as :func:`gen_bernoulli`, with the two finite sums swapped:

        B_{m,chi} = sum_k C(m,k) B_k f^(k-1) sum_{a=1}^{f} chi(a) a^(m-k)

    The inner power sums are plain integers, which keeps the cost at O(m)
    rational operations instead of O(f m).
    """
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    _check_quadratic(chi)
    f = chi.conductor
    vals = [(a, chi(a)) for a in range(1, f + 1)]
    vals = [(a, v) for a, v in vals if v]
    total = Fraction(0)
    for k in range(m + 1):
        bk = bernoulli_number(k)
        if not bk:
            continue
        t = sum(v * a ** (m - k) for a, v in vals)
        if t:
            total += comb(m, k) * bk * t * Fraction(f) ** (k - 1)
    return total


def gen_bernoulli_table(mmax: int, chi) -> List[Fraction]:
    """``[B_{m,chi} for m = 0..mmax]`` (entry 0 set to 0), sharing the power
    sums ``T_j = sum_a chi(a) a^j`` across all ``m``."""
    _check_quadratic(chi)
    f = chi.conductor
    vals = [(a, chi(a)) for a in range(1, f + 1) if chi(a)]
    T = [0] * (mmax + 1)
    for a, v in vals:
        x = v
        for j in range(mmax + 1):
            T[j] += x
            x *= a
    B = bernoulli_numbers(mmax)
    fpow = [Fraction(1, f)]
    for _ in range(mmax):
        fpow.append(fpow[-1] * f)
    out = [Fraction(0)] * (mmax + 1)
    for m in range(1, mmax + 1):
        s = Fraction(0)
        for k in range(m + 1):
            if B[k] and T[m - k]:
                s += comb(m, k) * B[k] * T[m - k] * fpow[k]
        out[m] = s
    return out


def padic_valuation(x, p: int):
    """``v_p(x)`` for a rational ``x``; ``math.inf`` for zero."""
    x = Fraction(x)
    if x == 0:
        return INFINITY
    v = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    r = math.isqrt(n)
    f = 3
    while f <= r:
        if n % f == 0:
            return False
        f += 2
    return True


def primes_between(lo: int, hi: int) -> List[int]:
    """Primes ``p`` with ``lo <= p <= hi`` (simple sieve)."""
    if hi < 2 or hi < lo:
        return []
    sieve = bytearray([1]) * (hi + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(hi) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, hi + 1, i)))
    return [i for i in range(max(lo, 2), hi + 1) if sieve[i]]


def von_staudt_clausen_denominator_primes(m: int) -> List[int]:
    """Primes ``q`` with ``(q - 1) | m`` (``m`` even, ``m >= 2``)."""
    return [q for q in primes_between(2, m + 1) if m % (q - 1) == 0]
