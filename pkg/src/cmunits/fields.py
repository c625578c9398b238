"""The nine imaginary quadratic fields of class number one.

Elements of ``O_K`` are integer pairs ``(a, b)`` standing for ``a + b*omega``
where ``omega`` is the fixed generator below.  It satisfies
``omega^2 = tr*omega - nm``:

    d_K = 4:  omega = i                  (tr, nm) = (0, 1)
    d_K = 8:  omega = sqrt(-2)           (tr, nm) = (0, 2)
    d_K odd:  omega = (1 + sqrt(-d))/2   (tr, nm) = (1, (1 + d)/4)
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Dict, List, Tuple

import mpmath

from .errors import NotSplitError, RamifiedPrimeError, SplitSearchError
from .exact import is_prime

__all__ = [
    "DISCRIMINANTS",
    "DirichletChar",
    "QuadField",
    "SplitPrimeData",
    "get_field",
    "all_fields",
    "kronecker_symbol",
    "kronecker_chi",
    "is_split",
    "find_split",
    "gauss_sum",
    "trivial_char",
    "NotSplitError",
    "RamifiedPrimeError",
    "SplitSearchError",
]

DISCRIMINANTS: Tuple[int, ...] = (3, 4, 7, 8, 11, 19, 43, 67, 163)

OK = Tuple[int, int]


def _jacobi(a: int, n: int) -> int:
    # n odd positive
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def kronecker_symbol(D: int, n: int) -> int:
    """Kronecker symbol ``(D/n)`` for a discriminant ``D`` and any integer n."""
    if n == 0:
        return 1 if abs(D) == 1 else 0
    s = 1
    if n < 0:
        n = -n
        if D < 0:
            s = -1
    v = (n & -n).bit_length() - 1
    if v:
        if D % 2 == 0:
            return 0
        if D % 8 in (3, 5) and v % 2:
            s = -s
        n >>= v
    if n == 1:
        return s
    return s * _jacobi(D, n)


@dataclass(frozen=True)
class DirichletChar:
    """A real primitive Dirichlet character (quadratic, or trivial of conductor 1)."""

    conductor: int
    values: Tuple[int, ...]

    @property
    def is_quadratic_or_trivial(self) -> bool:
        return True

    @property
    def is_trivial(self) -> bool:
        return self.conductor == 1

    def __call__(self, n: int) -> int:
        return self.values[n % self.conductor]

    def is_odd(self) -> bool:
        return self(-1) == -1

    @classmethod
    def from_discriminant(cls, D: int) -> "DirichletChar":
        f = abs(D)
        return cls(f, tuple(kronecker_symbol(D, a) for a in range(f)))


def trivial_char() -> DirichletChar:
    return DirichletChar(1, (1,))


@dataclass(frozen=True)
class QuadField:
    d_K: int
    w_K: int
    ell: int
    tr: int
    nm: int
    chi_K: DirichletChar = dc_field(repr=False, compare=False)

    @property
    def discriminant(self) -> int:
        return -self.d_K

    @property
    def name(self) -> str:
        return f"Q(sqrt(-{self.d_K if self.d_K % 4 else self.d_K // 4}))"

    def chi(self, n: int) -> int:
        return self.chi_K(n)

    # --- O_K arithmetic on integer pairs -------------------------------
    def mul(self, x: OK, y: OK) -> OK:
        a, b = x
        c, d = y
        return (a * c - self.nm * b * d, a * d + b * c + self.tr * b * d)

    def conj(self, x: OK) -> OK:
        a, b = x
        return (a + self.tr * b, -b)

    def norm(self, x: OK) -> int:
        a, b = x
        return a * a + self.tr * a * b + self.nm * b * b

    def trace(self, x: OK) -> int:
        a, b = x
        return 2 * a + self.tr * b

    def add(self, x: OK, y: OK) -> OK:
        return (x[0] + y[0], x[1] + y[1])

    def sub(self, x: OK, y: OK) -> OK:
        return (x[0] - y[0], x[1] - y[1])

    def pow(self, x: OK, e: int) -> OK:
        r: OK = (1, 0)
        while e:
            if e & 1:
                r = self.mul(r, x)
            x = self.mul(x, x)
            e >>= 1
        return r

    def divides(self, x: OK, y: OK) -> bool:
        """Whether ``x`` divides ``y`` in O_K."""
        n = self.norm(x)
        if n == 0:
            return y == (0, 0)
        a, b = self.mul(y, self.conj(x))
        return a % n == 0 and b % n == 0

    def units(self) -> List[OK]:
        out = []
        for a in range(-2, 3):
            for b in range(-2, 3):
                if self.norm((a, b)) == 1:
                    out.append((a, b))
        assert len(out) == self.w_K
        return out

    def omega_complex(self, prec: int = 256):
        """``omega`` as an mpmath complex at ``prec`` bits."""
        with mpmath.workprec(prec):
            if self.tr == 0:
                return mpmath.mpc(0, mpmath.sqrt(self.nm))
            return mpmath.mpc(mpmath.mpf(1) / 2, mpmath.sqrt(self.d_K) / 2)

    def to_complex(self, x: OK, prec: int = 256):
        with mpmath.workprec(prec):
            return x[0] + x[1] * self.omega_complex(prec)


def _make_field(d: int) -> QuadField:
    if d == 4:
        tr, nm, w = 0, 1, 4
    elif d == 8:
        tr, nm, w = 0, 2, 2
    else:
        tr, nm, w = 1, (1 + d) // 4, (6 if d == 3 else 2)
    ell = 2 if d in (4, 8) else d
    return QuadField(d, w, ell, tr, nm, DirichletChar.from_discriminant(-d))


@lru_cache(maxsize=None)
def get_field(d_K: int) -> QuadField:
    if d_K not in DISCRIMINANTS:
        raise ValueError(
            f"d_K must be one of {DISCRIMINANTS} (class number one), got {d_K}"
        )
    return _make_field(d_K)


def all_fields() -> List[QuadField]:
    return [get_field(d) for d in DISCRIMINANTS]


def _field(field) -> QuadField:
    return field if isinstance(field, QuadField) else get_field(int(field))


def kronecker_chi(field, n: int) -> int:
    """``chi_K(n)``: the Kronecker symbol of discriminant ``-d_K`` at ``n``."""
    return _field(field).chi_K(n)


def is_split(field, p: int) -> bool:
    F = _field(field)
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if F.d_K % p == 0:
        raise RamifiedPrimeError(f"{p} is ramified in {F.name}")
    if p < 5:
        raise ValueError(f"p must be >= 5, got {p}")
    return F.chi_K(p) == 1


@dataclass(frozen=True)
class SplitPrimeData:
    p: int
    pi: OK
    pi_bar: OK
    d_K: int


def find_split(field, p: int) -> SplitPrimeData:
    """A generator ``pi`` of a prime above a split ``p``.

    Among all norm-``p`` elements in the box ``|a|, |b| <= ceil(sqrt p) + 2``
    the one minimizing ``(|b|, |a|, a < 0, b < 0)`` is returned, so that
    ``2 + i`` is chosen for ``(4, 5)``.
    """
    F = _field(field)
    if not is_split(F, p):
        raise NotSplitError(f"{p} is inert in {F.name}")
    bound = math.isqrt(p) + 2 + (0 if math.isqrt(p) ** 2 == p else 1)
    best = None
    for b in range(-bound, bound + 1):
        for a in range(-bound, bound + 1):
            if F.norm((a, b)) == p:
                key = (abs(b), abs(a), a < 0, b < 0)
                if best is None or key < best[0]:
                    best = (key, (a, b))
    if best is None:
        raise SplitSearchError(f"no element of norm {p} with |a|,|b| <= {bound}")
    pi = best[1]
    pi_bar = F.conj(pi)
    # distinct primes: pi_bar / pi must not be a unit
    if F.divides(pi, pi_bar):
        raise SplitSearchError(f"{pi} and its conjugate generate the same ideal")
    return SplitPrimeData(p, pi, pi_bar, F.d_K)


def gauss_sum(field, precision: int = 256):
    """Return ``(g, prediction)`` with ``g = sum_b chi(b) zeta^(-b)`` for
    ``zeta = exp(2 pi i / d_K)`` and prediction ``-i sqrt(d_K)``."""
    F = _field(field)
    if precision < 64:
        raise ValueError("precision must be >= 64 bits")
    d = F.d_K
    with mpmath.workprec(precision + 16):
        g = mpmath.mpc(0)
        for b in range(1, d):
            v = F.chi_K(b)
            if v:
                g += v * mpmath.expjpi(mpmath.mpf(-2 * b) / d)
        pred = mpmath.mpc(0, -mpmath.sqrt(d))
    return g, pred
