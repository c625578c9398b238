"""Group-ring arithmetic over ``(Z/MZ)^x`` with exact rational coefficients,
Stickelberger elements, their c-smoothing, and the exponents ``nu_n(c, b)``.

Keys of a :class:`GroupRingElem` are the residues ``a`` of ``sigma_a``.  The
Stickelberger element is ``sum_a B_1(<a/M>) sigma_a^{-1}``, so its coefficient
at key ``b`` is ``B_1(<b^{-1}/M>)``.

Specialization normalization
----------------------------
For ``chi`` primitive of conductor ``d`` (or trivial, ``d = 1``), ``p`` prime to
``2d``, ``c`` prime to ``dp`` and ``1 <= m``,

    sum_b chi(b) b^(m-1) * [coeff of sigma_b in smooth(theta, c)^*]
        = (1 - chi(c) c^m) (1 - chi(p) p^(m-1)) B_{m,chi} / m   (mod p^n)

where ``^*`` is :func:`involution`.  Note the overall sign is ``+``; this was
fixed by exhaustive comparison over small ``(p, m, c)`` and is enforced in the
test suite.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Tuple

import numpy as np

from . import _kernels
from .errors import IntegralityError, NotSplitError
from .fields import QuadField, get_field, is_split

__all__ = [
    "GroupRingElem",
    "NuTable",
    "stickelberger",
    "smooth",
    "smooth_star",
    "involution",
    "specialize",
    "nu_exponent",
    "nu_table",
    "kersey_exponent",
    "kersey_weights",
    "admissible_norms",
    "IntegralityError",
]


def _b1(x: Fraction) -> Fraction:
    return x - Fraction(1, 2)


class GroupRingElem:
    """Finitely supported map ``(Z/MZ)^x -> Q``; zero coefficients are dropped."""

    __slots__ = ("modulus", "_c")

    def __init__(self, modulus: int, coeffs: Optional[Mapping[int, object]] = None):
        if modulus < 1:
            raise ValueError("modulus must be positive")
        self.modulus = modulus
        c: Dict[int, Fraction] = {}
        for k, v in (coeffs or {}).items():
            k %= modulus
            if math.gcd(k, modulus) != 1:
                raise ValueError(f"key {k} is not a unit mod {modulus}")
            v = Fraction(v)
            if v:
                c[k] = c.get(k, Fraction(0)) + v
                if not c[k]:
                    del c[k]
        self._c = c

    @classmethod
    def sigma(cls, modulus: int, a: int) -> "GroupRingElem":
        return cls(modulus, {a: 1})

    @classmethod
    def one(cls, modulus: int) -> "GroupRingElem":
        return cls(modulus, {1: 1})

    @property
    def coeffs(self) -> Dict[int, Fraction]:
        return dict(self._c)

    def __getitem__(self, a: int) -> Fraction:
        return self._c.get(a % self.modulus, Fraction(0))

    def support(self) -> List[int]:
        return sorted(self._c)

    def items(self):
        return sorted(self._c.items())

    def _same(self, other: "GroupRingElem") -> None:
        if other.modulus != self.modulus:
            raise ValueError("moduli differ")

    def __add__(self, other: "GroupRingElem") -> "GroupRingElem":
        self._same(other)
        out = dict(self._c)
        for k, v in other._c.items():
            out[k] = out.get(k, Fraction(0)) + v
        return GroupRingElem(self.modulus, out)

    def __neg__(self) -> "GroupRingElem":
        return GroupRingElem(self.modulus, {k: -v for k, v in self._c.items()})

    def __sub__(self, other: "GroupRingElem") -> "GroupRingElem":
        return self + (-other)

    def scale(self, s) -> "GroupRingElem":
        s = Fraction(s)
        return GroupRingElem(self.modulus, {k: s * v for k, v in self._c.items()})

    def __mul__(self, other):
        if isinstance(other, GroupRingElem):
            self._same(other)
            M = self.modulus
            out: Dict[int, Fraction] = {}
            for a, x in self._c.items():
                for b, y in other._c.items():
                    k = a * b % M
                    out[k] = out.get(k, Fraction(0)) + x * y
            return GroupRingElem(M, out)
        return self.scale(other)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupRingElem):
            return NotImplemented
        return self.modulus == other.modulus and self._c == other._c

    def __hash__(self):
        return hash((self.modulus, frozenset(self._c.items())))

    def __bool__(self) -> bool:
        return bool(self._c)

    def __repr__(self) -> str:
        terms = ", ".join(f"{k}: {v}" for k, v in self.items())
        return f"GroupRingElem({self.modulus}, {{{terms}}})"

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self._c.values())


def stickelberger(d: int, p: int, n: int) -> GroupRingElem:
    """``theta_{d,n} = sum_{a in (Z/d p^n)^x} B_1(<a/(d p^n)>) sigma_a^{-1}``."""
    if math.gcd(d, p) != 1:
        raise ValueError("d must be prime to p")
    if n < 1:
        raise ValueError("n must be positive")
    M = d * p**n
    return GroupRingElem(
        M, {pow(a, -1, M): _b1(Fraction(a, M)) for a in range(1, M) if math.gcd(a, M) == 1}
    )


def involution(theta: GroupRingElem) -> GroupRingElem:
    M = theta.modulus
    return GroupRingElem(M, {pow(a, -1, M): v for a, v in theta.coeffs.items()})


def smooth(theta: GroupRingElem, c: int, p: Optional[int] = None) -> GroupRingElem:
    """``(1 - c sigma_c^{-1}) theta``, with an integrality check.

    For odd ``c`` every coefficient is an integer.  For even ``c`` the
    ``-1/2`` in ``B_1`` leaves every coefficient in ``1/2 + Z``; such values
    are still ``p``-integral for odd ``p``, which is what the check enforces.
    Anything else raises :class:`IntegralityError`.
    """
    M = theta.modulus
    if math.gcd(c, M) != 1:
        raise ValueError(f"c = {c} is not prime to the modulus {M}")
    if p is not None and c % p == 0:
        raise ValueError("c must be prime to p")
    cinv = pow(c, -1, M)
    out = theta - GroupRingElem.sigma(M, cinv) * theta.scale(c)
    allowed = 1 if c % 2 else 2
    for a, v in out.items():
        if allowed % v.denominator:
            raise IntegralityError(
                f"coefficient {v} at sigma_{a} is not integral", key=a, value=v
            )
    return out


def smooth_star(theta: GroupRingElem, c: int, p: Optional[int] = None) -> GroupRingElem:
    """``(1 - c sigma_c) theta^*``, the involution of :func:`smooth`."""
    return involution(smooth(theta, c, p))


def specialize(theta: GroupRingElem, rule: Callable[[int], object]):
    """``sum_a coeff(sigma_a) * rule(a)``; the rule may return any type that
    multiplies with :class:`~fractions.Fraction`."""
    total = 0
    for a, v in theta.items():
        total = total + v * rule(a)
    return total


# --------------------------------------------------------------------------
# Kersey exponents

def _field(field) -> QuadField:
    return field if isinstance(field, QuadField) else get_field(int(field))


def _require_split(F: QuadField, p: int) -> None:
    if not is_split(F, p):
        raise NotSplitError(f"{p} is not split in {F.name}")


def nu_exponent(field, p: int, n: int, c: int, b: int) -> Fraction:
    """``-12 p^n sum_{a mod N, ab = c mod p^n} (chi(a) + chi(b)) B_1(<a/N>)``,
    ``N = d_K p^n``, by direct summation."""
    F = _field(field)
    _require_split(F, p)
    if c % p == 0:
        raise ValueError("c must be a unit mod p")
    pn = p**n
    N = F.d_K * pn
    xb = F.chi(b)
    s = Fraction(0)
    for a in range(N):
        if (a * b - c) % pn == 0:
            w = F.chi(a) + xb
            if w:
                s += w * _b1(Fraction(a, N))
    return -12 * pn * s


@dataclass
class NuTable:
    """``nu_n(c, b)`` for all units ``c`` mod ``p^n`` and all ``b`` mod ``N``.

    ``num[c, b] / d_K`` is the exact value; rows with ``p | c`` are unused.
    """

    d_K: int
    p: int
    n: int
    num: np.ndarray

    @property
    def pn(self) -> int:
        return self.p**self.n

    @property
    def N(self) -> int:
        return self.d_K * self.pn

    def units_c(self) -> List[int]:
        return [c for c in range(1, self.pn) if c % self.p]

    def value(self, c: int, b: int) -> Fraction:
        return Fraction(int(self.num[c % self.pn, b % self.N]), self.d_K)

    def integer_mask(self) -> np.ndarray:
        return self.num % self.d_K == 0

    def violations(self) -> List[Tuple[int, int, Fraction]]:
        bad = []
        mask = self.integer_mask()
        for c in self.units_c():
            for b in np.nonzero(~mask[c])[0]:
                bad.append((c, int(b), self.value(c, int(b))))
        return bad

    def all_integers(self) -> bool:
        rows = self.units_c()
        return bool(self.integer_mask()[rows].all())

    def rows(self) -> Iterator[Tuple[int, int, str, bool]]:
        for c in self.units_c():
            for b in range(self.N):
                v = self.value(c, b)
                yield c, b, str(v), v.denominator == 1

    def __len__(self) -> int:
        return len(self.units_c()) * self.N

    def to_csv(self, fh=None) -> str:
        buf = fh if fh is not None else io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["c", "b", "nu", "is_integer"])
        for c, b, v, ok in self.rows():
            w.writerow([c, b, v, "true" if ok else "false"])
        return buf.getvalue() if fh is None else ""


_NU_CACHE: Dict[Tuple[int, int, int], NuTable] = {}


def nu_table(field, p: int, n: int, strict: bool = True) -> NuTable:
    """Full exponent table from the class-sum kernel.

    Writing ``r = c b^{-1} mod p^n`` the defining sum splits as
    ``F(r) + chi(b) G(r)`` with ``F, G`` sums over the ``d_K`` lifts of ``r``,
    so the table costs ``O(phi(p^n) N)`` instead of ``O(phi(p^n) N^2)``.
    """
    F = _field(field)
    _require_split(F, p)
    key = (F.d_K, p, n)
    tab = _NU_CACHE.get(key)
    if tab is None:
        pn = p**n
        N = F.d_K * pn
        chi_N = [F.chi(a) for a in range(N)]
        S = np.asarray(_kernels.nu_class_sums(F.d_K, p, pn, chi_N), dtype=np.int64)
        tab = NuTable(F.d_K, p, n, -6 * S)
        _NU_CACHE[key] = tab
    if strict and not tab.all_integers():
        c, b, v = tab.violations()[0]
        raise IntegralityError(f"nu({c}, {b}) = {v} is not an integer", key=(c, b), value=v)
    return tab


def kersey_exponent(field, p: int, n: int, Na: int, b: int, c: int = 1) -> Fraction:
    """``(Na * nu_n(c, b) - nu_n(c Na, b)) / p^n``; ``c = 1`` gives the
    displayed corollary form."""
    F = _field(field)
    if F.chi(Na) != 1 or math.gcd(Na, F.d_K * p) != 1:
        raise ValueError(f"Na = {Na} needs chi_K(Na) = 1 and gcd(Na, d_K p) = 1")
    tab = nu_table(F, p, n, strict=False)
    pn = p**n
    v = (Na * tab.value(c, b) - tab.value(c * Na, b)) / pn
    if v.denominator != 1:
        raise IntegralityError(
            f"Kersey exponent at b = {b} is {v}", key=(Na, b), value=v
        )
    return v


def admissible_norms(field, p: int, count: int = 3, start: int = 2) -> List[int]:
    """The first ``count`` integers ``Na >= start`` that are norms of principal
    ideals prime to ``d_K p``: ``chi(Na) = 1`` alone is not enough, so the norm
    form is searched directly."""
    F = _field(field)
    out = []
    Na = start
    while len(out) < count:
        if math.gcd(Na, F.d_K * p) == 1 and F.chi(Na) == 1 and _is_norm(F, Na):
            out.append(Na)
        Na += 1
    return out


def _is_norm(F: QuadField, m: int) -> bool:
    bound = math.isqrt(4 * m) + 2
    for b in range(0, bound + 1):
        for a in range(-bound, bound + 1):
            if F.norm((a, b)) == m:
                return True
    return False


def kersey_weights(field, p: int, n: int) -> Dict[int, Dict[int, Fraction]]:
    """Exact rational weights ``W[c][b]`` with

        RHS_c = sum_b W[c][b] * log|1 - zeta_N^b|,
        W[c][b] = -3 p^n sum_{a mod N, ab = c mod p^n} (chi(a) + chi(b)) B_1(<a/N>),

    computed over the full ``(a, b)`` grid (no regrouping)."""
    F = _field(field)
    _require_split(F, p)
    pn = p**n
    N = F.d_K * pn
    chi = [F.chi(a) for a in range(N)]
    b1 = [_b1(Fraction(a, N)) for a in range(N)]
    W: Dict[int, Dict[int, Fraction]] = {c: {} for c in range(1, pn) if c % p}
    for a in range(N):
        for b in range(N):
            c = a * b % pn
            if c % p == 0:
                continue
            w = chi[a] + chi[b]
            if w:
                row = W[c]
                row[b] = row.get(b, Fraction(0)) + w * b1[a]
    for c, row in W.items():
        for b in list(row):
            row[b] *= -3 * pn
            if not row[b]:
                del row[b]
    return W
