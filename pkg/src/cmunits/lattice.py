"""High-precision evaluation of lattice functions.

All functions take a :class:`LatticeBasis` ``L = Z omega1 + Z omega2`` with
``Im(omega1/omega2) > 0`` and work internally on the normalized lattice
``[tau, 1]`` after reducing ``tau`` into the standard fundamental domain; the
unimodular change of basis is recorded so torsion coordinates can be carried
along exactly.

Conventions on ``[tau, 1]`` with ``q = e(tau)``, ``q_z = e(z)``,
``e(x) = exp(2 pi i x)``::

    E2 = 1 - 24 sum sigma_1(n) q^n,   G2 = pi^2 E2 / 3 = eta_W(1)
    s2(tau) = G2 - pi / Im(tau),      A = Im(tau) / pi
    sigma(z) = exp(G2 z^2 / 2) (q_z^{1/2} - q_z^{-1/2}) / (2 pi i)
               * prod_n (1 - q^n q_z)(1 - q^n / q_z) / (1 - q^n)^2
    Delta = (2 pi)^12 q prod (1 - q^n)^24

and for ``L = w [tau, 1]``: ``s2(L) = w^-2 s2(tau)``, ``A(L) = |w|^2 A``,
``sigma(z, L) = w sigma(z / w)``, ``Delta(L) = w^-12 Delta``.

Precision: every public function takes ``prec`` (target bits) and ``guard``
(extra working bits, default 32).  Series are summed until the next term is
below ``2^-(prec + guard)`` relative to the running value.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Tuple, Union

import mpmath
from mpmath import mpc, mpf

from .errors import LatticePointError, PathDisagreementError, PrecisionError
from .fields import QuadField, get_field

__all__ = [
    "LatticeBasis",
    "TorsionPoint",
    "DEFAULT_PREC",
    "DEFAULT_GUARD",
    "tolerance",
    "set_invariant_store",
    "area_invariant",
    "s2_invariant",
    "quasi_period",
    "discriminant",
    "eisenstein_g2",
    "eisenstein_g3",
    "sigma_weierstrass",
    "weierstrass_zeta",
    "wp",
    "wp_prime",
    "klein_form",
    "siegel_function",
    "theta_fundamental",
    "theta_definition",
    "theta_siegel",
    "theta_a",
    "a_torsion",
    "LatticePointError",
    "PathDisagreementError",
]

DEFAULT_PREC = 256
DEFAULT_GUARD = 32
_MAX_TERMS = 100000


def tolerance(prec: int, slack: int = 64) -> mpf:
    """Relative tolerance ``2^-(prec - slack)`` used by the verification layer."""
    return mpf(2) ** (-(prec - slack))


# --------------------------------------------------------------------------
# basis and torsion types

@dataclass(frozen=True)
class TorsionPoint:
    """``a1 omega1 + a2 omega2`` for rationals ``a1, a2`` (read mod ``Z^2``)."""

    a1: Fraction
    a2: Fraction

    def __init__(self, a1, a2):
        object.__setattr__(self, "a1", Fraction(a1))
        object.__setattr__(self, "a2", Fraction(a2))

    def canonical(self) -> "TorsionPoint":
        return TorsionPoint(self.a1 - math.floor(self.a1), self.a2 - math.floor(self.a2))

    def is_zero(self) -> bool:
        return self.a1.denominator == 1 and self.a2.denominator == 1

    @property
    def order(self) -> int:
        c = self.canonical()
        return math.lcm(c.a1.denominator, c.a2.denominator)

    def __add__(self, other: "TorsionPoint") -> "TorsionPoint":
        return TorsionPoint(self.a1 + other.a1, self.a2 + other.a2)

    def __sub__(self, other: "TorsionPoint") -> "TorsionPoint":
        return TorsionPoint(self.a1 - other.a1, self.a2 - other.a2)

    def __mul__(self, k: int) -> "TorsionPoint":
        return TorsionPoint(k * self.a1, k * self.a2)

    __rmul__ = __mul__

    def mul_ok(self, field: QuadField, alpha: Tuple[int, int]) -> "TorsionPoint":
        """Multiply by ``alpha = a + b omega`` in the CM basis ``(Omega omega, Omega)``."""
        a, b = alpha
        a1, a2 = self.a1, self.a2
        return TorsionPoint(a * a1 + b * a2 + field.tr * b * a1, a * a2 - field.nm * b * a1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TorsionPoint):
            return NotImplemented
        d = self - other
        return d.is_zero()

    def __hash__(self):
        c = self.canonical()
        return hash((c.a1, c.a2))


class LatticeBasis:
    """Oriented basis ``(omega1, omega2)`` of a lattice in ``C``."""

    def __init__(self, omega1, omega2, prec: int = DEFAULT_PREC, field: Optional[QuadField] = None):
        wp_ = prec + 64
        with mpmath.workprec(wp_):
            self.omega1 = mpc(omega1)
            self.omega2 = mpc(omega2)
            if self.omega2 == 0:
                raise ValueError("omega2 must be nonzero")
            self.tau = self.omega1 / self.omega2
        if self.tau.imag <= 0:
            raise ValueError("basis is not oriented: Im(omega1/omega2) must be > 0")
        self.prec = prec
        self.field = field
        self._reduced = None

    @classmethod
    def cm(cls, field, Omega=1, prec: int = DEFAULT_PREC) -> "LatticeBasis":
        """``L = Omega O_K`` with basis ``(Omega omega_K, Omega)``."""
        F = field if isinstance(field, QuadField) else get_field(int(field))
        with mpmath.workprec(prec + 64):
            Om = mpc(Omega)
            return cls(Om * F.omega_complex(prec + 64), Om, prec, F)

    def scaled(self, c) -> "LatticeBasis":
        with mpmath.workprec(self.prec + 64):
            c = mpc(c)
            return LatticeBasis(c * self.omega1, c * self.omega2, self.prec, self.field)

    def point(self, t: TorsionPoint):
        with mpmath.workprec(self.prec + 64):
            return mpf(t.a1.numerator) / t.a1.denominator * self.omega1 + \
                mpf(t.a2.numerator) / t.a2.denominator * self.omega2

    def coordinates(self, z) -> Tuple[mpf, mpf]:
        """Real ``(x1, x2)`` with ``z = x1 omega1 + x2 omega2``."""
        with mpmath.workprec(self.prec + 64):
            w = mpc(z) / self.omega2
            x1 = w.imag / self.tau.imag
            x2 = w.real - x1 * self.tau.real
            return x1, x2

    def reduced(self) -> Tuple["LatticeBasis", Tuple[Tuple[int, int], Tuple[int, int]]]:
        """A basis with ``tau`` in the standard fundamental domain and the
        matrix ``M`` in ``SL_2(Z)`` with ``(omega1', omega2') = M (omega1, omega2)``."""
        if self._reduced is not None:
            return self._reduced
        with mpmath.workprec(self.prec + 64):
            w1, w2 = self.omega1, self.omega2
            m = [[1, 0], [0, 1]]
            eps = mpf(2) ** (-(self.prec // 2))
            for _ in range(10000):
                tau = w1 / w2
                k = int(mpmath.nint(tau.real))
                if k:
                    w1 = w1 - k * w2
                    m[0] = [m[0][0] - k * m[1][0], m[0][1] - k * m[1][1]]
                    tau = w1 / w2
                if abs(tau) < 1 - eps:
                    w1, w2 = -w2, w1
                    m = [[-m[1][0], -m[1][1]], [m[0][0], m[0][1]]]
                else:
                    break
            else:
                raise PrecisionError("basis reduction did not terminate", self.prec)
            red = LatticeBasis(w1, w2, self.prec, self.field)
            red._reduced = (red, ((1, 0), (0, 1)))
        M = ((m[0][0], m[0][1]), (m[1][0], m[1][1]))
        self._reduced = (red, M)
        return self._reduced

    def transform_point(self, t: TorsionPoint) -> TorsionPoint:
        """Coordinates of the same complex point in the reduced basis."""
        _, M = self.reduced()
        (a, b), (c, d) = M
        # a' = a M^{-1},  M^{-1} = [[d, -b], [-c, a]]
        return TorsionPoint(t.a1 * d - t.a2 * c, -t.a1 * b + t.a2 * a)

    def __repr__(self) -> str:
        return f"LatticeBasis({mpmath.nstr(self.omega1, 15)}, {mpmath.nstr(self.omega2, 15)})"


Point = Union[TorsionPoint, complex, mpc]


# --------------------------------------------------------------------------
# q-series on [tau, 1]

def _key(x: mpc) -> tuple:
    return x._mpc_


# Optional persistent store (see cmunits.cache); must offer get(key) / put(key, value).
_STORE = None


def set_invariant_store(store) -> None:
    global _STORE
    _STORE = store
    _invariants.cache_clear()


@lru_cache(maxsize=256)
def _invariants(tau_key: tuple, wprec: int):
    if _STORE is None:
        return _q_series(tau_key, wprec)
    key = ("q-series", tau_key, wprec)
    hit = _STORE.get(key)
    if hit is None:
        hit = _q_series(tau_key, wprec)
        _STORE.put(key, hit)
    return tuple(hit)


def _q_series(tau_key: tuple, wprec: int):
    """``(q, E2, E4, E6, eta24)`` on ``[tau, 1]``; ``eta24 = prod (1 - q^n)^24``."""
    with mpmath.workprec(wprec):
        tau = mpmath.mp.make_mpc(tau_key)
        q = mpmath.expjpi(2 * tau)
        eps = mpf(2) ** (-wprec)
        s1 = s3 = s5 = mpc(0)
        prod = mpc(1)
        qn = q
        n = 1
        while True:
            den = 1 - qn
            s1 += n * qn / den
            s3 += n**3 * qn / den
            s5 += n**5 * qn / den
            prod *= den
            if n**5 * abs(qn) < eps:
                break
            n += 1
            if n > _MAX_TERMS:
                raise PrecisionError("q-series did not converge", wprec)
            qn *= q
        E2 = 1 - 24 * s1
        E4 = 1 + 240 * s3
        E6 = 1 - 504 * s5
        return q, E2, E4, E6, prod**24


def _ctx(L: LatticeBasis, prec: Optional[int], guard: int):
    prec = L.prec if prec is None else prec
    R, M = L.reduced()
    wprec = prec + guard
    inv = _invariants(_key(R.tau), wprec)
    return prec, wprec, R, inv


def _check_point(L: LatticeBasis, z, prec: int):
    x1, x2 = L.coordinates(z)
    with mpmath.workprec(prec + 64):
        d = abs((x1 - mpmath.nint(x1)) * L.omega1 + (x2 - mpmath.nint(x2)) * L.omega2)
        if d < mpf(2) ** (-(prec - 64)) * abs(L.omega2):
            raise LatticePointError(
                f"z = {mpmath.nstr(mpc(z), 10)} lies on the lattice", prec, d
            )


def area_invariant(L: LatticeBasis, prec: Optional[int] = None, guard: int = DEFAULT_GUARD) -> mpf:
    """``A(L) = Area(C/L) / pi = Im(tau) |omega2|^2 / pi``."""
    prec = L.prec if prec is None else prec
    with mpmath.workprec(prec + guard):
        return L.tau.imag * abs(L.omega2) ** 2 / mpmath.pi


def s2_invariant(L: LatticeBasis, prec: Optional[int] = None, guard: int = DEFAULT_GUARD) -> mpc:
    """Weight-2 non-holomorphic Eisenstein value ``s2(L)``.

    Normalized so that ``quasi_period`` on lattice vectors returns the
    Weierstrass quasi-periods."""
    prec, wprec, R, (q, E2, *_rest) = _ctx(L, prec, guard)
    with mpmath.workprec(wprec):
        s = mpmath.pi**2 / 3 * E2 - mpmath.pi / R.tau.imag
        return s / R.omega2**2


def quasi_period(L: LatticeBasis, z, prec: Optional[int] = None, guard: int = DEFAULT_GUARD) -> mpc:
    """``eta(z, L) = conj(z) / A(L) + s2(L) z`` (R-linear in ``z``)."""
    prec = L.prec if prec is None else prec
    A = area_invariant(L, prec, guard)
    s2 = s2_invariant(L, prec, guard)
    with mpmath.workprec(prec + guard):
        z = mpc(z)
        return mpmath.conj(z) / A + s2 * z


def discriminant(L: LatticeBasis, prec: Optional[int] = None, guard: int = DEFAULT_GUARD) -> mpc:
    """``Delta(L) = (2 pi / omega2)^12 q prod (1 - q^n)^24`` (reduced basis)."""
    prec, wprec, R, (q, _e2, _e4, _e6, eta24) = _ctx(L, prec, guard)
    with mpmath.workprec(wprec):
        return (2 * mpmath.pi / R.omega2) ** 12 * q * eta24


def eisenstein_g2(L: LatticeBasis, prec: Optional[int] = None, guard: int = DEFAULT_GUARD) -> mpc:
    prec, wprec, R, (_q, _e2, E4, _e6, _d) = _ctx(L, prec, guard)
    with mpmath.workprec(wprec):
        return 4 * mpmath.pi**4 / 3 * E4 / R.omega2**4


def eisenstein_g3(L: LatticeBasis, prec: Optional[int] = None, guard: int = DEFAULT_GUARD) -> mpc:
    prec, wprec, R, (_q, _e2, _e4, E6, _d) = _ctx(L, prec, guard)
    with mpmath.workprec(wprec):
        return 8 * mpmath.pi**6 / 27 * E6 / R.omega2**6


def _qz_terms(q: mpc, qz: mpc, wprec: int, min_terms: int = 1):
    """Yield ``(q^n q_z, q^n / q_z, q^n)`` for ``n = 1, 2, ...`` until all are
    negligible; the bound adapts to ``|q_z|`` far from 1."""
    eps = mpf(2) ** (-wprec)
    qn = q
    iqz = 1 / qz
    n = 1
    while True:
        a = qn * qz
        b = qn * iqz
        yield a, b, qn
        if n >= min_terms and abs(a) < eps and abs(b) < eps:
            return
        n += 1
        if n > _MAX_TERMS:
            raise PrecisionError("q-product did not converge", wprec)
        qn *= q


def _sigma_norm(tau: mpc, w: mpc, q: mpc, E2: mpc, wprec: int) -> mpc:
    """``sigma(w)`` on ``[tau, 1]``."""
    qz = mpmath.expjpi(2 * w)
    prod = mpc(1)
    for a, b, qn in _qz_terms(q, qz, wprec):
        prod *= (1 - a) * (1 - b) / (1 - qn) ** 2
    G2 = mpmath.pi**2 / 3 * E2
    half = mpmath.expjpi(w)
    return mpmath.exp(G2 * w * w / 2) * (half - 1 / half) / (2j * mpmath.pi) * prod


def sigma_weierstrass(L: LatticeBasis, z, prec: Optional[int] = None, guard: int = DEFAULT_GUARD) -> mpc:
    """Weierstrass ``sigma(z, L)`` from the product expansion."""
    prec, wprec, R, (q, E2, *_r) = _ctx(L, prec, guard)
    _check_point(L, z, prec)
    with mpmath.workprec(wprec):
        w = mpc(z) / R.omega2
        return R.omega2 * _sigma_norm(R.tau, w, q, E2, wprec)


def weierstrass_zeta(L: LatticeBasis, z, prec: Optional[int] = None, guard: int = DEFAULT_GUARD) -> mpc:
    """``zeta = sigma'/sigma``, from the logarithmic derivative of the product."""
    prec, wprec, R, (q, E2, *_r) = _ctx(L, prec, guard)
    _check_point(L, z, prec)
    with mpmath.workprec(wprec):
        pi = mpmath.pi
        w = mpc(z) / R.omega2
        qz = mpmath.expjpi(2 * w)
        s = mpc(0)
        for a, b, _qn in _qz_terms(q, qz, wprec):
            s += b / (1 - b) - a / (1 - a)
        val = pi**2 / 3 * E2 * w + pi * mpmath.cot(pi * w) + 2j * pi * s
        return val / R.omega2


def _wp_norm(w: mpc, q: mpc, wprec: int) -> mpc:
    qz = mpmath.expjpi(2 * w)
    s = qz / (1 - qz) ** 2 + mpf(1) / 12
    for a, b, qn in _qz_terms(q, qz, wprec):
        s += a / (1 - a) ** 2 + b / (1 - b) ** 2 - 2 * qn / (1 - qn) ** 2
    return (2j * mpmath.pi) ** 2 * s


def wp(L: LatticeBasis, z, prec: Optional[int] = None, guard: int = DEFAULT_GUARD) -> mpc:
    """Weierstrass ``P(z, L)`` from its q-expansion."""
    prec, wprec, R, (q, *_r) = _ctx(L, prec, guard)
    _check_point(L, z, prec)
    with mpmath.workprec(wprec):
        w, _m1, _m2 = _reduce_norm(R.tau, mpc(z) / R.omega2)
        return _wp_norm(w, q, wprec) / R.omega2**2


def wp_prime(L: LatticeBasis, z, prec: Optional[int] = None, guard: int = DEFAULT_GUARD) -> mpc:
    prec, wprec, R, (q, *_r) = _ctx(L, prec, guard)
    _check_point(L, z, prec)
    with mpmath.workprec(wprec):
        w, _m1, _m2 = _reduce_norm(R.tau, mpc(z) / R.omega2)
        qz = mpmath.expjpi(2 * w)
        s = qz * (1 + qz) / (1 - qz) ** 3
        for a, b, _qn in _qz_terms(q, qz, wprec):
            s += a * (1 + a) / (1 - a) ** 3 - b * (1 + b) / (1 - b) ** 3
        return (2j * mpmath.pi) ** 3 * s / R.omega2**3


def klein_form(L: LatticeBasis, z, prec: Optional[int] = None, guard: int = DEFAULT_GUARD) -> mpc:
    """``k(z, L) = exp(-eta(z, L) z / 2) sigma(z, L)`` (weight -1, and ``|k|``
    is L-periodic)."""
    prec = L.prec if prec is None else prec
    eta = quasi_period(L, z, prec, guard)
    sg = sigma_weierstrass(L, z, prec, guard)
    with mpmath.workprec(prec + guard):
        return mpmath.exp(-eta * mpc(z) / 2) * sg


def _siegel_norm(tau: mpc, a1: Fraction, a2: Fraction, q: mpc, wprec: int) -> mpc:
    x1 = mpf(a1.numerator) / a1.denominator
    x2 = mpf(a2.numerator) / a2.denominator
    qz = mpmath.expjpi(2 * (x1 * tau + x2))
    prod = 1 - qz
    for a, b, _qn in _qz_terms(q, qz, wprec):
        prod *= (1 - a) * (1 - b)
    b2 = x1 * x1 - x1 + mpf(1) / 6
    # q^{B2(a1)/2} with q^s := exp(2 pi i tau s)
    return -mpmath.expjpi(tau * b2) * mpmath.expjpi(x2 * (x1 - 1)) * prod


def siegel_function(L: LatticeBasis, t: TorsionPoint, prec: Optional[int] = None,
                    guard: int = DEFAULT_GUARD) -> mpc:
    """Siegel function ``g_a(tau)`` for the point ``t`` written in the reduced
    basis of ``L``; its 12th power is ``theta``."""
    prec, wprec, R, (q, *_r) = _ctx(L, prec, guard)
    tr = L.transform_point(t)
    if tr.is_zero():
        raise LatticePointError("torsion point is zero in C/L", prec)
    with mpmath.workprec(wprec):
        return _siegel_norm(R.tau, tr.a1, tr.a2, q, wprec)


def _reduce_norm(tau: mpc, w: mpc) -> Tuple[mpc, int, int]:
    """``w = w0 + m1 tau + m2`` with ``w0`` in the centred period parallelogram."""
    m1 = int(mpmath.nint(w.imag / tau.imag))
    w1 = w - m1 * tau
    m2 = int(mpmath.nint(w1.real))
    return w1 - m2, m1, m2


def theta_definition(L: LatticeBasis, z, prec: Optional[int] = None,
                     guard: int = DEFAULT_GUARD) -> mpc:
    """``theta(z, L) = Delta(L) exp(-6 eta(z, L) z) sigma(z, L)^12``.

    The formula is applied at the representative ``z0`` of ``z`` mod ``L``
    nearest the origin and moved back with the exact factor
    ``theta(z0 + w) = theta(z0) exp(6 (conj(w) z0 - w conj(z0)) / A)``;
    evaluating far from the origin directly would cancel huge exponentials.
    """
    prec, wprec, R, (q, E2, _e4, _e6, eta24) = _ctx(L, prec, guard)
    _check_point(L, z, prec)
    with mpmath.workprec(wprec):
        pi = mpmath.pi
        tau = R.tau
        w0, m1, m2 = _reduce_norm(tau, mpc(z) / R.omega2)
        A = tau.imag / pi
        s2 = pi**2 / 3 * E2 - pi / tau.imag
        eta = mpmath.conj(w0) / A + s2 * w0
        D = (2 * pi) ** 12 * q * eta24
        sg = _sigma_norm(tau, w0, q, E2, wprec)
        val = D * mpmath.exp(-6 * eta * w0) * sg**12
        if m1 or m2:
            om = m1 * tau + m2
            val *= mpmath.exp(6 * (mpmath.conj(om) * w0 - om * mpmath.conj(w0)) / A)
        return val


def theta_siegel(L: LatticeBasis, t: TorsionPoint, prec: Optional[int] = None,
                 guard: int = DEFAULT_GUARD) -> mpc:
    """``theta`` at a point with rational coordinates, as ``g_a(tau)^12``."""
    prec = L.prec if prec is None else prec
    g = siegel_function(L, t, prec, guard)
    with mpmath.workprec(prec + guard):
        return g**12


def _agree(x: mpc, y: mpc, prec: int, what: str, slack: int = 64) -> None:
    with mpmath.workprec(prec + 32):
        scale = max(abs(x), abs(y))
        diff = abs(x - y)
        bound = tolerance(prec, slack) * scale
        if diff > bound:
            raise PathDisagreementError(
                f"{what}: paths differ by {mpmath.nstr(diff, 5)} (bound {mpmath.nstr(bound, 5)})",
                prec,
                diff,
            )


def theta_fundamental(L: LatticeBasis, t: Point, prec: Optional[int] = None,
                      guard: int = DEFAULT_GUARD, check: bool = True) -> mpc:
    """Fundamental theta function ``theta(z, L)``.

    For a :class:`TorsionPoint` the canonical lift in ``[0, 1)^2`` is used and
    the value is computed twice (definition and Siegel product); a
    disagreement beyond ``2^-(prec - 64)`` relative raises
    :class:`PathDisagreementError`.
    """
    prec = L.prec if prec is None else prec
    if isinstance(t, TorsionPoint):
        t = t.canonical()
        if t.is_zero():
            raise LatticePointError("torsion point is zero in C/L", prec)
        val = theta_siegel(L, t, prec, guard)
        if check:
            other = theta_definition(L, L.point(t), prec, guard)
            _agree(val, other, prec, "theta (definition vs Siegel)")
        return val
    return theta_definition(L, t, prec, guard)


# --------------------------------------------------------------------------
# theta_a

def _ok_field(L: LatticeBasis, field) -> QuadField:
    F = field if isinstance(field, QuadField) else get_field(int(field))
    with mpmath.workprec(L.prec + 32):
        expect = L.omega2 * F.omega_complex(L.prec + 32)
        if abs(L.omega1 - expect) > tolerance(L.prec) * abs(L.omega2):
            raise ValueError("theta_a needs the CM basis (Omega omega_K, Omega)")
    return F


def a_torsion(field, alpha: Tuple[int, int]) -> List[TorsionPoint]:
    """Nonzero points of ``E[(alpha)]``: the classes ``beta / alpha`` for
    ``beta`` in ``O_K / alpha O_K``, in coordinates of ``(Omega omega, Omega)``."""
    F = field if isinstance(field, QuadField) else get_field(int(field))
    Na = F.norm(alpha)
    if Na <= 1:
        raise ValueError("alpha must be a non-unit")
    reps: List[Tuple[int, int]] = []
    for y in range(Na):
        for x in range(Na):
            beta = (x, y)
            if all(not F.divides(alpha, F.sub(beta, r)) for r in reps):
                reps.append(beta)
            if len(reps) == Na:
                break
        if len(reps) == Na:
            break
    if len(reps) != Na:
        raise RuntimeError(f"found {len(reps)} residues mod alpha, expected {Na}")
    # beta / alpha = beta * conj(alpha) / Na
    ca = F.conj(alpha)
    pts = []
    for beta in reps:
        if beta == (0, 0):
            continue
        x, y = F.mul(beta, ca)
        pts.append(TorsionPoint(Fraction(y, Na), Fraction(x, Na)))
    return pts


def theta_a(field, L: LatticeBasis, alpha: Tuple[int, int], z, prec: Optional[int] = None,
            guard: int = DEFAULT_GUARD, check: bool = True) -> mpc:
    """``theta_a(z) = theta(z, L)^Na / theta(z, alpha^{-1} L)`` for ``a = (alpha)``.

    Also evaluated as ``alpha^-12 Delta^(Na-1) prod_P (P(z) - P(P))^-6`` over
    ``P`` in ``E[a]`` minus the origin; the two must agree.
    """
    prec = L.prec if prec is None else prec
    F = _ok_field(L, field)
    Na = F.norm(alpha)
    with mpmath.workprec(prec + guard):
        z = mpc(z)
        al = F.to_complex(alpha, prec + guard)
        az = al * z
    th = theta_definition(L, z, prec, guard)
    # theta(z, alpha^{-1} L) = theta(alpha z, L)
    th_a = theta_definition(L, az, prec, guard)
    with mpmath.workprec(prec + guard):
        val = th**Na / th_a
    if check:
        pts = a_torsion(F, alpha)
        D = discriminant(L, prec, guard)
        x = wp(L, z, prec, guard)
        with mpmath.workprec(prec + guard):
            prod = mpc(1)
            for P in pts:
                prod *= x - wp(L, L.point(P), prec, guard)
            other = al ** (-12) * D ** (Na - 1) * prod ** (-6)
        _agree(val, other, prec, "theta_a (quotient vs product)")
    return val
