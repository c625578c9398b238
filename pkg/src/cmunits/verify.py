"""Numerical verification of the elliptic-versus-cyclotomic unit identities.

Everything here is checked at the level of absolute values under the fixed
embedding ``omega_K -> C`` of :mod:`cmunits.fields` (and ``zeta_N = e(1/N)``),
plus killing exponents for roots of unity, since congruences modulo roots of
unity are not decidable in floating point.

Galois action: the Artin symbol of a principal ideal ``(alpha)`` prime to
``p`` acts on ``p``-power torsion as multiplication by ``alpha`` and restricts
to ``sigma_{N alpha}`` on ``mu_{p^n}``.  So the norm from ``K(p^n)`` down to
``K(mu_{p^n})`` of the ``sigma_c``-conjugate of ``theta(Omega/p^n)`` is the
product of ``theta(beta alpha_c Omega/p^n)`` over ``beta`` in the kernel of
the norm map ``(O_K/p^n)^x / O_K^x -> (Z/p^n)^x``, where ``N(alpha_c) = c``.
"""
from __future__ import annotations

import json
import math
import time
from dataclasses import asdict, dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import mpmath
from mpmath import mpc, mpf

from .errors import NotSplitError, RepresentativeSearchError
from .fields import QuadField, find_split, get_field, is_split
from .lattice import (
    DEFAULT_GUARD,
    LatticeBasis,
    TorsionPoint,
    theta_a,
    theta_definition,
    theta_fundamental,
    tolerance,
)
from .stick import kersey_exponent, kersey_weights, nu_table

__all__ = [
    "CmBasis",
    "RegulatorVector",
    "VerificationReport",
    "cm_basis",
    "norm_kernel",
    "norm_representative",
    "find_alpha",
    "galois_orbit_theta",
    "kersey_lhs",
    "kersey_rhs",
    "kersey_rhs_from_nu",
    "regrouping_exact",
    "verify_kersey",
    "verify_kersey_mult",
    "verify_norm_unit_identities",
    "epsilon_log_ledger",
    "verify_distribution",
    "verify_lift_independence",
    "verify_homogeneity",
    "verify_theta_two_path",
    "verify_theta_a",
    "verify_legendre",
]

OK = Tuple[int, int]


def _field(field) -> QuadField:
    return field if isinstance(field, QuadField) else get_field(int(field))


def _require_split(F: QuadField, p: int) -> None:
    if not is_split(F, p):
        raise NotSplitError(f"{p} is not split in {F.name}")


def _digits(prec: int) -> int:
    return max(15, int(prec * 0.30103) + 2)


def _fmt(x, prec: int) -> str:
    return mpmath.nstr(x, _digits(prec), min_fixed=-5, max_fixed=5)


# --------------------------------------------------------------------------
# CM torsion bases

@dataclass(frozen=True)
class CmBasis:
    field: QuadField
    p: int
    n: int
    pi: OK
    pi_bar: OK
    r: int  # omega = r mod pi^n
    r_bar: int  # omega = r_bar mod pi_bar^n
    idempotent: OK
    omega_n: TorsionPoint
    omega_p_n: TorsionPoint
    omega_pbar_n: TorsionPoint


def _root_mod(F: QuadField, pi: OK, n: int, p: int) -> int:
    pin = F.pow(pi, n)
    for r in range(p**n):
        if F.divides(pin, (-r, 1)):
            return r
    raise ArithmeticError("no root of the minimal polynomial modulo pi^n")


def cm_basis(field, p: int, n: int, swap: bool = False) -> CmBasis:
    """Split ``Omega/p^n`` along ``O_K/p^n = O_K/pi^n x O_K/pi_bar^n``.

    ``u`` is the idempotent with ``u = 1 mod pi^n`` and ``u = 0 mod pi_bar^n``;
    ``omega_p_n = u Omega / p^n`` is killed by ``pi^n``.  ``swap`` exchanges
    the roles of ``pi`` and ``pi_bar``.
    """
    F = _field(field)
    sp = find_split(F, p)
    pi, pib = (sp.pi_bar, sp.pi) if swap else (sp.pi, sp.pi_bar)
    pn = p**n
    r = _root_mod(F, pi, n, p)
    rb = _root_mod(F, pib, n, p)
    y = pow(r - rb, -1, pn)
    x = (-y * rb) % pn
    u = (x, y)
    one_minus_u = ((1 - x) % pn, (-y) % pn)
    return CmBasis(
        F, p, n, pi, pib, r, rb, u,
        TorsionPoint(0, Fraction(1, pn)),
        TorsionPoint(Fraction(y, pn), Fraction(x, pn)).canonical(),
        TorsionPoint(Fraction(one_minus_u[1], pn), Fraction(one_minus_u[0], pn)).canonical(),
    )


def _ok_point(F: QuadField, beta: OK, pn: int) -> TorsionPoint:
    """``beta Omega / p^n`` in CM coordinates."""
    return TorsionPoint(Fraction(beta[1], pn), Fraction(beta[0], pn)).canonical()


def norm_kernel(field, p: int, n: int) -> List[OK]:
    """Transversal of ``ker(N: (O_K/p^n)^x / O_K^x -> (Z/p^n)^x)``."""
    F = _field(field)
    pn = p**n
    units = F.units()
    seen = set()
    reps: List[OK] = []
    for y in range(pn):
        for x in range(pn):
            if (x, y) in seen:
                continue
            if F.norm((x, y)) % pn != 1:
                continue
            reps.append((x, y))
            for u in units:
                a, b = F.mul(u, (x, y))
                seen.add((a % pn, b % pn))
    return reps


def norm_representative(field, p: int, n: int, c: int, skip: int = 0) -> OK:
    """Small ``alpha`` with ``N(alpha) = c mod p^n`` (``skip`` picks a later one)."""
    F = _field(field)
    pn = p**n
    found = 0
    for rad in range(0, 4 * pn + 4):
        cands = sorted(
            ((a, b) for a in range(-rad, rad + 1) for b in range(-rad, rad + 1)
             if max(abs(a), abs(b)) == rad),
            key=lambda ab: (F.norm(ab), abs(ab[1]), abs(ab[0]), ab),
        )
        for ab in cands:
            nm = F.norm(ab)
            if nm % p and (nm - c) % pn == 0:
                if found == skip:
                    return ab
                found += 1
    raise RepresentativeSearchError(f"no alpha with N(alpha) = {c} mod {pn}")


def find_alpha(field, Na: int) -> OK:
    """An element of norm exactly ``Na`` (smallest ``|b|``, then ``|a|``)."""
    F = _field(field)
    bound = math.isqrt(4 * Na) + 2
    best = None
    for b in range(-bound, bound + 1):
        for a in range(-bound, bound + 1):
            if F.norm((a, b)) == Na:
                key = (abs(b), abs(a), a < 0, b < 0)
                if best is None or key < best[0]:
                    best = (key, (a, b))
    if best is None:
        raise RepresentativeSearchError(f"{Na} is not a norm from O_K")
    return best[1]


# --------------------------------------------------------------------------
# reports

@dataclass
class RegulatorVector:
    modulus: int
    coords: Dict[int, mpf]

    def max_abs(self) -> mpf:
        return max((abs(v) for v in self.coords.values()), default=mpf(0))

    def __len__(self) -> int:
        return len(self.coords)


@dataclass
class VerificationReport:
    identity: str
    parameters: Dict[str, object]
    lhs: Dict[str, str]
    rhs: Dict[str, str]
    max_abs_diff: str
    tolerance: str
    passed: bool
    precision: int
    wall_time: float
    details: Dict[str, object] = dc_field(default_factory=dict)

    def to_dict(self) -> Dict[str, object]:
        return asdict(self)

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def _report(identity, params, lhs, rhs, diff, tol, prec, t0, **details) -> VerificationReport:
    return VerificationReport(
        identity=identity,
        parameters=params,
        lhs={str(k): _fmt(v, prec) for k, v in lhs.items()},
        rhs={str(k): _fmt(v, prec) for k, v in rhs.items()},
        max_abs_diff=mpmath.nstr(diff, 8),
        tolerance=mpmath.nstr(tol, 8),
        passed=bool(diff <= tol),
        precision=prec,
        wall_time=round(time.perf_counter() - t0, 6),
        details=details,
    )


def _compare(lhs: Dict, rhs: Dict, prec: int, slack: int = 64):
    with mpmath.workprec(prec + 32):
        diff = max((abs(lhs[k] - rhs[k]) for k in lhs), default=mpf(0))
        scale = max([abs(v) for v in lhs.values()] + [abs(v) for v in rhs.values()] + [mpf(1)])
        return diff, tolerance(prec, slack) * scale


# --------------------------------------------------------------------------
# Kersey regulator identity

def _log_abs_theta(L: LatticeBasis, t: TorsionPoint, prec: int, guard: int) -> mpf:
    v = theta_fundamental(L, t, prec, guard)
    with mpmath.workprec(prec + guard):
        return mpmath.log(abs(v))


def galois_orbit_theta(field, p: int, n: int, c: int, precision: int = 256,
                       guard: int = DEFAULT_GUARD, unit: OK = (1, 0), skip: int = 0,
                       kernel: Optional[Sequence[OK]] = None) -> mpf:
    """``log|N(sigma_c(theta(Omega/p^n, L)^{p^n}))|`` with ``L = O_K``.

    ``unit`` rescales the representative ``alpha_c``; ``skip`` chooses a
    different representative; ``kernel`` overrides the transversal.  None of
    these may change the value.
    """
    F = _field(field)
    _require_split(F, p)
    pn = p**n
    if c % p == 0:
        raise ValueError("c must be a unit mod p")
    alpha = F.mul(unit, norm_representative(F, p, n, c % pn, skip))
    ker = norm_kernel(F, p, n) if kernel is None else kernel
    L = LatticeBasis.cm(F, prec=precision)
    total = mpf(0)
    for beta in ker:
        pt = _ok_point(F, F.mul(beta, alpha), pn)
        lv = _log_abs_theta(L, pt, precision, guard)
        with mpmath.workprec(precision + guard):
            total += lv
    with mpmath.workprec(precision + guard):
        return pn * total


def kersey_lhs(field, p: int, n: int, precision: int = 256, guard: int = DEFAULT_GUARD) -> RegulatorVector:
    F = _field(field)
    pn = p**n
    coords = {c: galois_orbit_theta(F, p, n, c, precision, guard)
              for c in range(1, pn) if c % p}
    return RegulatorVector(pn, coords)


def _log_cyc(N: int, b: int, prec: int) -> mpf:
    """``log|1 - zeta_N^b| = log(2 |sin(pi b / N)|)``."""
    with mpmath.workprec(prec):
        return mpmath.log(2 * abs(mpmath.sinpi(mpf(b) / N)))


def _weighted_logs(weights: Dict[int, Dict[int, Fraction]], N: int, prec: int) -> Dict[int, mpf]:
    out = {}
    cache: Dict[int, mpf] = {}
    with mpmath.workprec(prec):
        for c, row in weights.items():
            s = mpf(0)
            for b, w in row.items():
                if not w:
                    continue
                if b % N == 0:
                    raise ArithmeticError(f"nonzero weight {w} on log|1 - 1| at c = {c}")
                if b not in cache:
                    cache[b] = _log_cyc(N, b, prec)
                s += mpf(w.numerator) / w.denominator * cache[b]
            out[c] = s
    return out


def kersey_rhs(field, p: int, n: int, precision: int = 256, guard: int = DEFAULT_GUARD) -> RegulatorVector:
    """Right-hand side with exact weights from the full ``(a, b)`` grid."""
    F = _field(field)
    W = kersey_weights(F, p, n)
    return RegulatorVector(p**n, _weighted_logs(W, F.d_K * p**n, precision + guard))


def _nu_weights(F: QuadField, p: int, n: int, scale: Fraction = Fraction(1, 4)):
    tab = nu_table(F, p, n)
    return {c: {b: scale * tab.value(c, b) for b in range(tab.N) if tab.num[c, b]}
            for c in tab.units_c()}


def kersey_rhs_from_nu(field, p: int, n: int, precision: int = 256,
                       guard: int = DEFAULT_GUARD) -> RegulatorVector:
    """Right-hand side as ``(1/4) sum_b nu_n(c, b) log|1 - zeta^b|``."""
    F = _field(field)
    return RegulatorVector(p**n, _weighted_logs(_nu_weights(F, p, n), F.d_K * p**n, precision + guard))


def regrouping_exact(field, p: int, n: int) -> bool:
    """Exact rational equality ``W[c][b] = nu_n(c, b) / 4`` for every ``(c, b)``."""
    F = _field(field)
    W = kersey_weights(F, p, n)
    V = _nu_weights(F, p, n)
    return all(W[c] == V[c] for c in V) and set(W) == set(V)


def verify_kersey(field, p: int, n: int = 1, precision: int = 256,
                  guard: int = DEFAULT_GUARD) -> VerificationReport:
    t0 = time.perf_counter()
    F = _field(field)
    _require_split(F, p)
    lhs = kersey_lhs(F, p, n, precision, guard).coords
    rhs = kersey_rhs(F, p, n, precision, guard).coords
    diff, tol = _compare(lhs, rhs, precision)
    return _report(
        "kersey", {"d_K": F.d_K, "p": p, "n": n}, lhs, rhs, diff, tol, precision, t0,
        kernel_size=len(norm_kernel(F, p, n)),
        regrouping_exact=regrouping_exact(F, p, n),
    )


def verify_kersey_mult(field, p: int, n: int, c: int, Na: int, precision: int = 256,
                       guard: int = DEFAULT_GUARD) -> VerificationReport:
    """Absolute-value forms of the multiplicative identities.

    (i)  ``4 log|N(theta(Omega/p^n)^{p^n})^{sigma_c}| = sum_b nu(c, b) log|1 - zeta^b|``
    (ii) ``4 log|N(theta_a(omega_n))^{sigma_c}|
           = sum_b (Na nu(c, b) - nu(c Na, b)) / p^n log|1 - zeta^b|``
    with ``a = (alpha)``, ``N(alpha) = Na``.
    """
    t0 = time.perf_counter()
    F = _field(field)
    _require_split(F, p)
    if F.chi(Na) != 1 or math.gcd(Na, F.d_K * p) != 1:
        raise ValueError(f"Na = {Na} needs chi_K(Na) = 1 and gcd(Na, d_K p) = 1")
    pn = p**n
    N = F.d_K * pn
    wprec = precision + guard
    tab = nu_table(F, p, n)

    g = galois_orbit_theta(F, p, n, c, precision, guard)
    with mpmath.workprec(wprec):
        lhs1 = {"i": 4 * g}
    w1 = {"i": {b: tab.value(c, b) for b in range(N) if tab.num[c % pn, b]}}
    rhs1 = _weighted_logs(w1, N, wprec)

    alpha = find_alpha(F, Na)
    L = LatticeBasis.cm(F, prec=precision)
    ac = norm_representative(F, p, n, c % pn)
    total = mpf(0)
    for beta in norm_kernel(F, p, n):
        pt = _ok_point(F, F.mul(beta, ac), pn)
        v = theta_a(F, L, alpha, L.point(pt), precision, guard)
        with mpmath.workprec(wprec):
            total += mpmath.log(abs(v))
    with mpmath.workprec(wprec):
        lhs2 = {"ii": 4 * total}
    w2 = {"ii": {}}
    for b in range(N):
        e = kersey_exponent(F, p, n, Na, b, c)
        if e:
            w2["ii"][b] = e
    rhs2 = _weighted_logs(w2, N, wprec)

    lhs = {**lhs1, **lhs2}
    rhs = {**rhs1, **rhs2}
    diff, tol = _compare(lhs, rhs, precision)
    per = {}
    for k in lhs:
        d, t = _compare({k: lhs[k]}, {k: rhs[k]}, precision)
        per[k] = {"diff": mpmath.nstr(d, 8), "passed": bool(d <= t)}
    return _report(
        "kersey-mult", {"d_K": F.d_K, "p": p, "n": n, "c": c, "Na": Na, "alpha": list(alpha)},
        lhs, rhs, diff, tol, precision, t0, per_identity=per,
    )


# --------------------------------------------------------------------------
# cyclotomic norm identities

def _iota_exponent(d: int, pn: int) -> int:
    """``t`` with ``t = 1 mod p^n`` and ``t = -1 mod d``."""
    N = d * pn
    for t in range(1, N):
        if t % pn == 1 and (t + 1) % d == 0:
            return t
    raise ArithmeticError("no iota exponent")


def verify_norm_unit_identities(field, p: int, n: int = 1, precision: int = 256,
                                guard: int = DEFAULT_GUARD) -> VerificationReport:
    """Two cyclotomic identities at level ``n``, under ``zeta_N = e(1/N)``:

    1. ``N(1 - zeta_N) * N(1 - iota zeta_N) = (1 - zeta_{p^n}) / (1 - zeta_{p^n}^{1/ell})``
    2. ``N(-zeta_N^{-1})^{2 d_K} = zeta_{p^n}^{-phi(d_K)}`` (so its order divides ``2 d_K p^n``)

    where ``N`` is the norm from ``Q(mu_N)`` to ``K(mu_{p^n})``: the product
    over ``sigma_t`` with ``t = 1 mod p^n`` and ``chi_K(t) = 1``.
    """
    t0 = time.perf_counter()
    F = _field(field)
    d = F.d_K
    if math.gcd(d, p) != 1:
        raise ValueError("p must be prime to d_K")
    pn = p**n
    N = d * pn
    wprec = precision + guard
    ts = [t for t in range(1, N) if t % pn == 1 and F.chi(t) == 1]
    ti = _iota_exponent(d, pn)
    phi_d = sum(1 for a in range(1, d) if math.gcd(a, d) == 1)
    with mpmath.workprec(wprec):
        def zN(k):
            return mpmath.expjpi(mpf(2 * (k % N)) / N)

        def zp(k):
            return mpmath.expjpi(mpf(2 * (k % pn)) / pn)

        norm1 = mpc(1)
        norm_iota = mpc(1)
        norm_iota2 = mpc(1)
        for t in ts:
            norm1 *= 1 - zN(t)
            norm_iota *= 1 - zN(t * ti)
            norm_iota2 *= 1 - zN(t * ti * ti)
        lhs1 = norm1 * norm_iota
        linv = pow(F.ell, -1, pn)
        rhs1 = (1 - zp(1)) / (1 - zp(linv))

        nm = mpc(1)
        for t in ts:
            nm *= -zN(-t)
        lhs2 = nm ** (2 * d)
        rhs2 = zp(-phi_d)
        lhs3 = nm ** (2 * d * pn)
        rhs3 = mpc(1)
        lhs = {"norm_product": lhs1, "unit_power": lhs2, "unit_order": lhs3,
               "iota_twice": norm_iota2}
        rhs = {"norm_product": rhs1, "unit_power": rhs2, "unit_order": rhs3,
               "iota_twice": norm1}
    diff, tol = _compare(lhs, rhs, precision)
    return _report(
        "norm-units", {"d_K": d, "p": p, "n": n}, lhs, rhs, diff, tol, precision, t0,
        galois_set_size=len(ts), iota=ti, ell=F.ell,
    )


# --------------------------------------------------------------------------
# epsilon ledgers and theta properties

def epsilon_log_ledger(field, p: int, n: int, m1: int, m2: int, precision: int = 256,
                       guard: int = DEFAULT_GUARD, Omega=1, swap: bool = False) -> mpf:
    """``sum a^(m1-1) b^(m2-1) log|theta(a omega_p + b omega_pbar, Omega O_K)|``
    over ``0 <= a, b < p^n`` with ``p`` not dividing ``gcd(a, b)``."""
    if m1 < 1 or m2 < 1:
        raise ValueError("m1, m2 must be >= 1")
    F = _field(field)
    _require_split(F, p)
    B = cm_basis(F, p, n, swap=swap)
    L = LatticeBasis.cm(F, Omega, prec=precision)
    pn = p**n
    total = mpf(0)
    for a in range(pn):
        for b in range(pn):
            if a % p == 0 and b % p == 0:
                continue
            e = a ** (m1 - 1) * b ** (m2 - 1)
            if e == 0:
                continue
            pt = a * B.omega_p_n + b * B.omega_pbar_n
            lv = _log_abs_theta(L, pt, precision, guard)
            with mpmath.workprec(precision + guard):
                total += e * lv
    return total


def verify_distribution(field, p: int, precision: int = 256, guard: int = DEFAULT_GUARD,
                        point: Optional[TorsionPoint] = None) -> VerificationReport:
    """``|prod_{P in E[p]} theta(w + P)| = |theta(p w)|`` for a point ``w`` of order ``p^2``."""
    t0 = time.perf_counter()
    F = _field(field)
    L = LatticeBasis.cm(F, prec=precision)
    if point is not None:
        pts = [point]
    else:
        pts = [TorsionPoint(0, Fraction(1, p * p)), TorsionPoint(Fraction(1, p * p), Fraction(3, p))]
        if F.d_K % p and is_split(F, p):
            pts.append(cm_basis(F, p, 2).omega_p_n + TorsionPoint(Fraction(1, p * p), 0))
    lhs, rhs = {}, {}
    for i, w in enumerate(pts):
        s = mpf(0)
        for i1 in range(p):
            for i2 in range(p):
                lv = _log_abs_theta(L, w + TorsionPoint(Fraction(i1, p), Fraction(i2, p)), precision, guard)
                with mpmath.workprec(precision + guard):
                    s += lv
        lhs[i] = s
        rhs[i] = _log_abs_theta(L, p * w, precision, guard)
    diff, tol = _compare(lhs, rhs, precision)
    return _report("distribution", {"d_K": F.d_K, "p": p}, lhs, rhs, diff, tol, precision, t0,
                   points=[[str(w.a1), str(w.a2)] for w in pts])


def verify_lift_independence(field, p: int, n: int = 1, precision: int = 256,
                             guard: int = DEFAULT_GUARD) -> VerificationReport:
    """Two lifts of each ``p^n``-torsion point: equal ``|theta|``, and the ratio
    raised to ``12 d_K p^n`` equals 1."""
    t0 = time.perf_counter()
    F = _field(field)
    L = LatticeBasis.cm(F, prec=precision)
    B = cm_basis(F, p, n) if F.d_K % p and is_split(F, p) else None
    base = [TorsionPoint(0, Fraction(1, p**n)), TorsionPoint(Fraction(1, p**n), Fraction(2, p**n))]
    if B is not None:
        base += [B.omega_p_n, B.omega_pbar_n]
    shifts = [(1, 0), (0, 1), (2, -3)]
    e = 12 * F.d_K * p**n
    lhs, rhs = {}, {}
    for i, t in enumerate(base):
        z0 = L.point(t)
        v0 = theta_definition(L, z0, precision, guard)
        for j, (s1, s2) in enumerate(shifts):
            z1 = L.point(t + TorsionPoint(s1, s2))
            v1 = theta_definition(L, z1, precision, guard)
            with mpmath.workprec(precision + guard):
                lhs[f"{i}.{j}.abs"] = abs(v1)
                rhs[f"{i}.{j}.abs"] = abs(v0)
                lhs[f"{i}.{j}.pow"] = (v1 / v0) ** e
                rhs[f"{i}.{j}.pow"] = mpc(1)
    diff, tol = _compare(lhs, rhs, precision)
    return _report("lift-independence", {"d_K": F.d_K, "p": p, "n": n}, lhs, rhs, diff, tol,
                   precision, t0, exponent=e)


def verify_homogeneity(field, p: int = 5, precision: int = 256, guard: int = DEFAULT_GUARD,
                       scalars: Sequence = ((1.25, -0.5), (0.3, 2.0), (-3, 0.125))) -> VerificationReport:
    """``theta(c z, c L) = theta(z, L)`` and ``theta(u z, L) = theta(z, L)`` for units."""
    t0 = time.perf_counter()
    F = _field(field)
    L = LatticeBasis.cm(F, prec=precision)
    lhs, rhs = {}, {}
    zs = [L.point(TorsionPoint(Fraction(1, p), Fraction(2, p))), mpc("0.1234", "0.0567")]
    for i, z in enumerate(zs):
        v = theta_definition(L, z, precision, guard)
        for j, (a, b) in enumerate(scalars):
            with mpmath.workprec(precision + guard):
                c = mpc(a, b)
                Lc = L.scaled(c)
                cz = c * z
            lhs[f"{i}.scale{j}"] = theta_definition(Lc, cz, precision, guard)
            rhs[f"{i}.scale{j}"] = v
        for u in F.units():
            with mpmath.workprec(precision + guard):
                uz = F.to_complex(u, precision + guard) * z
            lhs[f"{i}.unit{u}"] = theta_definition(L, uz, precision, guard)
            rhs[f"{i}.unit{u}"] = v
    diff, tol = _compare(lhs, rhs, precision)
    return _report("homogeneity", {"d_K": F.d_K}, lhs, rhs, diff, tol, precision, t0)


def verify_theta_two_path(field, p: int, n: int = 1, precision: int = 256,
                          guard: int = DEFAULT_GUARD) -> VerificationReport:
    """Definition path against the Siegel product at every nonzero ``p^n``-torsion point."""
    t0 = time.perf_counter()
    F = _field(field)
    L = LatticeBasis.cm(F, prec=precision)
    from .lattice import theta_siegel

    pn = p**n
    lhs, rhs = {}, {}
    for a1 in range(pn):
        for a2 in range(pn):
            if a1 == 0 and a2 == 0:
                continue
            t = TorsionPoint(Fraction(a1, pn), Fraction(a2, pn))
            lhs[f"{a1},{a2}"] = theta_definition(L, L.point(t), precision, guard)
            rhs[f"{a1},{a2}"] = theta_siegel(L, t, precision, guard)
    diff, tol = _compare(lhs, rhs, precision)
    return _report("theta-two-path", {"d_K": F.d_K, "p": p, "n": n}, lhs, rhs, diff, tol,
                   precision, t0)


def verify_theta_a(field, alphas: Sequence[OK] = ((1, 1), (3, 0)), precision: int = 256,
                   guard: int = DEFAULT_GUARD,
                   points: Sequence = (("0.2345", "0.1113"), ("-0.31", "0.42"))) -> VerificationReport:
    """Quotient and x-coordinate-product definitions of ``theta_a`` agree."""
    t0 = time.perf_counter()
    F = _field(field)
    L = LatticeBasis.cm(F, prec=precision)
    from .lattice import a_torsion, discriminant, wp

    lhs, rhs = {}, {}
    for al in alphas:
        pts = a_torsion(F, al)
        Na = F.norm(al)
        D = discriminant(L, precision, guard)
        for k, (x, y) in enumerate(points):
            with mpmath.workprec(precision + guard):
                z = mpc(x, y)
            q = theta_a(F, L, al, z, precision, guard, check=False)
            X = wp(L, z, precision, guard)
            with mpmath.workprec(precision + guard):
                prod = mpc(1)
                for P in pts:
                    prod *= X - wp(L, L.point(P), precision, guard)
                alc = F.to_complex(al, precision + guard)
                lhs[f"{al}.{k}"] = q
                rhs[f"{al}.{k}"] = alc ** (-12) * D ** (Na - 1) * prod ** (-6)
    diff, tol = _compare(lhs, rhs, precision)
    return _report("theta-a", {"d_K": F.d_K, "alphas": [list(a) for a in alphas]}, lhs, rhs,
                   diff, tol, precision, t0,
                   torsion_counts={str(a): len(a_torsion(F, a)) for a in alphas})


def verify_legendre(L: LatticeBasis, precision: int = 256, guard: int = DEFAULT_GUARD,
                    slack: int = 32) -> VerificationReport:
    """``eta(omega2) omega1 - eta(omega1) omega2 = 2 pi i`` for an oriented basis."""
    t0 = time.perf_counter()
    from .lattice import quasi_period

    e1 = quasi_period(L, L.omega1, precision, guard)
    e2 = quasi_period(L, L.omega2, precision, guard)
    with mpmath.workprec(precision + guard):
        lhs = {"legendre": e2 * L.omega1 - e1 * L.omega2}
        rhs = {"legendre": 2j * mpmath.pi}
    diff, tol = _compare(lhs, rhs, precision, slack)
    return _report("legendre", {"tau": mpmath.nstr(L.tau, 20)}, lhs, rhs, diff, tol,
                   precision, t0)
