"""p-adic bookkeeping: Kubota-Leopoldt values at negative integers, the
factorization scalars, and the class-number criterion with prime scans.

All p-adic quantities in scope are rational, so they are carried as exact
:class:`~fractions.Fraction` values together with their valuations.

Criterion ranges (per prime ``p``): ``B_{1,chi_K}``; ``B_m`` for even
``2 <= m <= p - 3``; ``B_{m,chi_K}`` for odd ``3 <= m <= p - 2``.  A
single range ``m = 2, ..., p - 2`` for both families would not respect
parity, so :data:`RANGE_NOTE` states the ranges in every report.
"""
from __future__ import annotations

import math
import threading
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from . import _kernels
from .exact import (
    bernoulli_number,
    bernoulli_numbers,
    gen_bernoulli_table,
    is_prime,
    padic_valuation,
    primes_between,
)
from .fields import DirichletChar, QuadField, get_field, is_split

__all__ = [
    "LpValue",
    "FactorizationScalar",
    "CriterionEntry",
    "CriterionVerdict",
    "lp_at_negative",
    "factorization_scalar",
    "family_reads",
    "reset_family_reads",
    "exceptional_case",
    "criterion_check",
    "scan_primes",
    "irregular_indices",
    "paper_claims",
    "PAPER_CLAIMS",
    "RANGE_NOTE",
    "EXACT_LIMIT",
]

RANGE_NOTE = (
    "checked: B_{1,chi_K}; B_m for even m in [2, p-3]; B_{m,chi_K} for odd m in [3, p-2]. "
    "B_m vanishes for odd m > 1 and B_{m,chi_K} vanishes for even m, "
    "so each family is scanned only at the parity where it can be nonzero."
)

EXACT_LIMIT = 128
SCAN_LIMIT = 10_000


def _field(field) -> QuadField:
    return field if isinstance(field, QuadField) else get_field(int(field))


# --------------------------------------------------------------------------
# L-values and factorization scalars

@dataclass(frozen=True)
class LpValue:
    m: int
    chi: DirichletChar
    p: int
    value: Fraction
    euler_removed: bool

    @property
    def valuation(self):
        return padic_valuation(self.value, self.p)


@lru_cache(maxsize=64)
def _gen_table(conductor: int, values: tuple, mmax: int) -> Tuple[Fraction, ...]:
    return tuple(gen_bernoulli_table(mmax, DirichletChar(conductor, values)))


def _gen_bernoulli(m: int, chi: DirichletChar) -> Fraction:
    top = max(16, 1 << (m - 1).bit_length())
    return _gen_table(chi.conductor, chi.values, top)[m]


def lp_at_negative(m: int, chi: DirichletChar, p: int, euler_removed: bool = False) -> LpValue:
    """``L_p(1 - m, chi omega^m) = -(1 - chi(p) p^(m-1)) B_{m,chi} / m``.

    With ``euler_removed`` the Euler factor is dropped and the value is
    ``-B_{m,chi} / m``.
    """
    if m < 1:
        raise ValueError("m must be positive")
    if not chi.is_quadratic_or_trivial:
        raise ValueError("only quadratic or trivial characters")
    if chi.conductor % p == 0:
        raise ValueError("p must not divide the conductor")
    b = _gen_bernoulli(m, chi)
    val = -b / m
    if not euler_removed:
        val *= 1 - chi(p) * Fraction(p) ** (m - 1)
    return LpValue(m, chi, p, val, euler_removed)


_READS: Counter = Counter()
_READS_LOCK = threading.Lock()


def _read(family: str, m: int) -> None:
    with _READS_LOCK:
        _READS[(family, "even" if m % 2 == 0 else "odd")] += 1


def family_reads() -> Dict[Tuple[str, str], int]:
    """Counts of Bernoulli-family reads by (family, parity of m)."""
    with _READS_LOCK:
        return dict(_READS)


def reset_family_reads() -> None:
    with _READS_LOCK:
        _READS.clear()


@dataclass(frozen=True)
class FactorizationScalar:
    coefficient: Fraction
    euler_ratio: Fraction
    parity: str
    family: str
    family_value: Fraction

    def scalar(self) -> Fraction:
        return self.coefficient * self.euler_ratio


def factorization_scalar(field, p: int, m: int, require_split: bool = True) -> FactorizationScalar:
    """``A_m = -6 w_K B_m / m`` (even ``m``) or ``-3 w_K B_{m,chi_K} / m`` (odd ``m``),
    with the Euler ratio ``(1 - p^(2m-2)) / (1 - p^(m-1)) = 1 + p^(m-1)``."""
    F = _field(field)
    if m < 2:
        raise ValueError("m must be >= 2")
    if require_split and not is_split(F, p):
        raise ValueError(f"{p} is not split in {F.name}")
    if m % 2 == 0:
        _read("B_m", m)
        val = bernoulli_number(m)
        coeff = -6 * F.w_K * val / m
        parity, family = "even", "B_m"
    else:
        _read("B_m_chi", m)
        val = _gen_bernoulli(m, F.chi_K)
        coeff = -3 * F.w_K * val / m
        parity, family = "odd", "B_m_chi"
    ratio = Fraction(1 - p ** (2 * m - 2), 1 - p ** (m - 1))
    return FactorizationScalar(coeff, ratio, parity, family, val)


def exceptional_case(field, p: int, m: int) -> Dict[str, object]:
    """Valuation bookkeeping for ``m = 0`` and ``m = 1 mod p - 1``.

    * ``m = m' p^n (p - 1)``: ``v_p(A_m (1 + p^(m-1))) = -(n + 1)`` predicted
      by von Staudt-Clausen.
    * ``m = 1 mod p - 1``: ``p | B_{m,chi_K} / m`` predicted.
    """
    F = _field(field)
    if m % (p - 1) == 0:
        n = 0
        mm = m // (p - 1)
        while mm % p == 0:
            mm //= p
            n += 1
        fs = factorization_scalar(F, p, m, require_split=False)
        v = padic_valuation(fs.scalar(), p)
        return {"case": "m = 0 mod p-1", "m": m, "p": p, "n": n,
                "predicted": -(n + 1), "computed": v, "agree": v == -(n + 1)}
    if m % (p - 1) == 1:
        val = _gen_bernoulli(m, F.chi_K) / m
        v = padic_valuation(val, p)
        return {"case": "m = 1 mod p-1", "m": m, "p": p,
                "predicted": ">= 1", "computed": v, "agree": v >= 1}
    raise ValueError("m is not an exceptional index for p")


# --------------------------------------------------------------------------
# criterion

@dataclass(frozen=True)
class CriterionEntry:
    m: int
    family: str  # "B_m" or "B_m_chi"
    valuation: object  # int, or math.inf for a zero value
    exact: bool  # False: only "0" vs ">= 1" is known (mod-p method)

    def divisible(self) -> bool:
        return self.valuation != 0


@dataclass
class CriterionVerdict:
    d_K: int
    p: int
    split_status: str  # "split" | "inert" | "ramified"
    table: List[CriterionEntry]
    verdict: bool
    witnesses: List[Tuple[int, str]]
    method: str
    note: str = RANGE_NOTE

    @property
    def is_split(self) -> bool:
        return self.split_status == "split"

    def failing_families(self) -> List[str]:
        return sorted({f for _, f in self.witnesses})

    def to_dict(self) -> Dict[str, object]:
        d = asdict(self)
        d["table"] = [
            {"m": e.m, "family": e.family,
             "valuation": ("inf" if e.valuation == math.inf else e.valuation), "exact": e.exact}
            for e in self.table
        ]
        d["witnesses"] = [{"m": m, "family": f} for m, f in self.witnesses]
        return d


def _split_status(F: QuadField, p: int) -> str:
    if F.d_K % p == 0:
        return "ramified"
    return "split" if F.chi(p) == 1 else "inert"


def _indices(p: int) -> List[Tuple[int, str]]:
    idx = [(1, "B_m_chi")]
    for m in range(2, p - 1):
        if m % 2 == 0 and m <= p - 3:
            idx.append((m, "B_m"))
        elif m % 2 == 1 and m <= p - 2:
            idx.append((m, "B_m_chi"))
    return sorted(idx)


def criterion_check(field, p: int, method: str = "auto") -> CriterionVerdict:
    """Evaluate the ``p``-divisibility table for ``(K, p)``.

    ``method`` is ``exact`` (rational arithmetic, full valuations), ``modp``
    (residues mod ``p`` from the integer kernels) or ``auto`` (exact for
    ``p <= EXACT_LIMIT`` or ramified ``p``).
    """
    F = _field(field)
    if p < 5 or not is_prime(p):
        raise ValueError(f"p must be a prime >= 5, got {p}")
    status = _split_status(F, p)
    if method == "auto":
        method = "exact" if (p <= EXACT_LIMIT or status == "ramified") else "modp"
    if method not in ("exact", "modp"):
        raise ValueError(f"unknown method {method!r}")
    if method == "modp" and status == "ramified":
        raise ValueError("the mod-p method needs p prime to d_K")
    idx = _indices(p)
    table: List[CriterionEntry] = []
    if method == "exact":
        B = bernoulli_numbers(p)
        G = _gen_table(F.chi_K.conductor, F.chi_K.values, max(16, 1 << (p - 1).bit_length()))
        for m, fam in idx:
            val = B[m] if fam == "B_m" else G[m]
            table.append(CriterionEntry(m, fam, padic_valuation(val, p), True))
    else:
        Bp = _kernels.bernoulli_mod_p(p, p - 2)
        Gp = _kernels.gen_bernoulli_mod_p(p, F.d_K, list(F.chi_K.values), p - 2)
        for m, fam in idx:
            r = Bp[m] if fam == "B_m" else Gp[m]
            table.append(CriterionEntry(m, fam, 0 if r % p else 1, False))
    witnesses = [(e.m, e.family) for e in table if e.divisible()]
    return CriterionVerdict(F.d_K, p, status, table, not witnesses, witnesses, method)


def _check_job(args):
    d, p, method = args
    return criterion_check(d, p, method)


def scan_primes(field, p_max: int, jobs: int = 1, method: str = "auto") -> List[CriterionVerdict]:
    """Verdicts for every prime ``5 <= p <= p_max`` (split status computed,
    never filtered), ordered by ``p``."""
    F = _field(field)
    if p_max > SCAN_LIMIT:
        raise ValueError(f"p_max must be <= {SCAN_LIMIT}")
    primes = primes_between(5, p_max)
    tasks = [(F.d_K, p, method) for p in primes]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(_check_job, tasks))
    return [_check_job(t) for t in tasks]


def irregular_indices(p: int, m_max: Optional[int] = None) -> Dict[int, int]:
    """``{m: v_p(B_m)}`` for even ``2 <= m <= m_max`` (default ``p - 3``)
    with ``v_p(B_m) > 0``.  Empty iff ``p`` is regular (for the default range)."""
    m_max = p - 3 if m_max is None else m_max
    B = bernoulli_numbers(m_max)
    out = {}
    for m in range(2, m_max + 1, 2):
        v = padic_valuation(B[m], p)
        if v != 0:
            out[m] = v
    return out


# --------------------------------------------------------------------------
# published claims

# Each claim: (id, d_K, kind, payload).  kind:
#   pass_list:   primes <= bound claimed to pass (payload = (bound, primes))
#   fail:        (p, m, family) claimed witness
#   first_fail_regular: (p,) claimed first regular split prime with verdict false
PAPER_CLAIMS: List[Tuple[str, int, str, tuple]] = [
    ("QI.pass_list", 4, "pass_list", (70, (5, 13, 17, 29, 41, 53))),
    ("QI.37.irregular", 4, "fail", (37, None, "B_m")),
    ("QI.61.B7chi", 4, "fail", (61, 7, "B_m_chi")),
    ("QI.61.first_regular_fail", 4, "first_fail_regular", (61,)),
    ("Q3.103.first_regular_fail", 3, "first_fail_regular", (103,)),
    ("Q2.pass_list", 8, "pass_list", (47, (7, 17, 31, 41, 47))),
    ("Q2.23.B11chi", 8, "fail", (23, 11, "B_m_chi")),
]


def paper_claims(field, verdicts: Sequence[CriterionVerdict]) -> List[Dict[str, object]]:
    """Compare scan results with the published lists for ``field``.

    Also flags every listed prime whose computed split status is not
    ``split`` and reports regularity of primes named as regular.
    """
    F = _field(field)
    by_p = {v.p: v for v in verdicts}
    out: List[Dict[str, object]] = []
    for cid, d, kind, payload in PAPER_CLAIMS:
        if d != F.d_K:
            continue
        if kind == "pass_list":
            bound, primes = payload
            if not by_p or max(by_p) < primes_between(2, bound)[-1]:
                continue
            computed = sorted(p for p, v in by_p.items() if p <= bound and v.is_split and v.verdict)
            out.append({"id": cid, "expected": list(primes), "computed": computed,
                        "agree": computed == list(primes)})
            for p in primes:
                v = by_p.get(p)
                if v is not None and not v.is_split:
                    out.append({"id": f"{cid}.{p}.split_status", "expected": "split",
                                "computed": v.split_status, "agree": False})
                if v is not None and not v.verdict:
                    out.append({"id": f"{cid}.{p}.verdict", "expected": True,
                                "computed": False, "agree": False})
        elif kind == "fail":
            p, m, fam = payload
            v = by_p.get(p)
            if v is None:
                continue
            if m is None:
                hit = [w for w in v.witnesses if w[1] == fam]
            else:
                hit = [w for w in v.witnesses if w == (m, fam)]
            out.append({"id": cid, "expected": {"p": p, "m": m, "family": fam, "verdict": False},
                        "computed": {"verdict": v.verdict, "witnesses": [list(w) for w in v.witnesses],
                                     "split_status": v.split_status},
                        "agree": bool(hit) and not v.verdict})
        elif kind == "first_fail_regular":
            (p,) = payload
            if p not in by_p:
                continue
            irr = irregular_indices(p)
            first = None
            for q in sorted(by_p):
                v = by_p[q]
                if v.is_split and not v.verdict and not irregular_indices(q):
                    first = q
                    break
            out.append({"id": cid,
                        "expected": {"p": p, "regular": True, "first_regular_split_failure": p},
                        "computed": {"regular": not irr,
                                     "irregular_pairs": {str(k): w for k, w in irr.items()},
                                     "verdict": by_p[p].verdict,
                                     "split_status": by_p[p].split_status,
                                     "first_regular_split_failure": first},
                        "agree": (not irr) and first == p})
    return out
