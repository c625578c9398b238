"""Pure-Python versions of the integer kernels.

Each function has the same signature and return type as its compiled twin in
``_ckernels.pyx``; the test suite runs both and compares.
"""
from __future__ import annotations

from typing import List, Sequence

import numpy as np


def bernoulli_mod_p(p: int, kmax: int = -1) -> List[int]:
    """``[B_0, ..., B_kmax] mod p`` with ``kmax <= p - 2`` (default ``p - 2``)."""
    if kmax < 0:
        kmax = p - 2
    if kmax > p - 2:
        raise ValueError("kmax must be <= p - 2 so that B_k is p-integral")
    inv = [0, 1] + [0] * (p - 2)
    for i in range(2, p):
        inv[i] = (p - (p // i) * inv[p % i] % p) % p
    B = [0] * (kmax + 1)
    B[0] = 1
    row = [1, 1]  # C(n+1, .) mod p, updated incrementally
    for n in range(1, kmax + 1):
        # row <- C(n+1, .)
        new = [1] * (n + 2)
        for k in range(1, n + 1):
            new[k] = (row[k - 1] + row[k]) % p
        row = new
        if n >= 3 and n & 1:
            continue
        s = 0
        for k in range(n):
            bk = B[k]
            if bk:
                s += row[k] * bk
        B[n] = (-(s % p) * inv[n + 1]) % p
    return B


def gen_bernoulli_mod_p(p: int, f: int, chi: Sequence[int], mmax: int) -> List[int]:
    """``[B_{m,chi} mod p for m = 0..mmax]`` (entry 0 unused, set to 0).

    ``chi`` lists the character values on ``0..f-1``; ``p`` must not divide
    ``f`` and ``mmax <= p - 2``.
    """
    if f % p == 0:
        raise ValueError("p must not divide the conductor")
    B = bernoulli_mod_p(p, mmax)
    T = [0] * (mmax + 1)
    for a in range(1, f + 1):
        v = chi[a % f]
        if v:
            x = 1
            for j in range(mmax + 1):
                T[j] += v * x
                x = x * a % p
    T = [t % p for t in T]
    finv = pow(f, p - 2, p)
    fpow = [finv]  # f^(k-1)
    for _ in range(mmax):
        fpow.append(fpow[-1] * f % p)
    out = [0] * (mmax + 1)
    row = [1]
    for m in range(1, mmax + 1):
        new = [1] * (m + 1)
        for k in range(1, m):
            new[k] = (row[k - 1] + row[k]) % p
        row = new
        s = 0
        for k in range(m + 1):
            if B[k]:
                s += row[k] * B[k] % p * fpow[k] % p * T[m - k]
        out[m] = s % p
    return out


def nu_class_sums(d: int, p: int, pn: int, chi_N: Sequence[int]) -> np.ndarray:
    """Integer sums ``S[c, b]`` with ``nu(c, b) = -6 S / d``.

    ``S = sum over a mod N, a*b = c mod pn of (chi(a) + chi(b)) (2a - N)``
    where ``N = d * pn``; rows with ``p | c`` and columns with ``p | b`` are 0.
    """
    N = d * pn
    F = [0] * pn
    G = [0] * pn
    for r in range(pn):
        fs = gs = 0
        for k in range(d):
            a = r + k * pn
            t = 2 * a - N
            fs += chi_N[a] * t
            gs += t
        F[r] = fs
        G[r] = gs
    out = np.zeros((pn, N), dtype=np.int64)
    for b in range(N):
        if b % p == 0:
            continue
        binv = pow(b, -1, pn)
        xb = chi_N[b]
        for c in range(pn):
            if c % p == 0:
                continue
            r = c * binv % pn
            out[c, b] = F[r] + xb * G[r]
    return out
