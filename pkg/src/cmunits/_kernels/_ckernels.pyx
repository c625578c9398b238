# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled integer kernels; same contracts as ``_pyfallback``."""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t

cnp.import_array()


cdef inline int64_t _mod(int64_t a, int64_t p) nogil:
    cdef int64_t r = a % p
    return r + p if r < 0 else r


cdef int64_t _powmod(int64_t a, int64_t e, int64_t m) nogil:
    cdef int64_t r = 1
    a = _mod(a, m)
    while e > 0:
        if e & 1:
            r = r * a % m
        a = a * a % m
        e >>= 1
    return r


cdef cnp.ndarray[int64_t, ndim=1] _bern(int64_t p, int64_t kmax):
    cdef cnp.ndarray[int64_t, ndim=1] B = np.zeros(kmax + 1, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=1] inv = np.zeros(p, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=1] row = np.zeros(kmax + 2, dtype=np.int64)
    cdef int64_t n, k, s, prev, cur
    inv[1] = 1
    for n in range(2, p):
        inv[n] = _mod(-(p // n) * inv[p % n], p)
    B[0] = 1
    row[0] = 1
    row[1] = 1
    for n in range(1, kmax + 1):
        # in-place Pascal step: row becomes C(n+1, .)
        row[n + 1] = 1
        prev = row[0]
        for k in range(1, n + 1):
            cur = row[k]
            row[k] = (prev + cur) % p
            prev = cur
        if n >= 3 and (n & 1):
            continue
        s = 0
        for k in range(n):
            if B[k]:
                s = (s + row[k] * B[k]) % p
        B[n] = _mod(-s * inv[n + 1], p)
    return B


def bernoulli_mod_p(int64_t p, int64_t kmax=-1):
    if kmax < 0:
        kmax = p - 2
    if kmax > p - 2:
        raise ValueError("kmax must be <= p - 2 so that B_k is p-integral")
    if p > 3037000499:
        raise OverflowError("p too large for 64-bit kernel")
    return [int(x) for x in _bern(p, kmax)]


def gen_bernoulli_mod_p(int64_t p, int64_t f, chi, int64_t mmax):
    if f % p == 0:
        raise ValueError("p must not divide the conductor")
    cdef cnp.ndarray[int64_t, ndim=1] B = _bern(p, mmax)
    cdef cnp.ndarray[int64_t, ndim=1] T = np.zeros(mmax + 1, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=1] fpow = np.zeros(mmax + 1, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=1] row = np.zeros(mmax + 1, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=1] out = np.zeros(mmax + 1, dtype=np.int64)
    cdef int64_t a, j, v, x, m, k, s, prev, cur
    for a in range(1, f + 1):
        v = chi[a % f]
        if v:
            x = 1
            for j in range(mmax + 1):
                T[j] = _mod(T[j] + v * x, p)
                x = x * (a % p) % p
    fpow[0] = _powmod(f, p - 2, p)
    for k in range(1, mmax + 1):
        fpow[k] = fpow[k - 1] * (f % p) % p
    row[0] = 1
    for m in range(1, mmax + 1):
        row[m] = 1
        prev = row[0]
        for k in range(1, m):
            cur = row[k]
            row[k] = (prev + cur) % p
            prev = cur
        s = 0
        for k in range(m + 1):
            if B[k]:
                s = (s + row[k] * B[k] % p * fpow[k] % p * T[m - k]) % p
        out[m] = s
    return [int(x) for x in out]


def nu_class_sums(int64_t d, int64_t p, int64_t pn, chi_N):
    cdef int64_t N = d * pn
    cdef cnp.ndarray[int64_t, ndim=1] chi = np.asarray(chi_N, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=1] F = np.zeros(pn, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=1] G = np.zeros(pn, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=2] out = np.zeros((pn, N), dtype=np.int64)
    cdef int64_t r, k, a, t, fs, gs, b, binv, xb, c
    for r in range(pn):
        fs = 0
        gs = 0
        for k in range(d):
            a = r + k * pn
            t = 2 * a - N
            fs += chi[a] * t
            gs += t
        F[r] = fs
        G[r] = gs
    for b in range(N):
        if b % p == 0:
            continue
        binv = _powmod(b, pn - pn // p - 1, pn)
        xb = chi[b]
        for c in range(pn):
            if c % p == 0:
                continue
            r = c * binv % pn
            out[c, b] = F[r] + xb * G[r]
    return out
