# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementations of the hot kernels (see _kernels_py for the
reference semantics; tests assert both backends agree)."""

import numpy as np

cimport numpy as cnp
from libc.math cimport sqrt

cnp.import_array()

BACKEND_NAME = "ext"

ctypedef unsigned long long u64
ctypedef long long i64

cdef extern from *:
    ctypedef unsigned long long u128 "unsigned __int128"


cdef inline u64 mulmod(u64 a, u64 b, u64 m) nogil:
    return <u64>((<u128>a * b) % m)


cdef inline u64 powmod(u64 base, u64 exp, u64 m) nogil:
    cdef u64 result = 1 % m
    base %= m
    while exp:
        if exp & 1:
            result = mulmod(result, base, m)
        base = mulmod(base, base, m)
        exp >>= 1
    return result


cdef cnp.ndarray _base_primes(u64 limit):
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] flags
    cdef u64 i, j, n
    n = limit if limit >= 2 else 2
    flags = np.ones(n + 1, dtype=np.uint8)
    flags[0] = flags[1] = 0
    i = 2
    while i * i <= n:
        if flags[i]:
            j = i * i
            while j <= n:
                flags[j] = 0
                j += i
        i += 1
    return np.flatnonzero(flags).astype(np.int64)


def sieve_range(lo, hi):
    """Primes in [lo, hi) as an int64 array."""
    cdef i64 lo_ = max(<i64>lo, 2)
    cdef i64 hi_ = <i64>hi
    if hi_ <= lo_:
        return np.empty(0, dtype=np.int64)
    cdef i64 span = hi_ - lo_
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] flags = np.ones(span, dtype=np.uint8)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] base = _base_primes(<u64>(np.intp(np.sqrt(hi_ - 1)) + 1))
    cdef i64 p, start, j
    cdef Py_ssize_t bi
    with nogil:
        for bi in range(base.shape[0]):
            p = base[bi]
            if p * p >= hi_:
                break
            start = p * p
            if start < lo_:
                start = ((lo_ + p - 1) // p) * p
            j = start - lo_
            while j < span:
                flags[j] = 0
                j += p
    return np.flatnonzero(flags).astype(np.int64) + lo_


def legendre_table(p):
    """int8 array of (a|p) for 0 <= a < p, p an odd prime."""
    cdef i64 p_ = <i64>p
    cdef cnp.ndarray[cnp.int8_t, ndim=1] t = np.full(p_, -1, dtype=np.int8)
    cdef i64 a
    with nogil:
        for a in range(p_):
            t[<u64>((<u128>a * a) % p_)] = 1
        t[0] = 0
    return t


def char_sum_coeffs(coeffs, p):
    """Sum of (f(a)|p) by Horner evaluation against the symbol table."""
    cdef i64 p_ = <i64>p
    cdef cnp.ndarray[cnp.int64_t, ndim=1] co = np.array(
        [c % p_ for c in coeffs], dtype=np.int64)
    cdef cnp.ndarray[cnp.int8_t, ndim=1] t = legendre_table(p_)
    cdef i64 a, acc, total = 0
    cdef Py_ssize_t i, d = co.shape[0]
    with nogil:
        for a in range(p_):
            acc = 0
            for i in range(d - 1, -1, -1):
                acc = <i64>((<u128>acc * a + co[i]) % p_)
            total += t[acc]
    return int(total)


def sign_pattern_counts(p, offsets):
    """Counts of n mod p per sign pattern; bit i of the index = +1 at h_i."""
    cdef i64 p_ = <i64>p
    cdef cnp.ndarray[cnp.int8_t, ndim=1] t = legendre_table(p_)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] offs = np.array(
        [h % p_ for h in offsets], dtype=np.int64)
    cdef Py_ssize_t k = offs.shape[0]
    cdef cnp.ndarray[cnp.int64_t, ndim=1] counts = np.zeros(1 << k, dtype=np.int64)
    cdef i64 n, idx
    cdef Py_ssize_t i
    cdef int code, bad
    cdef cnp.int8_t v
    with nogil:
        for n in range(p_):
            code = 0
            bad = 0
            for i in range(k):
                idx = n + offs[i]
                if idx >= p_:
                    idx -= p_
                v = t[idx]
                if v == 0:
                    bad = 1
                    break
                if v > 0:
                    code |= 1 << i
            if not bad:
                counts[code] += 1
    return counts


def quadratic_class_sums(p):
    """S[e] = sum over a of ((a^2 + e)|p) for all e."""
    cdef i64 p_ = <i64>p
    cdef cnp.ndarray[cnp.int8_t, ndim=1] t = legendre_table(p_)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] cnt = np.zeros(p_, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] out = np.zeros(p_, dtype=np.int64)
    cdef i64 a, e, x, s
    with nogil:
        for a in range(p_):
            cnt[<u64>((<u128>a * a) % p_)] += 1
        for e in range(p_):
            s = 0
            for x in range(p_):
                a = x + e
                if a >= p_:
                    a -= p_
                s += cnt[x] * t[a]
            out[e] = s
    return out


def cubic_class_sums(p, u0):
    """S[w] = sum over a of ((a^3 + u0*a + w)|p) for all w."""
    cdef i64 p_ = <i64>p
    cdef i64 u = <i64>(u0 % p_)
    cdef cnp.ndarray[cnp.int8_t, ndim=1] t = legendre_table(p_)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] cnt = np.zeros(p_, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] out = np.zeros(p_, dtype=np.int64)
    cdef i64 a, w, x, s, v
    with nogil:
        for a in range(p_):
            v = <i64>((<u128>a * a % p_) * a % p_)
            v = <i64>((<u128>u * a + v) % p_)
            cnt[v] += 1
        for w in range(p_):
            s = 0
            for x in range(p_):
                a = x + w
                if a >= p_:
                    a -= p_
                s += cnt[x] * t[a]
            out[w] = s
    return out


cdef int _distinct_factors(u64 n, cnp.int64_t[:] base, Py_ssize_t nbase,
                           u64 *out) nogil:
    """Ascending distinct prime factors of n by complete trial division."""
    cdef int count = 0
    cdef u64 q
    cdef Py_ssize_t i
    for i in range(nbase):
        q = <u64>base[i]
        if q * q > n:
            break
        if n % q == 0:
            out[count] = q
            count += 1
            while n % q == 0:
                n //= q
    if n > 1:
        out[count] = n
        count += 1
    return count


def classify_window(g, lo, hi):
    """(primes, status, q) arrays for the window; see _kernels_py for codes."""
    cdef cnp.ndarray[cnp.int64_t, ndim=1] primes = sieve_range(lo, hi)
    cdef Py_ssize_t n = primes.shape[0]
    cdef cnp.ndarray[cnp.int8_t, ndim=1] status = np.empty(n, dtype=np.int8)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] qs = np.zeros(n, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] base = _base_primes(
        <u64>(np.intp(np.sqrt(max(hi - 1, 2))) + 1))
    cdef cnp.int64_t[:] base_view = base
    cdef i64 g_ = <i64>g
    cdef Py_ssize_t i, nbase = base.shape[0]
    cdef u64 p, a, facs[64]
    cdef int nf, j, st
    with nogil:
        for i in range(n):
            p = <u64>primes[i]
            a = <u64>(((g_ % <i64>p) + <i64>p) % <i64>p)
            if a == 0:
                status[i] = 0
                continue
            nf = _distinct_factors(p - 1, base_view, nbase, facs)
            st = 1
            for j in range(nf):
                if powmod(a, (p - 1) // facs[j], p) == 1:
                    st = 2
                    qs[i] = <i64>facs[j]
                    break
            status[i] = st
    return primes, status, qs


def pq0_count_window(g, q, lo, hi):
    """Count primes p in the window with p = 1 mod q and g^((p-1)/q) = 1."""
    cdef cnp.ndarray[cnp.int64_t, ndim=1] primes = sieve_range(lo, hi)
    cdef Py_ssize_t i, n = primes.shape[0]
    cdef i64 g_ = <i64>g
    cdef u64 p, a, q_ = <u64>q
    cdef i64 count = 0
    with nogil:
        for i in range(n):
            p = <u64>primes[i]
            if (p - 1) % q_ != 0:
                continue
            a = <u64>(((g_ % <i64>p) + <i64>p) % <i64>p)
            if a != 0 and powmod(a, (p - 1) // q_, p) == 1:
                count += 1
    return int(count)


def order_leq_count_window(g, cap, lo, hi):
    """Count primes p in the window, p not dividing g, with ord_p(g) <= cap."""
    cdef cnp.ndarray[cnp.int64_t, ndim=1] primes = sieve_range(lo, hi)
    cdef Py_ssize_t i, n = primes.shape[0]
    cdef i64 g_ = <i64>g
    cdef u64 p, a, x, l, cap_ = <u64>cap
    cdef i64 count = 0
    with nogil:
        for i in range(n):
            p = <u64>primes[i]
            a = <u64>(((g_ % <i64>p) + <i64>p) % <i64>p)
            if a == 0:
                continue
            x = 1
            l = 0
            while l < cap_ and l < p - 1:
                l += 1
                x = mulmod(x, a, p)
                if x == 1:
                    count += 1
                    break
    return int(count)
