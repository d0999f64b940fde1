"""Pure-python (numpy) implementations of the hot kernels.

This is the fallback backend selected when the compiled extension
``artinlab._kernels`` is unavailable.  Both backends expose the same
functions with identical semantics; ``tests/test_backends.py`` checks the
agreement and ``benchmarks/bench_backends.py`` compares their speed.

Classification statuses (shared with the compiled backend):
    0  the prime divides g
    1  g is a primitive root mod p
    2  g is a q-th power residue with p = 1 mod q (q reported separately)
"""

from __future__ import annotations

import math

import numpy as np

BACKEND_NAME = "py"

_SMALL_PRIME_CACHE: list[int] = []


def _base_primes(limit: int) -> list[int]:
    """Primes <= limit, cached monotonically."""
    global _SMALL_PRIME_CACHE
    if not _SMALL_PRIME_CACHE or _SMALL_PRIME_CACHE[-1] < limit:
        n = max(limit, 1 << 10)
        flags = np.ones(n + 1, dtype=bool)
        flags[:2] = False
        for p in range(2, math.isqrt(n) + 1):
            if flags[p]:
                flags[p * p :: p] = False
        _SMALL_PRIME_CACHE = np.flatnonzero(flags).tolist()
    if _SMALL_PRIME_CACHE[-1] <= limit:
        return _SMALL_PRIME_CACHE
    import bisect

    return _SMALL_PRIME_CACHE[: bisect.bisect_right(_SMALL_PRIME_CACHE, limit)]


def sieve_range(lo: int, hi: int) -> np.ndarray:
    """Primes in [lo, hi) as an int64 array; memory is O(hi - lo)."""
    lo = max(lo, 2)
    if hi <= lo:
        return np.empty(0, dtype=np.int64)
    flags = np.ones(hi - lo, dtype=bool)
    for p in _base_primes(math.isqrt(hi - 1)):
        start = max(p * p, ((lo + p - 1) // p) * p)
        if start < hi:
            flags[start - lo :: p] = False
    return np.flatnonzero(flags).astype(np.int64) + lo


def legendre_table(p: int) -> np.ndarray:
    """int8 array t with t[a] = (a|p) for 0 <= a < p; p an odd prime."""
    t = np.full(p, -1, dtype=np.int8)
    a = np.arange(p, dtype=np.int64)
    t[(a * a) % p] = 1
    t[0] = 0
    return t


def char_sum_coeffs(coeffs, p: int) -> int:
    """Sum of (f(a)|p) over a mod p, f given by ascending coefficients."""
    a = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    for c in reversed(list(coeffs)):
        acc = (acc * a + int(c) % p) % p
    return int(legendre_table(p)[acc].sum())


def sign_pattern_counts(p: int, offsets) -> np.ndarray:
    """Counts of n mod p realizing each sign pattern on (n+h_i | p).

    Entry at index ``code`` counts the n whose symbol vector has
    (n+h_i|p) = +1 exactly on the bits set in ``code``.  Points where some
    n+h_i = 0 mod p are excluded, so the counts total p minus the number
    of distinct -h_i classes.
    """
    t = legendre_table(p)
    k = len(offsets)
    code = np.zeros(p, dtype=np.int64)
    ok = np.ones(p, dtype=bool)
    for i, h in enumerate(offsets):
        v = np.roll(t, -(int(h) % p))
        ok &= v != 0
        code |= (v > 0).astype(np.int64) << i
    return np.bincount(code[ok], minlength=1 << k).astype(np.int64)


def _correlate_with_table(counts: np.ndarray, t: np.ndarray, p: int) -> np.ndarray:
    # S[w] = sum_x counts[x] * t[(x + w) mod p], exact in float64 (values << 2^53)
    t2 = np.concatenate([t, t]).astype(np.float64)
    windows = np.lib.stride_tricks.sliding_window_view(t2, p)[:p]
    return np.rint(windows @ counts.astype(np.float64)).astype(np.int64)


def quadratic_class_sums(p: int) -> np.ndarray:
    """S[e] = sum over a mod p of ((a^2 + e)|p), for every e in [0, p)."""
    a = np.arange(p, dtype=np.int64)
    counts = np.bincount((a * a) % p, minlength=p)
    return _correlate_with_table(counts, legendre_table(p), p)


def cubic_class_sums(p: int, u0: int) -> np.ndarray:
    """S[w] = sum over a mod p of ((a^3 + u0*a + w)|p), for every w in [0, p)."""
    a = np.arange(p, dtype=np.int64)
    vals = ((a * a) % p * a + (u0 % p) * a) % p
    counts = np.bincount(vals, minlength=p)
    return _correlate_with_table(counts, legendre_table(p), p)


def _distinct_prime_factors(n: int, base: list[int]) -> list[int]:
    """Ascending distinct prime factors of n by trial division (complete)."""
    out = []
    for q in base:
        if q * q > n:
            break
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
    if n > 1:
        out.append(n)
    return out


def classify_window(g: int, lo: int, hi: int):
    """Per-prime classification over [lo, hi).

    Returns (primes, status, q) arrays; q is 0 except where status == 2,
    in which case it is the least prime q with p = 1 mod q and
    g^((p-1)/q) = 1 mod p.
    """
    primes = sieve_range(lo, hi)
    n = len(primes)
    status = np.empty(n, dtype=np.int8)
    qs = np.zeros(n, dtype=np.int64)
    base = _base_primes(math.isqrt(max(hi - 1, 2)))
    for idx, p in enumerate(primes.tolist()):
        a = g % p
        if a == 0:
            status[idx] = 0
            continue
        st = 1
        for q in _distinct_prime_factors(p - 1, base):
            if pow(a, (p - 1) // q, p) == 1:
                st = 2
                qs[idx] = q
                break
        status[idx] = st
    return primes, status, qs


def pq0_count_window(g: int, q: int, lo: int, hi: int) -> int:
    """Count primes p in [lo, hi) with p = 1 mod q and g^((p-1)/q) = 1 mod p."""
    count = 0
    for p in sieve_range(lo, hi).tolist():
        if (p - 1) % q == 0:
            a = g % p
            if a != 0 and pow(a, (p - 1) // q, p) == 1:
                count += 1
    return count


def order_leq_count_window(g: int, cap: int, lo: int, hi: int) -> int:
    """Count primes p in [lo, hi) not dividing g whose order of g is <= cap."""
    count = 0
    for p in sieve_range(lo, hi).tolist():
        a = g % p
        if a == 0:
            continue
        x = 1
        for _ in range(min(cap, p - 1)):
            x = x * a % p
            if x == 1:
                count += 1
                break
    return count
