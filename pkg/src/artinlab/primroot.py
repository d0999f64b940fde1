"""Primitive-root censuses: classification, enumeration, gaps, and runs.

A prime p not dividing g either has g as a primitive root or g is a q-th
power residue for some prime q dividing p - 1; classification reports the
least such q.  Convention at the trivial prime: g is deemed a primitive
root mod 2 iff g is odd (the unit group is trivial), which falls straight
out of the "no prime divides p - 1 = 1" rule.

Censuses run over windows so memory stays O(window); disjoint windows may
be processed concurrently and merged in ascending order.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ._backend import kernels
from .arith import factorize, is_prime, mod_pow
from .errors import InsufficientDataError

DEFAULT_WINDOW = 1 << 20

STATUS_DIVIDES_G = "divides_g"
STATUS_PRIMITIVE_ROOT = "primitive_root"
STATUS_IN_PQ = "in_pq"

_STATUS_BY_CODE = {0: STATUS_DIVIDES_G, 1: STATUS_PRIMITIVE_ROOT, 2: STATUS_IN_PQ}


@dataclass(frozen=True)
class QClassification:
    p: int
    status: str
    q: int | None = None  # least failing prime, only for in_pq

    def __post_init__(self):
        if self.status == STATUS_IN_PQ and self.q is None:
            raise ValueError("in_pq classification requires q")


@dataclass
class GapReport:
    """Minimum span of m-term windows in the census of primitive-root primes."""

    g: int
    x: int
    m: int
    min_gap: int
    attained_at: int
    histogram: dict[int, int] = field(default_factory=dict)


def default_threads() -> int:
    env = os.environ.get("ARTINLAB_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _windows(lo: int, hi: int, size: int):
    a = lo
    while a < hi:
        b = min(a + size, hi)
        yield a, b
        a = b


def window_map(fn, lo, hi, *, window=DEFAULT_WINDOW, threads=1, progress=None):
    """Apply fn to each subwindow and return results in ascending order."""
    spans = list(_windows(lo, hi, window))
    if threads > 1 and len(spans) > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(lambda ab: fn(*ab), spans))
    else:
        results = []
        for i, (a, b) in enumerate(spans):
            results.append(fn(a, b))
            if progress:
                progress(i + 1, len(spans))
    return results


def is_primitive_root(g: int, p: int) -> bool:
    """True iff p does not divide g and g has order p - 1 mod p."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    a = g % p
    if a == 0:
        return False
    for q, _ in factorize(p - 1).factors:
        if mod_pow(a, (p - 1) // q, p) == 1:
            return False
    return True


def in_Pq0(g: int, p: int, q: int) -> bool:
    """True iff p = 1 mod q and g^((p-1)/q) = 1 mod p."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if g % p == 0:
        raise ValueError(f"{p} divides {g}")
    if (p - 1) % q != 0:
        return False
    return mod_pow(g % p, (p - 1) // q, p) == 1


def classify(g: int, p: int) -> QClassification:
    """divides_g / primitive_root / in_pq(q) with q the least failing prime."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    a = g % p
    if a == 0:
        return QClassification(p, STATUS_DIVIDES_G)
    for q, _ in factorize(p - 1).factors:
        if mod_pow(a, (p - 1) // q, p) == 1:
            return QClassification(p, STATUS_IN_PQ, q)
    return QClassification(p, STATUS_PRIMITIVE_ROOT)


def classify_range(g: int, lo: int, hi: int, *, window=DEFAULT_WINDOW, threads=1):
    """(primes, status, q) arrays for all primes in [lo, hi), ascending."""
    parts = window_map(
        lambda a, b: kernels.classify_window(g, a, b), lo, hi, window=window, threads=threads
    )
    primes = np.concatenate([p for p, _, _ in parts]) if parts else np.empty(0, np.int64)
    status = np.concatenate([s for _, s, _ in parts]) if parts else np.empty(0, np.int8)
    qs = np.concatenate([q for _, _, q in parts]) if parts else np.empty(0, np.int64)
    return primes, status, qs


def enumerate_pr_primes(
    g: int, lo: int, hi: int, *, window=DEFAULT_WINDOW, threads=1
) -> list[int]:
    """Ascending primes p in [lo, hi) with g a primitive root mod p."""
    if lo > hi:
        raise ValueError(f"need lo <= hi, got [{lo}, {hi})")
    primes, status, _ = classify_range(g, lo, hi, window=window, threads=threads)
    return primes[status == 1].tolist()


def gap_stats(g: int, x: int, m: int, *, window=DEFAULT_WINDOW, threads=1) -> GapReport:
    """Least q_{n+m-1} - q_n over the census up to x, witness, and gap histogram."""
    if x < 10 or m < 2:
        raise ValueError(f"need x >= 10 and m >= 2, got x={x}, m={m}")
    qs = np.asarray(enumerate_pr_primes(g, 2, x + 1, window=window, threads=threads))
    if len(qs) < m:
        raise InsufficientDataError(
            f"census holds {len(qs)} primes < m = {m} (g={g}, x={x})"
        )
    spans = qs[m - 1 :] - qs[: len(qs) - m + 1]
    idx = int(np.argmin(spans))
    hist: dict[int, int] = {}
    if m == 2:
        gaps, counts = np.unique(np.diff(qs), return_counts=True)
        hist = {int(a): int(b) for a, b in zip(gaps, counts)}
    return GapReport(
        g=g, x=x, m=m, min_gap=int(spans[idx]), attained_at=int(qs[idx]), histogram=hist
    )


def consecutive_run(
    g: int, x: int, m: int, *, window=DEFAULT_WINDOW, threads=1
) -> tuple[int, ...] | None:
    """First run of m consecutive primes <= x all having g as a primitive root."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    run: list[int] = []
    for a, b in _windows(2, x + 1, window):
        primes, status, _ = kernels.classify_window(g, a, b)
        for p, st in zip(primes.tolist(), status.tolist()):
            if st == 1:
                run.append(p)
                if len(run) == m:
                    return tuple(run)
            else:
                run = []
    return None
