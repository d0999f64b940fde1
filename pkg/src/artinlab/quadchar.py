"""Quadratic character sums and sign-pattern solution counts.

The two checkable facts this module serves as an oracle for:

* a monic non-square polynomial f of degree d over F_p has
  |sum over a of (f(a)|p)| <= (d-1) sqrt(p)  (the Weil bound), and
* the number of n mod p with prescribed Legendre signs at k shifted points
  is at least p/2^k - (k-1) sqrt(p) - k.

Counting is exhaustive on purpose; these counts are the trusted side of
every downstream inequality.  ``weil_suite`` covers *all* monic degree-2/3
polynomials per prime by reducing them to translation/scaling classes,
which preserves |sum| exactly (spot-checked against direct enumeration).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._backend import kernels
from .arith import kronecker
from .errors import ExcludedPointError

MAX_CHAR_SUM_DEGREE = 8


@dataclass(frozen=True)
class SignPattern:
    """Shift offsets h_i paired with target signs in {+1, -1}."""

    offsets: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        if len(self.offsets) != len(self.signs) or not self.offsets:
            raise ValueError("offsets and signs must be nonempty and equal-length")
        if any(s not in (-1, 1) for s in self.signs):
            raise ValueError(f"signs must be +-1, got {self.signs}")

    @property
    def k(self) -> int:
        return len(self.offsets)

    def distinct_mod(self, p: int) -> bool:
        return len({h % p for h in self.offsets}) == self.k


def _validate_odd_prime(p: int):
    from .arith import is_prime

    if p < 3 or not is_prime(p):
        raise ValueError(f"need an odd prime, got {p}")


def char_sum(coefficients, p: int) -> int:
    """Sum over a mod p of (f(a)|p), f monic with ascending coefficients.

    The top coefficient must be 1 mod p and 1 <= deg f <= min(8, p-1).
    """
    _validate_odd_prime(p)
    coeffs = [c % p for c in coefficients]
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    d = len(coeffs) - 1
    if d < 1:
        raise ValueError("polynomial must have degree >= 1")
    if coeffs[-1] != 1:
        raise ValueError("polynomial must be monic mod p")
    if d > MAX_CHAR_SUM_DEGREE:
        raise ValueError(f"degree {d} exceeds the cap {MAX_CHAR_SUM_DEGREE}")
    if d >= p:
        raise ValueError(f"degree {d} must be smaller than p = {p}")
    return int(kernels.char_sum_coeffs(coeffs, p))


def poly_is_square(coefficients, p: int) -> bool:
    """Exact test whether a monic f is a square in F_p[T] (p odd).

    Extracts a candidate square root by matching coefficients from the top
    and verifies it by multiplying back, so the answer never depends on the
    extraction logic alone.
    """
    coeffs = [c % p for c in coefficients]
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    d = len(coeffs) - 1
    if coeffs[-1] != 1:
        raise ValueError("polynomial must be monic mod p")
    if d % 2 == 1:
        return False
    if d == 0:
        return True
    h = d // 2
    inv2 = pow(2, -1, p)
    g = [0] * (h + 1)
    g[h] = 1
    for j in range(h - 1, -1, -1):
        s = 0
        for i in range(j + 1, h):
            jj = h + j - i
            if j < jj <= h:
                s += g[i] * g[jj]
        g[j] = (coeffs[h + j] - s) * inv2 % p
    sq = [0] * (d + 1)
    for i, gi in enumerate(g):
        for j, gj in enumerate(g):
            sq[i + j] = (sq[i + j] + gi * gj) % p
    return sq == coeffs


def legendre_indicator(n: int, p: int, pattern: SignPattern) -> int:
    """1 iff (n+h_i|p) = eps_i for every i; errors if some n+h_i = 0 mod p."""
    _validate_odd_prime(p)
    for h, eps in zip(pattern.offsets, pattern.signs):
        s = kronecker(n + h, p)
        if s == 0:
            raise ExcludedPointError(f"n + {h} = 0 mod {p} at n = {n}")
        if s != eps:
            return 0
    return 1


def count_sign_pattern_solutions(p: int, pattern: SignPattern) -> int:
    """Exact count of n mod p with (n+h_i|p) = eps_i for all i."""
    _validate_odd_prime(p)
    if not pattern.distinct_mod(p):
        raise ValueError(f"offsets {pattern.offsets} collide mod {p}")
    counts = kernels.sign_pattern_counts(p, list(pattern.offsets))
    code = sum(1 << i for i, s in enumerate(pattern.signs) if s == 1)
    return int(counts[code])


def all_sign_pattern_counts(p: int, offsets) -> np.ndarray:
    """Counts for all 2^k sign patterns at once (bit i set = +1 at h_i)."""
    _validate_odd_prime(p)
    if len({h % p for h in offsets}) != len(offsets):
        raise ValueError(f"offsets {offsets} collide mod {p}")
    return kernels.sign_pattern_counts(p, list(offsets))


def sign_count_lower_bound_ok(p: int, k: int, count: int) -> bool:
    """Exact check of count >= p/2^k - (k-1) sqrt(p) - k (no floats)."""
    # deficit = p - 2^k (count + k); bound fails iff deficit > 0 and
    # deficit^2 > 4^k (k-1)^2 p
    deficit = p - (count + k) * (1 << k)
    if deficit <= 0:
        return True
    return deficit * deficit <= (1 << (2 * k)) * (k - 1) ** 2 * p


@dataclass
class WeilReport:
    """Result of a full-coverage Weil-bound sweep for one degree."""

    degree: int
    primes_checked: int = 0
    classes_checked: int = 0
    polynomials_covered: int = 0
    max_normalized: float = 0.0  # max |sum| / ((d-1) sqrt p)
    violations: list[tuple[int, tuple[int, ...]]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _weil_ok(s: int, d: int, p: int) -> bool:
    return s * s <= (d - 1) ** 2 * p


def _least_nonresidue(table: np.ndarray) -> int:
    idx = np.flatnonzero(table == -1)
    return int(idx[0])


def weil_degree2_sweep(p: int, report: WeilReport):
    """Check |sum (T^2+bT+c | p)| <= sqrt(p) for all p^2 coefficient pairs.

    Completing the square maps (b, c) to the class e = c - b^2/4; the sum
    depends only on e and f is a square polynomial exactly when e = 0.
    """
    sums = kernels.quadratic_class_sums(p)
    if int(sums[0]) != p - 1:
        raise AssertionError(f"square-class sum at p={p} is {sums[0]}, expected {p - 1}")
    for e in range(1, p):
        s = int(sums[e])
        report.max_normalized = max(report.max_normalized, abs(s) / math.sqrt(p))
        if not _weil_ok(s, 2, p):
            report.violations.append((p, (e, 0, 1)))
    report.classes_checked += p - 1
    report.polynomials_covered += p * (p - 1)
    report.primes_checked += 1


def weil_degree3_sweep(p: int, report: WeilReport):
    """Check |sum (T^3+bT^2+cT+d | p)| <= 2 sqrt(p) for all p^3 triples.

    For p > 3 the translation T -> T - b/3 reduces to a depressed cubic
    (u, v), and the substitution a -> lambda*a maps (u, v) to
    (u lambda^-2, v lambda^-3) while multiplying the sum by (lambda|p).
    Classes u in {0, 1, n0} with n0 the least nonresidue therefore cover
    every (u, v) up to sign.  Odd degree means no cubic is a square.
    """
    if p == 3:
        # d = p here, outside char_sum's contract; enumerate the 27 cubics directly
        for b in range(3):
            for c in range(3):
                for d in range(3):
                    s = sum(kronecker((a**3 + b * a * a + c * a + d) % 3, 3) for a in range(3))
                    report.max_normalized = max(report.max_normalized, abs(s) / (2 * math.sqrt(3)))
                    if not _weil_ok(s, 3, 3):
                        report.violations.append((3, (d, c, b, 1)))
        report.classes_checked += 27
        report.polynomials_covered += 27
        report.primes_checked += 1
        return
    table = kernels.legendre_table(p)
    reps = [0, 1, _least_nonresidue(table)]
    for u0 in reps:
        sums = kernels.cubic_class_sums(p, u0)
        bad = np.flatnonzero(sums.astype(np.int64) ** 2 > 4 * p)
        report.max_normalized = max(
            report.max_normalized, float(np.abs(sums).max()) / (2 * math.sqrt(p))
        )
        for w in bad.tolist():
            report.violations.append((p, (w, u0, 0, 1)))
        report.classes_checked += p
    report.polynomials_covered += p**3
    report.primes_checked += 1


def weil_suite(p_max: int, degrees=(2, 3)) -> dict[int, WeilReport]:
    """Full Weil-bound verification for all odd primes <= p_max."""
    reports = {d: WeilReport(degree=d) for d in degrees}
    for p in kernels.sieve_range(3, p_max + 1).tolist():
        if 2 in reports:
            weil_degree2_sweep(p, reports[2])
        if 3 in reports:
            weil_degree3_sweep(p, reports[3])
    return reports


def reduce_cubic_to_class(b: int, c: int, d: int, p: int) -> tuple[int, int, int]:
    """Map T^3+bT^2+cT+d to (u0, w, sign) with sum = sign * S3(u0, w).

    Used to spot-check that the class sweep really covers an arbitrary
    cubic: u0 is 0, 1 or the least nonresidue.
    """
    inv3 = pow(3, -1, p)
    u = (c - b * b * inv3) % p
    v = (d - b * c * inv3 + 2 * pow(b, 3, p) * pow(inv3, 3, p)) % p
    if u == 0:
        return 0, v, 1
    table = kernels.legendre_table(p)
    if table[u] == 1:
        u0 = 1
    else:
        u0 = _least_nonresidue(table)
    # solve u = u0 * lam^2; then S3(u, v) = (lam|p) * S3(u0, v * lam^-3)
    target = u * pow(u0, -1, p) % p
    lam = _sqrt_mod(target, p)
    w = v * pow(lam, -3, p) % p
    return u0, w, int(table[lam])


def _sqrt_mod(a: int, p: int) -> int:
    """A square root of a quadratic residue a mod p (Tonelli-Shanks)."""
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # Tonelli-Shanks for p = 1 mod 4
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    table = kernels.legendre_table(p)
    z = _least_nonresidue(table)
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        t2, i = t, 0
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r
