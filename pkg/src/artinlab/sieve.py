"""Admissible tuples, sieve weights, and the weighted prime-detection sums.

The weights live on k-tuples of squarefree divisors d_1...d_k with
d_1...d_k coprime to W and smaller than R:

  lambda_d = (prod mu(d_i) d_i) * sum over r-tuples (d_i | r_i, (r_i,W)=1,
             r_i squarefree pairwise coprime, prod r_i < R) of
             F(log r_1/log R, ..., log r_k/log R) / prod phi(r_i)

and w(n) = (sum of lambda_d over d_i | n+h_i)^2.  S1 accumulates w(n) over
n = nu mod W in a window, S2 adds the count of prime entries n+h_i, and
S2~ the count of prime entries with g as a primitive root.  Everything is
evaluated exactly by enumeration at desk scale; the asymptotic main terms
are reported alongside for comparison, never asserted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import mkopt
from .arith import is_prime
from .errors import DegenerateDistributionError, InvariantViolation, ResourceLimitError
from .primroot import classify, is_primitive_root

_LAMBDA_R_CAP = 10**4


@dataclass(frozen=True)
class TupleH:
    """Strictly increasing shift offsets h_1 < ... < h_k."""

    offsets: tuple[int, ...]
    K: int | None = None  # factorial threshold when built by paper_tuple

    def __post_init__(self):
        if not self.offsets:
            raise ValueError("tuple must be nonempty")
        if any(b <= a for a, b in zip(self.offsets, self.offsets[1:])):
            raise ValueError(f"offsets must strictly increase: {self.offsets}")

    @property
    def k(self) -> int:
        return len(self.offsets)


def is_admissible(offsets) -> bool:
    """True iff the offsets miss a residue class mod p for every prime p <= k."""
    offsets = list(offsets)
    if len(set(offsets)) != len(offsets):
        raise ValueError("offsets must be distinct")
    k = len(offsets)
    p = 2
    while p <= k:
        if _is_prime_small(p) and len({h % p for h in offsets}) == p:
            return False
        p += 1
    return True


def _is_prime_small(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(math.isqrt(p)) + 1))


def paper_tuple(k: int, K_override: int | None = None) -> TupleH:
    """The tuple h_i = (i-1) K! with K = min(9 k^2 4^k, override).

    Divisibility of K! by every prime <= K makes admissibility automatic.
    Without an override K! overflows for any interesting k, so a small
    override is required in practice.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    K = 9 * k * k * 4**k
    if K_override is not None:
        # K >= k keeps every prime <= k inside K!, hence admissibility
        if K_override < max(k, 2):
            raise ValueError(f"K_override must be >= max(k, 2) = {max(k, 2)}")
        K = min(K, K_override)
    if K > 20 or (k - 1) * math.factorial(K) >= 2**63:
        raise ResourceLimitError(
            f"K = {K} makes (k-1) K! overflow 63 bits; pass K_override <= 20"
        )
    step = math.factorial(K)
    offsets = tuple((i - 1) * step for i in range(1, k + 1))
    tup = TupleH(offsets, K=K)
    assert is_admissible(offsets)
    return tup


@dataclass(frozen=True)
class SieveParams:
    """Window start N, level exponent theta, and the pre-sieving data."""

    N: int
    theta: float
    R: int
    W: int
    nu: "ResidueClass"
    F: "mkopt.PolynomialF"

    @classmethod
    def build(cls, N, theta, W, nu, F):
        if not 0 < theta < 0.25:
            raise ValueError(f"theta must lie in (0, 1/4), got {theta}")
        R = int(math.floor(N**theta + 1e-12))
        if R < 2:
            raise ValueError(f"R = floor(N^theta) = {R} must be >= 2")
        return cls(N=N, theta=theta, R=R, W=W, nu=nu, F=F)


@dataclass
class LambdaTable:
    """Sparse map from divisor tuples to weights; absent entries are zero."""

    k: int
    R: int
    W: int
    entries: dict[tuple[int, ...], float]

    def __getitem__(self, key) -> float:
        return self.entries.get(tuple(key), 0.0)

    def support_ok(self) -> bool:
        """Machine check: keys squarefree, coprime to W, product < R."""
        for key in self.entries:
            prod = 1
            for d in key:
                if not _squarefree(d):
                    return False
                prod *= d
            if prod >= self.R or math.gcd(prod, self.W) != 1:
                return False
        return True


def _squarefree(n: int) -> bool:
    if n % 4 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 2
    return True


def _sieve_mu_phi(limit: int):
    """mu and phi tables on [0, limit] by sieving."""
    mu = np.ones(limit + 1, dtype=np.int64)
    phi = np.arange(limit + 1, dtype=np.int64)
    primes = []
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, limit + 1):
        if sieve[p]:
            primes.append(p)
            sieve[2 * p :: p] = False
            mu[p::p] *= -1
            mu[p * p :: p * p] = 0
            phi[p::p] -= phi[p::p] // p
    return mu, phi


def lambda_weights(params: SieveParams, tup: TupleH, r_cap: int = _LAMBDA_R_CAP) -> LambdaTable:
    """Exact enumeration of the weight table (Kahan-compensated sums)."""
    R, W, k = params.R, params.W, tup.k
    if R > r_cap:
        raise ResourceLimitError(f"R = {R} exceeds the enumeration cap {r_cap}")
    mu, phi = _sieve_mu_phi(R)
    admissible_r = [
        r for r in range(1, R) if mu[r] != 0 and math.gcd(r, W) == 1
    ]
    logR = math.log(R)

    sums: dict[tuple[int, ...], float] = {}
    comps: dict[tuple[int, ...], float] = {}

    def _divisors(r: int) -> list[int]:
        out = [1]
        for p, _ in _factor_small(r):
            out += [d * p for d in out]
        return out

    def add(key, val):
        # Kahan step
        s = sums.get(key, 0.0)
        c = comps.get(key, 0.0)
        y = val - c
        t = s + y
        comps[key] = (t - s) - y
        sums[key] = t

    rtuple = [0] * k

    def rec(i: int, prod: int, base_val_args: list[float]):
        if i == k:
            fval = params.F.eval_float(base_val_args)
            if fval == 0.0:
                return
            weight = fval
            for r in rtuple:
                weight /= phi[r]
            div_lists = [_divisors(r) for r in rtuple]
            key = [0] * k

            def emit(j):
                if j == k:
                    add(tuple(key), weight)
                    return
                for d in div_lists[j]:
                    key[j] = d
                    emit(j + 1)

            emit(0)
            return
        for r in admissible_r:
            if prod * r >= R:
                if r == 1:
                    continue
                break
            ok = True
            for prev in rtuple[:i]:
                if math.gcd(prev, r) != 1:
                    ok = False
                    break
            if not ok:
                continue
            rtuple[i] = r
            rec(i + 1, prod * r, base_val_args + [math.log(r) / logR])
        rtuple[i] = 0

    rec(0, 1, [])

    entries = {}
    for key, s in sums.items():
        scale = 1
        for d in key:
            scale *= mu[d] * d
        val = float(scale) * s
        if val != 0.0:
            entries[key] = val
    return LambdaTable(k=k, R=R, W=W, entries=entries)


def _factor_small(n: int):
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            yield d, e
        d += 1
    if n > 1:
        yield n, 1


def weight_w(n: int, table: LambdaTable, tup: TupleH) -> float:
    """w(n) = (sum of table entries whose divisor tuple divides n + h)^2."""
    total = 0.0
    shifted = [n + h for h in tup.offsets]
    for key, lam in table.entries.items():
        for d, m in zip(key, shifted):
            if m % d:
                break
        else:
            total += lam
    return total * total


@dataclass
class SieveSums:
    """Weighted census sums over one window, with predicted main terms."""

    S1: float
    S2: float
    S2_tilde: float
    per_m: list[float]
    per_m_tilde: list[float]
    EX: float | None
    EY: float | None
    predicted_S1: float
    predicted_S2: float


def weighted_expectations(sums: SieveSums) -> tuple[float, float]:
    """(E[X], E[Y]) = (S2/S1, (S2 - S2~)/S1); requires S1 > 0."""
    if sums.S1 <= 0:
        raise DegenerateDistributionError("S1 = 0: the weight distribution is degenerate")
    return sums.S2 / sums.S1, (sums.S2 - sums.S2_tilde) / sums.S1


def compute_sums(
    g: int,
    params: SieveParams,
    tup: TupleH,
    table: LambdaTable,
    window: tuple[int, int] | None = None,
    z: int | None = None,
    max_terms: int = 10**7,
) -> SieveSums:
    """Direct evaluation of S1, S2, S2~ over n = nu mod W in the window.

    With z given, every prime entry is cross-checked against the
    pre-sieving guarantee (no q <= z failure mode); a hit raises
    InvariantViolation since it would mean the certificate is wrong.
    """
    lo, hi = window if window is not None else (params.N, 2 * params.N)
    W, nu = params.W, params.nu.residue
    if (hi - lo) // W > max_terms:
        raise ResourceLimitError(f"window [{lo}, {hi}) has too many terms (cap {max_terms})")
    start = lo + (nu - lo) % W

    t1: list[float] = []
    t2 = [[] for _ in range(tup.k)]
    t2t = [[] for _ in range(tup.k)]
    for n in range(start, hi, W):
        w = weight_w(n, table, tup)
        t1.append(w)
        if w == 0.0:
            continue
        for i, h in enumerate(tup.offsets):
            p = n + h
            if is_prime(p):
                t2[i].append(w)
                if z is not None:
                    cls = classify(g, p)
                    if cls.status == "in_pq" and cls.q <= z:
                        raise InvariantViolation(
                            f"pre-sieving leak: p = {p} is a q = {cls.q} power residue"
                        )
                if is_primitive_root(g, p):
                    t2t[i].append(w)

    S1 = math.fsum(t1)
    per_m = [math.fsum(v) for v in t2]
    per_m_tilde = [math.fsum(v) for v in t2t]
    S2 = math.fsum(per_m)
    S2t = math.fsum(per_m_tilde)

    Ik = mkopt.i_form_value(params.F)
    Jk = sum(mkopt.j_form_values(params.F), Fraction(0))
    k = tup.k
    phiW = _euler_phi(W)
    base = phiW**k / W ** (k + 1)
    N = params.N
    logR = math.log(params.R)
    predicted_S1 = base * N * logR**k * float(Ik)
    predicted_S2 = base * (N / math.log(N)) * logR ** (k + 1) * float(Jk)

    EX = EY = None
    sums = SieveSums(S1, S2, S2t, per_m, per_m_tilde, EX, EY, predicted_S1, predicted_S2)
    if S1 > 0:
        sums.EX, sums.EY = weighted_expectations(sums)
    return sums


def _euler_phi(n: int) -> int:
    out = n
    for p, _ in _factor_small(n):
        out -= out // p
    return out
