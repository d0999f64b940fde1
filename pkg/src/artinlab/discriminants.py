"""Fundamental discriminants, prime-discriminant factorizations, and the
pre-sieving residue class nu mod W.

The constructive goal: given g and a shift tuple, find nu so that for every
offset h_i
  (i)   nu + h_i is coprime to W,
  (ii)  nu + h_i - 1 has no odd prime factor <= z,
  (iii) the Kronecker symbol (g0 | nu + h_i) is -1,
where g0 is the discriminant of Q(sqrt g) and W = lcm(g0, primorial(z)).
Condition (iii) forces g to be a quadratic nonresidue at every prime value
of n + h_i with n = nu mod W, which together with (ii) blocks every "g is a
q-th power residue" failure mode with q <= z.

The construction splits g0 into coprime prime discriminants D_1 ... D_l,
fixes everything away from D_1 by choosing an odd nu_1 avoiding forbidden
classes, then picks nu_2 mod |D_1| so the leading symbol lands on the
required sign, and glues the two congruences (their moduli may share a
factor of 2, which the CRT solver tolerates).

``exclude_non_tuple`` additionally pins nu_1 = -h mod a distinct prime
p(h) in [z/2, z) for every even non-tuple offset h, which forces n + h
composite: the primes detected inside the tuple window are then consecutive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .arith import ResidueClass, crt_solve, factorize, is_prime, kronecker, primes_in_range
from .errors import ConstructionFailure, ResourceLimitError
from .sieve import TupleH

_EVEN_PRIME_DISCS = (-4, 8, -8)


class DiscCase(Enum):
    CASE_I = "I"  # every |D_i| <= K
    CASE_II = "II"  # some |D_i| > K (placed first)


@dataclass(frozen=True)
class DiscFactorization:
    """g0 split into coprime prime discriminants, ordered for the construction."""

    g0: int
    factors: tuple[int, ...]
    K: int
    case_tag: DiscCase

    def __post_init__(self):
        prod = 1
        for d in self.factors:
            prod *= d
        if prod != self.g0:
            raise ValueError(f"factors {self.factors} do not multiply to {self.g0}")


@dataclass
class NuReport:
    """Recomputed per-condition verdicts for a NuCertificate."""

    coprime_to_W: bool
    shifted_coprime: bool
    kronecker_minus_one: bool
    composite_classes_ok: bool
    failures: list[str] = field(default_factory=list)

    @property
    def checks(self) -> tuple[bool, bool, bool]:
        return (self.coprime_to_W, self.shifted_coprime, self.kronecker_minus_one)

    @property
    def all_ok(self) -> bool:
        return all(self.checks) and self.composite_classes_ok


@dataclass(frozen=True)
class NuCertificate:
    """A residue class nu mod W with its verified construction conditions."""

    nu: ResidueClass
    z: int
    g: int
    tuple: TupleH
    checks: tuple[bool, bool, bool]
    composite_classes: tuple[tuple[int, int], ...] = ()  # (prime p(h), offset h)


def squarefree_kernel(g: int) -> int:
    """The squarefree integer s with g = s * (square); sign preserved."""
    if g == 0:
        raise ValueError("squarefree kernel of 0 is undefined")
    s = 1
    for p, e in factorize(abs(g)).factors:
        if e % 2:
            s *= p
    return s if g > 0 else -s


def fundamental_discriminant(g: int) -> int:
    """Discriminant of Q(sqrt g): s if s = 1 mod 4 else 4s, s the squarefree kernel."""
    if g == 0 or g == -1:
        raise ValueError(f"g = {g} does not define the construction")
    if g > 0 and math.isqrt(g) ** 2 == g:
        raise ValueError(f"g = {g} is a perfect square")
    s = squarefree_kernel(g)
    return s if s % 4 == 1 else 4 * s


def is_fundamental(d: int) -> bool:
    if d == 0:
        return False
    if d % 4 == 1:
        return squarefree_kernel(d) == d
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and squarefree_kernel(m) == m
    return False


def prime_discriminant_factorization(g0: int, K: int) -> DiscFactorization:
    """Split a fundamental discriminant into coprime prime discriminants.

    Ordering rules: a factor exceeding K in absolute value comes first
    (largest such if several); otherwise the even factor leads when g0 is
    even; otherwise (g0 odd with several factors) the smallest factor of
    absolute value >= 5 leads.  Remaining factors ascend by |D|.
    """
    if K < 1:
        raise ValueError(f"K must be positive, got {K}")
    if not is_fundamental(g0):
        raise ValueError(f"{g0} is not a fundamental discriminant")
    odd_parts = []
    for p, _ in factorize(abs(g0)).factors:
        if p != 2:
            odd_parts.append(p if p % 4 == 1 else -p)
    prod_odd = 1
    for d in odd_parts:
        prod_odd *= d
    even_part = g0 // prod_odd if prod_odd else g0
    assert even_part * prod_odd == g0
    factors = list(odd_parts)
    if even_part != 1:
        assert even_part in _EVEN_PRIME_DISCS, (g0, even_part)
        factors.append(even_part)
    factors.sort(key=abs)
    if not factors:  # g0 == 1
        return DiscFactorization(g0, (), K, DiscCase.CASE_I)

    if any(abs(d) > K for d in factors):
        # prefer an odd leader: the construction needs |D_1| to be an odd
        # prime, and for K > 8 the even discriminants never exceed K anyway
        big = [d for d in factors if abs(d) > K]
        odd_big = [d for d in big if d % 2]
        lead = max(odd_big or big, key=abs)
        case = DiscCase.CASE_II
    elif g0 % 2 == 0:
        lead = even_part
        case = DiscCase.CASE_I
    elif len(factors) > 1:
        lead = min((d for d in factors if abs(d) >= 5), key=abs)
        case = DiscCase.CASE_I
    else:
        lead = factors[0]
        case = DiscCase.CASE_I
    rest = [d for d in factors if d != lead]
    return DiscFactorization(g0, (lead, *rest), K, case)


def build_W(g0: int, z: int) -> int:
    """lcm of |g0| and the primorial of z."""
    if z < 2:
        raise ValueError(f"z must be >= 2, got {z}")
    prim = 1
    for p in primes_in_range(2, z + 1):
        prim *= p
    return abs(g0) * prim // math.gcd(abs(g0), prim)


def _avoid_classes(offsets, p: int, include_shifted: bool) -> set[int]:
    avoid = {(-h) % p for h in offsets}
    if include_shifted:
        avoid |= {(1 - h) % p for h in offsets}
    return avoid


def _symbol_targets(rest_product: int, nu1: int, offsets) -> list[int] | None:
    """Required leading-symbol signs -(D_2...D_l | nu1 + h_i), or None if one vanishes."""
    targets = []
    for h in offsets:
        s = kronecker(rest_product, nu1 + h)
        if s == 0:
            return None
        targets.append(-s)
    return targets


def _find_nu2(d1: int, offsets, targets, avoid_one: bool) -> int | None:
    """Smallest c mod |D_1| with (D_1 | c + h_i) = targets[i] for all i.

    For odd |D_1| the classes c + h_i = 1 are also excluded (they would put
    an odd prime factor <= |D_1| into nu + h_i - 1).  Symbols vanish on the
    classes sharing a factor with D_1, so coprimality comes for free.
    """
    m = abs(d1)
    for c in range(m):
        ok = True
        for h, t in zip(offsets, targets):
            r = (c + h) % m
            if avoid_one and r == 1:
                ok = False
                break
            if kronecker(d1, r) != t:
                ok = False
                break
        if ok:
            return c
    return None


def choose_nu(
    g: int,
    tup: TupleH,
    K: int,
    z: int,
    exclude_non_tuple: bool = False,
    scan_limit: int = 10**6,
) -> NuCertificate:
    """Construct a certificate nu mod W satisfying conditions (i)-(iii).

    Deterministic: nu_1 is the smallest odd nonnegative representative that
    admits a compatible nu_2, and nu_2 is the smallest representative mod
    |D_1|.  Requires K > 8 and K > 2k, and every pairwise offset difference
    must factor entirely below K (this keeps the offsets separated mod any
    leading discriminant larger than K).
    """
    if K <= 8 or K <= 2 * tup.k:
        raise ValueError(f"need K > 8 and K > 2k, got K={K}, k={tup.k}")
    if z < 2:
        raise ValueError(f"z must be >= 2, got {z}")
    offsets = tup.offsets
    for i, hi in enumerate(offsets):
        for hj in offsets[:i]:
            diff = hi - hj
            big = max(p for p, _ in factorize(diff).factors)
            if big >= K:
                raise ValueError(
                    f"offset difference {diff} has prime factor {big} >= K = {K}"
                )
    g0 = fundamental_discriminant(g)
    disc = prime_discriminant_factorization(g0, K)
    d1 = disc.factors[0]
    rest_product = g0 // d1
    W = build_W(g0, z)

    # odd primes constraining nu_1: everything <= z plus the odd primes of
    # g0 sitting in D_2...D_l, never those of D_1
    constraint_primes = {p for p in primes_in_range(3, z + 1)}
    constraint_primes |= {p for p, _ in factorize(abs(g0)).factors if p != 2}
    constraint_primes = sorted(p for p in constraint_primes if abs(d1) % p != 0)

    avoid: dict[int, set[int]] = {}
    for p in constraint_primes:
        # the 1 - h_i classes matter only where condition (ii) applies (p <= z)
        avoid[p] = _avoid_classes(offsets, p, include_shifted=p <= z)
        if len(avoid[p]) >= p:
            raise ConstructionFailure(
                f"offsets occupy every usable class mod {p}; no nu_1 exists"
            )

    forced: dict[int, int] = {}
    composite_classes: list[tuple[int, int]] = []
    if exclude_non_tuple:
        if any(h % 2 for h in offsets):
            raise ValueError("exclude_non_tuple needs even offsets (odd shifts "
                             "of an odd nu are composite already)")
        lo_h, hi_h = offsets[0], offsets[-1]
        gaps = [h for h in range(lo_h + 1, hi_h)
                if h % 2 == 0 and h not in set(offsets)]
        pool = [p for p in primes_in_range((z + 1) // 2, z) if p in set(constraint_primes)]
        for h in gaps:
            pick = None
            for p in pool:
                if p in forced:
                    continue
                if (-h) % p not in avoid[p]:
                    pick = p
                    break
            if pick is None:
                raise ResourceLimitError(
                    f"no unused prime in [{(z + 1) // 2}, {z}) can absorb offset {h}"
                )
            forced[pick] = (-h) % pick
            composite_classes.append((pick, h))

    period = 2
    for p in constraint_primes:
        period *= p

    chosen = None
    nu1 = -1
    for _ in range(min((period + 1) // 2, scan_limit)):
        nu1 += 2
        ok = True
        for p in constraint_primes:
            r = nu1 % p
            if p in forced:
                if r != forced[p]:
                    ok = False
                    break
            elif r in avoid[p]:
                ok = False
                break
        if not ok:
            continue
        targets = _symbol_targets(rest_product, nu1, offsets)
        if targets is None:
            continue
        nu2 = _find_nu2(d1, offsets, targets, avoid_one=d1 % 2 != 0)
        if nu2 is not None:
            chosen = (nu1, nu2)
            break
    if chosen is None:
        raise ConstructionFailure(
            f"no (nu_1, nu_2) pair found for g={g}, K={K}, z={z} within "
            f"{scan_limit} candidates; if the offsets occupy several classes "
            f"mod an odd prime of g0 = {g0}, enlarge the tuple's factorial "
            f"base so they collapse to 0"
        )
    nu1, nu2 = chosen

    m1 = W // abs(d1)
    m1 = m1 * 2 // math.gcd(m1, 2)  # lcm with 2 keeps nu odd
    glued = crt_solve([ResidueClass(nu1 % m1, m1), ResidueClass(nu2 % abs(d1), abs(d1))])
    assert glued.modulus == W, (glued.modulus, W)

    cert = NuCertificate(
        nu=glued,
        z=z,
        g=g,
        tuple=tup,
        checks=(False, False, False),
        composite_classes=tuple(composite_classes),
    )
    report = verify_nu(cert)
    cert = NuCertificate(
        nu=glued,
        z=z,
        g=g,
        tuple=tup,
        checks=report.checks,
        composite_classes=tuple(composite_classes),
    )
    if not report.all_ok:
        raise ConstructionFailure(
            f"constructed nu fails verification: {report.failures}"
        )
    return cert


def verify_nu(cert: NuCertificate) -> NuReport:
    """Recompute conditions (i)-(iii) and the composite-class divisibilities."""
    g0 = fundamental_discriminant(cert.g)
    W = build_W(g0, cert.z)
    nu = cert.nu.residue
    failures = []

    ok_i = True
    for h in cert.tuple.offsets:
        if math.gcd(nu + h, W) != 1:
            ok_i = False
            failures.append(f"gcd(nu + {h}, W) > 1")

    odd_prim = 1
    for p in primes_in_range(3, cert.z + 1):
        odd_prim *= p
    ok_ii = True
    for h in cert.tuple.offsets:
        if math.gcd(nu + h - 1, odd_prim) != 1:
            ok_ii = False
            failures.append(f"nu + {h} - 1 shares an odd prime <= z")

    ok_iii = True
    for h in cert.tuple.offsets:
        if kronecker(g0, nu + h) != -1:
            ok_iii = False
            failures.append(f"({g0} | nu + {h}) != -1")

    ok_comp = True
    for p, h in cert.composite_classes:
        if not is_prime(p) or not (cert.z / 2 <= p < cert.z):
            ok_comp = False
            failures.append(f"composite-class prime {p} outside [z/2, z)")
        if (nu + h) % p != 0:
            ok_comp = False
            failures.append(f"{p} does not divide nu + {h}")

    return NuReport(ok_i, ok_ii, ok_iii, ok_comp, failures)
