"""Exact integer and modular arithmetic primitives.

Everything here is deterministic: primality uses a witness set valid for
all 64-bit inputs, factorization uses trial division plus Brent's cycle
finder with a fixed restart schedule, and the Kronecker symbol follows the
standard extension to even, negative and zero moduli.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._backend import kernels
from .errors import IncompatibleCongruences

# Deterministic Miller-Rabin witnesses for n < 3.3 * 10^24 (covers 64-bit).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_TRIAL_LIMIT = 10**6


@dataclass(frozen=True)
class Factorization:
    """n as an ordered list of (prime, exponent) pairs."""

    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        prev = 1
        for p, e in self.factors:
            if p <= prev or e < 1:
                raise ValueError(f"factors must be ascending primes with e >= 1: {self.factors}")
            prev = p
            prod *= p**e
        if prod != self.n:
            raise ValueError(f"factors do not reassemble to {self.n}")

    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]


@dataclass(frozen=True)
class ResidueClass:
    """The congruence class residue mod modulus, with 0 <= residue < modulus."""

    residue: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError(f"modulus must be positive, got {self.modulus}")
        if not 0 <= self.residue < self.modulus:
            raise ValueError(f"residue {self.residue} not in [0, {self.modulus})")

    def __str__(self):
        return f"{self.residue} mod {self.modulus}"


def mod_pow(base: int, exponent: int, modulus: int) -> int:
    """base^exponent mod modulus, in [0, modulus)."""
    if modulus < 1:
        raise ValueError(f"modulus must be >= 1, got {modulus}")
    if exponent < 0:
        raise ValueError(f"exponent must be nonnegative, got {exponent}")
    return pow(base, exponent, modulus)


def is_prime(n: int) -> bool:
    """Deterministic primality test (exact for all inputs below 3.3e24)."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent_rho(n: int) -> int:
    """A nontrivial factor of composite n, deterministic restart schedule."""
    if n % 2 == 0:
        return 2
    for c in range(1, 100):
        y, r, q = 2, 1, 1
        g, x, ys = 1, 2, 2
        m = 128
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"rho failed to split {n}")  # pragma: no cover


_TRIAL_PRIMES: list[int] = []


def _trial_primes() -> list[int]:
    global _TRIAL_PRIMES
    if not _TRIAL_PRIMES:
        _TRIAL_PRIMES = kernels.sieve_range(2, _TRIAL_LIMIT).tolist()
    return _TRIAL_PRIMES


def factorize(n: int) -> Factorization:
    """Complete prime factorization of n >= 1 (empty for n = 1)."""
    if n < 1:
        raise ValueError(f"factorize requires n >= 1, got {n}")
    orig = n
    fac: dict[int, int] = {}
    if n > 1 and not is_prime(n):
        for p in _trial_primes():
            if p * p > n:
                break
            if n % p == 0:
                e = 0
                while n % p == 0:
                    n //= p
                    e += 1
                fac[p] = e
                if n == 1 or is_prime(n):
                    break
    # residual is 1, a prime, or a product of primes > 10^6: split with rho
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            fac[m] = fac.get(m, 0) + 1
            continue
        g = _brent_rho(m)
        stack.extend((g, m // g))
    return Factorization(orig, tuple(sorted(fac.items())))


def multiplicative_order(g: int, p: int) -> int:
    """Least l >= 1 with g^l = 1 mod p; p prime, p not dividing g."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    a = g % p
    if a == 0:
        raise ValueError(f"{p} divides {g}; order undefined")
    order = p - 1
    for q, _ in factorize(p - 1).factors:
        while order % q == 0 and pow(a, order // q, p) == 1:
            order //= q
    return order


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n), the standard extension of the Jacobi symbol.

    Conventions: (a|0) is 1 for a = +-1 and 0 otherwise; (a|-1) is -1 for
    negative a; (a|2) is 0 for even a, +1 for a = +-1 mod 8, -1 otherwise.
    """
    if a == 0 and n == 0:
        raise ValueError("kronecker(0, 0) is undefined")
    if n == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    twos = 0
    while n % 2 == 0:
        n //= 2
        twos += 1
    if twos:
        if a % 2 == 0:
            return 0
        if twos % 2 == 1 and a % 8 in (3, 5):
            result = -result
    # Jacobi symbol (a|n) for odd n >= 1 by reciprocity
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def crt_solve(congruences: list[ResidueClass]) -> ResidueClass:
    """Simultaneous solution of congruences; moduli need not be coprime.

    Raises IncompatibleCongruences naming the clashing pair when no
    solution exists; otherwise returns the class mod lcm of all moduli.
    """
    if not congruences:
        raise ValueError("crt_solve requires at least one congruence")
    r, m = congruences[0].residue, congruences[0].modulus
    for rc in congruences[1:]:
        g = math.gcd(m, rc.modulus)
        if (rc.residue - r) % g != 0:
            raise IncompatibleCongruences(ResidueClass(r % m, m), rc)
        lcm = m // g * rc.modulus
        step = rc.modulus // g
        t = (rc.residue - r) // g * pow(m // g, -1, step) % step
        r = (r + m * t) % lcm
        m = lcm
    return ResidueClass(r, m)


def primes_in_range(lo: int, hi: int, segment: int = 1 << 20) -> list[int]:
    """Ascending primes in [lo, hi); works in segments so memory stays bounded."""
    if lo > hi:
        raise ValueError(f"need lo <= hi, got [{lo}, {hi})")
    out: list[int] = []
    start = max(lo, 2)
    while start < hi:
        stop = min(start + segment, hi)
        out.extend(kernels.sieve_range(start, stop).tolist())
        start = stop
    return out
