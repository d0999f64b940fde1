"""Independent brute-force oracles used to freeze expected values.

Everything here is deliberately naive and shares no code with the package:
trial division, direct enumeration, quadratic-residue tables built by
squaring, recursive exact integration.  Tests compare the fast paths
against these.
"""

from fractions import Fraction
from math import factorial, gcd, isqrt


def trial_is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def naive_sieve(lo: int, hi: int) -> list[int]:
    return [n for n in range(max(lo, 2), hi) if trial_is_prime(n)]


def naive_factor(n: int) -> list[tuple[int, int]]:
    out = []
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e:
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def naive_order(g: int, p: int) -> int:
    a = g % p
    x = 1
    for l in range(1, p):
        x = x * a % p
        if x == 1:
            return l
    raise AssertionError("no order found")


_QR_CACHE: dict[int, frozenset] = {}


def qr_symbol(a: int, p: int) -> int:
    """(a|p) for odd prime p via an explicit table of squares."""
    a %= p
    if a == 0:
        return 0
    squares = _QR_CACHE.get(p)
    if squares is None:
        squares = _QR_CACHE[p] = frozenset(x * x % p for x in range(1, p))
    return 1 if a in squares else -1


def naive_char_sum(coeffs, p: int) -> int:
    total = 0
    for a in range(p):
        v = 0
        for c in reversed(list(coeffs)):
            v = (v * a + c) % p
        total += qr_symbol(v, p)
    return total


def naive_pattern_count(p: int, offsets, signs) -> int:
    count = 0
    for n in range(p):
        ok = True
        for h, s in zip(offsets, signs):
            if qr_symbol(n + h, p) != s:
                ok = False
                break
        if ok:
            count += 1
    return count


def crt_scan(congruences, limit):
    """All n in [0, limit) satisfying every (residue, modulus) pair."""
    return [
        n for n in range(limit)
        if all(n % m == r for r, m in congruences)
    ]


def simplex_integral_recursive(exponents) -> Fraction:
    """Integral of the monomial over the simplex by 1-d exact recursion.

    Peels one variable at a time: integrating t^a * (s - t)^b dt from 0 to s
    via the beta identity gives a!b!/(a+b+1)! * s^(a+b+1), so the recursion
    carries only the exponent of the shrinking upper limit.
    """
    def rec(exps, b):
        # integral over t_1..t_j >= 0, sum t <= s of prod t^exps * (s - sum t)^b,
        # expressed as c * s^(sum exps + j + b)
        if not exps:
            return Fraction(1)
        a = exps[-1]
        c = Fraction(factorial(a) * factorial(b), factorial(a + b + 1))
        return c * rec(exps[:-1], a + b + 1)

    return rec(list(exponents), 0)


def naive_li(x: float, steps: int = 4_000_000) -> float:
    """Midpoint-rule integral of dt/log t from 2 to x (slow, for cross-checks)."""
    import math

    if x <= 2:
        return 0.0
    h = (x - 2.0) / steps
    return h * sum(1.0 / math.log(2.0 + (i + 0.5) * h) for i in range(steps))


def naive_divisors(n: int, cap: int) -> list[int]:
    return [d for d in range(1, min(n, cap) + 1) if n % d == 0]


def naive_sieve_sums(g, nu, W, offsets, table_entries, lo, hi, divisor_cap):
    """Double-loop reimplementation of the weighted sums over one window."""
    S1 = S2 = S2t = 0.0
    per = [0.0] * len(offsets)
    pert = [0.0] * len(offsets)
    n = lo + (nu - lo) % W
    while n < hi:
        total = 0.0
        div_lists = [naive_divisors(n + h, divisor_cap) for h in offsets]

        def walk(i, key):
            nonlocal total
            if i == len(offsets):
                total += table_entries.get(tuple(key), 0.0)
                return
            for d in div_lists[i]:
                walk(i + 1, key + [d])

        walk(0, [])
        w = total * total
        S1 += w
        for i, h in enumerate(offsets):
            p = n + h
            if trial_is_prime(p):
                S2 += w
                per[i] += w
                if gcd(g, p) == 1 and naive_order(g, p) == p - 1:
                    S2t += w
                    pert[i] += w
        n += W
    return S1, S2, S2t, per, pert
