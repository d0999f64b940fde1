"""Density checks: splitting-density predictions, Artin's constant, the
twin primitive-root heuristic, and small-order tails.

Predictions use the logarithmic integral as the main term.  Every report
carries observed, predicted and their ratio; nothing here asserts a
tolerance, that is the acceptance suite's job.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.integrate

from ._backend import kernels
from .errors import ResourceLimitError
from .primroot import DEFAULT_WINDOW, classify_range, window_map

ARTIN_TRUNCATION = 10**6


@dataclass
class CountReport:
    label: str
    x: int
    observed: int
    predicted: float | None
    warning: str | None = None

    @property
    def ratio(self) -> float | None:
        if self.predicted is None or self.predicted == 0:
            return None
        return self.observed / self.predicted


def log_integral(x: float) -> float:
    """li(x) = integral of dt/log t from 2 to x, relative error <= 1e-10."""
    if x < 2:
        raise ValueError(f"log_integral needs x >= 2, got {x}")
    if x == 2:
        return 0.0
    val, err = scipy.integrate.quad(lambda t: 1.0 / math.log(t), 2.0, x, limit=200,
                                    epsabs=0.0, epsrel=1e-12)
    return val


def _log2_integral(x: float) -> float:
    """Integral of dt/(log t)^2 from 2 to x."""
    if x <= 2:
        return 0.0
    val, _ = scipy.integrate.quad(lambda t: 1.0 / math.log(t) ** 2, 2.0, x, limit=200,
                                  epsabs=0.0, epsrel=1e-12)
    return val


def hooley_count_check(
    g: int, q: int, x: int, *, window=DEFAULT_WINDOW, threads=1
) -> CountReport:
    """Observed #{p <= x : p = 1 mod q, g a q-th power residue} vs li(x)/(q(q-1)).

    The prediction is the splitting density of the degree q(q-1) field
    attached to the q-divisibility condition.
    """
    if x < 2:
        raise ValueError(f"x must be >= 2, got {x}")
    observed = sum(
        window_map(
            lambda a, b: kernels.pq0_count_window(g, q, a, b),
            2, x + 1, window=window, threads=threads,
        )
    )
    predicted = log_integral(x) / (q * (q - 1))
    warning = None
    if predicted < 30:
        warning = f"predicted count {predicted:.1f} < 30: scale too small for a ratio test"
    return CountReport(
        label=f"pq0(g={g}, q={q})", x=x, observed=int(observed), predicted=predicted,
        warning=warning,
    )


def artin_constant(truncation: int = ARTIN_TRUNCATION) -> float:
    """Truncated product over p <= truncation of (1 - 1/(p(p-1)))."""
    ps = kernels.sieve_range(2, truncation + 1).astype(np.float64)
    return float(np.exp(np.log1p(-1.0 / (ps * (ps - 1.0))).sum()))


def artin_density(g: int, x: int, *, window=DEFAULT_WINDOW, threads=1) -> CountReport:
    """Observed primitive-root density against the truncated Artin product.

    The classical product applies to squarefree g != 1 mod 4; for other g
    the correction factor is g-specific and the report leaves the
    prediction unavailable rather than guessing it.
    """
    primes, status, _ = classify_range(g, 2, x + 1, window=window, threads=threads)
    observed = int((status == 1).sum())
    pi_x = len(primes)
    from .discriminants import squarefree_kernel

    predicted = None
    warning = None
    if g not in (0, 1, -1) and squarefree_kernel(g) == g and g % 4 != 1:
        predicted = artin_constant() * pi_x
    else:
        warning = "no classical constant for this g; report carries the empirical density only"
    return CountReport(
        label=f"artin(g={g})", x=x, observed=observed, predicted=predicted, warning=warning
    )


def singular_series(truncation: int) -> float:
    """(1/4) * product over 3 < p <= truncation of (1 - 3/(p-1)^2).

    The tail factors lie below 1, so the partial product over-estimates
    the limit by at most exp(sum_{p > T} 3/(p-1)^2).
    """
    if truncation < 5:
        raise ValueError(f"truncation must be >= 5, got {truncation}")
    ps = kernels.sieve_range(5, truncation + 1).astype(np.float64)
    return 0.25 * float(np.exp(np.log1p(-3.0 / (ps - 1.0) ** 2).sum()))


def twin_pr_count(x: int, *, window=DEFAULT_WINDOW, threads=1) -> CountReport:
    """Twin pairs p, p+2 <= x with 2 a primitive root of both, vs the
    singular-series prediction times the squared-log integral."""
    if x < 100:
        raise ValueError(f"x must be >= 100, got {x}")
    primes, status, _ = classify_range(2, 2, x + 3, window=window, threads=threads)
    flags = status == 1
    observed = 0
    for i in range(len(primes) - 1):
        p = int(primes[i])
        if p > x:
            break
        if primes[i + 1] - primes[i] == 2 and flags[i] and flags[i + 1]:
            observed += 1
    predicted = singular_series(ARTIN_TRUNCATION) * _log2_integral(x)
    return CountReport(label="twin_pr(g=2)", x=x, observed=observed, predicted=predicted)


def order_tail_census(
    g: int, x: int, L: int, *, window=DEFAULT_WINDOW, threads=1
) -> int:
    """Exact count of primes p <= x, p not dividing g, with order of g <= L.

    All such primes divide prod_{l <= L} (g^l - 1), so the count stays
    bounded as x grows; the census verifies that directly.
    """
    if L < 1:
        raise ValueError(f"L must be >= 1, got {L}")
    if L * math.log2(max(abs(g), 2)) > 4096:
        raise ResourceLimitError(f"g^{L} - 1 exceeds the big-integer budget")
    return sum(
        window_map(
            lambda a, b: kernels.order_leq_count_window(g, L, a, b),
            2, x + 1, window=window, threads=threads,
        )
    )
