"""Variational lower bounds: maximize (sum_m J^(m)(F)) / I(F) over
polynomials F supported on the standard simplex.

I(F) integrates F^2 over the simplex; J^(m)(F) first integrates F out of
coordinate m (against the simplex section) and squares.  Both are exact
rational bilinear forms on a polynomial basis, assembled with the Dirichlet
monomial formula prod a_i! / (k + sum a_i)!.  The generalized symmetric
eigenproblem A x = lambda B x is solved in floating point and the winning
vector is then certified by recomputing its Rayleigh quotient in exact
rational arithmetic, so every reported value is a true lower bound for the
supremum regardless of eigensolver quality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

import numpy as np
import scipy.linalg

Monomials = dict[tuple[int, ...], Fraction]


@dataclass(frozen=True)
class PolynomialF:
    """A k-variable polynomial used on the simplex (zero outside it)."""

    k: int
    terms: tuple[tuple[tuple[int, ...], Fraction], ...]
    symmetric_basis_tag: str | None = None

    @classmethod
    def from_dict(cls, k: int, monomials: Monomials, tag: str | None = None):
        clean = tuple(sorted((e, c) for e, c in monomials.items() if c != 0))
        return cls(k=k, terms=clean, symmetric_basis_tag=tag)

    def as_dict(self) -> Monomials:
        return dict(self.terms)

    def eval_float(self, t) -> float:
        """Evaluate at a point; explicitly 0 outside the closed simplex."""
        if len(t) != self.k:
            raise ValueError(f"expected {self.k} coordinates, got {len(t)}")
        if any(x < 0 for x in t) or sum(t) > 1:
            return 0.0
        total = 0.0
        for exps, coeff in self.terms:
            v = float(coeff)
            for x, e in zip(t, exps):
                v *= x**e
            total += v
        return total


def _poly_mul(f: Monomials, g: Monomials) -> Monomials:
    out: Monomials = {}
    for ea, ca in f.items():
        for eb, cb in g.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, Fraction(0)) + ca * cb
    return {e: c for e, c in out.items() if c}


def _poly_pow(f: Monomials, n: int, k: int) -> Monomials:
    out: Monomials = {(0,) * k: Fraction(1)}
    for _ in range(n):
        out = _poly_mul(out, f)
    return out


def simplex_monomial_integral(exponents) -> Fraction:
    """Integral of prod t_i^{a_i} over the simplex: prod a_i! / (k + sum a_i)!."""
    exps = list(exponents)
    if any(a < 0 for a in exps):
        raise ValueError(f"exponents must be nonnegative: {exps}")
    num = 1
    for a in exps:
        num *= factorial(a)
    return Fraction(num, factorial(len(exps) + sum(exps)))


def _integrate(f: Monomials) -> Fraction:
    return sum((c * simplex_monomial_integral(e) for e, c in f.items()), Fraction(0))


def _one_minus_sum_power(n: int, nvars: int) -> Monomials:
    """(1 - t_1 - ... - t_nvars)^n expanded into monomials."""
    out: Monomials = {}

    def rec(i: int, left: int, cur: list[int], coeff: int):
        if i == nvars:
            e = tuple(cur)
            sign = -1 if sum(cur) % 2 else 1
            out[e] = out.get(e, Fraction(0)) + sign * coeff
            return
        for j in range(left + 1):
            rec(i + 1, left - j, cur + [j], coeff * comb(left, j))

    rec(0, n, [], 1)
    return out


def _integrate_out(f: Monomials, m: int, k: int) -> Monomials:
    """int_0^{1 - sum others} f dt_m as a polynomial in the other k-1 variables."""
    out: Monomials = {}
    for exps, coeff in f.items():
        am = exps[m]
        rest = tuple(a for j, a in enumerate(exps) if j != m)
        for se, sc in _one_minus_sum_power(am + 1, k - 1).items():
            e = tuple(r + s for r, s in zip(rest, se))
            out[e] = out.get(e, Fraction(0)) + coeff * sc / (am + 1)
    return {e: c for e, c in out.items() if c}


def i_form_value(F: PolynomialF) -> Fraction:
    """I(F) = integral of F^2 over the simplex."""
    f = F.as_dict()
    return _integrate(_poly_mul(f, f))


def j_form_values(F: PolynomialF) -> list[Fraction]:
    """[J^(1)(F), ..., J^(k)(F)], each J^(m) = integral of (int F dt_m)^2."""
    f = F.as_dict()
    out = []
    for m in range(F.k):
        g = _integrate_out(f, m, F.k)
        out.append(_integrate(_poly_mul(g, g)))
    return out


@dataclass
class RatioProblem:
    """Exact-rational pencil: A holds the J-forms, B the I-form."""

    k: int
    basis: list[PolynomialF]
    A: list[list[Fraction]]
    B: list[list[Fraction]]


def _rank_full(M: list[list[Fraction]]) -> bool:
    n = len(M)
    mat = [row[:] for row in M]
    for col in range(n):
        piv = next((r for r in range(col, n) if mat[r][col] != 0), None)
        if piv is None:
            return False
        mat[col], mat[piv] = mat[piv], mat[col]
        inv = 1 / mat[col][col]
        for r in range(col + 1, n):
            f = mat[r][col] * inv
            for c in range(col, n):
                mat[r][c] -= f * mat[col][c]
    return True


def assemble_forms(k: int, basis: list[PolynomialF]) -> RatioProblem:
    """Assemble the exact J and I bilinear forms on a polynomial basis."""
    if any(b.k != k for b in basis):
        raise ValueError("basis polynomials must all have k variables")
    n = len(basis)
    dicts = [b.as_dict() for b in basis]
    B = [[_integrate(_poly_mul(dicts[i], dicts[j])) for j in range(n)] for i in range(n)]
    if not _rank_full(B):
        raise ValueError("basis is linearly dependent (I-form is rank deficient)")
    partials = [[_integrate_out(d, m, k) for d in dicts] for m in range(k)]
    A = [[Fraction(0)] * n for _ in range(n)]
    for m in range(k):
        gm = partials[m]
        for i in range(n):
            for j in range(i, n):
                A[i][j] += _integrate(_poly_mul(gm[i], gm[j]))
    for i in range(n):
        for j in range(i):
            A[i][j] = A[j][i]
    return RatioProblem(k=k, basis=basis, A=A, B=B)


@dataclass
class RatioResult:
    """Certified eigenvalue bound: exact Rayleigh quotient of `coefficients`."""

    value: float
    exact_value: Fraction
    coefficients: list[Fraction]
    residual: float
    float_eigenvalue: float


def maximize_ratio(problem: RatioProblem, tolerance: float = 1e-10) -> RatioResult:
    """Largest generalized eigenvalue of (A, B) with rational certification.

    The float eigenvector is rationalized and its quotient x'Ax / x'Bx is
    recomputed exactly; that quotient is the returned value, a genuine
    lower bound for the supremum over the basis span.
    """
    n = len(problem.basis)
    Af = np.array([[float(v) for v in row] for row in problem.A])
    Bf = np.array([[float(v) for v in row] for row in problem.B])
    try:
        eigvals, eigvecs = scipy.linalg.eigh(Af, Bf)
    except np.linalg.LinAlgError as exc:
        raise ValueError(f"I-form is not positive definite: {exc}") from exc
    lam = float(eigvals[-1])
    x = eigvecs[:, -1]
    x = x / np.max(np.abs(x))
    residual = float(np.linalg.norm(Af @ x - lam * Bf @ x) / np.linalg.norm(Bf @ x))
    if residual > tolerance:
        raise ValueError(f"residual {residual:.3e} exceeds tolerance {tolerance:.3e}")
    xr = [Fraction(float(c)).limit_denominator(10**12) for c in x]
    num = Fraction(0)
    den = Fraction(0)
    for i in range(n):
        for j in range(n):
            num += xr[i] * problem.A[i][j] * xr[j]
            den += xr[i] * problem.B[i][j] * xr[j]
    exact = num / den
    return RatioResult(
        value=float(exact),
        exact_value=exact,
        coefficients=xr,
        residual=residual,
        float_eigenvalue=lam,
    )


def symmetric_basis(k: int, degree: int) -> list[PolynomialF]:
    """Monomials (1 - P1)^a * P2^b with a + 2b <= degree (P1 = sum t, P2 = sum t^2).

    Ordered by total degree so bases nest as the degree cap grows.
    Candidates that are linear combinations of earlier ones (this happens
    for small k, where the power sums satisfy relations) are dropped.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if degree < 0:
        raise ValueError(f"degree must be >= 0, got {degree}")
    one: Monomials = {(0,) * k: Fraction(1)}
    p1: Monomials = {tuple(1 if j == i else 0 for j in range(k)): Fraction(1) for i in range(k)}
    p2: Monomials = {tuple(2 if j == i else 0 for j in range(k)): Fraction(1) for i in range(k)}
    base = dict(one)
    for e, c in p1.items():
        base[e] = base.get(e, Fraction(0)) - c
    out: list[PolynomialF] = []
    span: list[dict] = []  # reduced row echelon rows as monomial dicts
    for total in range(degree + 1):
        for b in range(total // 2 + 1):
            a = total - 2 * b
            poly = _poly_mul(_poly_pow(base, a, k), _poly_pow(p2, b, k))
            if _reduce_against(span, poly):
                out.append(PolynomialF.from_dict(k, poly, tag=f"(1-P1)^{a} P2^{b}"))
    return out


def _reduce_against(span: list[Monomials], poly: Monomials) -> bool:
    """Gaussian elimination step; appends the residue to span if nonzero."""
    residue = dict(poly)
    for row in span:
        pivot = max(row)
        if residue.get(pivot):
            f = residue[pivot] / row[pivot]
            for e, c in row.items():
                residue[e] = residue.get(e, Fraction(0)) - f * c
            residue = {e: c for e, c in residue.items() if c}
    if not residue:
        return False
    span.append(residue)
    return True


def mk_value(k: int, degree: int = 3, tolerance: float = 1e-10) -> RatioResult:
    """Certified lower bound on the simplex ratio for k variables."""
    problem = assemble_forms(k, symmetric_basis(k, degree))
    return maximize_ratio(problem, tolerance)


@dataclass
class LowerBoundReport:
    k: int
    computed: float
    bound: float | None
    applicable: bool
    exceeds: bool | None


def mk_lower_bound_check(k: int, computed: float) -> LowerBoundReport:
    """Compare a computed value against log k - 2 log log k - 2 (informational).

    The comparison only means something for large k; below k = 3 the
    formula is negative or undefined and the report says so.
    """
    if k < 3:
        return LowerBoundReport(k=k, computed=computed, bound=None, applicable=False, exceeds=None)
    bound = math.log(k) - 2 * math.log(math.log(k)) - 2
    return LowerBoundReport(
        k=k, computed=computed, bound=bound, applicable=True, exceeds=computed > bound
    )


def required_k_for_m(m: int, theta: float, mk_table: dict[int, float]) -> int | None:
    """Smallest k in the table with ceil(theta * bound) > m - 1, else None."""
    if not mk_table:
        raise ValueError("mk_table must be nonempty")
    if not 0 < theta < 0.25:
        raise ValueError(f"theta must lie in (0, 1/4), got {theta}")
    for k in sorted(mk_table):
        if math.ceil(theta * mk_table[k]) > m - 1:
            return k
    return None
