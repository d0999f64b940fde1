import numpy as np
import pytest

from artinlab import primroot as pr
from artinlab.arith import primes_in_range
from artinlab.errors import InsufficientDataError

from oracles import naive_order, naive_sieve


class TestPredicates:
    def test_examples(self):
        assert pr.is_primitive_root(2, 11)  # order 10 by direct iteration
        assert naive_order(2, 11) == 10
        assert not pr.is_primitive_root(2, 7)  # order 3
        assert naive_order(2, 7) == 3
        assert not pr.is_primitive_root(6, 3)
        assert not pr.is_primitive_root(22, 11)

    def test_in_pq0_examples(self):
        assert pr.in_Pq0(2, 7, 2)  # 2^3 = 8 = 1 mod 7
        assert not pr.in_Pq0(2, 7, 3)  # 2^2 = 4
        assert not pr.in_Pq0(2, 11, 3)  # 3 does not divide 10
        with pytest.raises(ValueError):
            pr.in_Pq0(14, 7, 2)

    def test_pr_iff_no_pq0(self):
        for g in (2, 3, 5, -2, 6):
            for p in naive_sieve(2, 1000):
                if g % p == 0:
                    continue
                has_failure = any(
                    pr.in_Pq0(g, p, q) for q in naive_sieve(2, p) if (p - 1) % q == 0
                )
                assert pr.is_primitive_root(g, p) == (not has_failure), (g, p)

    def test_p2_convention(self):
        assert pr.is_primitive_root(3, 2)
        assert not pr.is_primitive_root(4, 2)
        assert pr.classify(3, 2).status == pr.STATUS_PRIMITIVE_ROOT
        assert pr.classify(4, 2).status == pr.STATUS_DIVIDES_G


class TestClassify:
    def test_examples(self):
        assert pr.classify(2, 11) == pr.QClassification(11, "primitive_root")
        assert pr.classify(2, 7) == pr.QClassification(7, "in_pq", 2)
        assert pr.classify(6, 3).status == pr.STATUS_DIVIDES_G

    def test_least_q(self):
        # p = 43: (2|43) = -1 (43 = 3 mod 8) so q = 2 passes, but the order
        # of 2 is 14 which divides 42/3, so q = 3 is the least failure
        assert naive_order(2, 43) == 14
        assert not pr.in_Pq0(2, 43, 2)
        assert pr.in_Pq0(2, 43, 3)
        assert pr.classify(2, 43) == pr.QClassification(43, "in_pq", 3)

    def test_sandwich_identity(self):
        # exactly one status per prime; q is the least failing prime
        for g in (2, 3, 5):
            primes, status, qs = pr.classify_range(g, 2, 3000)
            for p, st, q in zip(primes.tolist(), status.tolist(), qs.tolist()):
                if st == 0:
                    assert g % p == 0
                    continue
                failing = [
                    qq for qq in naive_sieve(2, p) if (p - 1) % qq == 0 and pr.in_Pq0(g, p, qq)
                ]
                if st == 1:
                    assert not failing, (g, p)
                else:
                    assert failing and failing[0] == q, (g, p)


class TestEnumerate:
    def test_examples(self):
        assert pr.enumerate_pr_primes(2, 3, 30) == [3, 5, 11, 13, 19, 29]
        assert pr.enumerate_pr_primes(4, 3, 500) == []
        assert pr.enumerate_pr_primes(2, 7, 8) == []

    def test_union_monotonicity(self):
        a, b, c = 2, 5000, 20000
        assert (
            pr.enumerate_pr_primes(2, a, b) + pr.enumerate_pr_primes(2, b, c)
            == pr.enumerate_pr_primes(2, a, c)
        )

    def test_window_size_invariance(self):
        full = pr.enumerate_pr_primes(3, 2, 3 * 10**4)
        assert pr.enumerate_pr_primes(3, 2, 3 * 10**4, window=997) == full

    def test_threads_do_not_change_results(self):
        base = pr.enumerate_pr_primes(2, 2, 10**5, window=2**14, threads=1)
        assert pr.enumerate_pr_primes(2, 2, 10**5, window=2**14, threads=4) == base

    def test_square_g_empty_over_odd_primes(self):
        for g in (4, 9, 25):
            assert pr.enumerate_pr_primes(g, 3, 10**4) == []


class TestGapStats:
    def test_example_g2(self):
        rep = pr.gap_stats(2, 100, 2)
        assert rep.min_gap == 2 and rep.attained_at == 3

    def test_m3(self):
        rep = pr.gap_stats(2, 100, 3)
        qs = pr.enumerate_pr_primes(2, 2, 101)
        spans = [qs[i + 2] - qs[i] for i in range(len(qs) - 2)]
        assert rep.min_gap == min(spans)

    def test_histogram_consistency(self):
        rep = pr.gap_stats(2, 10**4, 2)
        qs = pr.enumerate_pr_primes(2, 2, 10**4 + 1)
        assert sum(rep.histogram.values()) == len(qs) - 1
        diffs = np.diff(qs)
        assert rep.histogram[2] == int((diffs == 2).sum())

    def test_min_gap_even(self):
        rep = pr.gap_stats(2, 10**4, 2)
        assert rep.min_gap % 2 == 0

    def test_insufficient_data(self):
        with pytest.raises(InsufficientDataError):
            pr.gap_stats(4, 100, 2)  # square g: empty census


class TestConsecutiveRun:
    def test_examples(self):
        assert pr.consecutive_run(2, 100, 2) == (3, 5)
        assert pr.consecutive_run(2, 10, 1) == (3,)
        assert pr.consecutive_run(2, 100, 50) is None

    def test_run_is_consecutive_primes(self):
        run = pr.consecutive_run(2, 10**4, 3)
        assert run is not None
        lo, hi = run[0], run[-1]
        assert primes_in_range(lo, hi + 1) == list(run)
        for p in run:
            assert pr.is_primitive_root(2, p)

    def test_run_crosses_windows(self):
        assert pr.consecutive_run(2, 10**4, 3, window=7) == pr.consecutive_run(2, 10**4, 3)
