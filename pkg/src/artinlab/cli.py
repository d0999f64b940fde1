"""Command-line front end: one subcommand per workflow, machine-readable output.

Exit codes: 0 success, 1 invariant violation detected during the run,
2 usage errors, 3 resource limits.  Reports go to stdout (or --out);
progress and diagnostics go to stderr only.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__, backend_name
from . import discriminants, heuristics, mkopt, primroot, quadchar, sieve
from .arith import is_prime
from .errors import InvariantViolation, ResourceLimitError

EXIT_OK = 0
EXIT_INVARIANT = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


@dataclass
class RunConfig:
    """Common run parameters shared by the subcommands."""

    fmt: str = "text"
    out: str | None = None
    threads: int = 0  # 0 = auto
    deterministic: bool = False
    window: int = primroot.DEFAULT_WINDOW
    params: dict = field(default_factory=dict)

    def resolve_threads(self) -> int:
        if self.deterministic:
            return 1
        if self.threads > 0:
            return self.threads
        return primroot.default_threads()


class _Progress:
    """Fixed-cadence progress lines on stderr; silent for fast runs."""

    def __init__(self, label: str, cadence: float = 2.0):
        self.label = label
        self.cadence = cadence
        self.last = time.monotonic()

    def __call__(self, done: int, total: int):
        now = time.monotonic()
        if now - self.last >= self.cadence:
            self.last = now
            print(f"progress: {self.label} {done}/{total} windows", file=sys.stderr)


def _emit(cfg: RunConfig, command: str, rows: list[dict]) -> None:
    meta = {"command": command, "params": cfg.params, "version": __version__}
    if cfg.fmt == "json":
        text = json.dumps({"meta": meta, "data": rows}, indent=2, sort_keys=True) + "\n"
    elif cfg.fmt == "csv":
        buf = io.StringIO()
        fields: list[str] = []
        for row in rows:
            for key in row:
                if key not in fields:
                    fields.append(key)
        writer = csv.DictWriter(buf, fieldnames=fields or ["empty"], lineterminator="\r\n")
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
        text = buf.getvalue()
    else:
        lines = [f"# {command} ({backend_name()} backend)"]
        for row in rows:
            lines.append("  ".join(f"{k}={v}" for k, v in row.items()))
        text = "\n".join(lines) + "\n"
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fmt_float(x: float | None) -> float | None:
    return None if x is None else float(f"{x:.12g}")


# ---------------------------------------------------------------- subcommands


def cmd_pr_enumerate(cfg, args):
    ps = primroot.enumerate_pr_primes(
        args.g, args.start, args.to + 1, window=cfg.window, threads=cfg.resolve_threads()
    )
    return [{"p": p} for p in ps], EXIT_OK


def cmd_classify(cfg, args):
    if args.p is not None:
        cls = primroot.classify(args.g, args.p)
        return [{"p": cls.p, "status": cls.status, "q": cls.q}], EXIT_OK
    primes, status, qs = primroot.classify_range(
        args.g, args.start, args.to + 1, window=cfg.window, threads=cfg.resolve_threads()
    )
    names = {0: "divides_g", 1: "primitive_root", 2: "in_pq"}
    rows = []
    for p, st, q in zip(primes.tolist(), status.tolist(), qs.tolist()):
        rows.append({"p": p, "status": names[st], "q": q if st == 2 else None})
    return rows, EXIT_OK


def cmd_gaps(cfg, args):
    rep = primroot.gap_stats(args.g, args.x, args.m, window=cfg.window,
                             threads=cfg.resolve_threads())
    rows = [{
        "kind": "summary", "g": rep.g, "x": rep.x, "m": rep.m,
        "min_gap": rep.min_gap, "attained_at": rep.attained_at,
        "gap": None, "count": None,
    }]
    for gap in sorted(rep.histogram):
        rows.append({"kind": "gap", "g": rep.g, "x": rep.x, "m": rep.m,
                     "min_gap": None, "attained_at": None,
                     "gap": gap, "count": rep.histogram[gap]})
    return rows, EXIT_OK


def cmd_runs(cfg, args):
    run = primroot.consecutive_run(args.g, args.x, args.m, window=cfg.window)
    if run is None:
        return [{"found": False, "start": None, "primes": None}], EXIT_OK
    return [{"found": True, "start": run[0], "primes": ";".join(map(str, run))}], EXIT_OK


def _report_row(rep: heuristics.CountReport) -> dict:
    return {
        "label": rep.label, "x": rep.x, "observed": rep.observed,
        "predicted": _fmt_float(rep.predicted), "ratio": _fmt_float(rep.ratio),
        "warning": rep.warning,
    }


def cmd_density(cfg, args):
    rep = heuristics.artin_density(args.g, args.x, window=cfg.window,
                                   threads=cfg.resolve_threads())
    return [_report_row(rep)], EXIT_OK


def cmd_hooley(cfg, args):
    rep = heuristics.hooley_count_check(args.g, args.q, args.x, window=cfg.window,
                                        threads=cfg.resolve_threads())
    return [_report_row(rep)], EXIT_OK


def cmd_twin(cfg, args):
    rep = heuristics.twin_pr_count(args.x, window=cfg.window, threads=cfg.resolve_threads())
    return [_report_row(rep)], EXIT_OK


def cmd_tail(cfg, args):
    count = heuristics.order_tail_census(args.g, args.x, args.L, window=cfg.window,
                                         threads=cfg.resolve_threads())
    return [{"g": args.g, "x": args.x, "L": args.L, "count": count}], EXIT_OK


def cmd_weil_check(cfg, args):
    degrees = tuple(int(d) for d in args.degrees.split(","))
    reports = quadchar.weil_suite(args.pmax, degrees=degrees)
    rows = []
    code = EXIT_OK
    for d in degrees:
        rep = reports[d]
        rows.append({
            "degree": d, "primes_checked": rep.primes_checked,
            "classes_checked": rep.classes_checked,
            "polynomials_covered": rep.polynomials_covered,
            "max_normalized": _fmt_float(rep.max_normalized),
            "violations": len(rep.violations),
        })
        if rep.violations:
            code = EXIT_INVARIANT
            print(f"invariant violation: Weil bound fails at {rep.violations[:5]}",
                  file=sys.stderr)
    return rows, code


def cmd_quadcount(cfg, args):
    offsets = tuple(int(v) for v in args.offsets.split(","))
    signs = tuple(1 if v in ("+", "+1", "1") else -1 for v in args.signs.split(","))
    pattern = quadchar.SignPattern(offsets, signs)
    count = quadchar.count_sign_pattern_solutions(args.p, pattern)
    k = pattern.k
    bound = args.p / 2**k - (k - 1) * math.sqrt(args.p) - k
    ok = quadchar.sign_count_lower_bound_ok(args.p, k, count)
    if not ok:
        print(f"invariant violation: count {count} below the lower bound {bound:.3f}",
              file=sys.stderr)
    return [{
        "p": args.p, "k": k, "count": count,
        "lower_bound": _fmt_float(bound), "satisfied": ok,
    }], EXIT_OK if ok else EXIT_INVARIANT


def cmd_tuple(cfg, args):
    tup = sieve.paper_tuple(args.k, args.K)
    rows = [{"i": i + 1, "h": h, "K": tup.K, "admissible": sieve.is_admissible(tup.offsets)}
            for i, h in enumerate(tup.offsets)]
    return rows, EXIT_OK


def _build_tuple(args) -> sieve.TupleH:
    if args.offsets:
        return sieve.TupleH(tuple(int(v) for v in args.offsets.split(",")))
    return sieve.paper_tuple(args.k, args.tuple_K)


def cmd_nu(cfg, args):
    tup = _build_tuple(args)
    cert = discriminants.choose_nu(args.g, tup, args.K, args.z,
                                   exclude_non_tuple=args.exclude_non_tuple)
    report = discriminants.verify_nu(cert)
    g0 = discriminants.fundamental_discriminant(args.g)
    disc = discriminants.prime_discriminant_factorization(g0, args.K)
    row = {
        "nu": cert.nu.residue, "modulus": cert.nu.modulus, "g0": g0,
        "case": disc.case_tag.value,
        "factors": ";".join(map(str, disc.factors)),
        "coprime_to_W": report.coprime_to_W,
        "shifted_coprime": report.shifted_coprime,
        "kronecker_minus_one": report.kronecker_minus_one,
        "composite_classes": ";".join(f"{p}:{h}" for p, h in cert.composite_classes),
    }
    code = EXIT_OK
    if args.verify and not report.all_ok:
        print(f"invariant violation: {report.failures}", file=sys.stderr)
        code = EXIT_INVARIANT
    return [row], code


def cmd_sieve_demo(cfg, args):
    tup = _build_tuple(args)
    cert = discriminants.choose_nu(args.g, tup, args.K, args.z)
    g0 = discriminants.fundamental_discriminant(args.g)
    W = discriminants.build_W(g0, args.z)
    basis = mkopt.symmetric_basis(tup.k, args.degree)
    F = basis[1] if len(basis) > 1 else basis[0]  # 1 - P1 unless degree 0
    params = sieve.SieveParams.build(N=args.N, theta=args.theta, W=W, nu=cert.nu, F=F)
    table = sieve.lambda_weights(params, tup)
    sums = sieve.compute_sums(args.g, params, tup, table, z=args.z)
    rows = [{
        "kind": "summary", "m": None, "N": args.N, "R": params.R, "W": W,
        "nu": cert.nu.residue, "table_size": len(table.entries),
        "S1": _fmt_float(sums.S1), "S2": _fmt_float(sums.S2),
        "S2_tilde": _fmt_float(sums.S2_tilde),
        "EX": _fmt_float(sums.EX), "EY": _fmt_float(sums.EY),
        "predicted_S1": _fmt_float(sums.predicted_S1),
        "predicted_S2": _fmt_float(sums.predicted_S2),
        "ratio_S1": _fmt_float(sums.S1 / sums.predicted_S1 if sums.predicted_S1 else None),
        "ratio_S2": _fmt_float(sums.S2 / sums.predicted_S2 if sums.predicted_S2 else None),
    }]
    for m in range(tup.k):
        rows.append({
            "kind": "per_m", "m": m + 1, "N": None, "R": None, "W": None, "nu": None,
            "table_size": None,
            "S1": None, "S2": _fmt_float(sums.per_m[m]),
            "S2_tilde": _fmt_float(sums.per_m_tilde[m]),
            "EX": None, "EY": None, "predicted_S1": None, "predicted_S2": None,
            "ratio_S1": None, "ratio_S2": None,
        })
    return rows, EXIT_OK


def cmd_mk(cfg, args):
    res = mkopt.mk_value(args.k, args.degree, tolerance=args.tol)
    check = mkopt.mk_lower_bound_check(args.k, res.value)
    return [{
        "k": args.k, "degree": args.degree, "value": _fmt_float(res.value),
        "residual": _fmt_float(res.residual),
        "asymptotic_bound": _fmt_float(check.bound),
        "bound_applicable": check.applicable,
    }], EXIT_OK


def cmd_required_k(cfg, args):
    ks = [int(v) for v in args.ks.split(",")]
    table = {}
    rows = []
    for k in ks:
        val = mkopt.mk_value(k, args.degree).value
        table[k] = val
        qualifies = math.ceil(args.theta * val) > args.m - 1
        rows.append({"kind": "mk", "k": k, "mk": _fmt_float(val),
                     "qualifies": qualifies, "answer": None})
    answer = mkopt.required_k_for_m(args.m, args.theta, table)
    rows.append({"kind": "answer", "k": None, "mk": None, "qualifies": None,
                 "answer": answer if answer is not None else "not-found"})
    return rows, EXIT_OK


# ------------------------------------------------------------------- plumbing


def _read_config(path: str) -> dict:
    out = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"config line without '=': {line!r}")
            key, val = (s.strip() for s in line.split("=", 1))
            out[key.replace("-", "_")] = val
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="artinlab",
        description="Empirical workbench for primes with a prescribed primitive root",
    )
    parser.add_argument("--version", action="version", version=f"artinlab {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=("csv", "json", "text"),
                        default="text")
    common.add_argument("--out", default=None, help="write the report to a file")
    common.add_argument("--config", default=None, help="key = value defaults file")
    common.add_argument("--threads", type=int, default=0,
                        help="census worker threads (default: cores; env ARTINLAB_THREADS)")
    common.add_argument("--deterministic", action="store_true",
                        help="sequential window order (results are identical either way)")
    common.add_argument("--window", type=int, default=primroot.DEFAULT_WINDOW,
                        help="census window size")

    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, parents=[common], **kwargs)
        p.set_defaults(fn=fn)
        return p

    p = add("pr-enumerate", cmd_pr_enumerate, help="primes with g as a primitive root")
    p.add_argument("--g", type=int)
    p.add_argument("--from", dest="start", type=int, default=2)
    p.add_argument("--to", type=int)

    p = add("classify", cmd_classify, help="per-prime classification census")
    p.add_argument("--g", type=int)
    p.add_argument("--from", dest="start", type=int, default=2)
    p.add_argument("--to", type=int)
    p.add_argument("--p", type=int, help="classify a single prime instead of a census")

    p = add("gaps", cmd_gaps, help="minimal m-term span in the census")
    p.add_argument("--g", type=int)
    p.add_argument("--x", type=int)
    p.add_argument("--m", type=int, default=2)

    p = add("runs", cmd_runs, help="first run of m consecutive primes, all with g a primitive root")
    p.add_argument("--g", type=int)
    p.add_argument("--x", type=int)
    p.add_argument("--m", type=int)

    p = add("density", cmd_density, help="empirical primitive-root density vs Artin product")
    p.add_argument("--g", type=int)
    p.add_argument("--x", type=int)

    p = add("hooley", cmd_hooley, help="q-th power residue census vs splitting density")
    p.add_argument("--g", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--x", type=int)

    p = add("twin", cmd_twin, help="twin pairs with 2 a primitive root of both")
    p.add_argument("--x", type=int)

    p = add("tail", cmd_tail, help="census of primes with small multiplicative order")
    p.add_argument("--g", type=int)
    p.add_argument("--x", type=int)
    p.add_argument("--L", type=int)

    p = add("weil-check", cmd_weil_check, help="character-sum bound sweep")
    p.add_argument("--pmax", type=int)
    p.add_argument("--degrees", default="2,3")

    p = add("quadcount", cmd_quadcount, help="sign-pattern solution count")
    p.add_argument("--p", type=int)
    p.add_argument("--offsets", help="comma-separated h_i")
    p.add_argument("--signs", help="comma-separated +/-")

    p = add("tuple", cmd_tuple, help="factorial-spaced admissible tuple")
    p.add_argument("--k", type=int)
    p.add_argument("--K", type=int, default=None)

    p = add("nu", cmd_nu, help="pre-sieving residue class construction")
    p.add_argument("--g", type=int)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--K", type=int, default=16)
    p.add_argument("--z", type=int, default=5)
    p.add_argument("--tuple-K", type=int, default=None,
                   help="factorial base for the tuple (default 4 for k<=2 else 7)")
    p.add_argument("--offsets", default=None, help="explicit tuple offsets")
    p.add_argument("--exclude-non-tuple", action="store_true")
    p.add_argument("--verify", action="store_true")

    p = add("sieve-demo", cmd_sieve_demo, help="weighted sums over one window")
    p.add_argument("--g", type=int)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--K", type=int, default=16)
    p.add_argument("--z", type=int, default=5)
    p.add_argument("--N", type=int, default=10**5)
    p.add_argument("--theta", type=float, default=0.2)
    p.add_argument("--degree", type=int, default=1)
    p.add_argument("--tuple-K", type=int, default=None)
    p.add_argument("--offsets", default=None)

    p = add("mk", cmd_mk, help="certified variational lower bound")
    p.add_argument("--k", type=int)
    p.add_argument("--degree", type=int, default=3)
    p.add_argument("--tol", type=float, default=1e-10)

    p = add("required-k", cmd_required_k, help="least k detecting m primes at level theta")
    p.add_argument("--m", type=int)
    p.add_argument("--theta", type=float, default=0.24)
    p.add_argument("--ks", default="1,2,3,4,5")
    p.add_argument("--degree", type=int, default=3)

    return parser


# arguments that must be present (via argv or config) per subcommand
_REQUIRED = {
    "pr-enumerate": ("g", "to"),
    "classify": ("g",),
    "gaps": ("g", "x"),
    "runs": ("g", "x", "m"),
    "density": ("g", "x"),
    "hooley": ("g", "q", "x"),
    "twin": ("x",),
    "tail": ("g", "x", "L"),
    "weil-check": ("pmax",),
    "quadcount": ("p", "offsets", "signs"),
    "tuple": ("k",),
    "nu": ("g",),
    "sieve-demo": ("g",),
    "mk": ("k",),
    "required-k": ("m",),
}

# execution-only knobs: they never change results, so they stay out of meta
_NON_PARAMS = ("fn", "fmt", "out", "config", "threads", "deterministic", "window")


def _apply_defaults(args):
    missing = [name for name in _REQUIRED.get(args.command, ())
               if getattr(args, name, None) is None]
    if missing:
        raise ValueError(
            f"{args.command} requires --" + ", --".join(missing)
        )
    if getattr(args, "tuple_K", None) is None and hasattr(args, "tuple_K"):
        args.tuple_K = 4 if args.k <= 2 else 7
    if args.command == "classify" and args.p is None and args.to is None:
        raise ValueError("classify requires --to or --p")


def _prescan_config(argv) -> str | None:
    argv = list(argv if argv is not None else sys.argv[1:])
    for i, tok in enumerate(argv):
        if tok == "--config" and i + 1 < len(argv):
            return argv[i + 1]
        if tok.startswith("--config="):
            return tok.split("=", 1)[1]
    return None


def run(argv=None) -> int:
    parser = build_parser()
    # a config file supplies defaults; explicit argv wins because it is parsed last
    path = _prescan_config(argv)
    if path:
        config = _read_config(path)
        known = {a.dest for sub in parser._subparsers._group_actions
                 for choice in sub.choices.values() for a in choice._actions}
        bad = set(config) - known
        if bad:
            raise ValueError(f"unknown config keys: {sorted(bad)}")
        for sub in parser._subparsers._group_actions:
            for choice in sub.choices.values():
                choice.set_defaults(**{k: type_convert(v) for k, v in config.items()
                                       if k in {a.dest for a in choice._actions}})
    args = parser.parse_args(argv)
    _apply_defaults(args)
    cfg = RunConfig(
        fmt=args.fmt, out=args.out, threads=args.threads,
        deterministic=args.deterministic, window=args.window,
        params={k: v for k, v in sorted(vars(args).items())
                if k not in _NON_PARAMS and not callable(v)},
    )
    rows, code = args.fn(cfg, args)
    _emit(cfg, args.command, rows)
    return code


def type_convert(v: str):
    for cast in (int, float):
        try:
            return cast(v)
        except ValueError:
            pass
    if v.lower() in ("true", "false"):
        return v.lower() == "true"
    return v


def main(argv=None) -> int:
    try:
        return run(argv)
    except (InvariantViolation,) as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
