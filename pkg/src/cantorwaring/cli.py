"""Command line front end.

Exit codes: 0 success, 1 usage error, 2 verification failure,
3 budget or cap exceeded.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import certio
from .bounds import (
    RatioConditionViolated, check_conditions, integer_threshold, profile, large_m_threshold,
)
from .cantor import DEFAULT_DEPTH_CAP, CantorParams, DepthCapExceeded
from .coverage import (
    DEFAULT_BUDGET, BudgetExceeded, enumerate_image, gap_report, three_power_epsilon,
    two_power_window,
)
from .dust import ComplexRational, OutsideGuaranteedRegion, decompose_complex, disk_cover_budget
from .numerics import DEFAULT_COMPARE_CAP, UndecidableComparison, to_display
from .padic import (
    PadicCantorParams, PadicError, ResidueBudgetExceeded, decompose_linear, decompose_power,
    residue_lower_bound,
)
from .powersum import (
    ParametersNotCertified, PowerSumProblem, TargetOutOfRange, build_plan, decompose,
)

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class VerificationFailed(Exception):
    pass


@dataclass
class RunConfig:
    depth_cap: int = DEFAULT_DEPTH_CAP
    budget: int = DEFAULT_BUDGET
    compare_cap: int = DEFAULT_COMPARE_CAP
    residue_budget: int = 10 ** 6

    @classmethod
    def from_env(cls, env=None) -> "RunConfig":
        env = os.environ if env is None else env
        cfg = cls()
        for name in ("depth_cap", "budget", "compare_cap", "residue_budget"):
            key = "CANTORWARING_" + name.upper()
            if key in env:
                try:
                    val = int(env[key])
                except ValueError:
                    raise UsageError(f"{key} must be an integer")
                if val <= 0:
                    raise UsageError(f"{key} must be positive")
                setattr(cfg, name, val)
        return cfg


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _q(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}")


def _gamma(text: str):
    if "," in text:
        return tuple(int(d) for d in text.split(","))
    q = Fraction(text)
    return q.numerator if q.denominator == 1 else q


def _emit(doc: dict, out):
    text = certio.dumps(doc)
    if out:
        Path(out).write_text(text)
    return text


def _print_table(rows, cols):
    widths = [max(len(c), *(len(str(r.get(c, ""))) for r in rows)) for c in cols]
    print("  ".join(c.rjust(w) for c, w in zip(cols, widths)))
    for r in rows:
        print("  ".join(str(r.get(c, "")).rjust(w) for c, w in zip(cols, widths)))


# ---------------------------------------------------------------------------
# subcommands


def cmd_bounds(args, cfg):
    params = CantorParams(args.r)
    ms = range(args.m, (args.m_max or args.m) + 1)
    rows = []
    for m in ms:
        prof = profile(params, m)
        if args.k == "auto":
            k_target = prof.target_k
            inner = k_target - prof.k_star
        else:
            k_target = inner = int(args.k)
        rep = check_conditions(prof, inner)
        row = {"m": m, "k": k_target, "inner_k": inner, "n*": prof.n_star, "k*": prof.k_star}
        row.update({key: val for key, val in rep.as_row().items() if key != "k"})
        try:
            row["route"] = build_plan(params, k_target, m).route if m > 1 else "linear"
        except (ParametersNotCertified, ValueError):
            row["route"] = "-"
        rows.append(row)
    _print_table(rows, ["m", "k", "inner_k", "n*", "k*", "l0", "m0", "A1", "A2", "A2'",
                        "A3", "A4", "route"])
    if args.threshold:
        try:
            enc = large_m_threshold(params)
            print(f"threshold in [{to_display(enc.lo)}, {to_display(enc.hi)}], "
                  f"integer threshold {integer_threshold(params)}")
        except RatioConditionViolated as e:
            print(f"threshold: {e}")
    if args.out:
        m = args.m
        prof = profile(params, m)
        k = prof.target_k - prof.k_star if args.k == "auto" else int(args.k)
        _emit(certio.wrap("bounds", certio.encode_bounds(params.r, m, k)), args.out)
    return EXIT_OK


def cmd_decompose(args, cfg):
    prob = PowerSumProblem(CantorParams(args.r), args.k, args.m)
    cert = decompose(prob, args.target, args.digits, mode=args.mode)
    ok, err = cert.replay()
    doc = certio.to_document(cert)
    text = _emit(doc, args.out)
    if not args.out:
        print(text, end="")
    else:
        print(f"route {cert.route}, {len(cert.entries)} distinct words, depth {cert.depth}, "
              f"residual <= {float(cert.residual_bound):.2e}, replay {doc['replay_status']}")
    if not ok:
        raise VerificationFailed("certificate failed its own replay")
    return EXIT_OK


def cmd_coverage(args, cfg):
    prob = PowerSumProblem(CantorParams(args.r), args.k, args.m)
    cov = enumerate_image(prob, args.n, cfg.budget)
    rep = gap_report(cov)
    print(f"{len(cov.intervals)} interval(s), hull [{cov.lo}, {cov.hi}], sup gap {rep.sup_gap}")
    for a, b in rep.gaps[: args.show]:
        print(f"  gap ({a}, {b})")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["lo", "hi"])
            for a, b in cov.intervals:
                w.writerow([certio.qstr(a), certio.qstr(b)])
    if args.out:
        _emit(certio.to_document(cov), args.out)
    return EXIT_OK


def cmd_window(args, cfg):
    params = CantorParams(args.r)
    rows = two_power_window(params, args.m, args.max_n, args.cross_check, cfg.budget)
    if not rows:
        print("no window up to n =", args.max_n)
    for n, (a, b) in rows:
        print(f"n={n}  ({a}, {b})  ~ ({to_display(a, 10)}, {to_display(b, 10)})")
    return EXIT_OK


def cmd_epsilon(args, cfg):
    rows = []
    for m in range(args.m_min, args.m_max + 1):
        res = three_power_epsilon(m, cfg.compare_cap)
        rows.append({"m": m, "n": res.n, "epsilon": to_display(res.epsilon, 8),
                     "exact": certio.qstr(res.epsilon) if args.exact else ""})
    _print_table(rows, ["m", "n", "epsilon"] + (["exact"] if args.exact else []))
    return EXIT_OK


def cmd_dust(args, cfg):
    if args.budget_only:
        print(disk_cover_budget(args.m))
        return EXIT_OK
    if args.target is None:
        raise UsageError("--target is required unless --budget-only is given")
    cert = decompose_complex(CantorParams(args.r), args.m, ComplexRational.parse(args.target),
                             args.digits, args.k)
    doc = certio.to_document(cert)
    text = _emit(doc, args.out)
    if not args.out:
        print(text, end="")
    else:
        print(f"{cert.size} summands, {len(cert.summands)} distinct, residual <= "
              f"{float(cert.residual_bound):.2e}, replay {doc['replay_status']}")
    if doc["replay_status"] != "verified":
        raise VerificationFailed("certificate failed its own replay")
    return EXIT_OK


def cmd_padic(args, cfg):
    params = PadicCantorParams.make(args.p, args.gamma, args.digits)
    if args.lower_bound:
        if args.j is None:
            raise UsageError("--lower-bound needs --j")
        print(residue_lower_bound(params, args.m, args.j, cfg.residue_budget))
        return EXIT_OK
    if args.target is None:
        raise UsageError("--target is required")
    target = _gamma(args.target)
    if args.m == 1:
        cert = decompose_linear(target, params, args.digits)
    else:
        cert = decompose_power(target, args.m, params, args.digits)
    doc = certio.to_document(cert)
    text = _emit(doc, args.out)
    if not args.out:
        print(text, end="")
    else:
        print(f"{cert.size} summands, congruent mod {args.p}^{cert.congruence_depth}, "
              f"replay {doc['replay_status']}")
    if doc["replay_status"] != "verified":
        raise VerificationFailed("certificate failed its own replay")
    return EXIT_OK


def _check_expectation(doc) -> bool:
    exp = doc.get("expects")
    if not exp:
        return True
    payload = doc["payload"]
    if "conditions" in exp:
        row = payload["conditions"]
        return all(row.get(key) == val for key, val in exp["conditions"].items())
    if "coverage" in exp:
        return payload["intervals"] == exp["coverage"]
    if "gap" in exp:
        ivs = [(Fraction(a), Fraction(b)) for a, b in payload["intervals"]]
        gaps = [(ivs[i][1], ivs[i + 1][0]) for i in range(len(ivs) - 1)]
        want = tuple(Fraction(x) for x in exp["gap"])
        return want in gaps
    return False


def cmd_verify(args, cfg):
    worst = EXIT_OK
    for path in args.files:
        try:
            doc = certio.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError, certio.SchemaError) as e:
            print(f"{path}: unreadable ({e})")
            worst = max(worst, EXIT_VERIFY)
            continue
        ok = certio.verify_document(doc) and _check_expectation(doc)
        print(f"{path}: {doc['kind']} {'verified' if ok else 'FAILED'}")
        if not ok:
            worst = EXIT_VERIFY
    return worst


def fixture_documents() -> dict:
    third = Fraction(1, 3)
    docs = {}
    d = certio.wrap("bounds", certio.encode_bounds(third, 4, 13))
    d["expects"] = {"conditions": {"A1": True, "A2'": True, "A3": True, "A4": True, "l0": 3}}
    docs["ternary_m4_conditions.json"] = d
    cov = enumerate_image(PowerSumProblem(CantorParams(third), 2, 1), 2)
    d = certio.to_document(cov)
    d["expects"] = {"coverage": [["0/1", "2/1"]]}
    docs["steinhaus.json"] = d
    cov = enumerate_image(PowerSumProblem(CantorParams(third), 2, 2), 2)
    d = certio.to_document(cov)
    d["expects"] = {"gap": ["98/81", "100/81"]}
    docs["gap_98_100_over_81.json"] = d
    return docs


def emit_fixture_suite(path) -> list:
    out = Path(path)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for name, doc in fixture_documents().items():
        (out / name).write_text(certio.dumps(doc))
        written.append(out / name)
    return written


def cmd_fixtures(args, cfg):
    for p in emit_fixture_suite(args.out):
        print(p)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="cantorwaring",
                 description="Sums of powers on Cantor sets: bounds, certificates, probes.")
    ap.add_argument("--json", action="store_true", help="machine-readable errors on stdout")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("bounds", help="profile and side conditions")
    s.add_argument("--r", type=_q, default=Fraction(1, 3))
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--m-max", type=int)
    s.add_argument("--k", default="auto", help="'auto' or an integer")
    s.add_argument("--threshold", action="store_true", help="also print the large-m threshold")
    s.add_argument("--out")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("decompose", help="real target -> certificate")
    s.add_argument("--r", type=_q, default=Fraction(1, 3))
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--target", type=_q, required=True)
    s.add_argument("--digits", type=int, default=40)
    s.add_argument("--mode", choices=["certified", "best_effort"], default="certified")
    s.add_argument("--out")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("coverage", help="exact image of F_n^k")
    s.add_argument("--r", type=_q, default=Fraction(1, 3))
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--show", type=int, default=10, help="gaps to print")
    s.add_argument("--csv")
    s.add_argument("--out")
    s.set_defaults(func=cmd_coverage)

    s = sub.add_parser("window", help="intervals missed by two m-th powers")
    s.add_argument("--r", type=_q, default=Fraction(1, 3))
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--max-n", type=int, default=8)
    s.add_argument("--cross-check", type=int, default=6)
    s.set_defaults(func=cmd_window)

    s = sub.add_parser("epsilon", help="three m-th powers near 3")
    s.add_argument("--m-min", type=int, default=1)
    s.add_argument("--m-max", type=int, default=32)
    s.add_argument("--exact", action="store_true")
    s.set_defaults(func=cmd_epsilon)

    s = sub.add_parser("dust", help="complex target on C + iC")
    s.add_argument("--r", type=_q, default=Fraction(1, 3))
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--target", help='"re,im" with rational parts')
    s.add_argument("--digits", type=int, default=40)
    s.add_argument("--k", type=int)
    s.add_argument("--budget-only", action="store_true")
    s.add_argument("--out")
    s.set_defaults(func=cmd_dust)

    s = sub.add_parser("padic", help="p-adic Cantor set decompositions")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--gamma", type=_gamma, required=True, help="integer, a/b, or digits d0,d1,...")
    s.add_argument("--m", type=int, default=1)
    s.add_argument("--target")
    s.add_argument("--digits", type=int, default=30)
    s.add_argument("--lower-bound", action="store_true")
    s.add_argument("--j", type=int)
    s.add_argument("--out")
    s.set_defaults(func=cmd_padic)

    s = sub.add_parser("verify", help="replay certificate files")
    s.add_argument("files", nargs="+")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("fixtures", help="write the regression fixtures")
    s.add_argument("--out", default="fixtures")
    s.set_defaults(func=cmd_fixtures)
    return ap


def _fail(code, exc, as_json):
    if as_json:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc), "exit_code": code},
                         sort_keys=True))
    else:
        print(f"error: {exc}", file=sys.stderr)
    return code


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    as_json = "--json" in argv
    try:
        args = build_parser().parse_args(argv)
        if not getattr(args, "func", None):
            raise UsageError("a subcommand is required")
        cfg = RunConfig.from_env()
        return args.func(args, cfg)
    except UsageError as e:
        return _fail(EXIT_USAGE, e, as_json)
    except VerificationFailed as e:
        return _fail(EXIT_VERIFY, e, as_json)
    except (BudgetExceeded, ResidueBudgetExceeded, DepthCapExceeded, UndecidableComparison) as e:
        return _fail(EXIT_BUDGET, e, as_json)
    except (ValueError, TargetOutOfRange, OutsideGuaranteedRegion, PadicError,
            ParametersNotCertified, ZeroDivisionError) as e:
        return _fail(EXIT_USAGE, e, as_json)


if __name__ == "__main__":
    sys.exit(main())
