"""Command-line front end: ``mackey-tor {tor,verify,selftest}``.

Exit codes
----------
0  success (for ``tor``: every trusted cell matched the closed form)
1  a check failed (oracle mismatch, failed verification, failed selftest)
2  usage error (bad flags)
3  the given p is not prime
4  internal truncation too small for the construction
5  requested bounds exceed the safe limits (pass --unsafe to override)
6  flavor and prime do not fit the requested construction
7  output could not be written or an input file could not be read
"""

import argparse
import json
import sys
import time

from .resolutions import ResolutionSpec, SpecMismatch, TruncationTooTight, build_resolution
from .rings import BURNSIDE, GREEN, TAMBARA, NotPrime, free_green_underlying, free_tambara_fixed

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_NOT_PRIME = 3
EXIT_TRUNCATION = 4
EXIT_BOUNDS = 5
EXIT_SPEC = 6
EXIT_IO = 7

SAFE_MAX_DEGREE = 24
SAFE_MAX_HDEGREE = 16


class BoundsExceeded(ValueError):
    pass


def _parser():
    ap = argparse.ArgumentParser(prog="mackey-tor",
                                 description="Mackey-valued Tor over free C_p Green and Tambara functors.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, flavors):
        p.add_argument("--flavor", choices=flavors, default=GREEN)
        p.add_argument("--p", type=int, default=2, help="the prime")
        p.add_argument("--max-deg", type=int, default=12, help="internal degree truncation D")
        p.add_argument("--max-hdeg", type=int, default=8, help="homological truncation N")
        p.add_argument("--output", "-o", help="write here instead of stdout")
        p.add_argument("--jobs", type=int, default=None,
                       help="worker processes (default: $MACKEY_TOR_JOBS or all cores)")
        p.add_argument("--unsafe", action="store_true",
                       help=f"allow D > {SAFE_MAX_DEGREE} or N > {SAFE_MAX_HDEGREE}")
        p.add_argument("-v", "--verbose", action="store_true")

    t = sub.add_parser("tor", help="compute a Tor table")
    common(t, [GREEN, TAMBARA])
    t.add_argument("--format", choices=["csv", "json", "latex"], default="csv")

    v = sub.add_parser("verify", help="check a resolution, the axioms and the listed differentials")
    common(v, [GREEN, TAMBARA, BURNSIDE])

    s = sub.add_parser("selftest", help="run the whole check suite")
    s.add_argument("--quick", action="store_true", help="p = 2 only")
    s.add_argument("--golden-dir", help="directory with the reduced-differential golden files")
    s.add_argument("--jobs", type=int, default=1)
    return ap


def _check_bounds(args):
    if args.unsafe:
        return
    if args.max_deg > SAFE_MAX_DEGREE or args.max_hdeg > SAFE_MAX_HDEGREE:
        raise BoundsExceeded(f"D <= {SAFE_MAX_DEGREE} and N <= {SAFE_MAX_HDEGREE} "
                             "unless --unsafe is given")


def _emit(text, path):
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_tor(args):
    from .tor import compute_tor, export, oracle_mismatches

    _check_bounds(args)
    t = time.perf_counter()
    table = compute_tor(args.flavor, args.p, args.max_deg, args.max_hdeg, jobs=args.jobs)
    _emit(export(table, args.format), args.output)
    if args.verbose:
        print(f"computed in {time.perf_counter() - t:.1f}s", file=sys.stderr)
    for f in table.findings:
        print(f"finding: {f}", file=sys.stderr)
    bad = oracle_mismatches(table)
    for i, d, got, want in bad:
        expected = "; ".join(f"{k} ×{v}" for k, v in want.items()) or "0"
        print(f"mismatch (i={i}, d={d}): machine {got}, closed form {expected}", file=sys.stderr)
    return EXIT_CHECK_FAILED if bad else EXIT_OK


def _verify_burnside(args):
    from .checks import burnside_norm_failures, ring_axiom_failures
    from .rings import burnside

    norm = burnside_norm_failures(args.p)
    axioms = ring_axiom_failures(burnside(args.p), 0)
    report = {"flavor": BURNSIDE, "p": args.p,
              "norm_failures": [list(map(str, f)) for f in norm],
              "axiom_failures": [list(map(str, f)) for f in axioms]}
    return report, not norm and not axioms


def cmd_verify(args):
    from .checks import golden_report, koszul_report, resolution_report, ring_axiom_failures

    _check_bounds(args)
    if args.flavor == BURNSIDE:
        report, ok = _verify_burnside(args)
    else:
        spec = ResolutionSpec(args.flavor, args.p, args.max_deg, args.max_hdeg)
        res = build_resolution(spec)
        rep = resolution_report(res)
        ring = (free_green_underlying if args.flavor == GREEN else free_tambara_fixed)(
            args.p, args.max_deg)
        axiom_deg = min(args.max_deg, 4 if args.flavor == GREEN else 2 * args.p + 1)
        axioms = ring_axiom_failures(ring, axiom_deg)
        report = {
            "flavor": args.flavor, "p": args.p, "max_degree": args.max_deg,
            "max_hdegree": args.max_hdeg,
            "d_squared_failures": rep["d_squared"],
            "exactness_failures": {str(k): [list(map(str, b)) for b in v]
                                   for k, v in rep["exactness"].items()},
            "tail_rank_mismatches": [list(b) for b in rep["tail"]],
            "findings": rep["findings"],
            "axiom_failures": [list(map(str, f)) for f in axioms],
            "generators": {str(k): [list(g[:3]) for g in F.generators]
                           for k, F in enumerate(res.modules)},
        }
        ok = not rep["d_squared"] and not rep["exactness"] and not axioms
        if args.flavor == TAMBARA or args.p == 2:
            gold = golden_report(res)
            report["golden_mismatches"] = [list(map(str, g)) for g in gold]
            ok = ok and not gold
        if args.flavor == GREEN and args.p > 2:
            kz = koszul_report(args.p)
            report["koszul"] = {k: v for k, v in kz.items() if k != "orbit_counts"}
            report["koszul"]["orbit_counts"] = {f"|I_{n}|": c for n, c in kz["orbit_counts"].items()}
            ok = ok and all(v for k, v in kz.items() if k != "orbit_counts")
    report["ok"] = ok
    _emit(json.dumps(report, indent=1, sort_keys=True, ensure_ascii=False) + "\n", args.output)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_selftest(args):
    from .suite import run_all

    t = time.perf_counter()
    results = run_all(quick=args.quick, golden_dir=args.golden_dir, jobs=args.jobs,
                      log=lambda line: print(line, flush=True))
    failed = [r.name for r in results if not r.ok]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed "
          f"in {time.perf_counter() - t:.1f}s")
    if failed:
        print("failed: " + ", ".join(failed))
    return EXIT_CHECK_FAILED if failed else EXIT_OK


def main(argv=None):
    ap = _parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    handlers = {"tor": cmd_tor, "verify": cmd_verify, "selftest": cmd_selftest}
    try:
        return handlers[args.command](args)
    except NotPrime as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_PRIME
    except TruncationTooTight as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TRUNCATION
    except BoundsExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BOUNDS
    except SpecMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SPEC
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
