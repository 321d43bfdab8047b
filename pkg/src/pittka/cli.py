"""Command line entry point.

Exit codes: 0 all checks pass, 1 an inequality or identity is violated,
2 usage error, 3 numerical non-convergence.
"""
import argparse
import csv
import json
import sys

import numpy as np

from . import __version__
from .acceptance import RunConfig, criterion_verdicts, run_suite, CRITERIA
from .corpus import monotone_corpus, regular_corpus
from .errors import ConvergenceError, DivergenceError, PittkaError
from .fka1d import BasisIndex, eigen_defect
from .gmclass import gm_witness_search
from .kernel1d import (KernelParams, conjecture_scan, find_k0, g_positive, kernel_general)
from .pitt import (FkaParams, PittParams, admissible, heisenberg_defect, log_up_gap, pitt_quotient,
                   sharp_constant, sharp_constant_fka, sharpness_probe)
from .transform import MeasureSpec, export_csv

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_NONCONVERGENCE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _corpus():
    out = {}
    for f in regular_corpus() + monotone_corpus():
        out.setdefault(f.name, f)
    return out


def _function(name):
    c = _corpus()
    if name not in c:
        raise UsageError(f"unknown function {name!r}; choose from {', '.join(sorted(c))}")
    return c[name]


def _floats(text):
    return [float(v) for v in str(text).split(",") if v.strip()]


def _emit(obj, out):
    text = json.dumps(obj, indent=1, default=lambda x: x.item() if hasattr(x, "item") else str(x))
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


# ------------------------------------------------------------- subcommands

def cmd_pitt_sharp(args):
    if args.k is not None:
        c = sharp_constant_fka(args.beta, FkaParams(args.k, args.a), args.n)
    else:
        c = sharp_constant(args.beta, args.lam, args.a)
    print(f"{c:.10g}")
    return EXIT_OK


def cmd_pitt_verify(args):
    gamma = args.beta if args.gamma is None else args.gamma
    P = PittParams(args.p, args.q, args.beta, gamma, args.lam, args.a)
    verdict = admissible(P)
    rows = {"admissible": verdict.admissible, "failed": verdict.failed, "cases": []}
    ok = True
    if verdict.admissible and args.p == 2 and args.q == 2:
        c = sharp_constant(args.beta, args.lam, args.a)
        tol = args.tol if args.tol is not None else 1e-6
        names = [args.f] if args.f else [f.name for f in regular_corpus()]
        for name in names:
            q = pitt_quotient(_function(name), P)
            good = q <= c * (1 + tol)
            ok &= good
            rows["cases"].append({"f": name, "quotient": q, "sharp_constant": c, "pass": good})
        if args.eps:
            r = sharpness_probe(args.beta, args.lam, args.a, args.eps)
            rows["probe"] = {"eps": args.eps, "quotient": r, "fraction_of_constant": r / c}
    _emit(rows, args.out)
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_up_verify(args):
    P = FkaParams(args.k, args.a)
    tol = args.tol if args.tol is not None else 1e-6
    names = [args.f] if args.f else [f.name for f in regular_corpus()]
    rows, ok = [], True
    for name in names:
        f = _function(name)
        try:
            lg = log_up_gap(f, P)
            hd = heisenberg_defect(f, P)
        except DivergenceError as exc:
            rows.append({"f": name, "skipped": str(exc)})
            continue
        good = lg >= -tol and hd >= -tol
        ok &= good
        rows.append({"f": name, "log_up_gap": lg, "heisenberg_defect": hd, "pass": good})
    _emit({"k": args.k, "a": args.a, "cases": rows}, args.out)
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_transform(args):
    f = _function(args.f)
    rho = np.asarray(_floats(args.rho)) if args.rho else np.linspace(args.rho_min, args.rho_max, args.n)
    m = MeasureSpec(args.lam, args.a)
    export_csv(f, m, rho, args.out or sys.stdout)
    return EXIT_OK


def cmd_kernel_sweep(args):
    t = np.linspace(0.0, args.t_max, args.samples + 1)[1:]
    if args.a == 1.0:
        vals = g_positive(args.k, t)
    else:
        vals = np.abs(kernel_general(KernelParams(args.k, args.a), 1.0, t))
    if args.out:
        with open(args.out, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["k", "a", "t", "value"])
            for ti, vi in zip(t, vals):
                w.writerow([repr(float(args.k)), repr(float(args.a)), repr(float(ti)), repr(float(vi))])
    print(f"max|value| = {np.abs(vals).max():.6f} at t = {t[np.abs(vals).argmax()]:.6f}")
    return EXIT_OK


def cmd_find_k0(args):
    tol = args.tol if args.tol is not None else 1e-6
    k0, resid, tmin = find_k0(tol, details=True)
    print(f"k0 = {k0:.10f}")
    print(f"residual = {resid:.3e} (first minimum at t = {tmin:.8f})")
    return EXIT_OK


def cmd_conjecture_scan(args):
    grid = [KernelParams(k, a) for a in _floats(args.a_values) for k in _floats(args.k_values)
            if 2 * k + 1 + a > 2 and not (a == 1.0 and k == 0)]
    recs = conjecture_scan(grid, t_max=args.t_max)
    _emit({"cases": recs}, args.out)
    return EXIT_VIOLATION if any(r["flag"] == "counterexample_candidate" for r in recs) else EXIT_OK


def cmd_gm_check(args):
    names = [args.f] if args.f else [f.name for f in monotone_corpus()]
    rows = []
    for name in names:
        w = gm_witness_search(_function(name), args.c)
        rows.append({"f": name, "C": w.C, "c": w.c, "grid": [w.r_min, w.r_max], "max_defect": w.max_defect})
    _emit({"cases": rows}, args.out)
    return EXIT_OK if all(r["max_defect"] <= 1e-12 for r in rows) else EXIT_VIOLATION


def cmd_basis_check(args):
    P = FkaParams(args.k, args.a)
    tol = args.tol if args.tol is not None else 1e-6
    rows = []
    for n in (0, 1):
        for s in range(args.s_max + 1):
            idx = BasisIndex(n, s)
            ev = idx.eigenvalue(P)
            d = eigen_defect(idx, P)
            rows.append({"n": n, "s": s, "phase_over_pi": float(np.angle(ev) / np.pi), "defect": d,
                         "pass": d <= tol})
    _emit({"k": args.k, "a": args.a, "cases": rows}, args.out)
    return EXIT_OK if all(r["pass"] for r in rows) else EXIT_VIOLATION


def cmd_report(args):
    over = {"threads": args.threads, "out": args.out, "strict": args.strict or None,
            "tol_scale": args.tol, "criteria": tuple(args.criteria) if args.criteria else None}
    if args.config:
        cfg = RunConfig.from_file(args.config, **over)
    else:
        cfg = RunConfig(**{k: v for k, v in over.items() if v is not None})
    rep = run_suite(cfg)
    for n, (ok, count, bad) in sorted(criterion_verdicts(rep).items()):
        line = f"criterion {n} ({CRITERIA[n]}): {'PASS' if ok else 'FAIL'} [{count} cases]"
        if bad:
            line += " failing: " + ", ".join(bad[:5])
        print(line)
    s = rep.summary
    print(f"summary: {s['pass']} pass, {s['fail']} fail, {s['error']} error")
    if any(c.error and c.error.startswith("ConvergenceError") for c in rep.cases):
        return EXIT_NONCONVERGENCE
    return EXIT_OK if rep.ok else EXIT_VIOLATION


# ------------------------------------------------------------------ parser

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="output path (JSON or CSV by subcommand)")
    common.add_argument("--tol", type=float, help="tolerance (report: tolerance scale factor)")
    common.add_argument("--threads", type=int, default=None, help="worker thread hint")
    common.add_argument("--config", help="key = value configuration file")
    common.add_argument("--strict", action="store_true", help="abort on the first erroring case")

    ap = argparse.ArgumentParser(prog="pittka", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"pittka {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pitt-sharp", parents=[common], help="sharp L2 Pitt constant")
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--lambda", dest="lam", type=float, default=0.0)
    p.add_argument("--a", type=float, default=2.0)
    p.add_argument("--k", type=float, help="use lambda_k = k - 1/2 of the line transform")
    p.add_argument("--n", type=int, default=0, help="harmonic degree (with --k)")
    p.set_defaults(func=cmd_pitt_sharp)

    p = sub.add_parser("pitt-verify", parents=[common], help="admissibility and Pitt quotients")
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--gamma", type=float)
    p.add_argument("--lambda", dest="lam", type=float, default=0.0)
    p.add_argument("--a", type=float, default=2.0)
    p.add_argument("--p", type=float, default=2.0)
    p.add_argument("--q", type=float, default=2.0)
    p.add_argument("--f", help="corpus function name (default: whole corpus)")
    p.add_argument("--eps", type=float, help="also run the sharpness probe at this eps")
    p.set_defaults(func=cmd_pitt_verify)

    p = sub.add_parser("up-verify", parents=[common], help="logarithmic and Heisenberg uncertainty")
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--f")
    p.set_defaults(func=cmd_up_verify)

    p = sub.add_parser("transform", parents=[common], help="H_{lambda,a} f on a rho grid as CSV")
    p.add_argument("--f", required=True)
    p.add_argument("--lambda", dest="lam", type=float, default=0.0)
    p.add_argument("--a", type=float, default=2.0)
    p.add_argument("--rho", help="comma separated points")
    p.add_argument("--rho-min", type=float, default=0.0)
    p.add_argument("--rho-max", type=float, default=5.0)
    p.add_argument("--n", type=int, default=51)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("kernel-sweep", parents=[common], help="kernel values along t (CSV: k, a, t, value)")
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--t-max", type=float, default=50.0)
    p.add_argument("--samples", type=int, default=5000)
    p.set_defaults(func=cmd_kernel_sweep)

    p = sub.add_parser("find-k0", parents=[common], help="threshold k0 for the a=1 kernel")
    p.set_defaults(func=cmd_find_k0)

    p = sub.add_parser("conjecture-scan", parents=[common], help="sup |B_{k,a}| over a (k, a) grid")
    p.add_argument("--k-values", default="0.1,0.3,0.44,0.5,1,2")
    p.add_argument("--a-values", default="1,2")
    p.add_argument("--t-max", type=float, default=100.0)
    p.set_defaults(func=cmd_conjecture_scan)

    p = sub.add_parser("gm-check", parents=[common], help="GM witness search")
    p.add_argument("--f")
    p.add_argument("--c", type=float, default=2.0)
    p.set_defaults(func=cmd_gm_check)

    p = sub.add_parser("basis-check", parents=[common], help="eigen-relation of the Laguerre basis")
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--s-max", type=int, default=5)
    p.set_defaults(func=cmd_basis_check)

    p = sub.add_parser("report", parents=[common], help="run the acceptance suite, write a JSON report")
    p.add_argument("--criteria", type=int, nargs="*")
    p.set_defaults(func=cmd_report)
    return ap


def run_command(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConvergenceError as exc:
        print(f"non-convergence: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except (PittkaError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main(argv=None):
    sys.exit(run_command(argv))


if __name__ == "__main__":
    main()
