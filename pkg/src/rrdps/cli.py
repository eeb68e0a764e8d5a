"""Command-line front end: ``rrdps <command> [flags]``.

Exit status is 0 on success, 1 when a verification fails and 2 for invalid
arguments or unwritable output paths.
"""

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import __version__
from . import bounds as bnd
from .attack import SpectralParams
from .errors import RRDPSError
from .oracle import simulate, verify_all

CSV_SCHEMA = "v1"
SWEEP_COLUMNS = ("d", "beta", "statdist_leak", "i_ae", "minentropy_leak",
                 "accessible_info", "qkd_rate", "syk", "sk2017")
SATURATION_COLUMNS = ("d", "beta_star", "beta_zero", "beta_sat", "statdist_saturated",
                      "i_ae_saturated", "minentropy_saturated", "accessible_saturated", "syk")
COMPARE_COLUMNS = ("d", "beta", "i_ae", "statdist_leak", "syk", "sk2017",
                   "intercept_resend_lower")


class UsageError(Exception):
    pass


def fmt(x) -> str:
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    return f"{float(x):.12g}"


def round12(obj):
    """Round every float in a JSON-able structure to 12 significant digits."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(f"{float(obj):.12g}")
    if isinstance(obj, dict):
        return {k: round12(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [round12(v) for v in obj]
    raise TypeError(f"cannot serialise {type(obj)!r}")


def emit_json(record, out=None):
    out = out or sys.stdout
    out.write(json.dumps(round12(record), sort_keys=False) + "\n")


def parse_int_list(text: str):
    """``"5"``, ``"3,4,5"`` or ``"3-30"`` (inclusive)."""
    vals = []
    for part in str(text).split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part[1:]:
            lo, hi = part.split("-", 1)
            vals.extend(range(int(lo), int(hi) + 1))
        else:
            vals.append(int(part))
    if not vals:
        raise UsageError(f"empty integer list {text!r}")
    return vals


def beta_grid(lo: float, hi: float, step: float):
    if step <= 0:
        raise UsageError("--step must be positive")
    if not 0 <= lo <= hi <= 0.5:
        raise UsageError("need 0 <= beta-min <= beta-max <= 0.5")
    n = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return [round(lo + i * step, 12) for i in range(n)]


def write_csv(path, columns, rows, kind):
    buf = io.StringIO()
    buf.write(f"# rrdps {kind} schema={CSV_SCHEMA} version={__version__}\r\n")
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([fmt(row[c]) for c in columns])
    text = buf.getvalue()
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}") from exc


def sweep_row(d, beta):
    prior = bnd.prior_bounds(beta, d)
    return {
        "d": d, "beta": beta,
        "statdist_leak": bnd.statdist_leak(beta, d), "i_ae": bnd.i_ae(beta, d),
        "minentropy_leak": bnd.min_entropy_leak(beta, d),
        "accessible_info": bnd.accessible_info(beta, d),
        "qkd_rate": bnd.qkd_rate(beta, d), "syk": prior.syk, "sk2017": prior.sk2017,
    }


def saturation_row(d):
    half = 0.5
    return {
        "d": d, "beta_star": bnd.beta_star(d), "beta_zero": bnd.beta_zero(d),
        "beta_sat": bnd.beta_sat(d),
        "statdist_saturated": bnd.statdist_leak(half, d),
        "i_ae_saturated": bnd.i_ae(half, d),
        "minentropy_saturated": bnd.min_entropy_leak(half, d),
        "accessible_saturated": bnd.accessible_info(half, d),
        "syk": bnd.prior_bounds(half, d).syk,
    }


# -- commands ----------------------------------------------------------------

def cmd_bounds(args):
    rep = bnd.leakage_report(args.beta, args.d)
    if args.json:
        emit_json(rep.as_dict())
        return 0
    print(f"d = {rep.d}   beta = {fmt(rep.beta)}")
    print(f"{'measure':<18}{'leakage':>17}{'saturation':>17}{'saturated':>11}"
          f"{'lam_plus':>18}{'lam_minus':>18}")
    rows = (("statdist (2logT)", rep.statdist_leak, rep.beta_star, "statdist"),
            ("von Neumann", rep.i_ae, rep.beta_zero, "vn"),
            ("min-entropy", rep.minentropy_leak, rep.beta_sat, "min_entropy"),
            ("accessible info", rep.accessible_info, rep.beta_sat, "min_entropy"))
    for label, val, sat, key in rows:
        lp, lm = rep.optimal_lambdas[key]
        print(f"{label:<18}{fmt(val):>17}{fmt(sat):>17}{str(rep.saturated[key]):>11}"
              f"{fmt(lp):>18}{fmt(lm):>18}")
    return 0


def cmd_sweep(args):
    betas = beta_grid(args.beta_min, args.beta_max, args.step)
    rows = [sweep_row(d, b) for d in parse_int_list(args.d) for b in betas]
    if args.json:
        for row in rows:
            emit_json(row)
    else:
        write_csv(args.out, SWEEP_COLUMNS, rows, "sweep")
    return 0


def cmd_saturation(args):
    rows = [saturation_row(d) for d in parse_int_list(args.d)]
    if args.json:
        for row in rows:
            emit_json(row)
    else:
        write_csv(args.out, SATURATION_COLUMNS, rows, "saturation")
    return 0


def cmd_rate(args):
    kl = bnd.key_length_for_epsilon(args.n, args.beta, args.d, args.epsilon)
    q = bnd.KeyRateQuery(args.n, kl.ell, args.epsilon, args.d, args.beta)
    record = {"n": args.n, "epsilon": args.epsilon, "d": args.d, "beta": args.beta,
              "ell": kl.ell, "ell_over_n": kl.ell / args.n, "rate": kl.rate,
              "extractable": kl.extractable, "distance_bound": bnd.statdist_bound(q)}
    if args.json:
        emit_json(record)
    else:
        for key, val in record.items():
            print(f"{key:<15} {val if isinstance(val, bool) else fmt(val)}")
        if not kl.extractable:
            print("no extractable key at these parameters")
    return 0


def cmd_verify(args):
    agg = verify_all(parse_int_list(args.d), draws=args.draws, seed=args.seed,
                     tol=args.tol, suites=args.suite)
    if args.json:
        emit_json(agg.as_dict())
    else:
        for line in agg.lines():
            print(line)
        print("verification", "passed" if agg.passed else "FAILED")
    return 0 if agg.passed else 1


def cmd_simulate(args):
    lp, lm = bnd.optimal_lambdas_min(args.beta, args.d)
    params = SpectralParams(args.d, args.beta, lp, lm)
    rep = simulate(args.rounds, params, seed=args.seed)
    record = dict(rep.as_dict(), d=args.d, beta=args.beta, lam_plus=lp, lam_minus=lm,
                  eve_success_target=bnd.guessing_probability(args.beta, args.d))
    if args.json:
        emit_json(record)
    else:
        print(f"rounds          {rep.n}")
        print(f"seed            {rep.seed}")
        print(f"bit error rate  {fmt(rep.ber)} +- {fmt(rep.ber_se)}")
        print(f"eve success     {fmt(rep.eve_success)} +- {fmt(rep.eve_success_se)}"
              f" (target {fmt(record['eve_success_target'])})")
        print("k frequencies   " + " ".join(fmt(f) for f in rep.k_freq))
    return 0


def cmd_compare(args):
    if args.beta is not None:
        betas = [args.beta]
    else:
        betas = beta_grid(args.beta_min, args.beta_max, args.step)
    rows = []
    for d in parse_int_list(args.d):
        for b in betas:
            prior = bnd.prior_bounds(b, d)
            rows.append({"d": d, "beta": b, "i_ae": bnd.i_ae(b, d),
                         "statdist_leak": bnd.statdist_leak(b, d), "syk": prior.syk,
                         "sk2017": prior.sk2017,
                         "intercept_resend_lower": prior.intercept_resend_lower})
    if args.json:
        for row in rows:
            emit_json(row)
    else:
        write_csv(args.out, COMPARE_COLUMNS, rows, "compare")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rrdps", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"rrdps {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=fn)
        sp.add_argument("--json", action="store_true", help="emit JSON lines")
        return sp

    sp = add("bounds", cmd_bounds, "all leakage measures at one (d, beta)")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--beta", type=float, required=True)

    for name, fn, help_ in (("sweep", cmd_sweep, "leakage curves as CSV"),
                            ("compare", cmd_compare, "leakage versus earlier bounds")):
        sp = add(name, fn, help_)
        sp.add_argument("--d", default="5", help="dimension list, e.g. 5,10,15 or 3-30")
        sp.add_argument("--beta-min", type=float, default=0.0)
        sp.add_argument("--beta-max", type=float, default=0.5)
        sp.add_argument("--step", type=float, default=0.01)
        sp.add_argument("--out", default="-")
        if name == "compare":
            sp.add_argument("--beta", type=float, default=None)

    sp = add("saturation", cmd_saturation, "saturation points and plateau values")
    sp.add_argument("--d", default="3-30")
    sp.add_argument("--out", default="-")

    sp = add("rate", cmd_rate, "finite-n key length for a target distance")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--epsilon", type=float, required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--beta", type=float, required=True)

    sp = add("verify", cmd_verify, "run the cross-check suites")
    sp.add_argument("--suite", default="all")
    sp.add_argument("--d", default="3,4,5")
    sp.add_argument("--draws", type=int, default=100)
    sp.add_argument("--tol", type=float, default=None)
    sp.add_argument("--seed", type=int, default=0)

    sp = add("simulate", cmd_simulate, "Monte-Carlo rounds under the optimal attack")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--beta", type=float, required=True)
    sp.add_argument("--rounds", type=int, default=100000)
    sp.add_argument("--seed", type=int, default=0)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, RRDPSError, ValueError) as exc:
        print(f"rrdps {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
