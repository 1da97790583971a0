"""Command-line driver: ns-sigma {curve,tau,sigma,forms,verify}.

Exit codes: 0 success, 1 a verification check failed, 2 bad usage or input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from pathlib import Path

from .algebra import admissible_indices, rational, t_family
from .curve import SYM, CurveError, NSCurve
from .forms import validate_gauge, c_coefficients, gauge_descriptor, holomorphic_basis, solve_dr
from .pipeline import compute, verify
from .schur import Partition
from .serialize import dumps, gauge_from_json, parse_lambda_arg, series_to_json, series_to_text
from .tau import build_tau

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
CACHE_ENV = "NS_SIGMA_CACHE"


class UsageError(Exception):
    pass


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, required=True, help="degree in y")
    common.add_argument("--s", type=int, required=True, help="degree in x")
    common.add_argument("--lambda", dest="lambdas", action="append", default=[], metavar="I,J=VAL",
                        help="coefficient of x^I y^J: a rational or 'sym' (repeatable)")
    common.add_argument("--symbolic", action="store_true",
                        help="make every admissible coefficient symbolic unless set by --lambda")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--output", "-o", help="write to this file instead of stdout")
    common.add_argument("--cache", help=f"cache directory (the {CACHE_ENV} variable overrides it)")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for Plucker minors")
    common.add_argument("--gauge", help="JSON file with the gap block of q_hat")

    weighted = argparse.ArgumentParser(add_help=False)
    weighted.add_argument("--weight", "-W", type=int, required=True, help="weight cutoff W")

    parser = argparse.ArgumentParser(prog="ns-sigma", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("curve", parents=[common], help="genus, gaps, monomial basis, lambda(n,s)")
    sub.add_parser("tau", parents=[common, weighted], help="Schur expansion of tau")
    sub.add_parser("sigma", parents=[common, weighted], help="sigma series in the u-variables")
    sub.add_parser("forms", parents=[common, weighted], help="b_ij, c_i, q_hat_ij and dr_i")
    v = sub.add_parser("verify", parents=[common, weighted], help="run every structural check")
    v.add_argument("--generating", type=int, default=4,
                   help="number of generating-identity equations to check")
    v.add_argument("--set-plucker", action="append", default=[], metavar="PARTS=VAL",
                   help="overwrite one Plucker coordinate, e.g. 2,1,1=1/3 (fault injection)")
    return parser


def _curve(args) -> NSCurve:
    coeffs = {}
    if args.symbolic:
        coeffs = {ij: SYM for ij in admissible_indices(args.n, args.s)}
    for text in args.lambdas:
        ij, val = parse_lambda_arg(text)
        coeffs[ij] = val
    return NSCurve(args.n, args.s, coeffs)


def _gauge(args, curve):
    if not args.gauge:
        return None
    with open(args.gauge) as fh:
        return validate_gauge(curve, gauge_from_json(json.load(fh), curve))


def _set_pluckers(args) -> dict:
    out = {}
    for text in getattr(args, "set_plucker", []):
        parts, _, val = text.partition("=")
        if not val:
            raise UsageError(f"--set-plucker expects PARTS=VALUE, got {text!r}")
        out[Partition(int(x) for x in parts.split(","))] = rational(val)
    return out


def _cache_dir(args) -> Path | None:
    d = os.environ.get(CACHE_ENV) or args.cache
    return Path(d) if d else None


def _cache_key(args, curve, gauge) -> str:
    ring = curve.ring
    payload = {
        "command": args.command,
        "curve": curve.spec(),
        "weight": getattr(args, "weight", None),
        "format": args.format,
        "gauge": {f"{a},{b}": ring.to_json(v) for (a, b), v in sorted((gauge or {}).items())},
    }
    return hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()


# -- payloads -------------------------------------------------------------------

def _curve_payload(curve: NSCurve, count: int) -> dict:
    sg = curve.semigroup()
    return {
        "curve": curve.spec(),
        "genus": sg.genus,
        "gaps": list(sg.gaps),
        "nongaps": list(sg.nongaps),
        "basis": [{"index": b.index, "monomial": str(b), "order": b.order}
                  for b in curve.basis_monomials(count)],
        "partition": list(curve.partition_ns()),
    }


def _curve_text(p: dict) -> str:
    lines = [f"({p['curve']['n']},{p['curve']['s']})-curve, genus {p['genus']}",
             f"gaps: {p['gaps']}", f"nongaps: {p['nongaps']}",
             f"lambda(n,s): {tuple(p['partition'])}",
             "basis: " + ", ".join(f"f{b['index']}={b['monomial']} (pole {b['order']})" for b in p["basis"])]
    return "\n".join(lines)


def _header(curve: NSCurve, W: int) -> dict:
    return {"curve": curve.spec(), "weight": W, "parameters": list(curve.ring.names)}


def _cmd_curve(args, curve, gauge):
    count = max(2 * curve.genus + 2, getattr(args, "weight", 0) or 0)
    p = _curve_payload(curve, count)
    return (dumps(p) if args.format == "json" else _curve_text(p) + "\n"), EXIT_OK


def _cmd_tau(args, curve, gauge):
    W = args.weight
    tau = build_tau(curve, W, jobs=args.jobs)
    ring = curve.ring
    if args.format == "text":
        return f"tau, W = {W}, leading s{tuple(tau.leading)}\n" + series_to_text(tau.series, ring) + "\n", EXIT_OK
    p = _header(curve, W)
    p.update({"leading_partition": list(tau.leading), "variables": list(t_family(W).names),
              "terms": series_to_json(tau.series, ring)})
    return dumps(p), EXIT_OK


def _cmd_sigma(args, curve, gauge):
    W = args.weight
    data = compute(curve, W, gauge=gauge, jobs=args.jobs)
    ring = curve.ring
    sig = data.sigma.series
    if args.format == "text":
        return f"sigma, W = {W}\n" + series_to_text(sig, ring) + "\n", EXIT_OK
    p = _header(curve, W)
    p.update({"gauge": gauge_descriptor(data.q), "leading_partition": list(data.tau.leading),
              "variables": list(sig.family.names), "terms": series_to_json(sig, ring)})
    return dumps(p), EXIT_OK


def _cmd_forms(args, curve, gauge):
    W = args.weight
    ring = curve.ring
    B = holomorphic_basis(curve, W)
    c = c_coefficients(curve, W)
    dr, q = solve_dr(curve, W, gauge)
    qs = [(i, j, q.entry(i, j)) for i in range(1, W) for j in range(i, W - i + 1)]
    if args.format == "text":
        lines = [f"forms, W = {W}"]
        lines += [f"b_{i + 1},{j + 1} = {ring.format(v)}" for i, row in enumerate(B.rows)
                  for j, v in enumerate(row) if v != 0]
        lines += [f"c_{i} = {ring.format(v)}" for i, v in enumerate(c, start=1) if v != 0]
        lines += [f"q_{i},{j} = {ring.format(v)}" for i, j, v in qs if v != 0]
        for f in dr:
            lines.append(f"dr_{f.index} = " + " + ".join(
                f"({ring.format(v)})*f{k}" for k, v in f.coefficients.items()) + " dx/f_y")
        return "\n".join(lines) + "\n", EXIT_OK
    p = _header(curve, W)
    p.update({
        "gauge": gauge_descriptor(q),
        "b": [[ring.to_json(v) for v in row] for row in B.rows],
        "c": [ring.to_json(v) for v in c],
        "q_hat": [{"i": i, "j": j, "value": ring.to_json(v)} for i, j, v in qs if v != 0],
        "dr": [{"index": f.index,
                "coefficients": {str(k): ring.to_json(v) for k, v in f.coefficients.items()}}
               for f in dr],
    })
    return dumps(p), EXIT_OK


def _cmd_verify(args, curve, gauge):
    W = args.weight
    data = compute(curve, W, gauge=gauge, jobs=args.jobs, pluckers=_set_pluckers(args))
    results = verify(data, generating_count=args.generating)
    ok = all(r.passed for r in results)
    code = EXIT_OK if ok else EXIT_FAIL
    if args.format == "text":
        lines = [f"{'PASS' if r.passed else 'FAIL'}  {r.name}  (weight <= {r.weight_bound})"
                 + (f"  first nonzero: {r.counterexample}" if r.counterexample else "")
                 for r in results]
        return "\n".join(lines) + f"\n{'all checks passed' if ok else 'verification FAILED'}\n", code
    p = _header(curve, W)
    p.update({"passed": ok, "checks": [r.to_dict() for r in results]})
    return dumps(p), code


COMMANDS = {"curve": _cmd_curve, "tau": _cmd_tau, "sigma": _cmd_sigma,
            "forms": _cmd_forms, "verify": _cmd_verify}


def run(argv=None) -> tuple[str, int, str | None]:
    """Parse ``argv``; return (output text, exit code, output path or None).

    Usage and input errors raise SystemExit(2).
    """
    args = _build_parser().parse_args(argv)
    try:
        if args.jobs < 1:
            raise UsageError("--jobs must be at least 1")
        curve = _curve(args)
        if any(v != SYM for v in curve.coefficients.values()):
            print("ns-sigma: note: the affine curve is assumed smooth; this is not checked",
                  file=sys.stderr)
        gauge = _gauge(args, curve)
        W = getattr(args, "weight", None)
        if W is not None and W < curve.partition_ns().weight:
            raise UsageError(f"--weight must be at least |lambda(n,s)| = {curve.partition_ns().weight}")
    except (UsageError, CurveError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"ns-sigma: error: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)

    cache = _cache_dir(args) if args.command != "verify" else None
    path = None
    if cache is not None:
        path = cache / f"{_cache_key(args, curve, gauge)}.{args.format}"
        if path.exists():
            return path.read_text(), EXIT_OK, args.output
    try:
        text, code = COMMANDS[args.command](args, curve, gauge)
    except (UsageError, ValueError) as exc:
        print(f"ns-sigma: error: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)
    if path is not None and code == EXIT_OK:
        cache.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(path.suffix + ".tmp")
        tmp.write_text(text)
        tmp.replace(path)
    return text, code, args.output


def main(argv=None) -> int:
    text, code, output = run(argv)
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
