"""Command-line front end.

Subcommands::

    bestprox solve --map example49 --x0 2,2 --tol 1e-8
    bestprox falsify --property UC --pair ex43 --nmax 10000
    bestprox modulus --norm l2 --grid 10
    bestprox distances
    bestprox corpus

Every JSON artifact carries ``"schema": 1``.  Exit status is 0 on success,
1 when a verdict disagrees with the catalog or a residual misses its
tolerance, and 2 on usage errors.  Options may also come from a JSON file
given with ``--config``; flags on the command line win.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import geometry as geo
from . import regions, solver, ucprops
from .convexity import (
    analytic_l2_modulus, check_positive_property, check_uc_about_phi, directional_modulus,
    example39_phi, modulus_curve, modulus_of_convexity,
)
from .errors import BestProxError, BudgetError, CatalogError, DomainError, PreconditionError
from .geometry import Planar

SCHEMA = 1


class UsageError(Exception):
    pass


def _point(text):
    try:
        x, y = (float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'x,y', got {text!r}") from None
    return Planar(x, y)


def _write(path, text):
    try:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}") from None


def _dump(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(args, payload):
    text = _dump(payload)
    if args.out:
        _write(args.out, text)
    sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands

def cmd_solve(args):
    if args.coupled:
        c = solver.corpus_coupled(args.coupled)
        y0 = args.y0 or args.x0
        try:
            sol = solver.coupled_solve(c, args.x0, y0, args.tol, args.nmax)
        except BudgetError as exc:
            _emit(args, {"schema": SCHEMA, "command": "solve", "coupled": c.name, "error": str(exc)})
            return 1
        if args.trace:
            _write(args.trace, sol.trace.to_jsonl())
        _emit(args, {
            "schema": SCHEMA, "command": "solve", "coupled": c.name,
            "xy": solver.point_json(sol.xy), "uv": solver.point_json(sol.uv),
            "residual": sol.residual, "steps": sol.trace.steps,
        })
        return 0
    m = solver.corpus_map(args.map)
    try:
        point, cert = solver.best_proximity_point(m, args.x0, args.tol, args.nmax)
        trace = None
    except BudgetError as exc:
        trace = exc.trace
        if args.trace and trace is not None:
            _write(args.trace, trace.to_jsonl())
        _emit(args, {"schema": SCHEMA, "command": "solve", "map": m.name, "error": str(exc)})
        return 1
    trace = solver.iterate(m, args.x0, args.nmax, args.tol)
    trace.certificate = cert
    if args.trace:
        _write(args.trace, trace.to_jsonl())
    _emit(args, {
        "schema": SCHEMA, "command": "solve", "map": m.name,
        "x0": args.x0.as_list(), "point": point.as_list(),
        "limit_odd": trace.limit_odd.as_list(), "steps": trace.steps,
        "certificate": cert.to_json(),
    })
    return 0


def _expected_entry(prop, pair):
    for e in ucprops.EXPECTED_VERDICTS:
        if e.property == prop and e.pair == pair:
            return e
    return None


def cmd_falsify(args):
    prop = {"uc": "UC", "buc": "BUC", "ucstar": "UCStar", "uc*": "UCStar"}.get(args.property.lower())
    if prop is None:
        raise UsageError(f"unknown property {args.property!r}; use UC, BUC or UCStar")
    p = regions.corpus_pair(args.pair)
    entry = _expected_entry(prop, p.name)
    if args.families:
        names = [f for f in args.families.split(",") if f]
    elif entry is not None:
        names = list(entry.families)
    else:
        names = [f for f in ucprops.FAMILY_NAMES if ucprops.corpus_family(f).pair == p.name]
    fams = [ucprops.corpus_family(f) for f in names]
    n_max = args.nmax or (entry.n_max if entry else 1000)
    tol = args.tol or (entry.tol if entry else 1e-3)
    fn = ucprops.FALSIFIERS[prop]
    v = fn(p.norm, p.region_a, p.region_b, fams, n_max, tol,
           dist_ab=p.dist if p.analytic else None, pair=p.name)
    payload = {"schema": SCHEMA, "command": "falsify", **v.to_json(), "text": v.text,
               "expected": entry.expected if entry else None}
    _emit(args, payload)
    sys.stderr.write(v.text + "\n")
    if entry is not None and entry.expected != v.outcome:
        return 1
    return 0


def cmd_modulus(args):
    norm = geo.parse_norm(args.norm)
    if args.grid < 1:
        raise UsageError("--grid must be >= 1")
    eps = [2.0 * (i + 1) / args.grid for i in range(args.grid)]
    curve = modulus_curve(norm, eps, args.budget, direction=args.direction)
    text = curve.to_csv()
    if args.out:
        _write(args.out, text)
    sys.stdout.write(text)
    return 0


def cmd_distances(args):
    names = args.pairs.split(",") if args.pairs else list(regions.PAIR_NAMES)
    rows, bad = [], 0
    for name in names:
        p = regions.corpus_pair(name)
        if p.analytic:
            rows.append({"pair": name, "norm": str(p.norm), "expected": p.dist, "measured": p.dist,
                         "status": "ANALYTIC"})
            continue
        est = regions.set_distance(p.norm, p.region_a, p.region_b, args.budget)
        ok = abs(est.value - p.dist) <= p.dist_tol
        bad += not ok
        rows.append({"pair": name, "norm": str(p.norm), "expected": p.dist, "measured": est.value,
                     "argmin_pair": solver.point_json(est.argmin_pair), "budget_used": est.budget_used,
                     "status": "PASS" if ok else "FAIL"})
    _emit(args, {"schema": SCHEMA, "command": "distances", "results": rows})
    return 1 if bad else 0


def corpus_run(tol_scale=1.0, n_max=None, seed=0):
    """Run every catalog entry against its expected value or verdict.

    Returns a list of rows ``{entry, expected, measured, status}``.
    ``tol_scale`` tightens distance and solver tolerances; ``n_max``
    overrides the solver iteration budget.
    """
    rows = []

    def row(entry, expected, fn):
        try:
            measured, ok = fn()
            status = "PASS" if ok else "FAIL"
        except (BestProxError, ValueError) as exc:
            measured, status = f"{type(exc).__name__}: {exc}", "FAIL"
        rows.append({"entry": entry, "expected": expected, "measured": measured, "status": status})

    for name in regions.PAIR_NAMES:
        p = regions.corpus_pair(name)
        if p.analytic:
            continue
        tol = p.dist_tol * tol_scale

        def dist(p=p, tol=tol):
            v = regions.set_distance(p.norm, p.region_a, p.region_b, 64).value
            return v, abs(v - p.dist) <= tol

        row(f"dist/{name}", f"{p.dist} +- {tol:.1e}", dist)

    for name in ("ex15_AB", "ex43", "coupled"):
        p = regions.corpus_pair(name)
        tol = 2e-6 * tol_scale

        def doubled(p=p, tol=tol):
            aa = regions.ProductRegion(p.region_a, p.region_a)
            bb = regions.ProductRegion(p.region_b, p.region_b)
            v = regions.set_distance(p.norm, aa, bb, 64).value
            return v, abs(v - 2 * p.dist) <= tol

        row(f"dist2/{name}", f"{2 * p.dist} +- {tol:.1e}", doubled)

    for e in ucprops.EXPECTED_VERDICTS:
        def verdict(e=e):
            v = ucprops.run_expected(e)
            return v.outcome, v.outcome == e.expected

        row(f"{e.property}/{e.pair}", e.expected, verdict)

    stol = 1e-8 * tol_scale
    nm = n_max or 1000
    m = solver.corpus_map("example49")
    for x0, target in (((2.0, 2.0), (1.0, 1.0)), ((-3.0, -5.0), (0.0, 0.0))):
        def solve(x0=x0, target=target):
            pt, cert = solver.best_proximity_point(m, Planar(*x0), stol, nm)
            err = geo.metric(geo.LINF, pt, Planar(*target))
            return {"point": pt.as_list(), "residual": cert.residual}, err < 1e-7 and cert.residual < stol

        row(f"solve/example49/x0={x0[0]:g},{x0[1]:g}", f"{list(target)} residual < {stol:.0e}", solve)

    def coupled():
        c = solver.corpus_coupled("reflection")
        sol = solver.coupled_solve(c, Planar(0.0, 0.5), Planar(0.2, -0.3), 1e-10 * tol_scale, nm)
        return {"xy": solver.point_json(sol.xy), "residual": sol.residual}, sol.residual < stol

    row("solve/coupled/reflection", f"residual < {stol:.0e}", coupled)

    def contraction():
        r = solver.verify_contraction(m, 0.5, 2000, rng=seed)
        return r.max_violation, r.ok

    row("contraction/example49/k=0.5", "max violation <= 1e-9", contraction)

    def mod_l2():
        v = modulus_of_convexity(geo.L2, 1.0)
        return v, abs(v - analytic_l2_modulus(1.0)) <= 1e-6

    row("modulus/l2/eps=1", f"{analytic_l2_modulus(1.0):.9f}", mod_l2)
    for norm in (geo.L1, geo.LINF):
        def mod_flat(norm=norm):
            v = max(modulus_of_convexity(norm, e) for e in (0.5, 1.0, 1.5))
            return v, v <= 1e-9

        row(f"modulus/{norm}/eps=0.5,1,1.5", "<= 1e-9", mod_flat)

    def dir_flat():
        v = directional_modulus(geo.LINF, Planar(0.0, 1.0), 1.0)
        return v, v <= 1e-9

    def dir_diag():
        v = directional_modulus(geo.LINF, Planar(1.0, 1.0), 1.0)
        return v, v > 0

    row("directional/linf/z=(0,1)", "<= 1e-9", dir_flat)
    row("directional/linf/z=(1,1)", "> 0", dir_diag)

    def uc_phi():
        r = check_uc_about_phi(geo.LINF, regions.corpus_region("ex43_A"), example39_phi(), 2000,
                               rng=seed, box=(0.0, 20.0, 0.0, 20.0))
        return r.pairs_checked, r.passed

    row("uc_about_phi/ex43_A", "pass", uc_phi)

    def positive():
        r = check_positive_property(example39_phi(), regions.corpus_region("ex43_A"), (0.0, 2.0, 0.0, 2.0), 2.0)
        return r.inf_estimate, r.positive and abs(r.inf_estimate - 4 / 380) <= 1e-9

    row("positive/example39/box=[0,2]^2", f"{4 / 380:.12f}", positive)
    return rows


def cmd_corpus(args):
    rows = corpus_run(args.tol_scale, args.nmax, args.seed)
    width = max(len(r["entry"]) for r in rows)
    for r in rows:
        meas = r["measured"]
        if isinstance(meas, float):
            meas = f"{meas:.12g}"
        sys.stdout.write(f"{r['entry']:<{width}}  {r['status']:<4}  expected={r['expected']}  measured={meas}\n")
    failed = sum(r["status"] != "PASS" for r in rows)
    sys.stdout.write(f"{len(rows) - failed}/{len(rows)} entries passed\n")
    if args.out:
        _write(args.out, _dump({"schema": SCHEMA, "command": "corpus", "rows": rows}))
    return 1 if failed else 0


# ---------------------------------------------------------------------------
# parser

def build_parser():
    parser = argparse.ArgumentParser(prog="bestprox", description=__doc__.split("\n\n")[0])
    parser.add_argument("--config", help="JSON file with a 'command' key and option values")
    parser.add_argument("--seed", type=int, default=0, help="seed for every sampled choice")
    parser.add_argument("--out", help="write the JSON or CSV artifact here")
    # the same two options after the subcommand; SUPPRESS keeps the top-level values
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--out", default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command")
    subs = {}

    p = sub.add_parser("solve", parents=[common], help="iterate a corpus map to its best proximity point")
    p.add_argument("--map", default="example49")
    p.add_argument("--coupled", help="solve a corpus coupled map instead")
    p.add_argument("--x0", type=_point, default=Planar(2.0, 2.0))
    p.add_argument("--y0", type=_point)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--nmax", type=int, default=1000)
    p.add_argument("--trace", help="write the iteration trace as JSON lines")
    subs["solve"] = p

    p = sub.add_parser("falsify", parents=[common], help="search for a UC, BUC or UC* counterexample")
    p.add_argument("--property", required=True)
    p.add_argument("--pair", required=True)
    p.add_argument("--families", help="comma-separated family names")
    p.add_argument("--nmax", type=int)
    p.add_argument("--tol", type=float)
    subs["falsify"] = p

    p = sub.add_parser("modulus", parents=[common], help="modulus of convexity on eps = 2/grid, ..., 2")
    p.add_argument("--norm", default="l2")
    p.add_argument("--grid", type=int, default=10)
    p.add_argument("--budget", type=int, default=256)
    p.add_argument("--direction", type=_point)
    subs["modulus"] = p

    p = sub.add_parser("distances", parents=[common], help="estimate dist(A, B) for corpus pairs")
    p.add_argument("--pairs", help="comma-separated pair names (default: all)")
    p.add_argument("--budget", type=int, default=64)
    subs["distances"] = p

    p = sub.add_parser("corpus", parents=[common], help="run every catalog entry against its expected outcome")
    p.add_argument("--tol-scale", type=float, default=1.0)
    p.add_argument("--nmax", type=int, help="iteration budget for solver entries")
    subs["corpus"] = p
    return parser, subs


COMMANDS = {
    "solve": cmd_solve, "falsify": cmd_falsify, "modulus": cmd_modulus,
    "distances": cmd_distances, "corpus": cmd_corpus,
}


def _apply_config(parser, subs, argv):
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return argv
    try:
        with open(known.config) as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {known.config}: {exc}") from None
    if not isinstance(cfg, dict):
        raise UsageError("config must be a JSON object")
    cfg = dict(cfg)
    cmd = cfg.pop("command", None)
    if not any(a in COMMANDS for a in argv):
        if cmd is None:
            raise UsageError("config has no 'command' and none was given")
        argv = list(argv) + [cmd]
    else:
        cmd = next(a for a in argv if a in COMMANDS)
    target = subs[cmd]
    top = {"seed", "out"}
    valid = {a.dest for a in target._actions} | top
    for key, value in cfg.items():
        dest = key.replace("-", "_")
        if dest not in valid:
            raise UsageError(f"unknown config key {key!r} for command {cmd}")
        if dest in ("x0", "y0", "direction") and isinstance(value, (list, str)):
            value = _point(value if isinstance(value, str) else f"{value[0]},{value[1]}")
        (parser if dest in top else target).set_defaults(**{dest: value})
    return argv


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, subs = build_parser()
    try:
        argv = _apply_config(parser, subs, argv)
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_usage(sys.stderr)
            return 2
        return COMMANDS[args.command](args)
    except (UsageError, CatalogError, DomainError, PreconditionError) as exc:
        sys.stderr.write(f"bestprox: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
