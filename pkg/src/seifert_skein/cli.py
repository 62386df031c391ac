"""Command-line front end.

Exit codes: 0 success, 1 usage or parse error, 2 a mathematical precondition
failed (e.g. Euler number zero), 3 a requested check ran and failed.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from . import characters as ch
from . import reduction as red
from . import replab
from .errors import EulerZero, SkeinError
from .report import cmd_census, cmd_invariants, cmd_known, read_census
from .seifert import GeneralSeifertData, SeifertData, normalize, parse_slopes, seifert_from_string

EXIT_OK, EXIT_USAGE, EXIT_MATH, EXIT_CHECK = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(text)


def _manifold(args) -> SeifertData:
    try:
        return seifert_from_string(args.slopes)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _index(text: str) -> tuple:
    try:
        v = tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise UsageError(f"bad index {text!r}") from exc
    if len(v) != 6:
        raise UsageError(f"an index has six entries (k1,l1,k2,l2,k3,l3), got {len(v)}")
    return v


# ----------------------------------------------------------------------------
# subcommands
# ----------------------------------------------------------------------------

def run_invariants(args) -> int:
    rep = cmd_invariants(_manifold(args))
    _emit(args, rep.to_json(), rep.render_text())
    return EXIT_OK


def run_characters(args) -> int:
    m = _manifold(args)
    table = ch.enumerate_characters(m)
    rows = []
    for r in table.records:
        row = {"kind": r.kind, "h": str(r.h_trace), "c": [str(t) for t in r.c_traces]}
        if r.phi is not None:
            row["phi"] = list(r.phi)
            row["modulus"] = r.modulus
        rows.append(row)
    lines = [f"{i:4d}  {r['kind']:<20} h={r['h']:<14} c=({', '.join(r['c'])})" for i, r in enumerate(rows)]
    lines.append(f"{len(rows)} characters")
    _emit(args, {"slopes": m.slope_string(), "characters": rows}, "\n".join(lines))
    return EXIT_OK


def run_basis(args) -> int:
    m = _manifold(args)
    cols = ch.basis_alt(m) if args.alternative else ch.basis(m)
    payload = {"slopes": m.slope_string(), "basis": [str(b) for b in cols]}
    lines = [str(b) for b in cols]
    status = EXIT_OK
    if args.check_independence:
        ev = ch.evaluation_matrix(m, alternative=args.alternative)
        tol = args.tolerance if args.tolerance is not None else 1e-6
        exact = ch.exact_rank(m, alternative=args.alternative)
        n = len(cols)
        ok = ev.relative_min_singular_value > tol
        payload["independence"] = {
            "size": n,
            "relative_min_singular_value": ev.relative_min_singular_value,
            "tolerance": tol,
            "numerically_nonsingular": ok,
            "exact_rank": exact,
            "exactly_nonsingular": exact == n,
        }
        lines.append(f"relative sigma_min {ev.relative_min_singular_value:.3e} (tolerance {tol:g}): "
                     f"{'pass' if ok else 'FAIL'}")
        lines.append(f"exact rank {exact}/{n}")
        if not ok:
            status = EXIT_CHECK
    _emit(args, payload, "\n".join(lines))
    return status


def run_reduce(args) -> int:
    m = _manifold(args)
    nm = normalize(m)
    if args.random:
        rng = random.Random(args.seed)
        indices = [tuple(rng.randint(-args.range, args.range) for _ in range(6)) for _ in range(args.random)]
    elif args.index:
        indices = [_index(args.index)]
    else:
        raise UsageError("give --index or --random")
    deadline = time.monotonic() + args.timeout if args.timeout else None
    results, lines = [], []
    for v in indices:
        out, trace = red.reduce_index(v, nm, record_trace=args.trace, policy=args.policy, deadline=deadline)
        entry = {"index": list(v), "result": out.to_json(), "counts": dict(sorted(trace.counts.items()))}
        if args.trace:
            entry["trace"] = trace.to_json()
        results.append(entry)
        lines.append(f"{v} -> {len(out.terms)} terminal terms, steps {dict(sorted(trace.counts.items()))}")
        if args.trace:
            lines += [f"  {s.rule:<10} {s.head} -> {len(s.outputs)} terms" for s in trace.steps]
        if not args.random:
            lines += [f"  {list(k)}  {c}" for k, c in sorted(out.terms.items())]
    _emit(args, {"normalized": nm.slope_string(), "reductions": results}, "\n".join(lines))
    return EXIT_OK


def run_generating_set(args) -> int:
    nm = normalize(_manifold(args))
    size = red.generating_set_size(nm)
    payload = {"normalized": nm.slope_string(), "size": size, "bounds": list(red.terminal_bounds(nm))}
    lines = [f"{nm.slope_string()}: {size} terminal generators, bounds {red.terminal_bounds(nm)}"]
    if args.list:
        gens = red.generating_set(nm)
        payload["generators"] = [list(v) for v in gens]
        lines += [str(v) for v in gens]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def _parse_rep(m: SeifertData, spec: str, table: ch.CharacterTable) -> replab.Sl2Rep:
    kind, _, arg = spec.partition(":")
    if kind == "central":
        return replab.construct_sl2_rep(m, ("central", int(arg) if arg else 1))
    if kind in ("diagonal", "exceptional", "irreducible"):
        want = {"diagonal": ("abelian", "central"), "exceptional": ("exceptional-abelian",),
                "irreducible": ("irreducible",)}[kind]
        pool = table.of_kind(*want)
        try:
            r = pool[int(arg or 0)]
        except (ValueError, IndexError) as exc:
            raise UsageError(f"{kind} representative {arg!r} out of range (have {len(pool)})") from exc
        return replab.rep_for_record(m, r)
    raise UsageError(f"unknown representation {spec!r}")


def run_cohomology(args) -> int:
    m = _manifold(args)
    table = ch.enumerate_characters(m)
    if args.rep == "all":
        res = replab.certify_table(table)
        rows = [{"kind": k, "dim_H1": int(h), "expected": replab.expected_h1(k),
                 "gap": None if math.isinf(g) else float(g), "residual": float(r)}
                for k, h, g, r in zip(res.kinds, res.dim_H1, res.gap, res.residual)]
        lines = [f"{i:4d}  {r['kind']:<20} dim H1 = {r['dim_H1']} (expected {r['expected']})"
                 for i, r in enumerate(rows)]
        lines.append("certified" if res.ok else f"{len(res.failures)} failures")
        _emit(args, {"slopes": m.slope_string(), "certified": res.ok, "characters": rows}, "\n".join(lines))
        return EXIT_OK if res.ok else EXIT_CHECK
    rep = _parse_rep(m, args.rep, table)
    out = replab.cocycle_dims(rep, m)
    _emit(args, {"slopes": m.slope_string(), "rep": args.rep, **out.to_json(),
                 "residual": rep.residual(m)},
          f"dim Z1 = {out.dim_Z1}, dim B1 = {out.dim_B1}, dim H1 = {out.dim_H1}, gap {out.gap:.3g}")
    return EXIT_OK


def run_su2(args) -> int:
    tol = args.tolerance if args.tolerance is not None else 1e-9
    try:
        m = GeneralSeifertData(args.base, tuple(parse_slopes(args.slopes)))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    payload: dict = {"base": args.base, "slopes": args.slopes}
    lines = []
    if args.base == "S2":
        n = len(m.slopes)
        angles = [float(a) for a in args.angles.split(",")] if args.angles else [math.pi / 2] * (n - 3)
        reps = replab.build_su2_s2base(m, angles)
        res = replab.s2base_residuals(m, reps, angles)
        payload["images"] = [q.to_json() for q in reps]
    else:
        axes = [replab.I_Q] * len(m.slopes)
        rep = replab.build_rp2_rep(m, axes)
        res = rep.residuals(m)
        lo, hi = replab.rp2_trace_interval(m)
        samples = replab.rp2_trace_samples(m, args.samples)
        inside = bool(((samples >= lo - 1e-12) & (samples <= hi + 1e-12)).all())
        distinct = len(set(round(float(x), 12) for x in samples))
        payload["trace_interval"] = [lo, hi]
        payload["distinct_traces"] = distinct
        payload["traces_inside"] = inside
        lines.append(f"Tr rho(c1 c2): {distinct} distinct values in [{lo:.6f}, {hi:.6f}]: "
                     f"{'yes' if inside else 'NO'}")
        if args.plot:
            from .plots import plot_trace_samples
            path = plot_trace_samples(samples, lo, hi, Path(args.plot))
            lines.append(f"wrote {path}")
    worst = max(res.values())
    payload["residuals"] = res
    payload["ok"] = worst < tol
    lines.insert(0, "residuals " + ", ".join(f"{k}={v:.2e}" for k, v in res.items()))
    lines.append(f"max residual {worst:.2e} (tolerance {tol:g}): {'pass' if worst < tol else 'FAIL'}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if worst < tol else EXIT_CHECK


def run_census(args) -> int:
    out = Path(args.output) if args.output else None
    summary = cmd_census(args.pmax, out, qmax=args.qmax, jobs=args.jobs)
    payload = summary.to_json()
    lines = [f"{summary.instances} instances, {len(summary.discrepancies)} discrepancies",
             f"weakly coprime: {summary.weakly_coprime} (non-reduced: {summary.weakly_coprime_nonreduced})"]
    lines += [f"  {d.slopes} {d.check}: expected {d.expected}, found {d.found}"
              for d in summary.discrepancies[:20]]
    if args.plot:
        if out is None:
            raise UsageError("--plot needs --output")
        from .plots import plot_census
        paths = plot_census(read_census(out), Path(args.plot))
        payload["figures"] = [str(p) for p in paths]
        lines += [f"wrote {p}" for p in paths]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if summary.ok else EXIT_CHECK


def run_known(args) -> int:
    try:
        kv = cmd_known(args.label)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from exc
    _emit(args, {"label": kv.label, "dimension": kv.dimension, "citation": kv.citation},
          f"{kv.label}: dim over Q(A) = {kv.dimension}\n  {kv.citation}")
    return EXIT_OK


# ----------------------------------------------------------------------------
# parser
# ----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized inputs")
    common.add_argument("--tolerance", type=float, default=None, help="override the numerical tolerance")

    p = argparse.ArgumentParser(prog="seifert-skein",
                                description="Skein modules and character varieties of small Seifert manifolds.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_, slopes=True):
        s = sub.add_parser(name, parents=[common], help=help_)
        if slopes:
            s.add_argument("--slopes", required=True, help="three slopes q/p, e.g. 1/2,-1/3,-1/5")
        s.set_defaults(func=func)
        return s

    add("invariants", run_invariants, "full invariant report")
    add("characters", run_characters, "list the points of X(M)")
    s = add("basis", run_basis, "basis of the coordinate ring")
    s.add_argument("--alternative", action="store_true", help="pure trace monomial basis")
    s.add_argument("--check-independence", action="store_true", help="evaluate on X(M) and test rank")
    s = add("reduce", run_reduce, "reduce a generator to the terminal set")
    s.add_argument("--index", help="k1,l1,k2,l2,k3,l3")
    s.add_argument("--random", type=int, default=0, help="reduce N random indices instead")
    s.add_argument("--range", type=int, default=4, help="entry bound for --random")
    s.add_argument("--trace", action="store_true", help="show every rewrite step")
    s.add_argument("--policy", choices=red.POLICIES, default="offsets-first")
    s.add_argument("--timeout", type=float, default=None, help="wall-clock budget in seconds")
    s = add("generating-set", run_generating_set, "size of the terminal generating set")
    s.add_argument("--list", action="store_true", help="print every generator")
    s = add("cohomology", run_cohomology, "dimension of H^1(M; Ad rho)")
    s.add_argument("--rep", default="all",
                   help="all | central[:+-1] | diagonal:IDX | exceptional:IDX | irreducible:N")
    s = sub.add_parser("su2", parents=[common], help="SU(2) constructions")
    s.add_argument("action", choices=["verify"])
    s.add_argument("--base", choices=["S2", "RP2"], required=True)
    s.add_argument("--slopes", required=True, help="slopes q/p of the exceptional fibers")
    s.add_argument("--angles", help="partial-product angles (S2 base), radians")
    s.add_argument("--samples", type=int, default=100)
    s.add_argument("--plot", help="write a trace histogram to this file (RP2 base)")
    s.set_defaults(func=run_su2)
    s = sub.add_parser("census", parents=[common], help="batch sweep with cross-checks")
    s.add_argument("--pmax", type=int, required=True)
    s.add_argument("--qmax", type=int, default=None)
    s.add_argument("--output", help="JSON-lines report file")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--plot", help="directory for census figures")
    s.set_defaults(func=run_census)
    s = sub.add_parser("known", parents=[common], help="known skein dimensions")
    s.add_argument("label", help="S2xS1, RP3 or RP3#RP3")
    s.set_defaults(func=run_known)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EulerZero as exc:
        print(f"error: Euler number is zero, so H_1 is infinite and M is Haken; "
              f"X(M) is not finite and this tool does not apply ({exc})", file=sys.stderr)
        return EXIT_MATH
    except SkeinError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_MATH
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
