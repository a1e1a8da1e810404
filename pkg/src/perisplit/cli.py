"""Command line front end.

Exit codes: 0 success, 1 usage error, 2 invariant violation, 3 step budget
exceeded.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import detvar, jpw, splitrings
from .errors import BudgetExceeded, InvariantViolation, PerisplitError

DEFAULT_SEED = 20240101

KIND_ALIASES = {"signed": "B-signed", "B": "B-signed", "B-signed": "B-signed", "D": "D", "A": "A",
                "B-fact": "B-fact", "D-fact": "D-fact"}


class UsageError(PerisplitError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def _rationals(text: str) -> list[Fraction]:
    if text is None or text.strip() == "":
        return []
    try:
        return [Fraction(x.strip()) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated rationals, got {text!r}") from None


def _kind(text: str) -> str:
    if text not in KIND_ALIASES:
        raise argparse.ArgumentTypeError(f"unknown kind {text!r}; choose from {sorted(KIND_ALIASES)}")
    return KIND_ALIASES[text]


def _global_options(parser, suppress: bool) -> None:
    # Subcommands repeat the options with suppressed defaults so that a value
    # given before the subcommand survives.
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--budget", type=int, default=d(None), help="Groebner step budget")
    parser.add_argument("--seed", type=int, default=d(DEFAULT_SEED))
    parser.add_argument("--format", choices=("json", "csv", "text"), default=d("json"))
    parser.add_argument("--jobs", type=int, default=d(1))


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    _global_options(common, suppress=True)

    p = _Parser(prog="perisplit", description="Splitting rings, determinantal loci and their Betti tables.")
    _global_options(p, suppress=False)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def add(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    q = add("rank", help="rank of a universal splitting or factorization ring")
    q.add_argument("--kind", type=_kind, required=True)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--p", type=int)

    q = add("split", help="presentation of a splitting or factorization ring")
    q.add_argument("--kind", type=_kind, required=True)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--p", type=int)
    q.add_argument("--specialize", action="store_true", help="take f = u^2n over Q instead of the universal base")

    q = add("discriminant", help="Delta, Delta~ (and Delta-bar) of the universal polynomial")
    q.add_argument("--kind", choices=("B", "D"), default="B")
    q.add_argument("--n", type=int, required=True)

    q = add("cohomology-specialize", help="Poincare polynomial of the f = u^2n specialization")
    q.add_argument("--kind", type=_kind, required=True)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--p", type=int)
    q.add_argument("--weights", choices=("cohomological", "algebraic"), default="cohomological")

    dv = add("detvar", help="points of Z and epsilon probes")
    dsub = dv.add_subparsers(dest="detvar_command", parser_class=_Parser)
    dsub.required = True
    q = dsub.add_parser("sample", parents=[common])
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--r", type=int, required=True)
    q.add_argument("--eigen", type=_rationals, default=[])
    _probe_args(dsub.add_parser("probe", parents=[common]))
    _probe_args(add("probe", help="epsilon probe (same as detvar probe)"))

    jp = add("jpw", help="closed-form Betti tables and cohomology")
    jsub = jp.add_subparsers(dest="jpw_command", parser_class=_Parser)
    jsub.required = True
    q = jsub.add_parser("betti", parents=[common])
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--r", type=int, required=True)
    q.add_argument("--max-i", type=int, default=3)
    q.add_argument("--max-j", type=int, default=6)
    q.add_argument("--pipeline", choices=("Z", "Z'"), default="Z'")
    q.add_argument("--oracle", action="store_true", help="also compute Koszul homology and diff")
    q = jsub.add_parser("cohomology", parents=[common])
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--r", type=int, required=True)
    q.add_argument("--max-k", type=int, default=4)
    q.add_argument("--max-j", type=int, default=None)

    q = add("verify", help="run the self-checks")
    q.add_argument("--profile", choices=("quick", "full"), default="quick")
    q.add_argument("--golden-dir", default=None)
    return p


def _probe_args(q):
    q.add_argument("--family", choices=detvar.FAMILIES, required=True)
    q.add_argument("--lambda", dest="lambdas", type=_rationals, default=[])
    q.add_argument("--n", type=int)
    q.add_argument("--r", type=int)


# -- handlers ---------------------------------------------------------------------

def _need_p(args):
    if args.kind in ("B-fact", "D-fact") and args.p is None:
        raise UsageError(f"--p is required for {args.kind}")


def cmd_rank(args) -> dict:
    _need_p(args)
    R = splitrings.universal_ring(args.kind, args.n, args.p)
    got = R.fiber_dimension(budget=args.budget)
    want = splitrings.expected_rank(args.kind, args.n, args.p)
    if got != want:
        raise InvariantViolation(f"rank {got} differs from the closed form {want}", "universal fiber rank")
    doc = {"kind": args.kind, "n": args.n, "rank": got}
    if args.p is not None:
        doc["p"] = args.p
    return doc


def cmd_split(args) -> dict:
    _need_p(args)
    R = splitrings.specialized_ring(args.kind, args.n, args.p) if args.specialize \
        else splitrings.universal_ring(args.kind, args.n, args.p)
    return R.to_json()


def cmd_discriminant(args) -> dict:
    f = splitrings.universal_poly(args.n, args.kind)
    D, Dt = splitrings.discriminant(f)
    if D != Dt * f.coefficient(args.n) * 4**args.n:
        raise InvariantViolation("Delta differs from 4^n a_2n Delta~", "Delta = 4^n a_2n Delta~")
    doc = {"n": args.n, "kind": args.kind, "Delta": str(D), "Delta_tilde": str(Dt)}
    if args.kind == "D":
        Db = splitrings.reduced_discriminant(f)
        if f.alpha * Db != D:
            raise InvariantViolation("alpha Delta-bar differs from Delta", "alpha Delta-bar = Delta")
        doc["Delta_bar"] = str(Db)
    return doc


def cmd_cohomology_specialize(args) -> dict:
    if args.kind in ("B-fact", "D-fact") and args.p is None:
        raise UsageError(f"--p is required for {args.kind}")
    hs = splitrings.cohomology_specialize(args.kind, args.n, args.p, weights=args.weights)
    poly = hs.as_polynomial()
    return {"kind": args.kind, "n": args.n, "p": args.p, "weights": args.weights,
            "poincare": poly, "total": sum(poly)}


def cmd_sample(args) -> dict:
    pt = detvar.sample_Z_point(args.n, args.r, args.eigen, seed=args.seed)
    doc = pt.to_json()
    doc["chi_bar"] = [str(c) for c in detvar.chi_bar_coeffs(pt.f, pt.g, pt.n, pt.r)]
    if pt.phi is not None:
        ok, rep = detvar.verify_phi_chi(pt)
        if not ok:
            raise InvariantViolation("Phi^2 differs from +-chi-bar(0)", "Phi^2 = +-chi-bar(0)")
        doc["phi_check"] = rep
    return doc


def cmd_probe(args) -> dict:
    res = detvar.epsilon_probe(args.family, args.lambdas, n=args.n, r=args.r)
    d = res.discriminant
    if d.value != 0 or d.slope == 0:
        raise InvariantViolation("discriminant is not a nonzero multiple of eps", "first-order vanishing")
    doc = res.to_json()
    doc["discriminant"] = {"value": doc.pop("value"), "slope": doc.pop("slope")}
    head = res.quartic if res.quartic is not None else d
    doc["value"], doc["slope"] = str(head.value), str(head.slope)
    return doc


def cmd_betti(args) -> dict:
    table = jpw.betti_table_jpw(args.n, args.r, args.max_i, args.max_j, pipeline=args.pipeline)
    doc = table.to_json()
    doc.update({"n": args.n, "r": args.r, "pipeline": args.pipeline})
    if args.oracle:
        from .verify import oracle_table

        if args.pipeline == "Z" and 2 * args.r <= args.n:
            raise UsageError("the oracle runs on the Z' pipeline for 2r <= n")
        other, bad, checked = oracle_table(args.n, args.r, args.max_i, args.max_j, jobs=args.jobs, seed=args.seed)
        doc["diff"] = table.diff(other)
        doc["euler_mismatches"] = bad
        doc["euler_degrees"] = checked
        if doc["diff"] or bad:
            _emit(doc, args)
            raise InvariantViolation("closed form and Koszul homology disagree", "Tor of the determinantal locus")
    args._table = table
    return doc


def cmd_cohomology(args) -> dict:
    max_j = args.max_j if args.max_j is not None else 4 * args.max_k + 8
    prof = jpw.cohomology_series(args.n, args.r, args.max_k, max_j)
    if not prof.multiplicity_free:
        raise InvariantViolation(f"multiplicity-free check failed: {prof.violation}", "L_k multiplicity-free")
    return prof.to_json()


def cmd_verify(args) -> dict:
    from .verify import verify_all

    rep = verify_all(args.profile, args.golden_dir, jobs=args.jobs)
    if not rep["ok"]:
        _emit(rep, args)
        bad = [c["name"] for c in rep["checks"] if not c["ok"]]
        raise InvariantViolation(f"failed checks: {', '.join(bad)}", "; ".join(
            c["anchor"] for c in rep["checks"] if not c["ok"]))
    return rep


HANDLERS = {
    "rank": cmd_rank, "split": cmd_split, "discriminant": cmd_discriminant,
    "cohomology-specialize": cmd_cohomology_specialize, "probe": cmd_probe,
    "verify": cmd_verify,
}


def _dispatch(args):
    if args.command == "detvar":
        return {"sample": cmd_sample, "probe": cmd_probe}[args.detvar_command](args)
    if args.command == "jpw":
        return {"betti": cmd_betti, "cohomology": cmd_cohomology}[args.jpw_command](args)
    return HANDLERS[args.command](args)


def _flatten(doc, prefix=""):
    if isinstance(doc, dict):
        for k in sorted(doc):
            yield from _flatten(doc[k], f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(doc, list) and any(isinstance(x, (dict, list)) for x in doc):
        for i, x in enumerate(doc):
            yield from _flatten(x, f"{prefix}[{i}]")
    else:
        yield prefix, doc


def _render(doc, args) -> str:
    fmt = args.format
    if fmt == "json":
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    table = getattr(args, "_table", None)
    if fmt == "csv":
        if table is not None:
            return table.to_csv()
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["key", "value"])
        for k, v in _flatten(doc):
            w.writerow([k, ";".join(map(str, v)) if isinstance(v, list) else v])
        return buf.getvalue()
    lines = []
    for k, v in _flatten(doc):
        lines.append(f"{k}: {v}")
    return "\n".join(lines) + "\n"


def _emit(doc, args) -> None:
    sys.stdout.write(_render(doc, args))
    sys.stdout.flush()


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    if args.budget is not None and args.budget <= 0:
        sys.stderr.write("perisplit: --budget must be positive\n")
        return 1
    if args.jobs < 1:
        sys.stderr.write("perisplit: --jobs must be at least 1\n")
        return 1
    saved = os.environ.get("PERISPLIT_BUDGET")
    if args.budget is not None:
        os.environ["PERISPLIT_BUDGET"] = str(args.budget)
    try:
        doc = _dispatch(args)
    except InvariantViolation as exc:
        sys.stderr.write(f"perisplit: invariant violation: {exc}\n")
        return 2
    except BudgetExceeded as exc:
        sys.stderr.write(f"perisplit: budget exceeded: {exc}\n")
        return 3
    except PerisplitError as exc:
        sys.stderr.write(f"perisplit: error: {exc}\n")
        return 1
    finally:
        # main() may be called in-process; do not leak the budget
        if saved is None:
            os.environ.pop("PERISPLIT_BUDGET", None)
        else:
            os.environ["PERISPLIT_BUDGET"] = saved
    _emit(doc, args)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
