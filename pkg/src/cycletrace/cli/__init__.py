"""Command line interface.

    cycletrace trace FILE EXPR       trace of a function or relative form
    cycletrace classify FILE         traced Newton functions and their regularity
    cycletrace check FILE            flatness verdict
    cycletrace weights FILE          smallest weights with constant degree
    cycletrace fibers FILE           fiber cardinalities over sample points
    cycletrace residue FILE EXPR     trace through the fundamental class
    cycletrace pullback FILE         pullback of sample points as a cycle
    cycletrace corpus                run the bundled examples

Exit status: 0 on success or a passing verdict, 1 on a failing verdict
(or a corpus mismatch), 2 on errors.
"""

import argparse
import sys

from ..covering import Covering, classifying_map, fiber_count, simplified
from ..errors import CycleTraceError
from ..flatness import (AGF, _groups, certify_agf, check_degree_constancy, cycle_pullback,
                        weight_search)
from ..fundclass import trace_via_class
from ..traceforms import parse_form, simplify_form, trace_form
from .famfile import load_family, parse_family
from .report import Report, show

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


def _point_arg(text):
    pt = {}
    for item in text.replace(",", " ").split():
        if "=" not in item:
            raise argparse.ArgumentTypeError(f"expected VAR=VALUE, got {item!r}")
        k, v = item.split("=", 1)
        pt[k.strip()] = v.strip()
    return pt


def _q_point(pt):
    from ..poly.polynomial import to_q
    return {k: to_q(v) for k, v in pt.items()}


def _subcoverings(cov):
    """One covering per base component (a single one in the common case)."""
    groups = _groups(cov)
    if len(groups) == 1:
        return [(None, cov)]
    return [("+".join(c.name for c in comps), Covering(cov.scale, comps, cov.name))
            for _, comps in groups]


# subcommands


def cmd_trace(args, desc, rep):
    cov = desc.covering
    sc = cov.scale
    w = parse_form(args.expr, sc.chart, sc.fiber, sc.base)
    for label, sub in _subcoverings(cov):
        if w.degree() == 0:
            from ..covering import trace0
            from ..poly import Poly
            c = w.terms.get((), Poly.const(0, sc.ring))
            r = trace0(sub, c, args.route)
            value, regular = show(r)
            rep.row(over=label, input=args.expr, trace=value, regular=regular)
        else:
            t = trace_form(sub, w, args.route)
            s = simplify_form(t)
            regular = all(show(c)[1] for c in s.terms.values())
            rep.row(over=label, input=args.expr, trace=str(s), regular=regular)
    return EXIT_OK


def cmd_classify(args, desc, rep):
    for label, sub in _subcoverings(desc.covering):
        bound = args.degree if args.degree else sub.degree()
        cm = classifying_map(sub, bound)
        for a, t, reg in cm.rows():
            mono = "*".join(f"{v}^{e}" if e > 1 else v
                            for v, e in zip(sub.scale.fiber, a) if e) or "1"
            rep.row(over=label, monomial=mono, trace=show(t)[0], regular=bool(reg))
        rep.summary(degree=cm.degree, regular=cm.is_regular)
    return EXIT_OK


def cmd_check(args, desc, rep):
    v = certify_agf(desc.family, args.form_degree, args.monomial_degree, seed=args.seed)
    rep.bounds = v.bounds
    out = {"verdict": v.kind, "message": v.message, "checked": v.checked}
    if v.degrees is not None:
        out["degrees"] = dict(sorted(v.degrees.degrees.items()))
    if v.witness is not None:
        w = v.witness
        out["witness"] = {
            "item": w.item,
            "over": w.component,
            "dt": list(w.key),
            "coefficient": show(w.coefficient)[0] if w.coefficient is not None else None,
            "polynomial_part": str(w.polynomial) if w.polynomial is not None else None,
            "sigma": str(w.sigma) if w.sigma is not None else None,
            "integrality": str(w.integrality) if w.integrality is not None else None,
        }
    rep.summary(**out)
    return EXIT_OK if v.kind == AGF else EXIT_FAIL


def cmd_weights(args, desc, rep):
    fam = desc.family
    res = weight_search(fam, args.max_weight, seed=args.seed)
    rep.bounds = {"max_weight": args.max_weight}
    if res is None:
        rep.summary(weights=None, message=f"no weights up to {args.max_weight}")
        return EXIT_FAIL
    rep.summary(weights=res.weights, degree=res.degree, degrees=dict(sorted(res.degrees.items())))
    return EXIT_OK


def _points(args, desc):
    if args.point:
        return [(",".join(f"{k}={v}" for k, v in p.items()), _q_point(p)) for p in args.point]
    fam = desc.family
    pts = [(s.name, s.point) for s in fam.strata] + [(j.name, j.point) for j in fam.junctions]
    if not pts:
        raise CycleTraceError("no sample points: give --point or declare strata")
    return pts


def cmd_fibers(args, desc, rep):
    cov = desc.covering
    for name, pt in _points(args, desc):
        fc = fiber_count(cov, pt, seed=args.seed, trials=args.trials)
        rep.row(point=name, with_multiplicity=fc.with_multiplicity, distinct=fc.distinct)
    if desc.family.strata:
        d = check_degree_constancy(desc.family, seed=args.seed)
        rep.summary(constant_degree=d.constant, degrees=dict(sorted(d.degrees.items())))
    return EXIT_OK


def cmd_residue(args, desc, rep):
    cov = desc.covering
    from ..poly import parse_poly
    h = parse_poly(args.expr, cov.scale.ring)
    r = trace_via_class(cov, h)
    rep.row(input=args.expr, residue=show(r)[0],
            normalization="Res[dx/x] = 1, trace = Res[h * Jacobian]")
    return EXIT_OK


def cmd_pullback(args, desc, rep):
    targets = [(args.weight, pt) for _, pt in _points(args, desc)]
    cyc = cycle_pullback(desc.family, targets, seed=args.seed)
    for p in cyc.parts:
        rep.row(component=p.component, multiplicity=p.multiplicity, degree=p.degree)
    rep.summary(degree=cyc.degree)
    return EXIT_OK


def cmd_corpus(args, desc, rep):
    from .corpus import run_corpus
    ok = run_corpus(rep, args.dir, args.only, seed=args.seed)
    return EXIT_OK if ok else EXIT_FAIL


COMMANDS = {
    "trace": cmd_trace, "classify": cmd_classify, "check": cmd_check,
    "weights": cmd_weights, "fibers": cmd_fibers, "residue": cmd_residue,
    "pullback": cmd_pullback, "corpus": cmd_corpus,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "machine"), default="text",
                        help="output format on standard output")
    common.add_argument("--out", help="also write the machine report to this file")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--form-degree", type=int, default=None)
    common.add_argument("--monomial-degree", type=int, default=None)
    common.add_argument("--max-weight", type=int, default=6)
    common.add_argument("--trials", type=int, default=8)
    p = argparse.ArgumentParser(prog="cycletrace", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True)
    for name in ("trace", "residue"):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("file")
        s.add_argument("expr")
        if name == "trace":
            s.add_argument("--route", choices=("auto", "algebra", "branches"), default="auto")
    for name in ("classify", "check", "weights", "fibers", "pullback"):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("file")
        if name == "classify":
            s.add_argument("--degree", type=int, default=None)
        if name in ("fibers", "pullback"):
            s.add_argument("--point", type=_point_arg, action="append",
                           help="base point as VAR=VALUE,... (repeatable)")
        if name == "pullback":
            s.add_argument("--weight", type=int, default=1)
    s = sub.add_parser("corpus", parents=[common])
    s.add_argument("--dir", default=None, help="directory with .fam files and expected.json")
    s.add_argument("--only", action="append", help="run only these corpus items")
    return p


def main(argv=None, stdout=None):
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    rep = Report(args.command, seed=args.seed)
    try:
        desc = None
        if args.command != "corpus":
            desc = load_family(args.file)
            rep.set_input(desc, getattr(args, "expr", None))
        code = COMMANDS[args.command](args, desc, rep)
    except (CycleTraceError, ValueError, KeyError, OSError) as exc:
        rep.error(str(exc) if not isinstance(exc, KeyError) else f"unknown name {exc}")
        code = EXIT_ERROR
    rep.exit_code = code
    rep.emit(stdout, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            rep.emit(fh, "machine")
    return code


__all__ = ["main", "parse_family", "load_family"]
