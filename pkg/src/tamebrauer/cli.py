"""Command line entry point ``tbl``.

Exit codes: 0 success, 1 an asserted outcome failed, 2 usage, parse or
validation error, 3 precision exhausted.
"""

from __future__ import annotations

import argparse
import sys
from math import gcd

from .brauer import check_diagram_4, evaluate, theorem_0_1_check
from .divisor import OPoint, intersection_data, strong_equiv
from .errors import PrecisionExhausted, ReproFailure, TblError, ValidationError
from .finab import example_1_4_orders, example_3_13_kernel, question_1_probe
from .harness import equiv_run, make_rng, point_label, sample_point, thm16_run
from .localfield import padic_make
from .repro import REPROS, run_repro
from .report import Report
from .scenario import load_scenario

EXIT_OK, EXIT_ASSERT, EXIT_USAGE, EXIT_PRECISION = 0, 1, 2, 3
DEFAULT_SAMPLES = 100


def _points(scen):
    out = []
    for _, coords in scen.points:
        out.append(OPoint(tuple(padic_make(scen.p, scen.precision, c, exact=False) for c in coords)))
    return out


def _label(coords):
    return "(" + ", ".join(str(c) for c in coords) + ")"


def cmd_eval(scen):
    model = scen.model
    classes = scen.class_exprs()
    if not classes:
        raise ValidationError("`eval` needs a [classes] section")
    rep = Report(f"Evaluations, p={scen.p}", ("class", "point", "invariant"))
    for ci, c in enumerate(classes):
        for pi, (x, (_, coords)) in enumerate(zip(_points(scen), scen.points)):
            inv = evaluate(c, model, x)
            rep.add(c, _label(coords), inv)
            rep.put(f"INV[{ci},{pi}]", inv)
    rep.put("CLASSES", len(classes))
    rep.put("POINTS", len(scen.points))
    return rep


def cmd_intersect(scen):
    model = scen.model
    names = [model.component_name(i) for i in range(model.n_components)]
    rep = Report(
        f"Intersection data, p={scen.p}",
        ("point", "xbar") + tuple(f"m,r on {n}" for n in names),
    )
    for pi, (x, (_, coords)) in enumerate(zip(_points(scen), scen.points)):
        d = intersection_data(model, x)
        cells = [f"{m},{r}" for m, r in zip(d.multiplicities, d.residues)]
        rep.add(_label(coords), d.reduction, *cells)
        rep.put(f"DATA[{pi}]", f"xbar={d.reduction} m={list(d.multiplicities)} r={list(d.residues)}")
    # pairwise strong equivalence between the listed points
    datas = [intersection_data(model, x) for x in _points(scen)]
    same = [
        f"{i}~{j}"
        for i in range(len(datas))
        for j in range(i + 1, len(datas))
        if strong_equiv(datas[i], datas[j])
    ]
    rep.put("EQUIVALENT_PAIRS", " ".join(same) or "none")
    return rep


def cmd_equiv(scen):
    model = scen.model
    classes = scen.class_exprs() or None
    rng = make_rng(scen.seed)
    rep = equiv_run(model, rng, scen.samples or DEFAULT_SAMPLES, classes, scen.precision)
    # listed points are compared too, without assuming they are equivalent
    pts = _points(scen)
    if classes and len(pts) > 1:
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                res = theorem_0_1_check(model, pts[i], pts[j], classes)
                agree = all(e1 == e2 for _, e1, e2 in res.evaluations)
                rep.put(f"LISTED[{i},{j}]", f"strong_equiv={res.strong_equiv} evaluations_agree={agree}")
                for c, e1, e2 in res.violations:
                    rep.fail(f"listed points {i}, {j}: {c} gives {e1} vs {e2}")
    return rep


def cmd_verify_thm16(scen):
    model = scen.model
    p = scen.p
    n_values = list(scen.n_values)
    classes = scen.class_exprs()
    if not n_values and not classes:
        raise ValidationError("`verify-thm16` needs n in [options] or a [classes] section")
    for n in n_values + [c.order for c in classes]:
        if gcd(n, p - 1) != 1:
            raise ValidationError(f"n={n} violates gcd(n, p - 1) = 1 at p={p}")
    rng = make_rng(scen.seed)
    samples = scen.samples or DEFAULT_SAMPLES
    rep = Report(f"Residue diagram, p={p}")
    for n in n_values:
        sub = thm16_run(model, n, rng, samples, scen.precision)
        rep.rows.extend(sub.rows)
        rep.header = sub.header
        rep.extend(sub, f"N{n}_")
    if classes:
        fails = 0
        for i in range(samples):
            x = sample_point(model, rng, scen.precision)
            for c in classes:
                d = check_diagram_4(c, model, x, scen.precision)
                rep.add(i, c, point_label(x), "", d.lhs, d.rhs, d.equal)
                if not d.equal:
                    fails += 1
                    rep.fail(f"{c} at {point_label(x)}: lhs {d.lhs} != rhs {d.rhs}")
        rep.header = ("#", "class", "x", "data", "lhs", "rhs", "equal")
        rep.put("LISTED_CLASSES_SAMPLES", samples * len(classes))
        rep.put("LISTED_CLASSES_FAILURES", fails)
    return rep


def cmd_cohom(scen):
    p = scen.p
    n_values = list(scen.n_values) or [n for n in range(2, 13) if gcd(n, p) == 1]
    rep = Report(
        f"Finite abelian group computations, p={p}",
        ("n", "gcd(n, p-1)", "E2^{0,2}", "E2^{2,0}", "constant-unit kernel", "probe injective", "probe surjective"),
    )
    for n in n_values:
        e2 = example_1_4_orders(p, n)
        k = example_3_13_kernel(p, n)
        pr = question_1_probe(p, n)
        rep.add(n, gcd(n, p - 1), e2["E2^{0,2}"], e2["E2^{2,0}"], k, pr.injective, pr.surjective)
        rep.put(f"N{n}_E2_02", e2["E2^{0,2}"])
        rep.put(f"N{n}_E2_20", e2["E2^{2,0}"])
        rep.put(f"N{n}_KERNEL", k)
        rep.put(f"N{n}_PROBE", f"injective={pr.injective} surjective={pr.surjective}")
    return rep


COMMANDS = {
    "eval": cmd_eval,
    "intersect": cmd_intersect,
    "equiv": cmd_equiv,
    "verify-thm16": cmd_verify_thm16,
    "cohom": cmd_cohom,
}


def build_parser():
    parser = argparse.ArgumentParser(prog="tbl", description="Evaluate tame Brauer classes at integral points.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, scenario_required=True):
        sp.add_argument("--scenario", required=scenario_required, help="scenario file")
        sp.add_argument("--seed", type=int, help="overrides [options] seed")
        sp.add_argument("--precision", type=int, help="overrides [field] precision")
        sp.add_argument("--samples", type=int, help="overrides [options] samples")

    for name in COMMANDS:
        common(sub.add_parser(name))
    rp = sub.add_parser("repro", help="run a pinned reproduction")
    rp.add_argument("name", choices=sorted(REPROS))
    common(rp, scenario_required=False)
    return parser


def run(args):
    """Execute parsed arguments and return the Report."""
    if args.command == "repro":
        p = n = None
        if args.scenario:
            scen = load_scenario(args.scenario)
            p = scen.p
            n = scen.n_values[0] if scen.n_values else None
        kwargs = {} if args.precision is None else {"precision": args.precision}
        return run_repro(args.name, p=p, n=n, check=False, **kwargs)
    scen = load_scenario(args.scenario)
    scen = scen.with_overrides(args.seed, args.precision, args.samples)
    scen.require_for(args.command)
    return COMMANDS[args.command](scen)


def _is_precision_error(exc):
    while exc is not None:
        if isinstance(exc, PrecisionExhausted):
            return True
        exc = exc.__cause__
    return False


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        rep = run(args)
    except ReproFailure as exc:
        print(f"assertion failed: {exc}", file=sys.stderr)
        return EXIT_ASSERT
    except TblError as exc:
        if _is_precision_error(exc):
            print(f"error: precision exhausted: {exc}", file=sys.stderr)
            return EXIT_PRECISION
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(rep.render())
    return EXIT_OK if rep.ok else EXIT_ASSERT


if __name__ == "__main__":
    sys.exit(main())
