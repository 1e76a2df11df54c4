"""Command-line interface.

Exit codes: 0 success, 1 domain or usage error, 2 capacity error,
3 order is not realizable (an answer, not a failure).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import facets_n, ideal, orders, repro, summation
from .errors import CapacityError, DomainError, UnitaryError
from .multfunc import MultiplicativeFunction, builtin, from_text, to_rational

EXIT_OK, EXIT_DOMAIN, EXIT_CAPACITY, EXIT_INFEASIBLE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _q(x) -> str:
    return str(Fraction(x))


def _real(x) -> str:
    return f"{float(x):.15g}"


def _emit(args, text: str, data) -> None:
    if args.format == "json":
        print(json.dumps(data, sort_keys=True))
    else:
        print(text)


def load_function(source: str) -> MultiplicativeFunction:
    """A builtin name, or a path to a ``p^a = value`` file."""
    path = Path(source)
    if path.is_file():
        return from_text(path.read_text(), name=path.name)
    return builtin(source)


def load_ideal(path: str) -> ideal.UnitaryIdeal:
    return ideal.UnitaryIdeal.from_json(Path(path).read_text())


# -- ideal --------------------------------------------------------------------


def cmd_ideal(args) -> int:
    if args.check is not None:
        bad = ideal.find_closure_violation(args.check)
        data = {"unitary_ideal": bad is None, "witness": list(bad) if bad else None}
        text = "unitary ideal" if bad is None else f"not closed: {bad[1]} is a unitary divisor of {bad[0]}"
        _emit(args, text, data)
        return EXIT_OK
    if args.generators:
        S = ideal.close_under_unitary_divisors(args.generators)
    elif args.interval:
        S = ideal.interval_ideal(args.interval)
    elif args.file:
        S = load_ideal(args.file)
    else:
        raise UsageError("ideal: give --generators, --interval, --file or --check")

    if args.show == "elements":
        _emit(args, " ".join(map(str, S)), {"elements": list(S)})
    elif args.show == "vertices":
        _emit(args, " ".join(map(str, S.vertices)), {"vertices": list(S.vertices)})
    else:
        cx = ideal.complex_of(S)
        if args.show == "fvector":
            fv = list(cx.f_vector())
            _emit(args, " ".join(map(str, fv)), {"f_vector": fv})
        elif args.show == "facets":
            vals = [f.value for f in cx.facets()]
            _emit(args, "\n".join(map(str, vals)), {"facets": vals})
        else:
            data = json.loads(cx.to_json())
            _emit(args, cx.to_json(), data)
    return EXIT_OK


# -- sum ------------------------------------------------------------------------


def cmd_sum(args) -> int:
    S = load_ideal(args.ideal)
    g = load_function(args.function)
    if args.method == "direct":
        total = summation.g_sum_direct(S, g)
    elif args.method == "incl-excl":
        total = summation.g_sum_inclusion_exclusion(ideal.complex_of(S).facets(), g, cap=args.facet_cap)
    else:
        vals = {g.value_at(q) for q in S.vertices}
        if len(vals) > 1:
            raise DomainError("--method fvector needs a function constant on the prime powers of S")
        c = vals.pop() if vals else Fraction(0)
        total = summation.g_sum_fvector(ideal.complex_of(S).f_vector(), c)
    _emit(args, _q(total), {"sum": _q(total), "method": args.method})
    return EXIT_OK


# -- psi ------------------------------------------------------------------------


def cmd_psi(args) -> int:
    c = to_rational(args.c)
    res = summation.psi(args.r, c)
    data = {
        "r": args.r,
        "c": _q(c),
        "value": _q(res.value),
        "argmax_level": res.argmax_level,
        "K": [_q(k) for k in res.k_values],
    }
    lines = [
        f"Psi({args.r}, {_q(c)}) = {_q(res.value)}",
        f"argmax level: {res.argmax_level}",
        "K: " + " ".join(_q(k) for k in res.k_values),
    ]
    if args.piecewise:
        try:
            pw = summation.psi_piecewise(args.r, c)
            data["piecewise"] = _q(pw)
            lines.append(f"piecewise: {_q(pw)}")
        except DomainError as exc:
            data["piecewise"] = None
            lines.append(f"piecewise: {exc}")
    if args.brute_force:
        bf = summation.psi_bruteforce(args.r, c)
        data["brute_force"] = _q(bf)
        lines.append(f"brute force: {_q(bf)}")
    _emit(args, "\n".join(lines), data)
    return EXIT_OK


# -- facets / gamma / maximize ---------------------------------------------------


def cmd_facets(args) -> int:
    n = args.n
    if args.matrix:
        fm = facets_n.facet_matrix(n, workers=args.threads)
        with open(args.matrix, "w", newline="") as fh:
            fm.write_csv(fh)
        ell, r = fm.shape
        _emit(args, f"wrote {ell} x {r} facet matrix to {args.matrix}", {"rows": ell, "columns": r})
    elif args.count:
        k = facets_n.facet_count(n, workers=args.threads)
        _emit(args, str(k), {"n": n, "facets": k})
    elif args.density:
        d = facets_n.facet_density(n, workers=args.threads)
        _emit(args, f"{_q(d)} ~ {_real(d)}", {"n": n, "density": _q(d), "approx": _real(d)})
    else:
        if args.format == "json":
            print(json.dumps({"n": n, "facets": list(facets_n.enumerate_facets(n, workers=args.threads))}))
        else:
            out = sys.stdout
            for w in facets_n.enumerate_facets(n, workers=args.threads):
                out.write(f"{w}\n")
    return EXIT_OK


def cmd_gamma(args) -> int:
    est = facets_n.gamma_constant(to_rational(args.tol))
    _emit(
        args,
        f"{_real(est.series_value)}\nterms used: {est.terms_used}",
        {"gamma": _real(est.series_value), "exact_partial_sum": _q(est.series_value), "terms_used": est.terms_used},
    )
    return EXIT_OK


def cmd_maximize(args) -> int:
    g = load_function(args.function)
    m, v = facets_n.maximize_on_interval(args.n, g, args.strategy)
    _emit(args, f"max g on [1, {args.n}] = {_q(v)} at m = {m}", {"argmax": m, "value": _q(v), "strategy": args.strategy})
    return EXIT_OK


# -- orders -----------------------------------------------------------------------


def _parse_restrict(arg: str, r: int) -> list[int]:
    path = Path(arg)
    if path.is_file():
        faces = []
        for line in path.read_text().splitlines():
            line = line.split("#", 1)[0].strip()
            if line:
                faces.append(orders.face_of(int(tok) for tok in line.replace(",", " ").split()))
        return faces
    sizes = [int(tok) for tok in arg.split(",")]
    return [f for k in sizes for f in orders.k_subsets(r, k)]


def cmd_orders_y(args) -> int:
    P = orders.poset_Y(args.r)
    if args.restrict:
        P = orders.restrict_poset(P, _parse_restrict(args.restrict, args.r))
    if args.export_covers:
        pairs = [[orders.face_label(a), orders.face_label(b)] for a, b in P.covers]
        text = "\n".join(f"{a} < {b}" for a, b in pairs)
        _emit(args, text, {"elements": len(P), "covers": pairs})
    else:
        k = orders.count_linear_extensions(P)
        _emit(args, str(k), {"elements": len(P), "linear_extensions": k})
    return EXIT_OK


def cmd_orders_check(args) -> int:
    values = []
    for line in Path(args.file).read_text().split():
        values.append(int(line))
    order = orders.order_from_integers(values)
    res = orders.coherence_witness(order, sorted_only=args.sorted)
    labels = order.labels
    if isinstance(res, orders.WeightVector):
        weights = {str(q): _q(w) for q, w in zip(labels, res.weights)}
        text = "FEASIBLE\n" + "\n".join(f"w({q}) = {w}" for q, w in weights.items())
        _emit(args, text, {"feasible": True, "weights": weights})
        return EXIT_OK

    def name(f):
        return str(orders.TotalOrder((f,), order.r, labels).values()[0])

    data = {
        "feasible": False,
        "certificate": [{"multiplier": _q(y), "lower": name(a), "upper": name(b)} for y, a, b in res.certificate],
        "side": [{"multiplier": _q(y), "constraint": s} for y, s in res.side],
        "contradiction": [[name(a), name(b)] for a, b in res.contradiction] if res.contradiction else None,
    }
    _emit(args, res.describe(labels), data)
    return EXIT_INFEASIBLE


def cmd_orders_enumerate(args) -> int:
    T = orders.k_subsets(args.r, args.subsets)
    found = orders.realizable_orders(T, sorted_only=args.sorted, r=args.r)
    rendered = [[orders.face_label(f) for f in o.sequence] for o in found]
    text = "\n".join(" < ".join(o) for o in rendered) + f"\n{len(found)} realizable orders"
    _emit(args, text, {"count": len(found), "orders": rendered})
    return EXIT_OK


# -- repro --------------------------------------------------------------------------


def cmd_repro(args) -> int:
    outcomes = repro.run_all()
    if args.format == "json":
        rows = [
            {"criterion": o.check.number, "name": o.check.name, "passed": o.ok, "detail": o.detail}
            for o in outcomes
        ]
        print(json.dumps({"all_passed": all(o.ok for o in outcomes), "checks": rows}, sort_keys=True))
    else:
        for o in outcomes:
            print(repro.format_outcome(o))
        print(f"{sum(o.ok for o in outcomes)}/{len(outcomes)} passed")
    return EXIT_OK if all(o.ok for o in outcomes) else EXIT_DOMAIN


# -- parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--threads", type=int, default=1, help="worker cap for block-parallel steps")

    p = _Parser(prog="unitary-complex", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("ideal", parents=[common], help="build or inspect a unitary ideal")
    src = s.add_mutually_exclusive_group()
    src.add_argument("--generators", type=int, nargs="+")
    src.add_argument("--interval", type=int, metavar="N")
    src.add_argument("--file", metavar="JSON")
    src.add_argument("--check", type=int, nargs="*", metavar="M", help="test closure of a candidate set")
    s.add_argument("--show", choices=("elements", "vertices", "fvector", "facets", "complex"), default="elements")
    s.set_defaults(func=cmd_ideal)

    s = sub.add_parser("sum", parents=[common], help="sum a multiplicative function over an ideal")
    s.add_argument("ideal", help="ideal JSON file")
    s.add_argument("function", help="function file or builtin name")
    s.add_argument("--method", choices=("direct", "incl-excl", "fvector"), default="direct")
    s.add_argument("--facet-cap", type=int, default=summation.DEFAULT_FACET_CAP)
    s.set_defaults(func=cmd_sum)

    s = sub.add_parser("psi", parents=[common], help="extremal sum Psi(r, c)")
    s.add_argument("r", type=int)
    s.add_argument("c")
    s.add_argument("--piecewise", action="store_true")
    s.add_argument("--brute-force", action="store_true")
    s.set_defaults(func=cmd_psi)

    s = sub.add_parser("facets", parents=[common], help="facets of Delta([n])")
    s.add_argument("n", type=int)
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--list", action="store_true", help="(default)")
    mode.add_argument("--count", action="store_true")
    mode.add_argument("--density", action="store_true")
    mode.add_argument("--matrix", metavar="OUT.csv")
    s.set_defaults(func=cmd_facets)

    s = sub.add_parser("gamma", parents=[common], help="limiting facet density")
    s.add_argument("--tol", default="1e-12")
    s.set_defaults(func=cmd_gamma)

    s = sub.add_parser("maximize", parents=[common], help="maximize g over 1..n")
    s.add_argument("n", type=int)
    s.add_argument("--function", required=True)
    s.add_argument("--strategy", choices=("facet", "naive"), default="facet")
    s.set_defaults(func=cmd_maximize)

    s = sub.add_parser("orders", help="orders induced by multiplicative functions")
    osub = s.add_subparsers(dest="orders_command", required=True, parser_class=_Parser)
    o = osub.add_parser("y", parents=[common], help="the poset Y on subsets of r vertices")
    o.add_argument("r", type=int)
    o.add_argument("--restrict", metavar="SIZES|FILE", help="comma separated subset sizes, or a file of faces")
    act = o.add_mutually_exclusive_group()
    act.add_argument("--count-extensions", action="store_true", help="(default)")
    act.add_argument("--export-covers", action="store_true")
    o.set_defaults(func=cmd_orders_y)
    o = osub.add_parser("check", parents=[common], help="is an ascending list of integers realizable?")
    o.add_argument("file")
    o.add_argument("--sorted", action="store_true", help="also require g increasing on the vertices")
    o.set_defaults(func=cmd_orders_check)
    o = osub.add_parser("enumerate", parents=[common], help="all realizable orders of k-subsets")
    o.add_argument("--r", type=int, required=True)
    o.add_argument("--subsets", type=int, required=True, metavar="K")
    o.add_argument("--sorted", action="store_true")
    o.set_defaults(func=cmd_orders_enumerate)

    s = sub.add_parser("repro", parents=[common], help="check every published number")
    s.set_defaults(func=cmd_repro)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_DOMAIN
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_DOMAIN
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (UnitaryError, DomainError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
