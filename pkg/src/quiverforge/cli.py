"""
Command-line front end.

Exit codes: 0 when every check passes, 1 on an explicit failure (a witness or
a nonzero residual), 2 when something stayed unresolved, 64 on bad input.
"""

import argparse
import csv
import json
import os
import sys

from . import io
from .report import FAIL, PASS, UNRESOLVED, Report

EXIT = {PASS: 0, FAIL: 1, UNRESOLVED: 2}
EX_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, "%s: error: %s\n" % (self.prog, message))


def _threads():
    raw = os.environ.get("QUIVERFORGE_THREADS", "")
    if not raw:
        return None
    try:
        n = int(raw)
    except ValueError:
        raise UsageError("QUIVERFORGE_THREADS must be a positive integer") from None
    if n < 1:
        raise UsageError("QUIVERFORGE_THREADS must be a positive integer")
    return n


def _json_arg(text, what):
    """Inline JSON, or @path to read it from a file."""
    try:
        if text.startswith("@"):
            return io.load(text[1:])
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError("%s: %s" % (what, exc)) from None


def _load(path):
    try:
        return io.load(path)
    except OSError as exc:
        raise UsageError(str(exc)) from None


# graph

def _graph(args):
    from .quiver import affine_a_graph, affine_d4_graph, jordan_graph, path_graph
    if args.file:
        return io.graph_from_json(_load(args.file))
    name, _, n = (args.builtin or "").partition(":")
    try:
        if name == "a":
            return path_graph(int(n))
        if name == "affine-a":
            return affine_a_graph(int(n))
    except ValueError:
        raise UsageError("bad graph reference %r" % args.builtin) from None
    if name == "affine-d4":
        return affine_d4_graph()
    if name == "jordan":
        return jordan_graph()
    raise UsageError("give --file or --builtin {a:<n>|affine-a:<n>|affine-d4|jordan}")


def cmd_graph(args):
    from .quiver import ade_type, affine_delta, cartan_matrix, classify_form, positive_roots
    g = _graph(args)
    rep = Report("graph %s" % args.action)
    if args.action == "classify":
        try:
            kind = classify_form(g)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        label = ade_type(g)
        text = "%s (%s)" % (kind, label) if label else kind
        rep.add("classification", PASS, text)
        return rep, {"classification": kind, "type": label}, text
    if args.action == "delta":
        d = affine_delta(g)
        if d is None:
            rep.add("affine delta", PASS, "none")
            return rep, {"delta": None}, "none"
        C = cartan_matrix(g)
        vec = [d[v] for v in g.vertex_ids()]
        zero = all(sum(C[i][j] * vec[j] for j in range(len(vec))) == 0 for i in range(len(vec)))
        rep.add("C delta = 0", zero)
        return rep, {"delta": d}, " ".join("%s:%s" % kv for kv in d.items())
    bound = _json_arg(args.bound, "--bound") if args.bound else {v: 1 for v in g.vertex_ids()}
    roots = positive_roots(g, bound)
    rep.add("positive roots", PASS, "%d found" % len(roots))
    text = "\n".join(" ".join("%s:%d" % kv for kv in r.items()) for r in roots)
    return rep, {"roots": roots}, text


# algebra

def _element(A, text):
    try:
        return A.parse(text)
    except (KeyError, ValueError) as exc:
        raise UsageError("cannot parse %r: %s" % (text, exc)) from None


def cmd_algebra(args):
    from .algebra import PROVED, ideal_membership, normal_form
    rep = Report("algebra %s" % args.action)
    if args.action == "dg-check":
        return _dg_check(args, rep)
    if not args.algebra or args.element is None:
        raise UsageError("--algebra and --element are required")
    A = io.algebra_from_json(_json_arg(args.algebra, "--algebra")
                             if args.algebra[:1] in "{@" else args.algebra)
    f = _element(A, args.element)
    effort = max(args.effort_degree, f.degree())
    if args.action == "reduce":
        nf = normal_form(f, A, effort)
        rep.add("normal form", PASS, A.format(nf))
        return rep, {"normal_form": io.element_to_json(nf)}, A.format(nf)
    status = ideal_membership(f, A, effort)
    rep.add("ideal membership at effort %d" % effort, status == PROVED, status)
    return rep, {"membership": status}, status


def _dg_check(args, rep):
    from .models import extended_dga
    from .representation import check_dg
    g = _graph(args)
    A, d, B = extended_dga(g)
    if args.perturb:
        t = sorted(d)[0]
        d[t] = d[t] + _element(A, args.perturb)
    try:
        out = check_dg(A, d, args.effort_degree, presents=B)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rep.extend(out.report)
    return rep, {}, None


# rep

def _scalar_field(M, field):
    from .scalars import coerce
    return [[coerce(x, field) for x in row] for row in M]


def _rep(path, field="q"):
    d = _load(path)
    A, eps = io.model_from_json(io._need(d, "algebra", "matrix rep"))
    rho = io.matrix_rep_from_json(d, A.quiver)
    if field != "q":
        from .representation import MatrixRep
        from .scalars import coerce
        rho = MatrixRep(A.quiver, rho.dims, {a: _scalar_field(M, field)
                                             for a, M in rho.matrices.items()},
                        one=coerce(1, field))
    return d, A, eps, rho


def _chart(args):
    from .stack import builtin_an_stack, builtin_d4_stack
    name, _, n = args.stack.partition(":")
    if name == "d4":
        s = builtin_d4_stack()
    elif name == "an":
        try:
            s = builtin_an_stack(int(n))
        except ValueError:
            raise UsageError("bad stack reference %r" % args.stack) from None
    else:
        raise UsageError("chart-verify supports --stack d4 or an:<n>")
    if args.chart not in s.opens or args.chart == s.center:
        raise UsageError("stack %s has no chart %r" % (s.name, args.chart))
    return s.chart_triple(args.chart)


def cmd_rep(args):
    from .representation import check_matrix_rep, moment_map, verify_chart
    rep = Report("rep %s" % args.action)
    if args.action == "chart-verify":
        out = verify_chart(_chart(args), args.effort_degree)
        rep.extend(out)
        return rep, {}, None
    if not args.rep:
        raise UsageError("--rep is required")
    _, A, eps, rho = _rep(args.rep, args.field)
    if args.action == "check":
        res = check_matrix_rep(rho, A)
        detail = "" if res else "%s -> %s" % (res.relation, res.residual)
        rep.add("relations vanish", res.status, detail)
        return rep, {"status": res.status}, detail or "all relations vanish"
    if eps is None:
        raise UsageError("moment needs a model with signs (built-in name or inline \"eps\")")
    mm = moment_map(rho, eps=eps)
    lines = []
    for v, M in mm.items():
        zero = all(x == 0 for row in M for x in row)
        rep.add("moment map at %s" % v, PASS if zero else FAIL, "" if zero else str(M))
        lines.append("%s: %s" % (v, [[str(x) for x in row] for row in M]))
    return rep, {"moment": {v: [[str(x) for x in row] for row in M] for v, M in mm.items()}}, \
        "\n".join(lines)


# stability

def cmd_stability(args):
    from .stability import (gauge_normalize_an, is_stable, mc_region_classify,
                            verify_witness)
    rep = Report("stability %s" % args.action)
    if args.action == "mc-region":
        if not (args.values and args.areas and args.n):
            raise UsageError("--values, --areas and --n are required")
        raw = _json_arg(args.values, "--values")
        values = {k: io.scalar_from_json(v) for k, v in raw.items()}
        areas = {str(k): tuple(v) for k, v in _json_arg(args.areas, "--areas").items()}
        try:
            tag = mc_region_classify(values, areas, args.n)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        rep.add("region", PASS if tag != "none" else FAIL, tag)
        return rep, {"region": tag}, tag
    if not args.rep:
        raise UsageError("--rep is required")
    d, A, eps, rho = _rep(args.rep, args.field)
    if args.action == "normalize":
        if args.chart is None:
            raise UsageError("--chart is required")
        try:
            out = gauge_normalize_an(rho, args.chart)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        data = io.matrix_rep_to_json(out, d["algebra"])
        rep.add("normalized", PASS)
        return rep, {"rep": data}, io.dump(data)
    if not args.zeta:
        raise UsageError("--zeta is required")
    zeta = {str(k): v for k, v in _json_arg(args.zeta, "--zeta").items()}
    try:
        if args.action == "check":
            v = is_stable(rho, zeta, args.mode, seed=args.seed)
            status = {"stable": PASS, "unknown": UNRESOLVED}.get(v.status, FAIL)
            rep.add("stability", status, v.status + (": " + v.detail if v.detail else ""))
            return rep, {"verdict": v.to_dict()}, v.status
        if not args.witness:
            raise UsageError("--witness is required")
        w = _json_arg(args.witness, "--witness")
        basis = {str(k): [[io.scalar_from_json(x) for x in vec] for vec in b]
                 for k, b in w.get("basis", w).items()}
        res = verify_witness(rho, basis, zeta, args.mode)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rep.add("witness", PASS if res.status == "valid-destabilizer" else FAIL, res.status)
    return rep, {"witness": res.status, "detail": res.detail}, res.status


# monad

def _complex(args):
    from .monad import build_adhm_monad, build_framed_functor_complex, build_nakajima_monad
    path = args.adhm or args.rep
    if not path:
        raise UsageError("--adhm or --rep is required")
    _, A, eps, rho = _rep(path)
    if eps is None:
        raise UsageError("the monad commands need a model with signs")
    builders = {"adhm": build_adhm_monad, "nakajima": build_nakajima_monad,
                "framed": build_framed_functor_complex}
    kind = args.kind or ("adhm" if args.adhm else "framed")
    coeff = _unframed(A, eps) if kind in ("adhm", "nakajima") else A
    try:
        return rho, builders[kind](rho, coeff, eps, check=not args.no_check)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _unframed(A, eps):
    """Preprojective algebra on the unframed part of A's quiver (the monad coefficients)."""
    from .algebra import QuiverAlgebra
    from .models import preprojective_relation
    from .quiver import Quiver
    q = A.quiver
    keep = q.unframed_vertices()
    sub = Quiver(keep, [a for a in q.arrows.values() if a.tail in keep and a.head in keep],
                 {a: b for a, b in q.partner.items() if a in eps})
    B = QuiverAlgebra(sub)
    rels = [preprojective_relation(B, eps, v) for v in keep]
    return QuiverAlgebra(sub, [r for r in rels if r], name=A.name)


def _grid(n):
    lo = -(n // 2)
    return range(lo, lo + n)


def cmd_monad(args):
    from .monad import evaluate_adhm_at_point, slice_exactness, verify_d_squared
    rep = Report("monad %s" % args.action)
    rho, C = _complex(args)
    if args.action == "build":
        data = C.to_dict()
        rep.add("ranks", PASS, str(C.ranks()))
        return rep, {"complex": data}, io.dump(data)
    if args.action == "d2":
        out = verify_d_squared(C, args.effort_degree)
        rep.extend(out)
        return rep, {}, None
    if args.action == "eval":
        rows = []
        for x in _grid(args.grid):
            for y in _grid(args.grid):
                p = evaluate_adhm_at_point(C, x, y)
                rows.append({"x": x, "y": y, "rank_d0": p.rank_d0, "rank_d1": p.rank_d1,
                             "cohomology": p.cohomology})
        generic = min(r["cohomology"] for r in rows)
        jumps = [(r["x"], r["y"]) for r in rows if r["cohomology"] > generic]
        rep.add("rank profile", PASS, "generic cohomology %d, jumps at %s" % (generic, jumps))
        if args.csv:
            with open(args.csv, "w", newline="") as fh:
                w = csv.DictWriter(fh, fieldnames=list(rows[0]))
                w.writeheader()
                w.writerows(rows)
        lines = ["x y rank_d0 rank_d1 cohomology"]
        lines += ["%d %d %d %d %d" % tuple(r.values()) for r in rows]
        lines.append("jumps: %s" % " ".join("(%d,%d)" % j for j in jumps))
        return rep, {"points": rows, "jumps": jumps}, "\n".join(lines)
    lines = []
    results = []
    for L in range(args.levels + 1):
        r = slice_exactness(C, L, args.slack)
        results.append({"level": L, "h0": r.h0, "h1": r.h1})
        rep.add("level %d position 0" % L, r.h0 == 0 and PASS or FAIL, "h0=%d" % r.h0)
        rep.add("level %d position 1" % L, r.h1 == 0 and PASS or FAIL, "h1=%d" % r.h1)
        lines.append("level %d: h0=%d h1=%d" % (L, r.h0, r.h1))
    return rep, {"slices": results}, "\n".join(lines)


# stack

def _builtin_stack(name):
    from .stack import (builtin_an_stack, builtin_d4_stack, builtin_framed_a1_stack)
    base, _, n = name.partition(":")
    try:
        if base == "an":
            return builtin_an_stack(int(n))
        if base == "an-torus":
            return builtin_an_stack(int(n), include_torus_charts=True)
    except ValueError:
        raise UsageError("bad stack reference %r" % name) from None
    if base == "d4":
        return builtin_d4_stack()
    if base == "framed-a1":
        return builtin_framed_a1_stack()
    raise UsageError("unknown built-in stack %r" % name)


def cmd_stack(args):
    from .stack import materialize, verify_stack
    if bool(args.builtin) == bool(args.file):
        raise UsageError("give exactly one of --builtin and --file")
    s = _builtin_stack(args.builtin) if args.builtin else io.stack_from_json(_load(args.file))
    if args.action == "export":
        data = io.stack_to_json(s if args.file else materialize(s))
        rep = Report("stack export")
        rep.add("exported", PASS, "%d transitions" % len(data["transitions"]))
        return rep, {"stack": data}, io.dump(data)
    effort = args.effort_degree if args.effort_set else s.default_effort
    rep = verify_stack(s, effort, quadruples=not args.no_quadruples)
    return rep, {"effort_degree": effort}, None


COMMANDS = {
    "graph": (cmd_graph, ["classify", "delta", "roots"]),
    "algebra": (cmd_algebra, ["reduce", "member", "dg-check"]),
    "rep": (cmd_rep, ["check", "moment", "chart-verify"]),
    "stability": (cmd_stability, ["check", "witness", "normalize", "mc-region"]),
    "monad": (cmd_monad, ["build", "d2", "eval", "exactness"]),
    "stack": (cmd_stack, ["verify", "export"]),
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--effort-degree", type=int, default=argparse.SUPPRESS)
    common.add_argument("--field", choices=["q", "qi", "novikov"], default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)

    p = _Parser(prog="quiverforge", parents=[common],
                description="Exact verification of quiver algebras, monads and algebroid stacks.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("graph", parents=[common])
    g.add_argument("action", choices=COMMANDS["graph"][1])
    g.add_argument("--file")
    g.add_argument("--builtin")
    g.add_argument("--bound", help="JSON vertex -> bound, or @file")

    a = sub.add_parser("algebra", parents=[common])
    a.add_argument("action", choices=COMMANDS["algebra"][1])
    a.add_argument("--algebra", help="built-in name, inline JSON or @file")
    a.add_argument("--element")
    a.add_argument("--file", help="graph for dg-check")
    a.add_argument("--builtin", help="graph for dg-check")
    a.add_argument("--perturb", help="element added to the first d(t)")

    r = sub.add_parser("rep", parents=[common])
    r.add_argument("action", choices=COMMANDS["rep"][1])
    r.add_argument("--rep")
    r.add_argument("--stack", default="d4")
    r.add_argument("--chart", default="2")

    s = sub.add_parser("stability", parents=[common])
    s.add_argument("action", choices=COMMANDS["stability"][1])
    s.add_argument("--rep")
    s.add_argument("--zeta")
    s.add_argument("--mode", choices=["framed", "unframed"], default="framed")
    s.add_argument("--witness")
    s.add_argument("--chart", type=int)
    s.add_argument("--values")
    s.add_argument("--areas")
    s.add_argument("--n", type=int)

    m = sub.add_parser("monad", parents=[common])
    m.add_argument("action", choices=COMMANDS["monad"][1])
    m.add_argument("--adhm")
    m.add_argument("--rep")
    m.add_argument("--kind", choices=["adhm", "nakajima", "framed"])
    m.add_argument("--grid", type=int, default=5)
    m.add_argument("--csv")
    m.add_argument("--levels", type=int, default=3)
    m.add_argument("--slack", type=int, default=2)
    m.add_argument("--no-check", action="store_true")

    st = sub.add_parser("stack", parents=[common])
    st.add_argument("action", choices=COMMANDS["stack"][1])
    st.add_argument("--builtin")
    st.add_argument("--file")
    st.add_argument("--no-quadruples", action="store_true")
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    args.effort_set = hasattr(args, "effort_degree")
    for key, default in (("effort_degree", 8), ("field", "q"), ("seed", 0),
                         ("json", False), ("verbose", False)):
        if not hasattr(args, key):
            setattr(args, key, default)
    try:
        threads = _threads()
        rep, data, text = COMMANDS[args.command][0](args)
    except (UsageError, io.SchemaError) as exc:
        print("quiverforge: %s" % exc, file=sys.stderr)
        return EX_USAGE
    code = EXIT[rep.status]
    if args.json:
        out = {"schema": io.SCHEMA_VERSION, "command": "%s %s" % (args.command, args.action),
               "status": rep.status, "exit": code, "report": rep.to_dict()}
        out.update(data)
        if threads:
            out["threads"] = threads
        print(json.dumps(out, indent=1, default=str))
    else:
        print(text if text is not None else rep.render(args.verbose))
    return code


if __name__ == "__main__":
    sys.exit(main())
