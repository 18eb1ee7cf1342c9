"""Command line front end.  Indices on the command line are 1-based."""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .ccscatter import DEFAULT_ORDER, TruncSeries, cc_function, path_product, walls_along
from .genseed import explore_exchange_graph, initial_seed, mutate_path, seed_from_json
from .gentlerep import (
    QuiverRep,
    StringModule,
    check_relations,
    g_vector,
    hom_dim,
    min_presentation,
    reflect,
    string_of,
    tau_rigid_check,
)
from .orbsurf import flip, gentle_violations, quiver_of, triangulation_from_json, validate
from .stability import chamber_path
from .taufan import DEFAULT_MAX_LEN, Summand, initial_pair, stau_exchange_graph
from .tropical import tropical_path
from .verify import check_exchange_all, check_scattering, resolve, verify_main


class UsageError(Exception):
    pass


def _read_json(path):
    p = resolve(path)
    text = p.read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError(f"{p}:{e.lineno}:{e.colno}: {e.msg}") from None


def _path_arg(text):
    if not text:
        return ()
    try:
        return tuple(int(x) - 1 for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated indices, got {text!r}") from None


def _surface(args):
    return triangulation_from_json(_read_json(args.surface))


def _matrix_source(args):
    """Exchange matrix from --b, or from --surface."""
    if getattr(args, "b", None):
        return seed_from_json(_read_json(args.b)).matrix
    return quiver_of(_surface(args))[1]


def _emit(args, text_lines, payload=None, dot=None):
    fmt = getattr(args, "format", "text")
    if fmt == "json":
        print(json.dumps(payload, indent=1, sort_keys=True))
    elif fmt == "dot":
        if dot is None:
            raise UsageError("this command has no DOT output")
        sys.stdout.write(dot)
    else:
        for line in text_lines:
            print(line)


def _matrix_rows(b):
    return ["  [" + " ".join(f"{v:3d}" for v in row) + " ]" for row in b]


def cmd_mutate(args):
    m = _matrix_source(args)
    s = mutate_path(initial_seed(m), args.path)
    lines = [f"path: {','.join(str(k + 1) for k in args.path) or '(none)'}"]
    lines += [f"x{i + 1}' = {x.render()}" for i, x in enumerate(s.cluster)]
    lines += ["B:"] + _matrix_rows(s.matrix.b)
    payload = {"cluster": [x.render() for x in s.cluster], "b": [list(r) for r in s.matrix.b],
               "r": list(s.matrix.r)}
    _emit(args, lines, payload)
    return 0


def cmd_explore(args):
    m = _matrix_source(args)
    g = explore_exchange_graph(initial_seed(m), args.depth, args.jobs)
    lines = [f"nodes: {len(g.nodes)}", f"edges: {len(g.edges)}",
             "by depth: " + " ".join(map(str, g.counts_by_depth()))]
    payload = {
        "nodes": [{"depth": n.depth, "path": [k + 1 for k in n.path],
                   "cluster": [x.render() for x in n.seed.cluster]} for n in g.nodes],
        "edges": [[u, v, k + 1] for (u, v), k in sorted(g.edges.items())],
    }
    _emit(args, lines, payload, g.to_dot())
    return 0


def cmd_tropical(args):
    m = _matrix_source(args)
    states = tropical_path(m, args.path)
    lines = []
    for st in states:
        label = ",".join(str(k + 1) for k in st.path) or "root"
        lines.append(f"[{label}]")
        for i in range(st.n):
            lines.append(f"  c{i + 1} = {list(st.c[i])}  g{i + 1} = {list(st.g[i])}  F{i + 1} = {st.f[i].render()}")
    last = states[-1]
    lines.append("r-columns: " + " ".join(str(list(g)) for g in last.g))
    payload = [{"path": [k + 1 for k in st.path], "c": [list(r) for r in st.c], "g": [list(r) for r in st.g],
                "F": [f.render() for f in st.f]} for st in states]
    _emit(args, lines, payload)
    return 0


def cmd_surface(args):
    t = triangulation_from_json(_read_json(args.file))
    if args.action == "validate":
        problems = validate(t)
        for p in problems:
            print(p)
        if not problems:
            print("valid")
        return 1 if problems else 0
    if args.action == "quiver":
        q, b = quiver_of(t)
        lines = [f"vertices: {' '.join(map(str, q.vertices))}"]
        lines += [f"arrow {a.id}: {a.tail} -> {a.head}" for a in q.arrows]
        lines += [f"relation {a} then {c}" for a, c in sorted(q.relations)]
        lines += ["B:"] + _matrix_rows(b.b)
        bad = gentle_violations(q)
        lines += [f"not gentle: {x}" for x in bad]
        payload = {"vertices": list(q.vertices), "arrows": [[a.id, a.tail, a.head] for a in q.arrows],
                   "relations": sorted(list(r) for r in q.relations), "b": [list(r) for r in b.b], "r": list(b.r)}
        _emit(args, lines, payload)
        return 1 if bad else 0
    if args.arc is None:
        raise UsageError("surface flip needs --arc")
    out = flip(t, args.arc)
    print(json.dumps(out.to_json(), indent=1, sort_keys=True))
    return 0


def _module(q, path):
    return QuiverRep.from_json(q, _read_json(path))


def cmd_rep(args):
    t = _surface(args)
    q, _ = quiver_of(t)
    m = _module(q, args.module)
    if args.action == "check":
        bad = check_relations(m)
        print("ok" if bad is None else f"relation {bad[0]} then {bad[1]} does not vanish")
        return 0 if bad is None else 1
    if args.action == "hom":
        if not args.other:
            raise UsageError("rep hom needs --other")
        print(hom_dim(m, _module(q, args.other)))
        return 0
    if args.action == "gvec":
        pres = min_presentation(m)
        print(f"P1 = {list(pres.p1)}  P0 = {list(pres.p0)}  g = {list(pres.g)}")
        return 0
    if args.action == "taurigid":
        ok = tau_rigid_check(m)
        print("tau-rigid" if ok else "not tau-rigid")
        return 0 if ok else 1
    if args.arc is None:
        raise UsageError("rep reflect needs --arc")
    out = reflect(m, t, args.arc, 1 if args.sign == "+" else -1)
    print(json.dumps(out.to_json(), indent=1, sort_keys=True))
    return 0


def cmd_stau(args):
    t = _surface(args)
    q, b = quiver_of(t)
    g = stau_exchange_graph(initial_pair(q, b), args.depth, args.max_string_len)
    lines = [f"nodes: {len(g.nodes)}", f"edges: {len(g.edges)}",
             "by depth: " + " ".join(map(str, g.counts_by_depth()))]
    for i, node in enumerate(g.nodes):
        lines.append(f"{i}: " + " | ".join(f"{list(s.g)} {s.render()}" for s in node.pair.summands))
    _emit(args, lines, g.to_json(), g.to_dot())
    return 0


def cmd_chambers(args):
    cp = chamber_path(_surface(args), args.path)
    signs = "".join("+" if s > 0 else "-" for s in cp.signs)
    lines = [f"signs: ({','.join(signs)})"]
    for j, rays in enumerate(cp.cones):
        lines.append(f"C_{j} rays: " + " ".join(str([str(v) for v in r]).replace("'", "") for r in rays))
        lines.append(f"C_{j} normals: " + " ".join(str([str(v) for v in r]).replace("'", "") for r in cp.normals(j)))
    payload = {"signs": list(cp.signs), "rays": [[[str(v) for v in r] for r in c] for c in cp.cones]}
    _emit(args, lines, payload)
    return 0


def cmd_scatter(args):
    t = _surface(args)
    _, b0 = quiver_of(t)
    walls = walls_along(b0, args.path)
    st = tropical_path(b0, args.path)[-1]
    for i in range(b0.n):
        s = path_product(walls, TruncSeries.monomial(b0.n, args.order, st.g[i]), b0.bbar_matrix())
        print(f"p_t(x^g{i + 1}) = {s.render()}")
    check = check_scattering(t, args.order, args.path)
    print(check.line())
    return 0 if check.ok else 1


def _summand(q, entry, max_len):
    if "projective" in entry:
        v = entry["projective"]
        return Summand(tuple(int(w == v) for w in q.vertices), None, v)
    if "string" in entry:
        st = StringModule(q, entry["string"]["start"], tuple(tuple(x) for x in entry["string"]["letters"]))
        return Summand(g_vector(st.module()), st, None)
    m = QuiverRep.from_json(q, entry)
    st = string_of(m, max_len)
    if st is not None:
        return Summand(g_vector(m), st, None)
    raise UsageError("module is not isomorphic to a string module within the length bound")


def cmd_cc(args):
    t = _surface(args)
    q, b0 = quiver_of(t)
    data = _read_json(args.pair)
    entries = data["summands"] if isinstance(data, dict) and "summands" in data else [data]
    comps = [_summand(q, e, args.max_string_len) for e in entries]
    mult = [e.get("multiplicity", 1) for e in entries]
    print(cc_function(comps, b0, mult).render())
    return 0


def cmd_verify_exchange(args):
    check = check_exchange_all(_surface(args), args.depth, args.max_string_len)
    print(check.line())
    return 0 if check.ok else 1


def cmd_verify_main(args):
    root = resolve(args.surface).parent
    checks = verify_main(root, args.depth, args.order)
    for c in checks:
        print(c.line())
    failed = sum(not c.ok for c in checks)
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return 0 if not failed else 1


def build_parser():
    p = argparse.ArgumentParser(prog="orbicluster", description=__doc__)
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, surface=True, b=False, fmt=("text", "json")):
        if surface:
            sp.add_argument("--surface", default="digon.json", help="triangulation JSON")
        if b:
            sp.add_argument("--b", help="exchange matrix JSON {b, r[, theta]} (overrides --surface)")
        sp.add_argument("--format", choices=fmt, default="text")

    sp = sub.add_parser("mutate", help="mutate the initial seed along a path")
    common(sp, b=True)
    sp.add_argument("--path", type=_path_arg, default=())
    sp.set_defaults(func=cmd_mutate)

    sp = sub.add_parser("explore", help="exchange graph of unlabeled seeds")
    common(sp, b=True, fmt=("text", "json", "dot"))
    sp.add_argument("--depth", type=int, default=4)
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=cmd_explore)

    sp = sub.add_parser("tropical", help="c-vectors, g-vectors and F-polynomials along a path")
    common(sp, b=True)
    sp.add_argument("--path", type=_path_arg, default=())
    sp.set_defaults(func=cmd_tropical)

    sp = sub.add_parser("surface", help="triangulation tools")
    sp.add_argument("action", choices=("validate", "quiver", "flip"))
    sp.add_argument("file")
    sp.add_argument("--arc", type=int)
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_surface)

    sp = sub.add_parser("rep", help="module tools")
    sp.add_argument("action", choices=("check", "hom", "gvec", "taurigid", "reflect"))
    sp.add_argument("--module", required=True)
    sp.add_argument("--other")
    sp.add_argument("--arc", type=int)
    sp.add_argument("--sign", choices=("+", "-"), default="+")
    common(sp)
    sp.set_defaults(func=cmd_rep)

    sp = sub.add_parser("stau", help="exchange graph of support tau-tilting pairs")
    common(sp, fmt=("text", "json", "dot"))
    sp.add_argument("--depth", type=int, default=4)
    sp.add_argument("--max-string-len", type=int, default=DEFAULT_MAX_LEN)
    sp.set_defaults(func=cmd_stau)

    sp = sub.add_parser("chambers", help="chamber signs, rays and normals along a flip path")
    common(sp)
    sp.add_argument("--path", type=_path_arg, required=True)
    sp.set_defaults(func=cmd_chambers)

    sp = sub.add_parser("scatter", help="path-ordered wall-crossing along a mutation path")
    common(sp)
    sp.add_argument("--path", type=_path_arg, required=True)
    sp.add_argument("--order", type=int, default=DEFAULT_ORDER)
    sp.set_defaults(func=cmd_scatter)

    sp = sub.add_parser("cc", help="CC function of a pair")
    common(sp)
    sp.add_argument("--pair", required=True)
    sp.add_argument("--max-string-len", type=int, default=DEFAULT_MAX_LEN)
    sp.set_defaults(func=cmd_cc)

    sp = sub.add_parser("verify-exchange", help="exchange identity at every explored pair")
    common(sp)
    sp.add_argument("--depth", type=int, default=4)
    sp.add_argument("--max-string-len", type=int, default=DEFAULT_MAX_LEN)
    sp.set_defaults(func=cmd_verify_exchange)

    sp = sub.add_parser("verify-main", help="run the full digon example")
    common(sp)
    sp.add_argument("--depth", type=int, default=4)
    sp.add_argument("--order", type=int, default=DEFAULT_ORDER)
    sp.set_defaults(func=cmd_verify_main)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "depth", 0) < 0:
        parser.error("--depth must be nonnegative")
    if getattr(args, "order", 1) < 1:
        parser.error("--order must be positive")
    try:
        return args.func(args)
    except (UsageError, FileNotFoundError, ValueError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
