"""Command-line front end; every invocation prints one JSON document.

Exit status: 0 on success, 1 on a computational error (unreachable target,
point outside the domain, grid too large), 2 on a usage error (bad flags,
unknown scenario, malformed literal).  Negative literals must be attached
to their flag, e.g. ``--p=-1,0``.
"""
import argparse
import csv
import io
import json
import math
import os
import sys
from datetime import datetime, timezone

import numpy as np

from . import __version__, cone, lattice, nulldist, scenarios, verify
from .errors import ConeCalcError

SCHEMA = "conecalc/cli-1"


class UsageError(Exception):
    pass


def parse_vector(text, what="point"):
    try:
        vals = [float(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"malformed {what} literal {text!r}: expected comma-separated decimals")
    if not all(math.isfinite(v) for v in vals):
        raise UsageError(f"{what} literal {text!r} has non-finite entries")
    return np.array(vals)


def parse_endpoint(text):
    """A point literal, or ``#k`` for node id ``k``."""
    if text.startswith("#"):
        try:
            return int(text[1:])
        except ValueError:
            raise UsageError(f"malformed node id {text!r}")
    return parse_vector(text)


def parse_time(spec, default):
    if spec in (None, "default"):
        return default
    if spec == "T":
        return default if default.kind == "canonical_T" else None
    if spec == "t":
        return nulldist.product_t()
    if spec.startswith("T^"):
        try:
            e = int(spec[2:])
        except ValueError:
            e = 0
        if e < 1 or e % 2 == 0:
            raise UsageError("only odd powers T^(2k+1) are time functions")
        return ("odd", (e - 1) // 2)
    raise UsageError(f"unknown time function {spec!r}; use T, t, T^3, T^5, ... or default")


def parse_oracle(spec):
    if spec == "euclidean":
        return nulldist.euclidean_dist
    if spec.startswith("circle:"):
        try:
            return nulldist.circle_dist(float(spec.split(":", 1)[1]))
        except ValueError:
            pass
    raise UsageError(f"unknown oracle {spec!r}; use euclidean or circle:L")


def _scenario(args):
    try:
        return scenarios.build(args.scenario)
    except (KeyError, ValueError) as exc:
        raise UsageError(str(exc.args[0] if exc.args else exc))


def _grid(args, default, n):
    box = default.box.pairs()
    if args.box is not None:
        vals = parse_vector(args.box, "box")
        if len(vals) != 2 * n:
            raise UsageError(f"--box needs {2 * n} numbers (lo,hi per axis)")
        box = list(zip(vals[0::2], vals[1::2]))
    h = default.h if args.h is None else args.h
    r = default.r if args.r is None else args.r
    periodic = default.periodic if args.periodic is None else \
        tuple(c == "1" for c in args.periodic.split(","))
    return lattice.GridSpec(box, h, periodic=periodic, r=r)


def _graph(args):
    s, grid0, tau0 = _scenario(args)
    grid = _grid(args, grid0, s.n)
    graph = lattice.build_graph(s, grid, max_nodes=args.max_nodes)
    return s, grid, tau0, graph


def _check_dim(vec, n, what):
    if isinstance(vec, np.ndarray) and vec.size != n:
        raise ConeCalcError(f"{what} has {vec.size} components, scenario dimension is {n}")


def cmd_classify(args):
    s, _, _ = _scenario(args)
    p = parse_vector(args.point)
    v = parse_vector(args.vector, "vector")
    _check_dim(p, s.n, "point")
    _check_dim(v, s.n, "vector")
    cls = cone.classify(s, p, v, args.tol)
    q0, qi = cone.cone_products(s, p, v)
    return {"class": cls.value, "g_vv": q0, "g_vX": qi, "tol": args.tol}


def cmd_distance(args):
    s, grid, tau0, graph = _graph(args)
    tau = parse_time(args.tau, tau0)
    if tau is None:
        tau = nulldist.canonical_T(s.nu)
    elif isinstance(tau, tuple):
        tau = nulldist.odd_power(tau[1], s.nu)
    p, q = parse_endpoint(args.p), parse_endpoint(args.q)
    _check_dim(p, s.n, "p")
    _check_dim(q, s.n, "q")
    res = nulldist.estimate(s, tau, grid, p, q, graph=graph)
    out = res.to_dict()
    out["time_function"] = tau.describe()
    out["p"] = graph.coords[graph.resolve(p)].tolist()
    out["q"] = graph.coords[graph.resolve(q)].tolist()
    if args.oracle:
        out["oracle"] = nulldist.oracle_result(parse_oracle(args.oracle), out["p"], out["q"]).to_dict()
    if not res.reachable:
        return out, 1
    return out


def _nodes_output(args, graph, nodes, kind):
    coords = graph.coords[nodes]
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["node"] + [f"x{i}" for i in range(graph.grid.dim)])
        for k, c in zip(nodes.tolist(), coords.tolist()):
            w.writerow([k] + [repr(x) for x in c])
        return buf.getvalue()
    return {"kind": kind, "count": int(len(nodes)), "nodes": nodes.tolist(),
            "coords": coords.tolist(), "grid": graph.grid.to_dict()}


def cmd_diamond(args):
    s, grid, _, graph = _graph(args)
    p, q = parse_endpoint(args.p), parse_endpoint(args.q)
    _check_dim(p, s.n, "p")
    _check_dim(q, s.n, "q")
    return _nodes_output(args, graph, lattice.diamond(graph, p, q), "diamond")


def cmd_reach(args):
    s, grid, _, graph = _graph(args)
    p = parse_endpoint(args.p)
    _check_dim(p, s.n, "p")
    return _nodes_output(args, graph, lattice.reach(graph, p, args.direction), "reach")


def cmd_export_graph(args):
    _, _, _, graph = _graph(args)
    out = graph.to_dict()
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(out, fh, sort_keys=True)
        return {"written": args.out, "nodes": graph.n_nodes, "edges": graph.n_edges}
    return out


def cmd_suite(args):
    names = list(verify.SUITES) if args.all else [args.name]
    if not args.all and args.name is None:
        raise UsageError("suite needs --name or --all")
    unknown = [n for n in names if n not in verify.SUITES]
    if unknown:
        raise UsageError(f"unknown suite {unknown[0]!r}; available: {', '.join(verify.SUITES)}")
    cfg = {}
    if args.config:
        try:
            cfg = json.loads(args.config)
        except json.JSONDecodeError as exc:
            raise UsageError(f"--config is not valid JSON: {exc}")
    for key in ("k", "j", "samples", "h"):
        val = getattr(args, key)
        if val is not None:
            cfg[key] = val
    if args.jmax is not None:
        cfg["j_max"] = args.jmax
    seed = args.seed
    env = os.environ.get("CONECALC_SEED")
    if env is not None:
        try:
            seed = int(env)
        except ValueError:
            raise UsageError(f"CONECALC_SEED must be an integer, got {env!r}")
    reports = [verify.run_suite(n, cfg, seed) for n in names]
    timing = not args.no_timestamp
    out = {"pass": all(r.passed for r in reports), "seed": seed,
           "reports": [r.to_dict(timing) for r in reports]}
    return out, 0 if out["pass"] else 1


def cmd_scenario_list(args):
    return {"scenarios": scenarios.listing()}


def _add_grid_opts(p):
    p.add_argument("--scenario", required=True, help="scenario as name:arg,arg")
    p.add_argument("--h", type=float, help="lattice spacing")
    p.add_argument("--r", type=int, help="stencil radius (Chebyshev)")
    p.add_argument("--box", help="lo,hi per axis, e.g. --box=-2,2,-2,2")
    p.add_argument("--periodic", help="0/1 flag per axis")
    p.add_argument("--max-nodes", type=int, default=lattice.DEFAULT_MAX_NODES)


def build_parser():
    parser = argparse.ArgumentParser(prog="conecalc", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--no-timestamp", action="store_true",
                        help="omit the timestamp and timing fields")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify a tangent vector")
    p.add_argument("--scenario", required=True)
    p.add_argument("--point", required=True)
    p.add_argument("--vector", required=True)
    p.add_argument("--tol", type=float, default=cone.CLOSED_FORM_TOL)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("distance", help="lattice estimate of the null distance")
    _add_grid_opts(p)
    p.add_argument("--tau", default="default", help="T, t, T^3, ... or default")
    p.add_argument("--p", required=True)
    p.add_argument("--q", required=True)
    p.add_argument("--oracle", help="also report the product formula (euclidean or circle:L)")
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("diamond", help="nodes of J+(p) & J-(q)")
    _add_grid_opts(p)
    p.add_argument("--p", required=True)
    p.add_argument("--q", required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_diamond)

    p = sub.add_parser("reach", help="discrete causal future or past")
    _add_grid_opts(p)
    p.add_argument("--p", required=True)
    p.add_argument("--direction", choices=("future", "past"), default="future")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_reach)

    p = sub.add_parser("suite", help="run verification suites")
    p.add_argument("--name")
    p.add_argument("--all", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--config", help="suite configuration as a JSON object")
    p.add_argument("--k", type=int)
    p.add_argument("--j", type=int)
    p.add_argument("--jmax", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--h", type=float)
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("scenario-list", help="list built-in scenarios")
    p.set_defaults(func=cmd_scenario_list)

    p = sub.add_parser("export-graph", help="dump the causal graph as JSON")
    _add_grid_opts(p)
    p.add_argument("--out", help="write to this file instead of stdout")
    p.set_defaults(func=cmd_export_graph)
    return parser


def _emit(doc, args, stream):
    if isinstance(doc, str):
        stream.write(doc)
        return
    doc = {"schema": SCHEMA, "command": args.command, **doc}
    if not args.no_timestamp:
        doc["timestamp"] = datetime.now(timezone.utc).isoformat()
    stream.write(json.dumps(doc, sort_keys=True) + "\n")


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.func(args)
        code = 0
        if isinstance(result, tuple):
            result, code = result
        _emit(result, args, sys.stdout)
        return code
    except UsageError as exc:
        print(f"conecalc: error: {exc}", file=sys.stderr)
        _emit({"error": str(exc), "kind": "usage"}, args, sys.stdout)
        return 2
    except (ConeCalcError, ValueError) as exc:
        print(f"conecalc: {type(exc).__name__}: {exc}", file=sys.stderr)
        _emit({"error": str(exc), "kind": type(exc).__name__}, args, sys.stdout)
        return 1


if __name__ == "__main__":
    sys.exit(main())
