"""Command-line front end.

Every subcommand reads graphs and measures as JSON, writes one JSON document
(to ``--out`` or stdout) and uses exact ``"p/q"`` strings for rationals.

Exit codes: 0 success, 1 a checked property fails, 2 search found no
positive measure within the pool, 3 a budget ran out, 64 usage error,
65 malformed or invalid input, 66 missing input file, 70 an internal
consistency check failed.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction

from . import builders
from .curvature import (EXHAUSTIVE_LIMIT, SampledCurvature, expectation_curvature, gauss_bonnet_check, levitt_vector,
                        uniform_curvature)
from .geodesy import (DEFAULT_MAX_WHEELS, EXISTENTIAL, UNIVERSAL, WheelError, crofton_distance,
                      enumerate_geodesic_wheels, is_geodesic_wheel, sphere_distances)
from .graph import Graph, GraphError, euler_characteristic, fvector
from .jsonio import InputError, load, rat
from .lp import PivotBudgetExceeded
from .measure import Measure, MeasureError
from .morse import Coloring, ColoringError, index_vector, random_coloring, symmetric_index
from .search import (EULER, SECTIONAL, STATUS_BUDGET, STATUS_POSITIVE, SearchError,
                     positive_curvature_search)
from .topology import UndecidedBudget, check

EX_OK, EX_FAIL, EX_NONPOSITIVE, EX_BUDGET = 0, 1, 2, 3
EX_USAGE, EX_DATAERR, EX_NOINPUT, EX_SOFTWARE = 64, 65, 66, 70


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _read_graph(path: str) -> Graph:
    return Graph.from_json(load(path))


def _emit(obj, out: str | None) -> None:
    text = json.dumps(obj, indent=2) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _vertex(G: Graph, label: str) -> int:
    return G.vertex_by_label(label)


def _curvature_json(G: Graph, K: dict) -> dict:
    return {str(G.labels[v]): rat(K[v]) for v in G.vertices}


# subcommands ------------------------------------------------------------

def cmd_build(args) -> int:
    kind = args.kind
    if kind == "cycle":
        G = builders.cycle(args.n or 4)
    elif kind == "wheel":
        G = builders.wheel(args.n or 4)
    elif kind == "cross":
        G = builders.cross_polytope(args.d or 3)
    elif kind == "octahedron":
        G = builders.octahedron()
    elif kind == "icosa":
        G = builders.icosahedron()
    elif kind == "complete":
        G = builders.complete(args.n or 3)
    elif kind == "rp2":
        G = builders.projective_plane()
    elif kind == "barycentric":
        if not args.inp:
            raise UsageError("build --kind barycentric needs --in")
        G = builders.barycentric(_read_graph(args.inp))
    elif kind == "product":
        if not args.inp or not args.inp2:
            raise UsageError("build --kind product needs --in and --in2")
        G = builders.kuenneth_product(_read_graph(args.inp), _read_graph(args.inp2))
    else:  # argparse restricts the choices
        raise UsageError(f"unknown kind {kind!r}")
    _emit(G.to_json(), args.out)
    return EX_OK


def cmd_verify(args) -> int:
    G = _read_graph(args.graph)
    if args.kind != "contractible" and args.dim is None:
        raise UsageError(f"verify --kind {args.kind} needs --dim")
    rep = check(G, args.kind, args.dim, exhaustive=args.exhaustive, node_budget=args.node_budget)
    _emit({"schema_version": 1, **rep.to_json(G)}, args.out)
    return EX_OK if rep.holds else EX_FAIL


def cmd_chi(args) -> int:
    G = _read_graph(args.graph)
    obj = {"chi": euler_characteristic(G)}
    if args.fvector:
        obj["fvector"] = list(fvector(G))
    _emit(obj, args.out)
    return EX_OK


def cmd_curvature(args) -> int:
    G = _read_graph(args.graph)
    obj: dict = {"schema_version": 1, "chi": euler_characteristic(G)}
    if args.levitt:
        obj["kind"] = "levitt"
        K = levitt_vector(G)
    elif args.uniform:
        res = uniform_curvature(G, limit=args.limit, samples=args.samples, seed=args.seed)
        if isinstance(res, SampledCurvature):
            obj.update(kind="uniform-sampled", samples=res.samples, seed=res.seed,
                       curvature=_curvature_json(G, res.estimate),
                       stderr={str(G.labels[v]): res.stderr[v] for v in G.vertices})
            _emit(obj, args.out)
            return EX_OK
        obj["kind"] = "uniform"
        K = res
    else:
        mu = Measure.from_json(G, load(args.measure))
        obj["kind"] = "measure"
        K = expectation_curvature(G, mu)
    ok, _ = gauss_bonnet_check(G, K)
    obj["curvature"] = _curvature_json(G, K)
    obj["total"] = rat(sum(K.values(), Fraction(0)))
    obj["gauss_bonnet"] = ok
    _emit(obj, args.out)
    return EX_OK


def cmd_indices(args) -> int:
    G = _read_graph(args.graph)
    if args.coloring:
        f = Coloring.from_json(G, load(args.coloring))
    else:
        f = random_coloring(G, args.seed)
    idx = index_vector(G, f)
    obj: dict = {"schema_version": 1, "chi": euler_characteristic(G),
                 "coloring": f.to_json(G)["values"],
                 "indices": {str(G.labels[v]): idx[v] for v in G.vertices},
                 "total": sum(idx.values())}
    if args.symmetric:
        obj["symmetric"] = {str(G.labels[v]): rat(symmetric_index(G, f, v)) for v in G.vertices}
    _emit(obj, args.out)
    return EX_OK


def cmd_wheels(args) -> int:
    G = _read_graph(args.graph)
    x = _vertex(G, args.vertex)
    ws, truncated = enumerate_geodesic_wheels(G, x, args.max_count, args.mode)
    dist = sphere_distances(G, x)
    _emit({
        "schema_version": 1,
        "vertex": G.labels[x],
        "mode": args.mode,
        "truncated": truncated,
        "wheels": [is_geodesic_wheel(G, W, args.mode, dist).to_json(G) for W in ws],
    }, args.out)
    return EX_OK


def cmd_search(args) -> int:
    G = _read_graph(args.graph)
    rep = positive_curvature_search(
        G, mode=args.mode, seed=args.seed, rounds=args.rounds, restarts=args.restarts,
        n_random=args.random_pool, n_canonical=args.canonical_pool,
        columns_per_round=args.columns, wheels_per_vertex=args.wheels_per_vertex,
        time_budget=args.time_budget, pivot_budget=args.pivot_budget, workers=args.workers)
    _emit(rep.to_json(), args.out)
    if rep.status == STATUS_POSITIVE:
        return EX_OK
    if rep.status == STATUS_BUDGET:
        return EX_BUDGET
    return EX_NONPOSITIVE


def cmd_distance(args) -> int:
    G = _read_graph(args.graph)
    mu = Measure.from_json(G, load(args.measure))
    a, b = _vertex(G, args.source), _vertex(G, args.target)
    d = crofton_distance(G, mu, a, b)
    _emit({"from": G.labels[a], "to": G.labels[b],
           "distance": "inf" if d == math.inf else rat(d)}, args.out)
    return EX_OK


# parser -----------------------------------------------------------------

def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hopfgraph", description="Curvature, indices and topology of finite simple graphs.")
    sub = p.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)

    def add(name: str, func, help: str, graph: bool = True) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help, description=help)
        if graph:
            sp.add_argument("graph", help="graph JSON file")
        sp.add_argument("--out", help="write the JSON result here instead of stdout")
        sp.set_defaults(func=func)
        return sp

    sp = add("build", cmd_build, "build a standard graph and write it as JSON", graph=False)
    sp.add_argument("--kind", required=True,
                    choices=["cycle", "wheel", "cross", "octahedron", "icosa", "complete", "rp2",
                             "barycentric", "product"])
    sp.add_argument("--n", type=int, help="size for cycle, wheel, complete")
    sp.add_argument("--d", type=int, help="dimension for cross")
    sp.add_argument("--in", dest="inp", help="input graph for barycentric and product")
    sp.add_argument("--in2", dest="inp2", help="second factor for product")

    sp = add("verify", cmd_verify, "check contractibility, d-sphere or d-graph (exit 1 if false)")
    sp.add_argument("--kind", required=True, choices=["contractible", "sphere", "dgraph"])
    sp.add_argument("--dim", type=int)
    sp.add_argument("--exhaustive", action="store_true", help="test every vertex removal for spheres")
    sp.add_argument("--node-budget", type=_nonneg, default=None,
                    help="recursion node budget (env HOPFGRAPH_NODE_BUDGET)")

    sp = add("chi", cmd_chi, "Euler characteristic of the clique complex")
    sp.add_argument("--fvector", action="store_true", help="also print the f-vector")

    sp = add("curvature", cmd_curvature, "curvature vector and Gauss-Bonnet check")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--measure", help="measure JSON")
    g.add_argument("--uniform", action="store_true", help="uniform measure on vertex orderings")
    g.add_argument("--levitt", action="store_true", help="Levitt curvature from unit-sphere f-vectors")
    sp.add_argument("--limit", type=_nonneg, default=EXHAUSTIVE_LIMIT,
                    help="largest vertex degree handled exactly by --uniform")
    sp.add_argument("--samples", type=_nonneg, help="Monte Carlo samples for --uniform")
    sp.add_argument("--seed", type=int, default=0)

    sp = add("indices", cmd_indices, "Poincare-Hopf indices of one coloring")
    sp.add_argument("--coloring", help="coloring JSON (default: random ordering from --seed)")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--symmetric", action="store_true", help="also print (i_f + i_-f)/2")

    sp = add("wheels", cmd_wheels, "geodesic wheels centred at a vertex")
    sp.add_argument("--vertex", required=True)
    sp.add_argument("--mode", choices=[EXISTENTIAL, UNIVERSAL], default=EXISTENTIAL)
    sp.add_argument("--max-count", type=_nonneg, default=DEFAULT_MAX_WHEELS)

    sp = add("search", cmd_search, "column-generation search for a positive-curvature measure")
    sp.add_argument("--mode", choices=[EULER, SECTIONAL], default=EULER)
    sp.add_argument("--rounds", type=_nonneg, default=30)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--restarts", type=_nonneg, default=16, help="pricing restarts per round")
    sp.add_argument("--random-pool", type=_nonneg, default=16)
    sp.add_argument("--canonical-pool", type=_nonneg, default=32, help="height-function sources")
    sp.add_argument("--columns", type=_nonneg, default=4, help="new columns per round")
    sp.add_argument("--wheels-per-vertex", type=_nonneg, default=1)
    sp.add_argument("--time-budget", type=float, default=None, help="seconds")
    sp.add_argument("--pivot-budget", type=_nonneg, default=None,
                    help="simplex pivots (env HOPFGRAPH_PIVOT_BUDGET)")
    sp.add_argument("--workers", type=_nonneg, default=os.cpu_count() or 1,
                    help="pricing processes; results do not depend on it")

    sp = add("distance", cmd_distance, "Crofton distance between two vertices")
    sp.add_argument("--measure", required=True)
    sp.add_argument("--from", dest="source", required=True)
    sp.add_argument("--to", dest="target", required=True)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "func", None):
            parser.print_usage(sys.stderr)
            raise UsageError("hopfgraph: error: missing command")
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EX_USAGE
    except InputError as exc:
        where = f" (line {exc.line}, column {exc.col})" if exc.line is not None else ""
        print(f"hopfgraph: malformed input: {exc}{where}", file=sys.stderr)
        return EX_DATAERR
    except FileNotFoundError as exc:
        print(f"hopfgraph: {exc}", file=sys.stderr)
        return EX_NOINPUT
    except (GraphError, ColoringError, MeasureError, WheelError) as exc:
        print(f"hopfgraph: invalid input: {exc}", file=sys.stderr)
        return EX_DATAERR
    except SearchError as exc:
        print(f"hopfgraph: search failed: {exc}", file=sys.stderr)
        return EX_SOFTWARE
    except (UndecidedBudget, PivotBudgetExceeded) as exc:
        print(f"hopfgraph: budget exhausted: {exc}", file=sys.stderr)
        return EX_BUDGET


if __name__ == "__main__":
    sys.exit(main())
