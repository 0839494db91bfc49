"""vrk: clique complexes of graphs and finite metric spaces, exact homology, Kunneth checks.

Exit codes: 0 success (and every computed degree matches), 2 input error,
3 resource cap hit, 4 Kunneth mismatch.
"""

from __future__ import annotations

import argparse
import json
from dataclasses import dataclass
import logging
import os
import sys
import time

from . import __version__
from .algebra import Coefficients, NotComputedError, ResourceLimitError
from .flag import build_flag_complex, chain_complex, cohomology_at, homology_at
from .kunneth import (
    torus_closed_form,
    verify_algebraic,
    verify_cohomology_product,
    verify_graph_product,
)
from .relations import (
    FiniteMetricSpace,
    Threshold,
    max_metric_product,
    parse_rational,
    relation_equals,
    relation_from_metric,
    strong_product,
)
from .spaces import ParseError, SpaceRecipe, write_edge_list

log = logging.getLogger("vrkunneth")

EXIT_OK, EXIT_INPUT, EXIT_RESOURCE, EXIT_MISMATCH = 0, 2, 3, 4


class InputError(ValueError):
    pass


class _Recipe(argparse.Action):
    """Appends a SpaceRecipe to ``namespace.recipes`` so order is kept across flags."""

    def __init__(self, option_strings, dest, kind, **kw):
        self.kind = kind
        super().__init__(option_strings, dest="recipes", **kw)

    def __call__(self, parser, namespace, values, option_string=None):
        recipes = list(getattr(namespace, "recipes", None) or [])
        args = tuple(values) if isinstance(values, list) else ((values,) if values is not None else ())
        recipes.append(SpaceRecipe(self.kind, args))
        namespace.recipes = recipes


def _env_int(name: str, default: int) -> int:
    try:
        return int(os.environ.get(name, default))
    except ValueError:
        return default


def _common(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("spaces")
    g.add_argument("--cycle", action=_Recipe, kind="cycle", metavar="N")
    g.add_argument("--complete", action=_Recipe, kind="complete", metavar="N")
    g.add_argument("--power-cycle", action=_Recipe, kind="power_cycle", nargs=2, metavar=("N", "K"))
    g.add_argument("--circle", action=_Recipe, kind="circle", metavar="N",
                   help="N equally spaced points on the unit-circumference circle")
    g.add_argument("--rp2", action=_Recipe, kind="rp2", nargs=0)
    g.add_argument("--erdos-renyi", action=_Recipe, kind="erdos_renyi", nargs=3,
                   metavar=("N", "P", "SEED"))
    g.add_argument("--edges", action=_Recipe, kind="edges", metavar="PATH")
    g.add_argument("--distances", action=_Recipe, kind="distances", metavar="PATH")
    p.add_argument("--threshold", help="scale r for metric spaces, as p/q or a finite decimal")
    p.add_argument("--mode", choices=("closed", "open"), default="closed")
    p.add_argument("--max-q", type=int, default=2)
    p.add_argument("--coeff", default="z", help="z, q or fP for a prime P (e.g. f2)")
    p.add_argument("--format", choices=("json", "tsv"), default="json")
    p.add_argument("--output", metavar="PATH")
    p.add_argument("--max-simplices", type=int, default=_env_int("VRK_MAX_SIMPLICES", 2_000_000))
    p.add_argument("--max-entries", type=int, default=_env_int("VRK_MAX_ENTRIES", 20_000_000))
    p.add_argument("--no-timings", action="store_true",
                   help="omit timings so the report is byte-stable")
    p.add_argument("-v", "--verbose", action="count", default=0)
    p.set_defaults(recipes=[])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vrk", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("homology", help="homology of one clique complex")
    _common(p)
    p.add_argument("--cohomology", action="store_true", help="also report cohomology")

    p = sub.add_parser("product", help="strong product / max-metric product")
    _common(p)
    p.add_argument("--write-edges", metavar="PATH", help="write the product graph as an edge list")

    p = sub.add_parser("kunneth", help="verify the Kunneth formula on a product")
    _common(p)
    p.add_argument("--algebraic", action="store_true",
                   help="use the tensor product of chain complexes instead of the graph product")
    p.add_argument("--cohomology", action="store_true")
    p.add_argument("--flip-sign", nargs=2, type=int, metavar=("Q", "ENTRY"),
                   help="negate one stored entry of the product boundary in degree Q")

    p = sub.add_parser("torus-table", help="closed-form cohomology of the circle product")
    _common(p)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--lp", type=int, required=True)
    p.add_argument("--check", action="store_true", help="compare with two given spaces")
    p.set_defaults(max_q=None)
    return parser


# ---------------------------------------------------------------------------
# helpers


def _threshold(args) -> Threshold | None:
    if args.threshold is None:
        return None
    try:
        return Threshold(parse_rational(args.threshold), args.mode)
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad threshold {args.threshold!r}: {exc}") from None


def _build(recipe: SpaceRecipe):
    try:
        return recipe.build()
    except (ParseError, ValueError, IndexError) as exc:
        raise InputError(f"{recipe.describe()}: {exc}") from None
    except OSError as exc:
        raise InputError(str(exc)) from None


def _as_graph(recipe: SpaceRecipe, space, t: Threshold | None):
    if isinstance(space, FiniteMetricSpace):
        if t is None:
            raise InputError(f"{recipe.describe()} is a metric space; pass --threshold")
        return relation_from_metric(space, t)
    return space


@dataclass(frozen=True)
class RunConfig:
    """Validated settings shared by every subcommand."""

    command: str
    spaces: tuple[SpaceRecipe, ...]
    threshold: Threshold | None
    max_q: int | None
    coefficients: Coefficients
    output_format: str = "json"
    max_simplices: int = 2_000_000
    max_entries: int = 20_000_000
    verbosity: int = 0

    def __post_init__(self):
        if self.max_simplices <= 0 or self.max_entries <= 0:
            raise InputError("resource caps must be positive")
        if self.max_q is not None and self.max_q < 0:
            raise InputError("--max-q must be nonnegative")

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        return cls(args.command, tuple(args.recipes), _threshold(args), args.max_q,
                   _coeff(args), args.format, args.max_simplices, args.max_entries,
                   args.verbose)

    def to_json(self) -> dict:
        t = self.threshold
        return {
            "command": self.command,
            "spaces": [r.describe() for r in self.spaces],
            "threshold": str(t.value) if t else None,
            "mode": t.mode if t else None,
            "max_q": self.max_q,
            "coefficients": str(self.coefficients),
            "max_simplices": self.max_simplices,
            "max_entries": self.max_entries,
        }


def _need(args, count: int):
    if len(args.recipes) != count:
        raise InputError(f"{args.command} needs exactly {count} space(s), got {len(args.recipes)}")


def _coeff(args) -> Coefficients:
    try:
        return Coefficients.parse(args.coeff)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _config(args, **extra) -> dict:
    cfg = RunConfig.from_args(args).to_json()
    cfg.update(extra)
    return cfg


def _tsv_degrees(rows: list[dict]) -> str:
    cols = []
    for r in rows:
        for k in r:
            if k not in cols:
                cols.append(k)
    out = ["\t".join(cols)]
    for r in rows:
        cells = []
        for k in cols:
            v = r.get(k)
            if isinstance(v, list):
                v = ",".join(map(str, v))
            elif isinstance(v, dict):
                v = f"{v['rank']}|{','.join(map(str, v['torsion']))}"
            cells.append("" if v is None else str(v))
        out.append("\t".join(cells))
    return "\n".join(out) + "\n"


def _emit(args, report: dict) -> None:
    if args.format == "json":
        text = json.dumps(report, indent=2) + "\n"
    else:
        text = _tsv_degrees(report.get("degrees", []))
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands


def cmd_homology(args) -> int:
    _need(args, 1)
    coeff = _coeff(args)
    t = _threshold(args)
    t0 = time.perf_counter()
    space = _build(args.recipes[0])
    g = _as_graph(args.recipes[0], space, t)
    cap = args.max_q + 1
    k = build_flag_complex(g, cap, args.max_simplices, on_limit="truncate")
    c = chain_complex(k)
    timings = {"build": time.perf_counter() - t0}
    degrees = []
    limited = False
    for q in range(args.max_q + 1):
        row = {"q": q}
        if not c.determined(q):
            row["status"] = "not computed"
            limited = True
            degrees.append(row)
            continue
        s = time.perf_counter()
        h = homology_at(c, q, coeff, args.max_entries)
        row.update(status="computed", rank=h.rank, torsion=list(h.torsion))
        if args.cohomology:
            hc = cohomology_at(c, q, coeff, args.max_entries)
            row["cohomology"] = hc.to_json()
        if not args.no_timings:
            row["seconds"] = round(time.perf_counter() - s, 6)
        degrees.append(row)
    report = {
        "config": _config(args),
        "spaces": [dict(g.summary(), name=args.recipes[0].describe())],
        "f_vector": list(k.f_vector),
        "dimension_cap": k.max_dim,
        "euler_characteristic": c.euler_characteristic() if not k.truncated else None,
        "resource_limited": limited,
        "degrees": degrees,
    }
    if not args.no_timings:
        timings["total"] = time.perf_counter() - t0
        report["timings"] = {k2: round(v, 6) for k2, v in timings.items()}
    _emit(args, report)
    return EXIT_RESOURCE if limited else EXIT_OK


def cmd_product(args) -> int:
    _need(args, 2)
    t = _threshold(args)
    a, b = (_build(r) for r in args.recipes)
    report = {"config": _config(args)}
    metric = isinstance(a, FiniteMetricSpace) and isinstance(b, FiniteMetricSpace)
    if metric:
        m = max_metric_product(a, b)
        report["metric"] = {"points": m.n, "diameter": str(m.diameter()),
                            "distinct_distances": len(m.distances())}
        if t is None:
            _emit(args, report)
            return EXIT_OK
        g = relation_from_metric(m, t)
        factorwise = strong_product(relation_from_metric(a, t), relation_from_metric(b, t))
        report["equals_strong_product_of_thresholds"] = relation_equals(g, factorwise)
    else:
        g = strong_product(_as_graph(args.recipes[0], a, t), _as_graph(args.recipes[1], b, t))
    k = build_flag_complex(g, args.max_q + 1, args.max_simplices, on_limit="truncate")
    report["graph"] = g.summary()
    report["f_vector"] = list(k.f_vector)
    report["dimension_cap"] = k.max_dim
    if args.write_edges:
        with open(args.write_edges, "w") as fh:
            write_edge_list(g, fh)
    _emit(args, report)
    if metric and not report["equals_strong_product_of_thresholds"]:
        return EXIT_MISMATCH
    return EXIT_OK


def _mutator(args):
    if not args.flip_sign:
        return None
    q, entry = args.flip_sign

    def mutate(c):
        if not 1 <= q <= c.top or not 0 <= entry < c.boundaries[q].nnz:
            raise InputError(f"--flip-sign {q} {entry} is outside the product complex")
        return c.with_sign_flipped(q, entry)

    return mutate


def cmd_kunneth(args) -> int:
    _need(args, 2)
    coeff = _coeff(args)
    t = _threshold(args)
    spaces = [_build(r) for r in args.recipes]
    graphs = [_as_graph(r, s, t) for r, s in zip(args.recipes, spaces)]
    names = tuple(r.describe() for r in args.recipes)
    mutate = _mutator(args)
    if args.algebraic:
        if args.cohomology:
            raise InputError("--algebraic verifies homology only")
        cx = [chain_complex(build_flag_complex(g, args.max_q + 1, args.max_simplices,
                                               on_limit="truncate")) for g in graphs]
        report = verify_algebraic(cx[0], cx[1], args.max_q, coeff, names=names,
                                  max_entries=args.max_entries, mutate=mutate)
    else:
        fn = verify_cohomology_product if args.cohomology else verify_graph_product
        report = fn(graphs[0], graphs[1], args.max_q, coeff, names=names,
                    max_simplices=args.max_simplices, max_entries=args.max_entries,
                    mutate=mutate)
    out = {"config": _config(args, algebraic=args.algebraic, cohomology=args.cohomology,
                             flip_sign=args.flip_sign)}
    out.update(report.to_json(timings=not args.no_timings))
    _emit(args, out)
    if report.mismatches:
        log.warning("Kunneth mismatch in degrees %s", report.mismatches)
        return EXIT_MISMATCH
    if report.resource_limited:
        return EXIT_RESOURCE
    return EXIT_OK


def cmd_torus_table(args) -> int:
    if args.l < 0 or args.lp < 0:
        raise InputError("--l and --lp must be nonnegative")
    max_q = args.max_q if args.max_q is not None else 2 * (args.l + args.lp + 1)
    args.max_q = max_q
    rows = [{"q": q, "closed_form": torus_closed_form(args.l, args.lp, q).to_json()}
            for q in range(max_q + 1)]
    code = EXIT_OK
    extra = {"l": args.l, "lp": args.lp}
    if args.check:
        _need(args, 2)
        t = _threshold(args)
        graphs = [_as_graph(r, _build(r), t) for r in args.recipes]
        report = verify_cohomology_product(graphs[0], graphs[1], max_q, _coeff(args),
                                           max_simplices=args.max_simplices,
                                           max_entries=args.max_entries)
        for row, d in zip(rows, report.degrees):
            row["status"] = d.status
            if d.computed is None:
                row["computed"] = None
                row["match"] = None
                continue
            row["computed"] = d.computed.to_json()
            row["match"] = d.computed.to_json() == row["closed_form"]
        if any(r.get("match") is False for r in rows):
            code = EXIT_MISMATCH
        elif report.resource_limited:
            code = EXIT_RESOURCE
    _emit(args, {"config": _config(args, **extra), "degrees": rows})
    return code


COMMANDS = {
    "homology": cmd_homology,
    "product": cmd_product,
    "kunneth": cmd_kunneth,
    "torus-table": cmd_torus_table,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        RunConfig.from_args(args)  # validate before any work
        return COMMANDS[args.command](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except NotComputedError as exc:
        print(f"not computed: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
