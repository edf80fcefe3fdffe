"""Command-line front end.

Subcommands ``solve``, ``currents``, ``sweep``, ``table`` and ``finite``.
CSV goes to standard output (and to ``<prefix>.csv`` when a prefix is
set).  Exit status: 0 on success, 2 on bad input, 3 when the edits cut
off part of the lattice and augmentation is disabled.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import fixtures
from .currents import current_map
from .errors import DisconnectedNetwork, DomainError, LatticeError, ScenarioError, SingularB, WindowMissing
from .finite import truncate_lattice
from .lattice import LatticeKind
from .perfect import asymptotic_r0
from .scenario import load_network, load_scenario
from .solver import PerturbedLattice, get_provider
from .svg import render_current_map
from .topology import QueryCase

EXIT_INPUT = 2
EXIT_SINGULAR = 3
TABLE_MAX = 64


def fmt(x) -> str:
    """Fixed 12-significant-digit rendering used in every CSV."""
    if isinstance(x, float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return f"{x:.12g}"
    return str(x)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([fmt(v) for v in r])
    return buf.getvalue()


def _emit(text: str, prefix: str | None, suffix: str = ".csv"):
    sys.stdout.write(text)
    if prefix:
        path = Path(prefix + suffix)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)


def _bool(s: str) -> bool:
    v = s.lower()
    if v in ("true", "1", "yes"):
        return True
    if v in ("false", "0", "no"):
        return False
    raise argparse.ArgumentTypeError(f"expected true or false, got {s!r}")


def _window(s: str):
    try:
        m0, n0, m1, n1 = (int(t) for t in s.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("window is m0,n0,m1,n1") from None
    return (m0, n0), (m1, n1)


def _lattice_for(args):
    sc = load_scenario(args.scenario)
    if args.auto_augment is not None:
        sc.auto_augment = args.auto_augment
    if getattr(args, "out_prefix", None):
        sc.output_prefix = args.out_prefix
    return sc, PerturbedLattice(sc.editset, auto_augment=sc.auto_augment)


def cmd_solve(args) -> int:
    sc, pl = _lattice_for(args)
    header = ["i_m", "i_n", "j_m", "j_n", "R", "R_perfect", "case"]
    if args.oracle:
        header += ["R_finite", "deviation"]
    rows = []
    for i, j in sc.queries:
        r = pl.resistance(i, j)
        row = [i.m, i.n, j.m, j.n, float(r), pl.perfect_resistance(i, j), pl.classify(i, j).value]
        if args.oracle:
            row += _oracle(pl, i, j, args.oracle_half_width)
        rows.append(row)
    _emit(_csv(header, rows), sc.output_prefix if args.out_prefix else None)
    return 0


def _oracle(pl: PerturbedLattice, i, j, h: int):
    if pl.classify(i, j) is not QueryCase.INFINITE_BOTH:
        return ["", ""]
    sites = list(pl.editset.sites()) + [i, j]
    cm = round(sum(s[0] for s in sites) / len(sites))
    cn = round(sum(s[1] for s in sites) / len(sites))
    net = truncate_lattice(pl.kind, pl.editset, h, (cm, cn)).component_of(i)
    rf = net.resistance(i, j)
    return [rf, rf - pl.resistance(i, j)]


def cmd_currents(args) -> int:
    sc, pl = _lattice_for(args)
    window = args.window or sc.current_window
    if window is None:
        raise WindowMissing("no current window: pass --window or set current_window in the scenario")
    if len(sc.queries) != 1:
        raise ScenarioError(f"currents needs exactly one query, found {len(sc.queries)}")
    i, j = sc.queries[0]
    cmap = current_map(pl, i, j, window, I0=args.current)
    text = _csv(["x_m", "x_n", "y_m", "y_n", "current", "restored"], cmap.to_rows())
    prefix = sc.output_prefix or sc.name or "currents"
    _emit(text, prefix)
    Path(prefix + ".svg").write_text(render_current_map(cmap, title=sc.name))
    return 0


def _sweep_point(kind: str, p: int):
    sc = fixtures.obstacle(p) if kind == "obstacle_distance" else fixtures.periodic_chain(p)
    pl = PerturbedLattice(sc.editset)
    i, j = sc.queries[0]
    return [p, pl.resistance(i, j), pl.perfect_resistance(i, j), asymptotic_r0(j.m - i.m, j.n - i.n)]


def cmd_sweep(args) -> int:
    lo, hi = args.start, args.stop
    limit = fixtures.OBSTACLE_MAX_D if args.kind == "obstacle_distance" else fixtures.CHAIN_MAX_NB
    first = 0 if args.kind == "obstacle_distance" else 1
    if not first <= lo <= hi <= limit:
        raise DomainError(f"sweep range must satisfy {first} <= start <= stop <= {limit}")
    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        rows = list(pool.map(lambda p: _sweep_point(args.kind, p), range(lo, hi + 1)))
    _emit(_csv(["parameter", "R", "R_perfect", "R_asymptotic"], rows), args.out_prefix)
    return 0


def _frac(f) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def cmd_table(args) -> int:
    if not 0 <= args.max_index <= TABLE_MAX:
        raise DomainError(f"max index must be in 0..{TABLE_MAX}")
    prov = get_provider(args.lattice)
    table = prov.table(args.max_index)
    rows = [[m, n, _frac(v.p), _frac(v.q), _frac(v.s), float(v)] for (m, n), v in sorted(table.items())]
    _emit(_csv(["m", "n", "p", "q", "s", "decimal"], rows), args.out_prefix)
    return 0


def cmd_finite(args) -> int:
    net, queries = load_network(args.network)
    rows = []
    parts = {}
    if not net.is_connected():
        comps = net.components()
        sys.stderr.write(str(DisconnectedNetwork(comps)) + "\n")
        for k, comp in enumerate(comps):
            sys.stderr.write(f"  component {k}: {sorted(map(str, comp))}\n")
            sub = net.subnetwork(comp)
            for v in comp:
                parts[v] = sub
    for u, v in queries:
        if parts:
            sub = parts[u]
            r = sub.resistance(u, v) if parts[v] is sub else math.inf
        else:
            r = net.resistance(u, v)
        rows.append([json.dumps(u), json.dumps(v), float(r)])
    _emit(_csv(["u", "v", "R"], rows), args.out_prefix)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="resistor-lattice", description="Two-point resistance of defective lattices.")
    sub = ap.add_subparsers(dest="command", required=True)

    def scenario_cmd(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("scenario", help="scenario file")
        p.add_argument("--auto-augment", nargs="?", const=True, default=None, type=_bool, metavar="BOOL",
                       help="restore bridge/dangling bonds automatically (default from scenario, else true)")
        p.add_argument("--out-prefix", help="also write outputs to files with this prefix")
        p.set_defaults(func=func)
        return p

    p = scenario_cmd("solve", cmd_solve, "resistance for every query in a scenario")
    p.add_argument("--oracle", action="store_true", help="cross-check against a truncated finite lattice")
    p.add_argument("--oracle-half-width", type=int, default=50, metavar="H")

    p = scenario_cmd("currents", cmd_currents, "bond current map for the single query of a scenario")
    p.add_argument("--window", type=_window, help="m0,n0,m1,n1")
    p.add_argument("--current", type=float, default=1.0, help="injected current I0")

    p = sub.add_parser("sweep", help="parameter sweep over a built-in geometry")
    p.add_argument("kind", choices=["obstacle_distance", "periodic_chain"])
    p.add_argument("--start", type=int, default=None)
    p.add_argument("--stop", type=int, default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out-prefix")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("table", help="exact perfect-lattice resistances")
    p.add_argument("lattice", choices=[k.value for k in LatticeKind])
    p.add_argument("max_index", type=int)
    p.add_argument("--out-prefix")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("finite", help="resistances in a finite network file")
    p.add_argument("network", help="network file")
    p.add_argument("--out-prefix")
    p.set_defaults(func=cmd_finite)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "sweep":
        obstacle = args.kind == "obstacle_distance"
        if args.start is None:
            args.start = 0 if obstacle else 1
        if args.stop is None:
            args.stop = 12 if obstacle else 10
    try:
        return args.func(args)
    except SingularB as exc:
        sys.stderr.write(f"error: {exc}\n")
        if exc.report is not None:
            sys.stderr.write(json.dumps(exc.report.to_dict()) + "\n")
        return EXIT_SINGULAR
    except (LatticeError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
