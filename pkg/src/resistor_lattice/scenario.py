"""Text formats for scenarios and standalone networks.

Scenario files::

    #scenario v1
    lattice: "square"
    remove: [[0, 0], [1, 0]]
    set: [[0, 0], [0, 1], 0.5]
    query: [[1, 0], [1, 1]]
    auto_augment: true
    current_window: [[-4, -4], [5, 5]]
    output_prefix: "out/four_bond"

The first line is the version header.  Every other non-blank line not
starting with ``#`` is ``key: value`` where the value is JSON.  ``remove``,
``set`` and ``query`` may repeat; the rest may appear at most once.

Network files::

    #network v1
    edge: ["a", "b", 1.0]
    query: ["a", "b"]

Node labels are any JSON scalars or integer pairs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import InvalidEdit, NotAdjacent, ScenarioError
from .finite import FiniteNetwork
from .lattice import Bond, LatticeKind, Site
from .woodbury import BondEdit, EditSet

SCENARIO_HEADER = "#scenario v1"
NETWORK_HEADER = "#network v1"

_SINGLE_KEYS = {"lattice", "auto_augment", "current_window", "output_prefix"}
_MULTI_KEYS = {"remove", "set", "query"}


@dataclass
class Scenario:
    editset: EditSet
    queries: list[tuple[Site, Site]] = field(default_factory=list)
    auto_augment: bool = True
    current_window: tuple[tuple[int, int], tuple[int, int]] | None = None
    output_prefix: str | None = None
    name: str = ""

    @property
    def kind(self) -> LatticeKind:
        return self.editset.kind


def _lines(text: str, header: str):
    lines = text.splitlines()
    if not lines or lines[0].strip() != header:
        raise ScenarioError(f"missing header {header!r}", line=1)
    for no, raw in enumerate(lines[1:], start=2):
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        key, sep, value = s.partition(":")
        if not sep:
            raise ScenarioError("expected 'key: value'", line=no)
        try:
            yield no, key.strip(), json.loads(value)
        except json.JSONDecodeError as exc:
            raise ScenarioError(f"bad value for {key.strip()!r}: {exc.msg}", line=no) from None


def _site(v, no) -> Site:
    if not (isinstance(v, list) and len(v) == 2 and all(isinstance(c, int) and not isinstance(c, bool) for c in v)):
        raise ScenarioError(f"expected an integer pair, got {json.dumps(v)}", line=no)
    return Site(*v)


def _pair(v, no) -> tuple[Site, Site]:
    if not (isinstance(v, list) and len(v) == 2):
        raise ScenarioError(f"expected a pair of sites, got {json.dumps(v)}", line=no)
    return _site(v[0], no), _site(v[1], no)


def parse_scenario(text: str, name: str = "") -> Scenario:
    kind = None
    raw_edits: list[tuple[int, Site, Site, float]] = []
    queries = []
    opts: dict = {}
    seen_single: set = set()
    for no, key, val in _lines(text, SCENARIO_HEADER):
        if key not in _SINGLE_KEYS | _MULTI_KEYS:
            raise ScenarioError(f"unknown key {key!r}", line=no)
        if key in _SINGLE_KEYS:
            if key in seen_single:
                raise ScenarioError(f"{key!r} given twice", line=no)
            seen_single.add(key)
        if key == "lattice":
            try:
                kind = LatticeKind.parse(val)
            except ValueError as exc:
                raise ScenarioError(str(exc), line=no) from None
        elif key == "remove":
            u, v = _pair(val, no)
            raw_edits.append((no, u, v, 0.0))
        elif key == "set":
            if not (isinstance(val, list) and len(val) == 3 and isinstance(val[2], (int, float))):
                raise ScenarioError("'set' takes [[m, n], [m, n], beta]", line=no)
            u, v = _pair(val[:2], no)
            raw_edits.append((no, u, v, float(val[2])))
        elif key == "query":
            queries.append(_pair(val, no))
        elif key == "auto_augment":
            if not isinstance(val, bool):
                raise ScenarioError("'auto_augment' must be true or false", line=no)
            opts["auto_augment"] = val
        elif key == "current_window":
            opts["current_window"] = tuple(tuple(s) for s in _pair(val, no))
        elif key == "output_prefix":
            if not isinstance(val, str):
                raise ScenarioError("'output_prefix' must be a string", line=no)
            opts["output_prefix"] = val
    if kind is None:
        raise ScenarioError("no 'lattice' line")
    edits, first_line = [], {}
    for no, u, v, beta in raw_edits:
        try:
            bond = Bond(kind, u, v)
            edit = BondEdit(bond, beta)
        except (NotAdjacent, InvalidEdit) as exc:
            raise ScenarioError(str(exc), line=no) from None
        if bond in first_line:
            raise ScenarioError(f"bond {u}-{v} already edited on line {first_line[bond]}", line=no)
        first_line[bond] = no
        edits.append(edit)
    return Scenario(EditSet(kind, edits), queries, name=name, **opts)


def load_scenario(path) -> Scenario:
    path = Path(path)
    return parse_scenario(path.read_text(), name=path.stem)


def format_scenario(sc: Scenario) -> str:
    dump = lambda v: json.dumps(v)  # noqa: E731
    out = [SCENARIO_HEADER, f"lattice: {dump(sc.kind.value)}"]
    for e in sc.editset:
        ends = [list(e.bond.start), list(e.bond.end)]
        if e.removed:
            out.append(f"remove: {dump(ends)}")
        else:
            out.append(f"set: {dump(ends + [e.beta_new])}")
    for i, j in sc.queries:
        out.append(f"query: {dump([list(i), list(j)])}")
    out.append(f"auto_augment: {dump(sc.auto_augment)}")
    if sc.current_window is not None:
        out.append(f"current_window: {dump([list(c) for c in sc.current_window])}")
    if sc.output_prefix is not None:
        out.append(f"output_prefix: {dump(sc.output_prefix)}")
    return "\n".join(out) + "\n"


def _node(v, no):
    if isinstance(v, list):
        if len(v) == 2 and all(isinstance(c, int) for c in v):
            return tuple(v)
        raise ScenarioError(f"node label {json.dumps(v)} is not a scalar or integer pair", line=no)
    if v is None or isinstance(v, (dict, bool)):
        raise ScenarioError(f"bad node label {json.dumps(v)}", line=no)
    return v


def parse_network(text: str) -> tuple[FiniteNetwork, list]:
    nodes: dict = {}
    edges, queries = [], []
    for no, key, val in _lines(text, NETWORK_HEADER):
        if key == "edge":
            if not (isinstance(val, list) and len(val) == 3 and isinstance(val[2], (int, float))):
                raise ScenarioError("'edge' takes [u, v, conductance]", line=no)
            u, v = _node(val[0], no), _node(val[1], no)
            if val[2] < 0:
                raise ScenarioError("negative conductance", line=no)
            nodes.setdefault(u, None)
            nodes.setdefault(v, None)
            edges.append((u, v, float(val[2])))
        elif key == "node":
            nodes.setdefault(_node(val, no), None)
        elif key == "query":
            if not (isinstance(val, list) and len(val) == 2):
                raise ScenarioError("'query' takes [u, v]", line=no)
            queries.append((_node(val[0], no), _node(val[1], no), no))
        else:
            raise ScenarioError(f"unknown key {key!r}", line=no)
    for u, v, no in queries:
        for w in (u, v):
            if w not in nodes:
                raise ScenarioError(f"query node {w!r} is not in the network", line=no)
    return FiniteNetwork(list(nodes), edges), [(u, v) for u, v, _ in queries]


def load_network(path):
    return parse_network(Path(path).read_text())
