"""Connectivity analysis of an edited lattice.

Removed bonds can cut off finite islands or isolated sites.  The Green
operator then does not exist and B is singular.  For queries in the infinite
part the fix is to put back a spanning tree of removed bonds (bridges and
dangling bonds) joining every cut-off piece to the infinite part exactly
once; no current flows through a tree attached at a single point.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field

from .errors import AugmentationImpossible
from .lattice import Bond, LatticeKind, Site, as_site
from .woodbury import EditSet


class ComponentKind(enum.Enum):
    INFINITE = "infinite"
    ISLAND = "island"
    ISOLATED_SITE = "isolated_site"


class QueryCase(enum.Enum):
    SAME_ISLAND = "same_island"
    DISCONNECTED = "disconnected"
    INFINITE_BOTH = "infinite_both"


@dataclass(frozen=True)
class Component:
    sites: frozenset
    kind: ComponentKind

    def __len__(self):
        return len(self.sites)


@dataclass
class DefectReport:
    """Connected components of the edited region.

    ``components[0]`` is always the infinite part; it only lists the sites
    inside ``box``, every site outside belongs to it implicitly.
    """

    kind: LatticeKind
    components: list[Component]
    box: tuple[tuple[int, int], tuple[int, int]]
    _index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        for k, comp in enumerate(self.components):
            for s in comp.sites:
                self._index[s] = k

    @property
    def infinite(self) -> Component:
        return self.components[0]

    @property
    def defects(self) -> list[Component]:
        return self.components[1:]

    @property
    def has_defects(self) -> bool:
        return len(self.components) > 1

    def component_index(self, s) -> int:
        return self._index.get(as_site(s), 0)

    def component_of(self, s) -> Component:
        return self.components[self.component_index(s)]

    def summary(self) -> str:
        if not self.has_defects:
            return "network connected, no defects"
        n_isl = sum(c.kind is ComponentKind.ISLAND for c in self.defects)
        n_iso = sum(c.kind is ComponentKind.ISOLATED_SITE for c in self.defects)
        return f"{n_isl} island(s), {n_iso} isolated site(s)"

    def to_dict(self) -> dict:
        return {
            "lattice": self.kind.value,
            "box": [list(self.box[0]), list(self.box[1])],
            "components": [
                {"kind": c.kind.value, "sites": sorted([list(s) for s in c.sites])}
                for c in self.defects
            ],
        }


@dataclass(frozen=True)
class Augmentation:
    restored_bonds: tuple[Bond, ...]
    editset: EditSet
    report: DefectReport


class _DSU:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        # keep the smaller root so the infinite part (0) stays representative
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def _box(editset: EditSet):
    sites = editset.sites()
    if not sites:
        return (0, 0), (0, 0)
    ms = [s[0] for s in sites]
    ns = [s[1] for s in sites]
    return (min(ms) - 1, min(ns) - 1), (max(ms) + 1, max(ns) + 1)


def analyze(editset: EditSet) -> DefectReport:
    """Find islands and isolated sites created by the removed bonds.

    Only the bounding box of the edits, grown by one site, is examined.  Every
    site on its outer ring keeps all bonds leading out of the box, so the ring
    is tied to a virtual node standing for the rest of the lattice.
    """
    kind = editset.kind
    lo, hi = _box(editset)
    removed = {e.bond for e in editset if e.removed}
    sites = [Site(m, n) for m in range(lo[0], hi[0] + 1) for n in range(lo[1], hi[1] + 1)]
    index = {s: k + 1 for k, s in enumerate(sites)}
    dsu = _DSU(len(sites) + 1)
    for s in sites:
        if s.m in (lo[0], hi[0]) or s.n in (lo[1], hi[1]):
            dsu.union(0, index[s])
        for dm, dn in kind.offsets:
            t = Site(s.m + dm, s.n + dn)
            if t in index and Bond(kind, s, t) not in removed:
                dsu.union(index[s], index[t])
    groups: dict[int, list[Site]] = {}
    for s in sites:
        groups.setdefault(dsu.find(index[s]), []).append(s)
    infinite = Component(frozenset(groups.pop(dsu.find(0), [])), ComponentKind.INFINITE)
    others = []
    for members in groups.values():
        ck = ComponentKind.ISOLATED_SITE if len(members) == 1 else ComponentKind.ISLAND
        others.append(Component(frozenset(members), ck))
    others.sort(key=lambda c: min(c.sites))
    return DefectReport(kind, [infinite] + others, (lo, hi))


def augment(editset: EditSet, report: DefectReport | None = None, rng: random.Random | None = None) -> Augmentation:
    """Restore a spanning tree of removed bonds joining every defect to the infinite part.

    By default the choice is deterministic: bonds are taken in canonical
    order, first those joining two cut-off components (so a lake of several
    isolated sites is threaded into one chain), then those reaching the
    infinite part.  Passing ``rng`` picks a random spanning tree instead;
    resistances between sites of the infinite part do not depend on it.
    """
    if report is None:
        report = analyze(editset)
    if not report.has_defects:
        return Augmentation((), editset, report)
    inner, outer = [], []
    for e in editset:
        if not e.removed:
            continue
        a = report.component_index(e.bond.start)
        b = report.component_index(e.bond.end)
        if a == b:
            continue
        (outer if 0 in (a, b) else inner).append((e.bond, a, b))
    if rng is None:
        candidates = sorted(inner, key=lambda t: t[0].key) + sorted(outer, key=lambda t: t[0].key)
    else:
        candidates = inner + outer
        rng.shuffle(candidates)
    dsu = _DSU(len(report.components))
    restored = []
    for bond, a, b in candidates:
        if dsu.union(a, b):
            restored.append(bond)
    stranded = [k for k in range(1, len(report.components)) if dsu.find(k) != 0]
    if stranded:
        raise AugmentationImpossible(f"{len(stranded)} component(s) share no removed bond with the rest")
    return Augmentation(tuple(restored), editset.without(restored), report)


def classify_query(report: DefectReport, i, j) -> QueryCase:
    a, b = report.component_index(i), report.component_index(j)
    if a == 0 and b == 0:
        return QueryCase.INFINITE_BOTH
    if a == b:
        return QueryCase.SAME_ISLAND
    return QueryCase.DISCONNECTED
