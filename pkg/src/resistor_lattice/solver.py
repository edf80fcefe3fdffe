"""Resistance queries on an edited infinite lattice, routed by connectivity."""

from __future__ import annotations

import math
import threading

from .finite import FiniteNetwork
from .lattice import Bond, LatticeKind, as_site
from .perfect import ResistanceProvider
from .topology import ComponentKind, QueryCase, analyze, augment, classify_query
from .woodbury import EditSet, build_factorization

_providers: dict[LatticeKind, ResistanceProvider] = {}
_providers_lock = threading.Lock()


def get_provider(kind: LatticeKind | str) -> ResistanceProvider:
    """Shared provider per lattice kind, so the exact table is built once."""
    kind = LatticeKind.parse(kind)
    with _providers_lock:
        if kind not in _providers:
            _providers[kind] = ResistanceProvider(kind)
        return _providers[kind]


class PerturbedLattice:
    """Infinite lattice with a finite set of bonds removed or replaced.

    Queries between sites of the infinite part go through the Woodbury
    factorization, after restoring bridges and dangling bonds if the edits
    cut pieces off.  A pair inside one island is solved as a finite network
    and any other pair is an open circuit.
    """

    def __init__(self, editset: EditSet, provider: ResistanceProvider | None = None, auto_augment: bool = True):
        self.editset = editset
        self.kind = editset.kind
        self.provider = provider or get_provider(self.kind)
        self.report = analyze(editset)
        self.augmentation = None
        work = editset
        if self.report.has_defects and auto_augment:
            self.augmentation = augment(editset, self.report)
            work = self.augmentation.editset
        # without augmentation a defect makes this raise SingularB
        self.factorization = build_factorization(self.provider, work)
        self._islands: dict[int, FiniteNetwork] = {}

    @property
    def restored_bonds(self) -> tuple[Bond, ...]:
        return self.augmentation.restored_bonds if self.augmentation else ()

    @property
    def working_editset(self) -> EditSet:
        return self.factorization.editset

    def classify(self, i, j) -> QueryCase:
        return classify_query(self.report, as_site(i), as_site(j))

    def island_network(self, index: int) -> FiniteNetwork:
        if index not in self._islands:
            comp = self.report.components[index]
            cond = self.editset.conductance_map()
            edges = []
            for s in comp.sites:
                for dm, dn in self.kind.offsets[::2]:
                    t = (s[0] + dm, s[1] + dn)
                    if t in comp.sites:
                        edges.append((s, t, cond.get(Bond(self.kind, s, t), 1.0)))
            self._islands[index] = FiniteNetwork(sorted(comp.sites), edges)
        return self._islands[index]

    def resistance(self, i, j) -> float:
        i, j = as_site(i), as_site(j)
        if i == j:
            return 0.0
        case = self.classify(i, j)
        if case is QueryCase.INFINITE_BOTH:
            return self.factorization.perturbed_resistance(i, j)
        if case is QueryCase.DISCONNECTED:
            return math.inf
        idx = self.report.component_index(i)
        if self.report.components[idx].kind is ComponentKind.ISOLATED_SITE:
            return 0.0
        return self.island_network(idx).resistance(i, j)

    def perfect_resistance(self, i, j) -> float:
        return self.provider.r0_float(as_site(i), as_site(j))

    def green(self, i, j) -> float:
        return self.factorization.perturbed_green_element(i, j)
