"""Finite resistor networks through the modified Laplacian ``L + f f^T``.

``L`` has the all-ones vector ``f`` in its kernel.  Adding ``f f^T`` moves
that eigenvalue from 0 to M without touching the rest of the spectrum, so
``G = -(L + f f^T)^-1`` exists for a connected network and yields
two-point resistances in the gauge where the mean potential is zero.
"""

from __future__ import annotations

from typing import Hashable, Iterable, Sequence

import numpy as np
import scipy.linalg
from scipy import sparse
from scipy.sparse import csgraph
from scipy.sparse.linalg import splu

from .errors import DisconnectedNetwork, WindowTooSmall
from .lattice import Bond, LatticeKind, Site, hex_distance
from .woodbury import EditSet

# above this many nodes the dense M x M Green matrix is not formed
DENSE_LIMIT = 3000


class FiniteNetwork:
    """Nodes with labels and symmetric conductances ``c_ij >= 0``."""

    def __init__(self, nodes: Sequence[Hashable], edges: Iterable[tuple[Hashable, Hashable, float]]):
        self.nodes = list(nodes)
        self.index = {v: k for k, v in enumerate(self.nodes)}
        if len(self.index) != len(self.nodes):
            raise ValueError("duplicate node labels")
        rows, cols, vals = [], [], []
        for u, v, c in edges:
            if c < 0:
                raise ValueError(f"negative conductance on ({u}, {v})")
            if c == 0:
                continue
            a, b = self.index[u], self.index[v]
            if a == b:
                continue
            rows += [a, b]
            cols += [b, a]
            vals += [c, c]
        M = len(self.nodes)
        C = sparse.coo_matrix((vals, (rows, cols)), shape=(M, M)).tocsr()
        C.sum_duplicates()
        self.conductance = C
        degree = np.asarray(C.sum(axis=1)).ravel()
        self.laplacian = (C - sparse.diags(degree)).tocsc()
        self._green = None
        self._lu = None

    @property
    def size(self) -> int:
        return len(self.nodes)

    def components(self) -> list[list]:
        n, labels = csgraph.connected_components(self.conductance, directed=False)
        groups = [[] for _ in range(n)]
        for k, lab in enumerate(labels):
            groups[lab].append(self.nodes[k])
        return sorted(groups, key=len, reverse=True)

    def is_connected(self) -> bool:
        return self.size > 0 and csgraph.connected_components(self.conductance, directed=False)[0] == 1

    def check_connected(self) -> None:
        if not self.is_connected():
            raise DisconnectedNetwork(self.components())

    def subnetwork(self, nodes: Iterable[Hashable]) -> FiniteNetwork:
        keep = list(nodes)
        idx = [self.index[v] for v in keep]
        sub = self.conductance[idx][:, idx].tocoo()
        edges = [(keep[a], keep[b], c) for a, b, c in zip(sub.row, sub.col, sub.data) if a < b]
        return FiniteNetwork(keep, edges)

    def component_of(self, node) -> FiniteNetwork:
        n, labels = csgraph.connected_components(self.conductance, directed=False)
        lab = labels[self.index[node]]
        return self.subnetwork([v for k, v in enumerate(self.nodes) if labels[k] == lab])

    def modified_laplacian(self) -> np.ndarray:
        """Dense ``L + f f^T``."""
        return self.laplacian.toarray() + 1.0

    def green(self) -> np.ndarray:
        if self._green is None:
            self.check_connected()
            if self.size > DENSE_LIMIT:
                raise MemoryError(f"dense Green matrix of a {self.size}-node network not formed")
            Lp = self.modified_laplacian()
            self._green = -scipy.linalg.solve(Lp, np.eye(self.size), assume_a="sym")
        return self._green

    def _grounded_lu(self):
        # last node grounded; the reduced Laplacian -L is positive definite
        if self._lu is None:
            self.check_connected()
            A = -self.laplacian[:-1, :-1]
            self._lu = splu(A.tocsc())
        return self._lu

    def resistance(self, u, v) -> float:
        a, b = self.index[u], self.index[v]
        if a == b:
            return 0.0
        if self.size <= DENSE_LIMIT:
            G = self.green()
            return float(G[a, a] + G[b, b] - 2.0 * G[a, b])
        rhs = np.zeros(self.size - 1)
        last = self.size - 1
        if a != last:
            rhs[a] += 1.0
        if b != last:
            rhs[b] -= 1.0
        x = self._grounded_lu().solve(rhs)
        va = x[a] if a != last else 0.0
        vb = x[b] if b != last else 0.0
        return float(va - vb)

    def potentials(self, currents: np.ndarray) -> np.ndarray:
        """Node potentials for injected currents, zero-mean gauge."""
        currents = np.asarray(currents, dtype=float)
        if self.size <= DENSE_LIMIT:
            return self.green() @ currents
        x = np.append(self._grounded_lu().solve(currents[:-1]), 0.0)
        return x - x.mean()


def finite_green(net: FiniteNetwork) -> np.ndarray:
    return net.green()


def finite_resistance(net: FiniteNetwork, i, j) -> float:
    return net.resistance(i, j)


def window_sites(kind: LatticeKind, half_width: int, center=(0, 0)) -> list[Site]:
    """Sites of the truncation window: a square for the square lattice, a hexagon for the triangular one."""
    cm, cn = center
    h = half_width
    out = []
    for dm in range(-h, h + 1):
        for dn in range(-h, h + 1):
            if kind is LatticeKind.TRIANGULAR and hex_distance(dm, dn) > h:
                continue
            out.append(Site(cm + dm, cn + dn))
    return out


def truncate_lattice(kind: LatticeKind | str, editset: EditSet, half_width: int, center=(0, 0)) -> FiniteNetwork:
    """Finite free-boundary piece of the edited lattice around ``center``."""
    kind = LatticeKind.parse(kind)
    sites = window_sites(kind, half_width, center)
    inside = set(sites)
    spill = [s for s in editset.sites() if s not in inside]
    if spill:
        raise WindowTooSmall(f"edit endpoints outside the window: {sorted(spill)[:5]}")
    cond = editset.conductance_map()
    edges = []
    for s in sites:
        # offsets come in +/- pairs; every other one visits each bond once
        for dm, dn in kind.offsets[::2]:
            t = Site(s.m + dm, s.n + dn)
            if t in inside:
                edges.append((s, t, cond.get(Bond(kind, s, t), 1.0)))
    return FiniteNetwork(sites, edges)
