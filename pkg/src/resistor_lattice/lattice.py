"""Square and triangular lattice geometry.

Sites are integer pairs ``(m, n)`` in the primitive-vector basis.  For the
square lattice the basis is orthonormal; for the triangular lattice the two
primitive vectors enclose 60 degrees, so ``(1, -1)`` is a nearest neighbour
while ``(1, 1)`` is a second neighbour at distance sqrt(3).
"""

from __future__ import annotations

import enum
import math
from typing import NamedTuple

from .errors import NotAdjacent

_SQRT3_2 = math.sqrt(3.0) / 2.0


class LatticeKind(enum.Enum):
    SQUARE = "square"
    TRIANGULAR = "triangular"

    @classmethod
    def parse(cls, name: str | LatticeKind) -> LatticeKind:
        if isinstance(name, LatticeKind):
            return name
        try:
            return cls(name.strip().lower())
        except ValueError:
            raise ValueError(f"unknown lattice kind {name!r}") from None

    @property
    def offsets(self) -> tuple[tuple[int, int], ...]:
        return _OFFSETS[self]

    @property
    def coordination(self) -> int:
        return len(_OFFSETS[self])

    @property
    def nn_resistance(self) -> float:
        """Two-point resistance across a single perfect-lattice bond."""
        return 2.0 / self.coordination


_OFFSETS = {
    LatticeKind.SQUARE: ((1, 0), (-1, 0), (0, 1), (0, -1)),
    LatticeKind.TRIANGULAR: ((1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1)),
}


class Site(NamedTuple):
    m: int
    n: int

    def __add__(self, other):  # type: ignore[override]
        return Site(self.m + other[0], self.n + other[1])

    def __sub__(self, other):
        return Site(self.m - other[0], self.n - other[1])

    def __str__(self):
        return f"({self.m},{self.n})"


def as_site(s) -> Site:
    if isinstance(s, Site):
        return s
    m, n = s
    if int(m) != m or int(n) != n:
        raise ValueError(f"site coordinates must be integers, got {s!r}")
    return Site(int(m), int(n))


def neighbors(kind: LatticeKind, s) -> list[Site]:
    m, n = s
    return [Site(m + dm, n + dn) for dm, dn in kind.offsets]


def is_adjacent(kind: LatticeKind, u, v) -> bool:
    return (v[0] - u[0], v[1] - u[1]) in kind.offsets


def embed(kind: LatticeKind, s) -> tuple[float, float]:
    m, n = s
    if kind is LatticeKind.SQUARE:
        return float(m), float(n)
    return m + 0.5 * n, n * _SQRT3_2


def site_order_key(kind: LatticeKind, s) -> tuple[int, int]:
    """Integer key that sorts sites lexicographically by embedded (x, y)."""
    m, n = s
    if kind is LatticeKind.SQUARE:
        return m, n
    return 2 * m + n, n


def hex_distance(m: int, n: int) -> int:
    """Graph distance from the origin on the triangular lattice."""
    if (m >= 0) == (n >= 0):
        return abs(m + n)
    return max(abs(m), abs(n))


def lattice_distance(kind: LatticeKind, u, v) -> int:
    dm, dn = v[0] - u[0], v[1] - u[1]
    if kind is LatticeKind.SQUARE:
        return abs(dm) + abs(dn)
    return hex_distance(dm, dn)


class Bond:
    """A directed nearest-neighbour bond ``start -> end``.

    Equality and hashing are undirected, so ``Bond(u, v) == Bond(v, u)``.
    The stored orientation fixes the sign of the bond vector
    ``|end> - |start>``.
    """

    __slots__ = ("kind", "start", "end", "beta")

    def __init__(self, kind: LatticeKind, start, end, beta: float = 1.0):
        start, end = as_site(start), as_site(end)
        if not is_adjacent(kind, start, end):
            raise NotAdjacent(f"{start} and {end} are not nearest neighbours on the {kind.value} lattice")
        self.kind = kind
        self.start = start
        self.end = end
        self.beta = float(beta)

    @property
    def key(self) -> tuple[tuple[int, int], tuple[int, int]]:
        """Canonical undirected identity, usable as a total order."""
        a = site_order_key(self.kind, self.start)
        b = site_order_key(self.kind, self.end)
        return (a, b) if a <= b else (b, a)

    @property
    def is_canonical(self) -> bool:
        return site_order_key(self.kind, self.start) <= site_order_key(self.kind, self.end)

    def reversed(self) -> Bond:
        return Bond(self.kind, self.end, self.start, self.beta)

    def canonical(self) -> Bond:
        return self if self.is_canonical else self.reversed()

    def endpoints(self) -> tuple[Site, Site]:
        return self.start, self.end

    def __eq__(self, other):
        if not isinstance(other, Bond):
            return NotImplemented
        return self.kind is other.kind and self.key == other.key

    def __hash__(self):
        return hash((self.kind, self.key))

    def __lt__(self, other):
        return self.key < other.key

    def __repr__(self):
        return f"Bond({self.start}->{self.end})"


def canonical_bond(kind: LatticeKind, u, v) -> Bond:
    """Undirected representative of the bond between ``u`` and ``v``."""
    return Bond(kind, u, v).canonical()


def bonds_in_box(kind: LatticeKind, lo, hi) -> list[Bond]:
    """All canonical bonds with both endpoints in the box ``lo <= site <= hi``."""
    out = []
    for m in range(lo[0], hi[0] + 1):
        for n in range(lo[1], hi[1] + 1):
            for dm, dn in kind.offsets:
                t = (m + dm, n + dn)
                if lo[0] <= t[0] <= hi[0] and lo[1] <= t[1] <= hi[1]:
                    b = Bond(kind, (m, n), t)
                    if b.is_canonical:
                        out.append(b)
    return out
