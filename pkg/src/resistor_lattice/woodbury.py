"""Low-rank update of the perfect-lattice Green operator.

Removing or replacing N bonds adds ``sum_p |b_p> g_p <b_p|`` to the
Laplacian.  The perturbed Green operator then follows from the perfect one
through a single N x N matrix

    B = C^-1 - <alpha|G0|alpha>,   C = diag(g_1, ..., g_N),

and every element <i|G0|b_p> is a combination of perfect-lattice
resistances.  The infinite-lattice Green function is gauge-fixed by
G0(i, i) = 0, so that <i|G0|j> = -R0(i, j) / 2 (units of 1/R).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy.linalg import lapack

from .errors import InvalidEdit, SingularB
from .lattice import Bond, LatticeKind, as_site
from .perfect import ResistanceProvider

RCOND_THRESHOLD = 1e-10


@dataclass(frozen=True)
class BondEdit:
    """Change of one bond's conductance from 1 to ``beta_new`` (0 removes it)."""

    bond: Bond
    beta_new: float = 0.0

    def __post_init__(self):
        if self.beta_new < 0:
            raise InvalidEdit(f"negative conductance {self.beta_new} on {self.bond}")
        if self.beta_new == 1.0:
            raise InvalidEdit(f"edit on {self.bond} leaves the bond unchanged")

    @property
    def g(self) -> float:
        return 1.0 - self.beta_new

    @property
    def removed(self) -> bool:
        return self.beta_new == 0.0

    def flipped(self) -> BondEdit:
        return BondEdit(self.bond.reversed(), self.beta_new)


class EditSet:
    """An ordered, duplicate-free list of bond edits on one lattice kind."""

    def __init__(self, kind: LatticeKind | str, edits: Iterable[BondEdit] = ()):
        self.kind = LatticeKind.parse(kind)
        self.edits: tuple[BondEdit, ...] = tuple(edits)
        seen = set()
        for e in self.edits:
            if e.bond.kind is not self.kind:
                raise InvalidEdit(f"{e.bond} is not a {self.kind.value} bond")
            if e.bond in seen:
                raise InvalidEdit(f"duplicate edit of bond {e.bond}")
            seen.add(e.bond)

    @classmethod
    def removal(cls, kind, pairs: Iterable[Sequence]) -> EditSet:
        """Edit set removing the bonds given as ``(start, end)`` pairs."""
        kind = LatticeKind.parse(kind)
        return cls(kind, [BondEdit(Bond(kind, u, v), 0.0) for u, v in pairs])

    def __len__(self):
        return len(self.edits)

    def __iter__(self):
        return iter(self.edits)

    def __eq__(self, other):
        if not isinstance(other, EditSet):
            return NotImplemented
        key = lambda es: sorted((e.bond.key, e.beta_new) for e in es.edits)  # noqa: E731
        return self.kind is other.kind and key(self) == key(other)

    def __repr__(self):
        return f"EditSet({self.kind.value}, N={len(self.edits)})"

    @property
    def bonds(self) -> list[Bond]:
        return [e.bond for e in self.edits]

    def sites(self) -> set:
        out = set()
        for e in self.edits:
            out.update(e.bond.endpoints())
        return out

    def conductance(self, bond: Bond) -> float:
        """Conductance of ``bond`` in the edited lattice (1 if untouched)."""
        for e in self.edits:
            if e.bond == bond:
                return e.beta_new
        return 1.0

    def conductance_map(self) -> dict[Bond, float]:
        return {e.bond: e.beta_new for e in self.edits}

    def without(self, bonds: Iterable[Bond]) -> EditSet:
        drop = set(bonds)
        return EditSet(self.kind, [e for e in self.edits if e.bond not in drop])

    def __add__(self, other: EditSet) -> EditSet:
        return EditSet(self.kind, self.edits + tuple(other.edits))


def bond_green_element(provider: ResistanceProvider, bp: Bond, bq: Bond) -> float:
    """<b_p|G0|b_q> from perfect-lattice resistances (units of 1/R)."""
    r = provider.r0_float
    return 0.5 * (-r(bp.end, bq.end) + r(bp.start, bq.end) + r(bp.end, bq.start) - r(bp.start, bq.start))


def site_bond_green(provider: ResistanceProvider, i, bp: Bond) -> float:
    """<i|G0|b_p>; equal to <b_p|G0|i> since G0 is symmetric."""
    r = provider.r0_float
    return 0.5 * (-r(i, bp.end) + r(i, bp.start))


def bond_green_matrix(provider: ResistanceProvider, bonds: Sequence[Bond]) -> np.ndarray:
    n = len(bonds)
    gram = np.empty((n, n))
    for p in range(n):
        for q in range(p, n):
            gram[p, q] = gram[q, p] = bond_green_element(provider, bonds[p], bonds[q])
    return gram


class WoodburyFactorization:
    """Solved perturbation, ready for O(N^2) queries.

    Build with :func:`build_factorization`.  The object is read-only after
    construction.
    """

    def __init__(self, provider, editset, gram, B, ldu, ipiv, rcond):
        self.provider = provider
        self.editset = editset
        self.gram = gram
        self.B = B
        self._ldu = ldu
        self._ipiv = ipiv
        self.condition_estimate = rcond
        self._starts = [e.bond.start for e in editset]
        self._ends = [e.bond.end for e in editset]

    @property
    def size(self) -> int:
        return len(self.editset)

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        """Return B^-1 rhs for a vector or a matrix of column vectors."""
        rhs = np.asarray(rhs, dtype=float)
        if self.size == 0:
            return rhs.copy()
        x, info = lapack.dsytrs(self._ldu, self._ipiv, rhs, lower=1)
        if info != 0:
            raise RuntimeError(f"dsytrs failed with info={info}")
        return x

    @property
    def B_inverse(self) -> np.ndarray:
        return self.solve(np.eye(self.size))

    def u_vector(self, i) -> np.ndarray:
        """U^(i) = <i|G0|alpha>; its transpose is V^(i)."""
        r = self.provider.r0_float
        return np.array([0.5 * (r(i, s) - r(i, e)) for s, e in zip(self._starts, self._ends)])

    def u_matrix(self, sites: Sequence) -> np.ndarray:
        return np.array([self.u_vector(s) for s in sites]).reshape(len(sites), self.size)

    def perturbed_resistance(self, i, j) -> float:
        i, j = as_site(i), as_site(j)
        if i == j:
            return 0.0
        r0 = self.provider.r0_float(i, j)
        if self.size == 0:
            return r0
        d = self.u_vector(i) - self.u_vector(j)
        return float(r0 + d @ self.solve(d))

    def perturbed_green_element(self, i, j) -> float:
        i, j = as_site(i), as_site(j)
        g0 = -0.5 * self.provider.r0_float(i, j)
        if self.size == 0:
            return g0
        return float(g0 + self.u_vector(i) @ self.solve(self.u_vector(j)))

    def resistances_from(self, base, sites: Sequence) -> np.ndarray:
        """R(base, x) for every x in ``sites`` (vectorised)."""
        base = as_site(base)
        r0 = np.array([self.provider.r0_float(base, x) for x in sites])
        if self.size == 0:
            return r0
        D = self.u_matrix(sites) - self.u_vector(base)
        W = self.solve(D.T)
        return r0 + np.einsum("sp,ps->s", D, W)


def _factor(B: np.ndarray):
    ldu, ipiv, info = lapack.dsytrf(B, lower=1)
    if info < 0:
        raise RuntimeError(f"dsytrf failed with info={info}")
    if info > 0:
        return ldu, ipiv, 0.0
    anorm = np.abs(B).sum(axis=0).max()
    rcond, info = lapack.dsycon(ldu, ipiv, anorm, lower=1)
    return ldu, ipiv, float(rcond)


def build_factorization(provider: ResistanceProvider, editset: EditSet) -> WoodburyFactorization:
    """Assemble and factor B for ``editset``.

    Raises :class:`SingularB` with a defect report when the edits disconnect
    part of the lattice.
    """
    if provider.kind is not editset.kind:
        raise ValueError("provider and edit set are on different lattices")
    bonds = editset.bonds
    gram = bond_green_matrix(provider, bonds)
    B = np.diag([1.0 / e.g for e in editset]) - gram
    if len(bonds) == 0:
        return WoodburyFactorization(provider, editset, gram, B, None, None, 1.0)
    ldu, ipiv, rcond = _factor(B)
    if rcond < RCOND_THRESHOLD:
        from .topology import analyze

        raise SingularB(rcond, analyze(editset))
    return WoodburyFactorization(provider, editset, gram, B, ldu, ipiv, rcond)
