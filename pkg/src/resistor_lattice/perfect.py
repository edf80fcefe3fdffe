"""Two-point resistance of the perfect infinite square and triangular lattices.

Exact values live in the ring ``p + q/pi + s*sqrt(3)/pi``.  Both providers
propagate exact seeds outward with the discrete harmonicity of R0 away from
the origin (every site value is the mean of its neighbours), in exact
rational arithmetic; in floating point this recurrence loses roughly one
digit per step.

* square: seeds are the diagonal, R0(n, n) = (2/pi) * sum_{k<=n} 1/(2k-1).
* triangular: seeds are the values along a primitive axis, obtained from the
  one-dimensional reduction of the lattice integral,
  R0(n, 0) = (1/pi) * int_{-pi/2}^{-pi/6} P_n(3 + 4 sin t) dt with
  P_n(c) = (1 - T_n(c)) / (1 - c).
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction

import numpy as np
from scipy import integrate

from .errors import ConvergenceFailure, DomainError
from .exact import ExactResistance
from .lattice import LatticeKind

EULER_GAMMA = float(np.euler_gamma)

_ZERO = ExactResistance()


def reduce_square(m: int, n: int) -> tuple[int, int]:
    a, b = abs(m), abs(n)
    return (a, b) if a >= b else (b, a)


def reduce_triangular(m: int, n: int) -> tuple[int, int]:
    """Map a displacement to its representative ``(a, b)``, ``a >= b >= 0``.

    Uses the 12-element point group of the 60-degree basis: same-sign
    components fold by absolute value, opposite-sign ones by reflecting
    across the nearer primitive axis.
    """
    a, b = abs(m), abs(n)
    if (m >= 0) != (n >= 0) and m != 0 and n != 0:
        a, b = (a - b, b) if a >= b else (a, b - a)
    return (a, b) if a >= b else (b, a)


def square_diagonal(n: int) -> ExactResistance:
    """Exact R0(n, n) on the square lattice."""
    if n < 0:
        raise DomainError("diagonal index must be non-negative")
    total = sum((Fraction(1, 2 * k - 1) for k in range(1, n + 1)), Fraction(0))
    return ExactResistance(q=2 * total)


def _chebyshev_t(n: int) -> list[int]:
    """Integer coefficients (lowest degree first) of T_n."""
    t0, t1 = [1], [0, 1]
    if n == 0:
        return t0
    for _ in range(n - 1):
        nxt = [0] + [2 * c for c in t1]
        for i, c in enumerate(t0):
            nxt[i] -= c
        t0, t1 = t1, nxt
    return t1


def _sin_power_integrals(kmax: int) -> list[tuple[Fraction, Fraction]]:
    """int_{-pi/2}^{-pi/6} sin^k t dt = a_k*pi + b_k*sqrt(3) for k <= kmax."""
    out = [(Fraction(1, 3), Fraction(0)), (Fraction(0), Fraction(-1, 2))]
    for k in range(2, kmax + 1):
        # -sin^{k-1} cos / k evaluated at -pi/6 (cos = sqrt3/2, sin = -1/2); zero at -pi/2
        boundary = -Fraction(-1, 2) ** (k - 1) / (2 * k)
        a, b = out[k - 2]
        r = Fraction(k - 1, k)
        out.append((r * a, r * b + boundary))
    return out[: kmax + 1]


def triangular_axis(n: int) -> ExactResistance:
    """Exact R0(n, 0) on the triangular lattice."""
    n = abs(n)
    if n == 0:
        return _ZERO
    # P_n(c) = (1 - T_n(c)) / (1 - c), by synthetic division
    num = [-c for c in _chebyshev_t(n)]
    num[0] += 1
    # dividing by (1 - c) == -(c - 1): divide by (c - 1) then negate
    quot = [0] * (len(num) - 1)
    carry = 0
    for i in range(len(num) - 1, 0, -1):
        carry = num[i] + carry
        quot[i - 1] = carry
    assert num[0] + carry == 0
    poly_c = [-c for c in quot]
    # substitute c = 3 + 4 s
    deg = len(poly_c) - 1
    poly_s = [0] * (deg + 1)
    for j, cj in enumerate(poly_c):
        if not cj:
            continue
        for k in range(j + 1):
            poly_s[k] += cj * math.comb(j, k) * 3 ** (j - k) * 4**k
    ints = _sin_power_integrals(deg)
    p = sum((c * ints[k][0] for k, c in enumerate(poly_s)), Fraction(0))
    s = sum((c * ints[k][1] for k, c in enumerate(poly_s)), Fraction(0))
    return ExactResistance(p=p, s=s)


class ResistanceProvider:
    """Exact and float perfect-lattice resistance R0 with an unbounded cache.

    The table is grown under a lock and published by swapping dictionaries,
    so concurrent readers never see a half-built entry.
    """

    def __init__(self, kind: LatticeKind | str):
        self.kind = LatticeKind.parse(kind)
        self._reduce = reduce_square if self.kind is LatticeKind.SQUARE else reduce_triangular
        self._exact: dict[tuple[int, int], ExactResistance] = {(0, 0): _ZERO}
        self._float: dict[tuple[int, int], float] = {(0, 0): 0.0}
        self._size = 0
        self._lock = threading.Lock()

    def __repr__(self):
        return f"ResistanceProvider({self.kind.value}, size={self._size})"

    def reduce(self, m: int, n: int) -> tuple[int, int]:
        return self._reduce(m, n)

    def ensure(self, size: int) -> None:
        """Pre-warm the table for all displacements with components up to ``size``."""
        if size <= self._size:
            return
        with self._lock:
            if size <= self._size:
                return
            target = max(size, 2 * self._size, 8)
            if self.kind is LatticeKind.SQUARE:
                table = _build_square(target)
            else:
                table = _build_triangular(target)
            self._exact = table
            self._size = target

    def exact(self, m: int, n: int) -> ExactResistance:
        key = self._reduce(m, n)
        if key[0] > self._size:
            self.ensure(key[0])
        return self._exact[key]

    def __call__(self, m: int, n: int) -> float:
        key = self._reduce(m, n)
        v = self._float.get(key)
        if v is None:
            v = float(self.exact(*key))
            self._float[key] = v
        return v

    def r0(self, i, j) -> ExactResistance:
        return self.exact(j[0] - i[0], j[1] - i[1])

    def r0_float(self, i, j) -> float:
        return self(j[0] - i[0], j[1] - i[1])

    def table(self, max_index: int) -> dict[tuple[int, int], ExactResistance]:
        """All values R0(m, n) with ``0 <= m, n <= max_index``."""
        self.ensure(max_index)
        return {(m, n): self.exact(m, n) for m in range(max_index + 1) for n in range(max_index + 1)}


def _build_square(size: int) -> dict[tuple[int, int], ExactResistance]:
    R: dict[tuple[int, int], ExactResistance] = {}

    def get(m, n):
        return R[reduce_square(m, n)]

    for n in range(size + 1):
        R[(n, n)] = square_diagonal(n)
    if size >= 1:
        R[(1, 0)] = ExactResistance(p=Fraction(1, 2))
    # first off-diagonal: harmonicity at (n, n) plus mirror symmetry
    for n in range(1, size):
        R[(n + 1, n)] = 2 * get(n, n) - get(n, n - 1)
    for k in range(2, size + 1):
        for n in range(0, size - k + 1):
            m = n + k - 1
            R[(n + k, n)] = 4 * get(m, n) - get(m - 1, n) - get(m, n + 1) - get(m, n - 1)
    return R


def _build_triangular(size: int) -> dict[tuple[int, int], ExactResistance]:
    R: dict[tuple[int, int], ExactResistance] = {(0, 0): _ZERO}
    offsets = LatticeKind.TRIANGULAR.offsets
    for d in range(0, 2 * size):
        # fill layer d + 1 (hex distance) from layers d and d - 1
        R[(d + 1, 0)] = triangular_axis(d + 1)
        if d == 0:
            continue
        for m in range(d + 1):
            site = (m, d - m)
            known = ExactResistance()
            unknown_key, unknown_count = None, 0
            for dm, dn in offsets:
                key = reduce_triangular(site[0] + dm, site[1] + dn)
                if key in R:
                    known = known + R[key]
                else:
                    if unknown_key is not None and key != unknown_key:
                        raise AssertionError("recurrence ordering broken")
                    unknown_key = key
                    unknown_count += 1
            if unknown_key is None:
                continue
            R[unknown_key] = (6 * R[reduce_triangular(*site)] - known) / unknown_count
    return {k: v for k, v in R.items() if k[0] <= size}


def asymptotic_r0(m: int, n: int) -> float:
    """Large-distance approximation of the square-lattice R0(m, n)."""
    if m == 0 and n == 0:
        raise DomainError("asymptotic form is undefined at the origin")
    return (math.log(math.hypot(m, n)) + EULER_GAMMA + math.log(8.0) / 2.0) / math.pi


def _square_integrand(k, m, n):
    c = math.cos(k)
    a = 2.0 - c
    root = math.sqrt(max(a * a - 1.0, 0.0))
    if root == 0.0:
        return float(abs(n))
    t = 1.0 / (a + root)
    return (1.0 - math.cos(m * k) * t ** abs(n)) / root


def _triangular_integrand(k, m, n):
    c = math.cos(k)
    a = 3.0 - c
    b = 2.0 * math.cos(0.5 * k)
    root = math.sqrt(max((1.0 - c) * (7.0 - c), 0.0))
    if root == 0.0:
        return abs(n) / 2.0
    t = b / (a + root)
    return (1.0 - math.cos((m + 0.5 * n) * k) * t ** abs(n)) / root


def quadrature_oracle(kind: LatticeKind | str, m: int, n: int, tol: float = 1e-10, limit: int = 2000) -> float:
    """R0(m, n) by numerical Brillouin-zone integration.

    The integral over the second wave-vector component is done in closed
    form (a geometric series in ``t``), the remaining one adaptively.  Used
    only as an independent check of the exact providers.
    """
    kind = LatticeKind.parse(kind)
    if tol <= 0:
        raise DomainError("tol must be positive")
    if m == 0 and n == 0:
        return 0.0
    f = _square_integrand if kind is LatticeKind.SQUARE else _triangular_integrand
    # the integrand is even in k for both lattices
    val, err = integrate.quad(f, 0.0, math.pi, args=(m, n), epsabs=tol / 10, epsrel=0.0, limit=limit)
    if err > tol:
        raise ConvergenceFailure(f"quadrature error {err:.2e} exceeds tol {tol:.2e}")
    return val / math.pi
