"""Exact values of the form ``p + q/pi + s*sqrt(3)/pi`` with rational p, q, s."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

_ZERO = Fraction(0)


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class ExactResistance:
    """Element of the ring Q + Q/pi + Q*sqrt(3)/pi, in units of R."""

    p: Fraction = _ZERO
    q: Fraction = _ZERO
    s: Fraction = _ZERO

    def __post_init__(self):
        object.__setattr__(self, "p", _frac(self.p))
        object.__setattr__(self, "q", _frac(self.q))
        object.__setattr__(self, "s", _frac(self.s))

    def __add__(self, other):
        if not isinstance(other, ExactResistance):
            other = ExactResistance(_frac(other))
        return ExactResistance(self.p + other.p, self.q + other.q, self.s + other.s)

    __radd__ = __add__

    def __neg__(self):
        return ExactResistance(-self.p, -self.q, -self.s)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, k):
        if isinstance(k, ExactResistance):
            return NotImplemented
        k = _frac(k)
        return ExactResistance(self.p * k, self.q * k, self.s * k)

    __rmul__ = __mul__

    def __truediv__(self, k):
        return self * (1 / _frac(k))

    def __bool__(self):
        return bool(self.p or self.q or self.s)

    def _digits(self) -> int:
        big = max(abs(x.numerator) + x.denominator for x in (self.p, self.q, self.s))
        return len(str(big))

    def to_mpf(self, dps: int = 30):
        """Value as an mpmath float carrying ``dps`` correct digits."""
        # cancellation between p and q/pi can eat as many digits as the
        # coefficients carry, so work with that many extra
        with mpmath.workdps(dps + self._digits() + 10):
            v = mpmath.mpf(self.p.numerator) / self.p.denominator
            if self.q:
                v += mpmath.mpf(self.q.numerator) / self.q.denominator / mpmath.pi
            if self.s:
                v += mpmath.mpf(self.s.numerator) / self.s.denominator * mpmath.sqrt(3) / mpmath.pi
        return +v

    def __float__(self):
        return float(self.to_mpf(20))

    def __str__(self):
        parts = []
        if self.p:
            parts.append(str(self.p))
        if self.q:
            parts.append(f"{self.q}/pi")
        if self.s:
            parts.append(f"{self.s}*sqrt(3)/pi")
        return " + ".join(parts) if parts else "0"
