"""First-order jets (dual numbers) over an exact base field.

A jet a + b*eps with eps^2 = 0 tracks a value and its derivative along
a one-parameter path.  Linear algebra over jets works with the usual
Gaussian elimination as long as pivots are units (value part nonzero);
a vanishing pivot signals a non-generic path and the callers reseed.
"""

from __future__ import annotations

from .errors import NonGeneralConfiguration


class Jet:
    __slots__ = ("a", "b")

    def __init__(self, a, b):
        self.a = a
        self.b = b

    def _co(self, other):
        if isinstance(other, Jet):
            return other
        return Jet(other, other * 0)

    def __add__(self, other):
        o = self._co(other)
        return Jet(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._co(other)
        return Jet(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._co(other)
        return Jet(o.a - self.a, o.b - self.b)

    def __mul__(self, other):
        o = self._co(other)
        return Jet(self.a * o.a, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._co(other)
        if not o.a:
            raise NonGeneralConfiguration("division by a non-unit jet")
        inv = (o.a / o.a) / o.a
        return Jet(self.a * inv, (self.b * o.a - self.a * o.b) * inv * inv)

    def __rtruediv__(self, other):
        return self._co(other) / self

    def __neg__(self):
        return Jet(-self.a, -self.b)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative jet power")
        if e == 0:
            one = None
            # 0-th power only meaningful for nonzero value part
            if not self.a:
                raise NonGeneralConfiguration("jet^0 with nilpotent value")
            one = self.a / self.a
            return Jet(one, one * 0)
        out = self
        for _ in range(e - 1):
            out = out * self
        return out

    def __eq__(self, other):
        o = other if isinstance(other, Jet) else self._co(other)
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def is_unit(self):
        return bool(self.a)

    def __repr__(self):
        return "(%r + %r*eps)" % (self.a, self.b)


class JetRing:
    """Field-descriptor-compatible wrapper for jets over a base field."""

    kind = "jet"

    def __init__(self, base):
        self.base = base

    @property
    def zero(self):
        return Jet(self.base.zero, self.base.zero)

    @property
    def one(self):
        return Jet(self.base.one, self.base.zero)

    def of(self, x):
        if isinstance(x, Jet):
            return x
        return Jet(self.base.of(x), self.base.zero)

    def variable(self, value, slope=None):
        """value + slope*eps (slope defaults to 1)."""
        if slope is None:
            slope = self.base.one
        return Jet(self.base.of(value), self.base.of(slope))

    def contains(self, x) -> bool:
        return isinstance(x, Jet)

    def __repr__(self):
        return "Jet(%r)" % self.base

    def __eq__(self, other):
        return isinstance(other, JetRing) and other.base == self.base

    def __hash__(self):
        return hash(("jet", self.base))
