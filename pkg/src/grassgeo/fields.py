"""Exact scalars: arbitrary-precision rationals and prime fields.

Two coefficient fields are supported, Q (via fractions.Fraction) and
F_p for a prime p (default 32003).  Field descriptors (`QQ`, `GF(p)`)
carry the construction/coercion protocol used by matrices and
polynomial rings; the elements themselves are plain Fractions or `Fp`
instances with overloaded operators.  Arithmetic never mixes fields:
Fp operations insist on a common modulus and refuse Fractions.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .errors import FieldMismatch


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Fp:
    """An element of F_p; immutable, operator-overloaded."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise FieldMismatch("mixed moduli %d and %d" % (self.p, other.p))
            return other.v
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            raise FieldMismatch("cannot mix F_%d with rationals" % self.p)
        return NotImplemented

    def __add__(self, other):
        w = self._coerce(other)
        if w is NotImplemented:
            return NotImplemented
        return Fp(self.v + w, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        w = self._coerce(other)
        if w is NotImplemented:
            return NotImplemented
        return Fp(self.v - w, self.p)

    def __rsub__(self, other):
        w = self._coerce(other)
        if w is NotImplemented:
            return NotImplemented
        return Fp(w - self.v, self.p)

    def __mul__(self, other):
        w = self._coerce(other)
        if w is NotImplemented:
            return NotImplemented
        return Fp(self.v * w, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        w = self._coerce(other)
        if w is NotImplemented:
            return NotImplemented
        if w % self.p == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return Fp(self.v * pow(w, -1, self.p), self.p)

    def __rtruediv__(self, other):
        w = self._coerce(other)
        if w is NotImplemented:
            return NotImplemented
        if self.v == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return Fp(w * pow(self.v, -1, self.p), self.p)

    def __neg__(self):
        return Fp(-self.v, self.p)

    def __pow__(self, e: int):
        return Fp(pow(self.v, e, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return "%d" % self.v

    def sqrt(self):
        """A square root in F_p, or None if not a QR (p odd)."""
        if self.v == 0:
            return Fp(0, self.p)
        if pow(self.v, (self.p - 1) // 2, self.p) != 1:
            return None
        if self.p % 4 == 3:
            r = pow(self.v, (self.p + 1) // 4, self.p)
            return Fp(r, self.p)
        # Tonelli-Shanks for p = 1 mod 4
        q, s = self.p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while pow(z, (self.p - 1) // 2, self.p) != self.p - 1:
            z += 1
        m, c, t, r = s, pow(z, q, self.p), pow(self.v, q, self.p), pow(self.v, (q + 1) // 2, self.p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % self.p
                i += 1
            b = pow(c, 1 << (m - i - 1), self.p)
            m, c = i, b * b % self.p
            t, r = t * c % self.p, r * b % self.p
        return Fp(r, self.p)


class RationalField:
    """Descriptor for Q."""

    kind = "q"
    p = None

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def of(self, x):
        """Coerce an int/Fraction/Fp-free value into the field."""
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, Fp):
            raise FieldMismatch("cannot coerce F_%d element into Q" % x.p)
        raise FieldMismatch("cannot coerce %r into Q" % (x,))

    def contains(self, x) -> bool:
        return isinstance(x, (Fraction, int))

    def random(self, rng, height=20):
        """Small-height rational, deterministic in rng."""
        num = rng.randrange(-height, height + 1)
        den = rng.randrange(1, height + 1)
        return Fraction(num, den)

    def random_nonzero(self, rng, height=20):
        while True:
            x = self.random(rng, height)
            if x:
                return x

    def sqrt(self, x):
        """Exact square root of a nonnegative rational, or None."""
        if x < 0:
            return None
        from math import isqrt

        rn, rd = isqrt(x.numerator), isqrt(x.denominator)
        if rn * rn == x.numerator and rd * rd == x.denominator:
            return Fraction(rn, rd)
        return None

    def format(self, x) -> str:
        return "%d/%d" % (x.numerator, x.denominator) if x.denominator != 1 else "%d" % x.numerator

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


class PrimeField:
    """Descriptor for F_p, p prime."""

    kind = "fp"

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError("%d is not prime" % p)
        self.p = p

    @property
    def zero(self):
        return Fp(0, self.p)

    @property
    def one(self):
        return Fp(1, self.p)

    def of(self, x):
        if isinstance(x, Fp):
            if x.p != self.p:
                raise FieldMismatch("mixed moduli %d and %d" % (self.p, x.p))
            return x
        if isinstance(x, int):
            return Fp(x, self.p)
        if isinstance(x, Fraction):
            den = x.denominator % self.p
            if den == 0:
                raise ZeroDivisionError("denominator divisible by %d" % self.p)
            return Fp(x.numerator * pow(den, -1, self.p), self.p)
        raise FieldMismatch("cannot coerce %r into F_%d" % (x, self.p))

    def contains(self, x) -> bool:
        return isinstance(x, Fp) and x.p == self.p

    def random(self, rng, height=None):
        return Fp(rng.randrange(self.p), self.p)

    def random_nonzero(self, rng, height=None):
        return Fp(rng.randrange(1, self.p), self.p)

    def sqrt(self, x):
        return x.sqrt()

    def format(self, x) -> str:
        return "%d" % x.v

    def __repr__(self):
        return "GF(%d)" % self.p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


QQ = RationalField()

DEFAULT_PRIME = 32003


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_tag(tag: str):
    """Parse a CLI field tag: 'q' or 'fp:<prime>'."""
    if tag == "q":
        return QQ
    if tag.startswith("fp:"):
        return GF(int(tag[3:]))
    if tag == "fp":
        return GF(DEFAULT_PRIME)
    raise ValueError("unknown field tag %r (expected 'q' or 'fp:<prime>')" % tag)


def scalar_from_string(field, s: str):
    """Parse 'num/den' or integer literals into a field element."""
    s = s.strip()
    if "/" in s:
        num, den = s.split("/", 1)
        return field.of(Fraction(int(num), int(den)))
    return field.of(int(s))
