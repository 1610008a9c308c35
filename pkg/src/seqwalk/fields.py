"""Exact scalar arithmetic: rationals (characteristic 0) or a prime field.

Scalars are plain Python values, `fractions.Fraction` in characteristic 0 and
ints in ``range(p)`` modulo a prime ``p``.  A :class:`Field` instance carries
the operations so the linear algebra can stay generic.  No floating point is
used anywhere.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ParseError


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class Field:
    """Rationals when ``char == 0``, otherwise the field with ``char`` elements."""

    def __init__(self, char: int = 0):
        if char != 0 and not _is_prime(char):
            raise ValueError(f"field characteristic must be 0 or prime, got {char}")
        self.char = char

    def __eq__(self, other):
        return isinstance(other, Field) and other.char == self.char

    def __hash__(self):
        return hash(("Field", self.char))

    def __repr__(self):
        return "QQ" if self.char == 0 else f"GF({self.char})"

    @property
    def zero(self):
        return Fraction(0) if self.char == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.char == 0 else 1

    def coerce(self, value):
        """Map an int or Fraction into the field."""
        if self.char == 0:
            return Fraction(value)
        frac = Fraction(value)
        den = frac.denominator % self.char
        if den == 0:
            raise ZeroDivisionError(f"denominator divisible by {self.char}")
        return frac.numerator * pow(den, -1, self.char) % self.char

    def add(self, a, b):
        return a + b if self.char == 0 else (a + b) % self.char

    def sub(self, a, b):
        return a - b if self.char == 0 else (a - b) % self.char

    def mul(self, a, b):
        return a * b if self.char == 0 else (a * b) % self.char

    def neg(self, a):
        return -a if self.char == 0 else (-a) % self.char

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        return Fraction(1) / a if self.char == 0 else pow(a, -1, self.char)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == 0

    def parse(self, text: str, line=None):
        """Parse a coefficient token like ``2``, ``-1/3``."""
        try:
            return self.coerce(Fraction(text))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad scalar {text!r}: {exc}", line=line) from None

    def render(self, a) -> str:
        return str(a)
