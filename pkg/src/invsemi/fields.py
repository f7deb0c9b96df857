"""Exact scalar arithmetic: the rationals and the prime fields GF(p).

Scalars are plain Python values (``Fraction`` in characteristic 0, small
ints in characteristic p); a ``Field`` object supplies the operations.
No floating point anywhere: every verdict downstream is an exact yes/no.
"""

from fractions import Fraction

from .errors import FieldMismatch


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class Field:
    """The rationals (characteristic 0) or GF(p) (characteristic p prime)."""

    def __init__(self, characteristic=0):
        if characteristic != 0 and not _is_prime(characteristic):
            raise ValueError(f"characteristic must be 0 or prime, got {characteristic}")
        self.char = characteristic

    def __repr__(self):
        return "QQ" if self.char == 0 else f"GF({self.char})"

    def __eq__(self, other):
        return isinstance(other, Field) and self.char == other.char

    def __hash__(self):
        return hash(("Field", self.char))

    @property
    def zero(self):
        return Fraction(0) if self.char == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.char == 0 else 1

    def of(self, n):
        """Coerce an int (or Fraction in char 0) into the field."""
        if self.char == 0:
            return Fraction(n)
        if isinstance(n, Fraction):
            if n.denominator % self.char == 0:
                raise ZeroDivisionError(f"{n} has no image in GF({self.char})")
            return (n.numerator * pow(n.denominator, -1, self.char)) % self.char
        return n % self.char

    def add(self, a, b):
        return a + b if self.char == 0 else (a + b) % self.char

    def sub(self, a, b):
        return a - b if self.char == 0 else (a - b) % self.char

    def neg(self, a):
        return -a if self.char == 0 else (-a) % self.char

    def mul(self, a, b):
        return a * b if self.char == 0 else (a * b) % self.char

    def inv(self, a):
        if a == self.zero:
            raise ZeroDivisionError("division by zero")
        return 1 / a if self.char == 0 else pow(a, -1, self.char)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def tostr(self, a):
        return str(a)

    def parse(self, s):
        return Fraction(s) if self.char == 0 else int(s) % self.char


QQ = Field(0)


def GF(p):
    return Field(p)


def check_same_field(f1, f2):
    if f1 != f2:
        raise FieldMismatch(f"{f1} vs {f2}")
