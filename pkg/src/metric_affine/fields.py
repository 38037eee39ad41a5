"""Exact coefficient fields: GF(2), GF(3), GF(4), GF(5), GF(7) and the rationals.

Field elements are plain Python values (small ints for the finite fields,
`fractions.Fraction` for the rationals); a Field object supplies the
arithmetic.  For the finite fields the raw value of an element *is* its
enumeration index, which keeps the table-driven group code simple:

    GF(p):  0, 1, ..., p-1           (integers mod p)
    GF(4):  0, 1, 2, 3  meaning  0, 1, t, t+1  with t*t = t+1

Addition in GF(4) is bitwise XOR; multiplication and inversion are table
lookups.  No floating point is used anywhere.
"""

from __future__ import annotations

from fractions import Fraction


class Field:
    """Common interface; concrete subclasses below are singletons."""

    name = "?"
    char = 0
    order = None  # None means infinite
    enumerable = False

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)

    def coerce(self, x):
        raise NotImplementedError

    def elements(self):
        """All field elements in canonical order (finite fields only)."""
        raise NotImplementedError(f"{self.name} is not enumerable")

    def units(self):
        return self.elements()[1:]

    def dot(self, xs, ys):
        """Sum of pairwise products; the workhorse of matrix multiplication."""
        acc = self.zero
        for x, y in zip(xs, ys):
            acc = self.add(acc, self.mul(x, y))
        return acc

    # --- serialization -----------------------------------------------------

    def to_json(self, a):
        return a

    def from_json(self, x):
        return self.coerce(x)

    def parse(self, s):
        """Parse a CLI/file token.  Accepts an int literal (or p/q over Q)."""
        return self.from_json(int(s))

    def __repr__(self):
        return self.name


class PrimeField(Field):
    enumerable = True

    def __init__(self, p):
        self.name = "GF(%d)" % p
        self.char = p
        self.order = p
        self.p = p

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0 in %s" % self.name)
        # Fermat: a**(p-2) is the inverse for prime p.
        return pow(a, self.p - 2, self.p)

    def coerce(self, x):
        return int(x) % self.p

    def elements(self):
        return list(range(self.p))


_GF4_MUL = ((0, 0, 0, 0), (0, 1, 2, 3), (0, 2, 3, 1), (0, 3, 1, 2))
_GF4_INV = (None, 1, 3, 2)


class GF4Field(Field):
    """The four-element field, elements coded 0, 1, t, t+1 -> 0, 1, 2, 3."""

    name = "GF(4)"
    char = 2
    order = 4
    enumerable = True

    def add(self, a, b):
        return a ^ b

    def neg(self, a):
        return a  # characteristic 2

    def mul(self, a, b):
        return _GF4_MUL[a][b]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in GF(4)")
        return _GF4_INV[a]

    def coerce(self, x):
        x = int(x)
        if not 0 <= x <= 3:
            raise ValueError("GF(4) elements are coded 0..3, got %r" % (x,))
        return x

    def elements(self):
        return [0, 1, 2, 3]


class RationalField(Field):
    name = "Q"
    char = 0
    order = None
    enumerable = False

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in Q")
        return 1 / Fraction(a)

    def coerce(self, x):
        return Fraction(x)

    def to_json(self, a):
        a = Fraction(a)
        if a.denominator == 1:
            return int(a)
        return "%d/%d" % (a.numerator, a.denominator)

    def from_json(self, x):
        if isinstance(x, str):
            return Fraction(x)
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        raise ValueError("cannot read %r as a rational" % (x,))

    def parse(self, s):
        return Fraction(s)


GF2 = PrimeField(2)
GF3 = PrimeField(3)
GF4 = GF4Field()
GF5 = PrimeField(5)
GF7 = PrimeField(7)
QQ = RationalField()

_BY_NAME = {f.name: f for f in (GF2, GF3, GF4, GF5, GF7, QQ)}
_BY_NAME["QQ"] = QQ  # tolerated alias


def field_make(name):
    """Look up a field by name: "GF(2)", ..., "GF(7)" or "Q"."""
    f = _BY_NAME.get(name.strip())
    if f is None:
        raise ValueError(
            "unknown field %r (known: %s)" % (name, ", ".join(sorted(_BY_NAME)))
        )
    return f


# GF(4) sanity: t*t = t+1, t*(t+1) = 1, (t+1)*(t+1) = t.
assert GF4.mul(2, 2) == 3 and GF4.mul(2, 3) == 1 and GF4.mul(3, 3) == 2
assert all(GF4.mul(a, GF4.inv(a)) == 1 for a in (1, 2, 3))
