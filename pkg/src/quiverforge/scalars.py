"""
Exact scalars: rationals, Gaussian rationals and truncated Novikov series.

Rationals are plain ``fractions.Fraction``.  The other two types mix freely
with ints and Fractions on either side of an operator.
"""

from fractions import Fraction
from functools import lru_cache


def as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError("not a rational: %r" % (x,))


class GaussianRational:
    """a + b*i with a, b rational."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = as_fraction(re)
        self.im = as_fraction(im)

    @staticmethod
    def lift(x):
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussianRational(x, 0)
        return NotImplemented

    def __add__(self, other):
        o = GaussianRational.lift(other)
        if o is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        o = GaussianRational.lift(other)
        if o is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = GaussianRational.lift(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = GaussianRational.lift(other)
        if o is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def norm(self):
        return self.re * self.re + self.im * self.im

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("GaussianRational division by zero")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        o = GaussianRational.lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = GaussianRational.lift(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __eq__(self, other):
        o = GaussianRational.lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return "%s*I" % (self.im,)
        return "(%s%+s*I)" % (self.re, self.im)


I = GaussianRational(0, 1)


class Novikov:
    """
    Truncated Novikov series  sum c_k T^{e_k}  with rational exponents.

    Terms with exponent >= trunc are dropped.  Negative exponents are allowed so
    that nonzero series can be inverted (the Novikov field), which keeps
    division available for exact elimination.
    """

    __slots__ = ("terms", "trunc")

    def __init__(self, terms=(), trunc=10):
        self.trunc = as_fraction(trunc)
        acc = {}
        for e, c in terms:
            e = as_fraction(e)
            if e >= self.trunc:
                continue
            acc[e] = acc.get(e, 0) + c
        self.terms = tuple(sorted((e, c) for e, c in acc.items() if c != 0))

    @staticmethod
    def T(exp=1, trunc=10):
        return Novikov([(exp, Fraction(1))], trunc)

    def _lift(self, x):
        if isinstance(x, Novikov):
            return x
        if isinstance(x, (int, Fraction, GaussianRational)):
            return Novikov([(0, x)], self.trunc)
        return NotImplemented

    def _join_trunc(self, other):
        return min(self.trunc, other.trunc)

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return Novikov(list(self.terms) + list(o.terms), self._join_trunc(o))

    __radd__ = __add__

    def __neg__(self):
        return Novikov([(e, -c) for e, c in self.terms], self.trunc)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        tr = self._join_trunc(o)
        out = []
        for e1, c1 in self.terms:
            for e2, c2 in o.terms:
                if e1 + e2 < tr:
                    out.append((e1 + e2, c1 * c2))
        return Novikov(out, tr)

    __rmul__ = __mul__

    def valuation(self):
        if not self.terms:
            return float("inf")
        return self.terms[0][0]

    def leading(self):
        return self.terms[0]

    def inverse(self):
        if not self.terms:
            raise ZeroDivisionError("Novikov division by zero")
        e0, c0 = self.terms[0]
        # x = c0 T^e0 (1 + u) with val(u) > 0, so 1/x = c0^-1 T^-e0 sum (-u)^k
        u = Novikov([(e - e0, c / c0) for e, c in self.terms[1:]], self.trunc - e0)
        acc = Novikov([(0, Fraction(1))], self.trunc - e0)
        power = Novikov([(0, Fraction(1))], self.trunc - e0)
        while True:
            power = power * (-u)
            if not power.terms:
                break
            acc = acc + power
        return Novikov([(e - e0, c / c0) for e, c in acc.terms], self.trunc - 2 * e0 if e0 > 0 else self.trunc)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        tr = self._join_trunc(o)
        a = [(e, c) for e, c in self.terms if e < tr]
        b = [(e, c) for e, c in o.terms if e < tr]
        return a == b

    def __hash__(self):
        if not self.terms:
            return 0
        if len(self.terms) == 1 and self.terms[0][0] == 0:
            return hash(self.terms[0][1])
        return hash(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            parts.append("%s" % c if e == 0 else "%s*T^%s" % (c, e))
        return "(" + " + ".join(parts) + ")"


def valuation(x):
    """Novikov valuation; ordinary nonzero scalars have valuation 0."""
    if isinstance(x, Novikov):
        return x.valuation()
    if x == 0:
        return float("inf")
    return Fraction(0)


FIELDS = ("q", "qi", "novikov")


def coerce(x, field="q", trunc=10):
    if field == "q":
        if isinstance(x, (GaussianRational, Novikov)):
            raise TypeError("scalar %r is not rational" % (x,))
        return as_fraction(x)
    if field == "qi":
        if isinstance(x, Novikov):
            raise TypeError("scalar %r is not a Gaussian rational" % (x,))
        return GaussianRational.lift(as_fraction(x) if isinstance(x, (int, str)) else x)
    if field == "novikov":
        if isinstance(x, Novikov):
            return x
        return Novikov([(0, x if not isinstance(x, (int, str)) else as_fraction(x))], trunc)
    raise ValueError("unknown field %r" % (field,))


@lru_cache(maxsize=4096)
def _inverse_mod(v, p):
    return pow(v, -1, p)


class GF:
    """Element of the prime field F_p."""

    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.p = p
        self.v = v % p

    def _lift(self, x):
        if x.__class__ is GF or isinstance(x, GF):
            if x.p != self.p:
                raise ValueError("mixed characteristics")
            return x
        if isinstance(x, int):
            return GF(x, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return GF(self.v + o.v, self.p)

    __radd__ = __add__

    def __neg__(self):
        return GF(-self.v, self.p)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return GF(self.v - o.v, self.p)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return GF(o.v - self.v, self.p)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return GF(self.v * o.v, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        if o.v == 0:
            raise ZeroDivisionError("GF division by zero")
        return GF(self.v * _inverse_mod(o.v, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return o / self

    def __eq__(self, other):
        if other.__class__ is int:
            return self.v == other % self.p
        if isinstance(other, GF):
            return self.p == other.p and self.v == other.v
        return NotImplemented

    def __hash__(self):
        return hash(self.v)

    def __ne__(self, other):
        if other.__class__ is int:
            return self.v != other % self.p
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return "%d" % self.v
