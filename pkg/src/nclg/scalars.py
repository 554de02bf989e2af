"""Coefficient rings for path-algebra elements.

Three interchangeable rings are provided:

* ``RATIONALS``      -- exact arbitrary-precision rationals (fractions.Fraction)
* ``QSeriesRing(N)`` -- exact truncated Laurent series in a formal parameter q,
                        with rational exponents and rational coefficients;
                        every exponent >= N is discarded
* ``ComplexRing(tol)`` -- double-precision complex numbers, with zero decided
                          up to an absolute tolerance

A ring object supplies zero/one/add/mul/neg/invert/is_zero and a deterministic
string form; algebra code never touches element internals directly.
"""

from __future__ import annotations

from fractions import Fraction


def _fr(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError("cannot coerce %r to a rational" % (x,))


class Rationals:
    """Exact rational coefficients."""

    name = "QQ"
    exact = True

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def coerce(self, x):
        if isinstance(x, float):
            return Fraction(x).limit_denominator(10**12)
        return _fr(x)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def invert(self, a):
        if a == 0:
            raise ZeroDivisionError("inverting 0")
        return 1 / a

    def is_zero(self, a):
        return a == 0

    def eq(self, a, b):
        return a == b

    def to_str(self, a):
        return str(a)


RATIONALS = Rationals()


class QSeries:
    """Truncated Laurent series sum_e c_e q^e, exponents rational, e < order.

    Immutable after construction; zero coefficients are never stored.
    """

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs, order):
        self.order = _fr(order)
        clean = {}
        for e, c in coeffs.items():
            e = _fr(e)
            c = _fr(c)
            if c != 0 and e < self.order:
                clean[e] = c
        self.coeffs = clean

    @staticmethod
    def const(c, order):
        return QSeries({Fraction(0): _fr(c)}, order)

    @staticmethod
    def q_power(e, order, c=1):
        return QSeries({_fr(e): _fr(c)}, order)

    def __add__(self, other):
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, Fraction(0)) + c
        return QSeries(out, min(self.order, other.order))

    def __neg__(self):
        return QSeries({e: -c for e, c in self.coeffs.items()}, self.order)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not self.coeffs or not other.coeffs:
            return QSeries({}, min(self.order, other.order))
        # valuation-aware truncation: (f + O(q^N))(g + O(q^M)) is known
        # below min(N + val g, M + val f)
        v1 = min(self.coeffs)
        v2 = min(other.coeffs)
        order = min(self.order + v2, other.order + v1)
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                if e < order:
                    out[e] = out.get(e, Fraction(0)) + c1 * c2
        return QSeries(out, order)

    def is_zero(self):
        return not self.coeffs

    def leading(self):
        """(exponent, coefficient) of the lowest-order term."""
        if not self.coeffs:
            raise ZeroDivisionError("leading term of 0")
        e = min(self.coeffs)
        return e, self.coeffs[e]

    def inverse(self):
        """Multiplicative inverse as a truncated Laurent series.

        Relative precision is preserved: if self = c0 q^e0 (1 + u) with the
        tail known below relative order (order - e0), the inverse is returned
        with absolute truncation order (order - 2*e0).
        """
        e0, c0 = self.leading()
        rel = self.order - e0
        u = QSeries({e - e0: c / c0 for e, c in self.coeffs.items() if e != e0}, rel)
        geom = QSeries.const(1, rel)
        term = QSeries.const(1, rel)
        if not u.is_zero():
            umin = min(u.coeffs)
            n = 1
            while n * umin < rel:
                term = term * (-u)
                if term.is_zero():
                    break
                geom = geom + term
                n += 1
        inv = {e - e0: c / c0 for e, c in geom.coeffs.items()}
        return QSeries(inv, self.order - 2 * e0)

    def __truediv__(self, other):
        return self * other.inverse()

    def scale(self, c):
        c = _fr(c)
        return QSeries({e: c * v for e, v in self.coeffs.items()}, self.order)

    def __pow__(self, n):
        if not isinstance(n, int):
            raise TypeError("integer powers only")
        if n < 0:
            return (self ** (-n)).inverse()
        out = QSeries.const(1, self.order if n else self.order)
        base = self
        m = n
        while m:
            if m & 1:
                out = out * base
            base = base * base
            m >>= 1
        # re-anchor the order: squaring in the loop can only shrink it
        return out

    def coefficient(self, e):
        return self.coeffs.get(_fr(e), Fraction(0))

    def truncate(self, order):
        return QSeries(self.coeffs, min(self.order, _fr(order)))

    def evaluate(self, q):
        """Numerically evaluate at a complex q (principal branch for fractional powers)."""
        total = 0j
        for e, c in sorted(self.coeffs.items()):
            total += complex(c) * complex(q) ** float(e)
        return total

    def __eq__(self, other):
        return isinstance(other, QSeries) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __repr__(self):
        if not self.coeffs:
            return "0 + O(q^%s)" % self.order
        bits = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            if e == 0:
                bits.append(str(c))
            elif e == 1:
                bits.append("%s*q" % c)
            else:
                bits.append("%s*q^%s" % (c, e))
        return " + ".join(bits) + " + O(q^%s)" % self.order


class QSeriesRing:
    """Ring adapter for QSeries elements of a fixed truncation order."""

    exact = True

    def __init__(self, order):
        self.order = _fr(order)
        self.name = "QSeries(%s)" % self.order

    def zero(self):
        return QSeries({}, self.order)

    def one(self):
        return QSeries.const(1, self.order)

    def q(self, e=1, c=1):
        return QSeries.q_power(e, self.order, c)

    def coerce(self, x):
        if isinstance(x, QSeries):
            return x.truncate(self.order)
        return QSeries.const(_fr(x), self.order)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def invert(self, a):
        return a.inverse().truncate(self.order)

    def is_zero(self, a):
        return a.is_zero()

    def eq(self, a, b):
        return a == b

    def to_str(self, a):
        return repr(a)


class ComplexRing:
    """Double-precision complex coefficients with an absolute zero tolerance."""

    exact = False

    def __init__(self, tol=1e-9):
        self.tol = float(tol)
        self.name = "CC(tol=%g)" % self.tol

    def zero(self):
        return 0j

    def one(self):
        return 1 + 0j

    def coerce(self, x):
        return complex(x)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def invert(self, a):
        return 1 / a

    def is_zero(self, a):
        return abs(a) < self.tol

    def eq(self, a, b):
        return abs(a - b) < self.tol

    def to_str(self, a):
        return "%.15g%+.15gj" % (a.real, a.imag)
