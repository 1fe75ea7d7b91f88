"""Exact arithmetic in cyclotomic fields Q(zeta_L).

An element is stored as a polynomial in zeta_L reduced modulo the L-th
cyclotomic polynomial, so the representation is canonical and zero-testing
is exact.  Elements of different orders are promoted to the lcm order on
demand.
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm, pi, cos, sin

from flint import fmpq, fmpq_poly

__all__ = [
    "CycScalar",
    "cyclotomic_poly",
    "totient",
    "zeta",
    "cyc_make",
    "cyc_add",
    "cyc_mul",
    "cyc_inv",
    "cyc_order",
    "as_scalar",
    "parse_rational",
]


def _divisors(n):
    return [k for k in range(1, n + 1) if n % k == 0]


@lru_cache(maxsize=None)
def cyclotomic_poly(L):
    """Phi_L as an fmpq_poly, by dividing x^L - 1 by the lower cyclotomics."""
    if L < 1:
        raise ValueError("cyclotomic order must be positive")
    p = fmpq_poly([-1] + [0] * (L - 1) + [1])
    for k in _divisors(L)[:-1]:
        p, rem = divmod(p, cyclotomic_poly(k))
        assert rem == 0
    return p


def totient(L):
    return cyclotomic_poly(L).degree()


@lru_cache(maxsize=None)
def _power_table(L):
    # zeta_L^e reduced mod Phi_L for 0 <= e < L
    phi = cyclotomic_poly(L)
    return tuple(fmpq_poly([0] * e + [1]) % phi for e in range(L))


@lru_cache(maxsize=None)
def _normalized_traces(L):
    # Tr(zeta_L^k) / phi(L) = mu(L/g) / phi(L/g), g = gcd(k, L)
    out = []
    for k in range(totient(L)):
        m = L // gcd(k, L)
        out.append(Fraction(_mobius(m), totient(m)))
    return tuple(out)


def _mobius(n):
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


def parse_rational(x):
    """Parse an int, Fraction, fmpq or "p/q" string into a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, fmpq):
        return Fraction(int(x.p), int(x.q))
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError("cannot read %r as a rational" % (x,))


def _to_fmpq(x):
    if isinstance(x, fmpq):
        return x
    x = parse_rational(x)
    return fmpq(x.numerator, x.denominator)


class CycScalar:
    """Element of Q(zeta_L), immutable.

    `order` is L and `poly` the reduced representative mod Phi_L.
    """

    __slots__ = ("order", "poly")

    def __init__(self, order, coeffs=(0,)):
        if order < 1:
            raise ValueError("order must be positive")
        p = fmpq_poly([_to_fmpq(c) for c in coeffs]) if not isinstance(coeffs, fmpq_poly) else coeffs
        if p.degree() >= totient(order):
            p = p % cyclotomic_poly(order)
        self.order = order
        self.poly = p

    @classmethod
    def _raw(cls, order, poly):
        obj = object.__new__(cls)
        obj.order = order
        obj.poly = poly
        return obj

    @classmethod
    def rational(cls, x):
        return cls._raw(1, fmpq_poly([_to_fmpq(x)]))

    # -- representation -------------------------------------------------

    @property
    def coeffs(self):
        """Coefficient vector of length phi(order), as Fractions."""
        n = totient(self.order)
        cs = [Fraction(int(c.p), int(c.q)) for c in self.poly.coeffs()]
        return tuple(cs + [Fraction(0)] * (n - len(cs)))

    def promote(self, L):
        """Re-express in Q(zeta_L); L must be a multiple of the order."""
        if L == self.order:
            return self
        if L % self.order:
            raise ValueError("cannot promote order %d to %d" % (self.order, L))
        step = L // self.order
        table = _power_table(L)
        acc = fmpq_poly([])
        for e, c in enumerate(self.poly.coeffs()):
            if c != 0:
                acc += table[(e * step) % L] * c
        return CycScalar._raw(L, acc)

    def is_rational(self):
        return self.poly.degree() <= 0

    def to_fraction(self):
        if not self.is_rational():
            raise ValueError("%s is not rational" % (self,))
        c = self.poly.coeffs()
        return Fraction(int(c[0].p), int(c[0].q)) if c else Fraction(0)

    def __complex__(self):
        z = 0j
        for e, c in enumerate(self.poly.coeffs()):
            ang = 2 * pi * e / self.order
            z += float(Fraction(int(c.p), int(c.q))) * complex(cos(ang), sin(ang))
        return z

    # -- arithmetic -----------------------------------------------------

    def _align(self, other):
        other = as_scalar(other)
        if other.order == self.order:
            return self, other
        L = lcm(self.order, other.order)
        return self.promote(L), other.promote(L)

    def __add__(self, other):
        if not isinstance(other, CycScalar):
            other = as_scalar(other)
        if other.order == 1:
            return CycScalar._raw(self.order, self.poly + other.poly)
        if self.order == 1:
            return CycScalar._raw(other.order, other.poly + self.poly)
        a, b = self._align(other)
        return CycScalar._raw(a.order, a.poly + b.poly)

    __radd__ = __add__

    def __neg__(self):
        return CycScalar._raw(self.order, -self.poly)

    def __sub__(self, other):
        return self + (-as_scalar(other))

    def __rsub__(self, other):
        return as_scalar(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, CycScalar):
            if isinstance(other, int):
                return CycScalar._raw(self.order, self.poly * other)
            other = as_scalar(other)
        if other.order == 1:
            c = other.poly.coeffs()
            return CycScalar._raw(self.order, self.poly * c[0] if c else fmpq_poly([]))
        if self.order == 1:
            c = self.poly.coeffs()
            return CycScalar._raw(other.order, other.poly * c[0] if c else fmpq_poly([]))
        a, b = self._align(other)
        L = a.order
        p = a.poly * b.poly
        if p.degree() >= totient(L):
            p = p % cyclotomic_poly(L)
        return CycScalar._raw(L, p)

    __rmul__ = __mul__

    def inverse(self):
        if self.poly.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta_%d)" % self.order)
        if self.order == 1:
            return CycScalar._raw(1, fmpq_poly([1 / self.poly.coeffs()[0]]))
        g, s, _ = self.poly.xgcd(cyclotomic_poly(self.order))
        # Phi_L is irreducible, so g is a nonzero constant
        assert g.degree() == 0
        return CycScalar._raw(self.order, (s * (1 / g.coeffs()[0])) % cyclotomic_poly(self.order))

    def __truediv__(self, other):
        return self * as_scalar(other).inverse()

    def __rtruediv__(self, other):
        return as_scalar(other) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = CycScalar._raw(self.order, fmpq_poly([1]))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison -----------------------------------------------------

    def is_zero(self):
        return self.poly.is_zero()

    def __bool__(self):
        return not self.poly.is_zero()

    def __eq__(self, other):
        if not isinstance(other, CycScalar):
            try:
                other = as_scalar(other)
            except TypeError:
                return NotImplemented
        if self.order == other.order:
            return self.poly == other.poly
        a, b = self._align(other)
        return a.poly == b.poly

    def __hash__(self):
        # normalized trace does not depend on the field the element is written in
        tr = _normalized_traces(self.order)
        val = Fraction(0)
        for e, c in enumerate(self.poly.coeffs()):
            if c != 0:
                val += Fraction(int(c.p), int(c.q)) * tr[e]
        return hash(val)

    def __repr__(self):
        if self.order == 1:
            return "CycScalar(%s)" % self.to_fraction()
        return "CycScalar(%d, %s)" % (self.order, [str(c) for c in self.coeffs])

    def __str__(self):
        if self.is_rational():
            return str(self.to_fraction())
        terms = []
        for e, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "1" if e == 0 else ("z%d" % self.order if e == 1 else "z%d^%d" % (self.order, e))
            terms.append(mono if c == 1 and e else "%s*%s" % (c, mono) if e else str(c))
        return " + ".join(terms)

    # -- serialization --------------------------------------------------

    def to_json(self):
        return {"order": self.order, "coeffs": [_rat_str(c) for c in self.coeffs]}

    def root_pair(self):
        """[num, den] with self == exp(2 pi i num/den), or None."""
        m = cyc_order(self)
        if m is None:
            return None
        for j in range(m):
            if gcd(j, m) == 1 or m == 1:
                if zeta(m, j) == self:
                    return [j, m]
        raise AssertionError("root of unity without a primitive exponent")


def _rat_str(c):
    c = parse_rational(c)
    return str(c.numerator) if c.denominator == 1 else "%d/%d" % (c.numerator, c.denominator)


def as_scalar(x):
    """Coerce ints, Fractions, fmpq, "p/q" strings and JSON forms into CycScalar."""
    if isinstance(x, CycScalar):
        return x
    if isinstance(x, (int, Fraction, fmpq, str)):
        return CycScalar.rational(x)
    if isinstance(x, dict):
        return CycScalar(int(x["order"]), [parse_rational(c) for c in x["coeffs"]])
    if isinstance(x, (list, tuple)) and len(x) == 2:
        return cyc_make(int(x[0]), int(x[1]))
    raise TypeError("cannot interpret %r as a cyclotomic scalar" % (x,))


@lru_cache(maxsize=None)
def zeta(L, j=1):
    """zeta_L^j."""
    return CycScalar._raw(L, _power_table(L)[j % L])


def cyc_make(num, den):
    """The root of unity exp(2 pi i num/den)."""
    if den < 1:
        raise ValueError("denominator must be positive")
    g = gcd(num, den)
    return zeta(den // g, (num // g) % (den // g))


def cyc_add(a, b):
    return as_scalar(a) + b


def cyc_mul(a, b):
    return as_scalar(a) * b


def cyc_inv(a):
    return as_scalar(a).inverse()


def cyc_order(a):
    """Multiplicative order of a if it is a root of unity, else None.

    Roots of unity in Q(zeta_L) are +-zeta_L^j, so only divisors of
    lcm(2, L) need checking.
    """
    a = as_scalar(a)
    bound = lcm(2, a.order)
    for m in _divisors(bound):
        if a ** m == 1:
            return m
    return None
