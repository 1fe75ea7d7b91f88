"""The derivation algebra Der(C_q): inner parts ad(t^s) and Witt parts D(u, r)."""

from itertools import product

import numpy as np

from .cyclotomic import as_scalar
from .torus import TorusElement

__all__ = [
    "Derivation",
    "der_bracket",
    "z_act",
    "der_apply",
    "solenoidal_e",
    "window_generic_u",
    "pairing",
    "window_degrees",
    "window_generators",
]

_ZERO = as_scalar(0)


def pairing(u, n):
    """(u | n) for a scalar vector u and an integer vector n."""
    acc = _ZERO
    for a, b in zip(u, n):
        if b:
            acc = acc + a * b
    return acc


def _vec(u):
    return tuple(as_scalar(x) for x in u)


def _addv(a, b):
    return tuple(x + y for x, y in zip(a, b))


class Derivation:
    """Finite sum of ad(t^s) terms (s outside Rad(f)) and D(u, r) terms (r in Rad(f))."""

    __slots__ = ("torus", "inner", "witt")

    def __init__(self, torus, inner=None, witt=None):
        torus.require_normal()
        self.torus = torus
        rad = torus.rad
        clean_inner = {}
        for s, c in (inner or {}).items():
            s = tuple(int(x) for x in s)
            c = as_scalar(c)
            if rad.contains(s):
                # ad of a central element is zero
                continue
            if c:
                clean_inner[s] = clean_inner[s] + c if s in clean_inner else c
        clean_witt = {}
        for r, u in (witt or {}).items():
            r = tuple(int(x) for x in r)
            if not rad.contains(r):
                raise ValueError("D(u, r) needs r in Rad(f); got %s" % (r,))
            u = _vec(u)
            if len(u) != torus.d:
                raise ValueError("u must have length %d" % torus.d)
            if any(u):
                clean_witt[r] = u
        self.inner = dict(sorted((k, v) for k, v in clean_inner.items() if v))
        self.witt = dict(sorted(clean_witt.items()))

    # -- constructors -------------------------------------------------------

    @classmethod
    def ad(cls, torus, s, c=1):
        return cls(torus, inner={tuple(s): c})

    @classmethod
    def D(cls, torus, u, r):
        return cls(torus, witt={tuple(r): u})

    @classmethod
    def partial(cls, torus, i):
        """The degree derivation d_i = D(e_i, 0)."""
        u = [0] * torus.d
        u[i] = 1
        return cls.D(torus, u, (0,) * torus.d)

    @classmethod
    def zero(cls, torus):
        return cls(torus)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        inner = dict(self.inner)
        for s, c in other.inner.items():
            inner[s] = inner[s] + c if s in inner else c
        witt = dict(self.witt)
        for r, u in other.witt.items():
            witt[r] = _addv(witt[r], u) if r in witt else u
        return Derivation(self.torus, inner, witt)

    def scale(self, c):
        c = as_scalar(c)
        return Derivation(self.torus, {s: c * x for s, x in self.inner.items()},
                          {r: tuple(c * x for x in u) for r, u in self.witt.items()})

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, c):
        return self.scale(c)

    def is_zero(self):
        return not self.inner and not self.witt

    def is_homogeneous(self):
        return len(set(self.inner) | set(self.witt)) <= 1

    def degrees(self):
        return sorted(set(self.inner) | set(self.witt))

    def terms(self):
        """Homogeneous pieces as single-term derivations."""
        out = [Derivation(self.torus, inner={s: c}) for s, c in self.inner.items()]
        out += [Derivation(self.torus, witt={r: u}) for r, u in self.witt.items()]
        return out

    def __eq__(self, other):
        if not isinstance(other, Derivation):
            return NotImplemented
        return self.torus is other.torus and self.inner == other.inner and self.witt == other.witt

    def __hash__(self):
        return hash((tuple(self.inner.items()), tuple(self.witt.items())))

    def __repr__(self):
        parts = ["(%s)ad(t^%s)" % (c, s) for s, c in self.inner.items()]
        parts += ["D(%s, %s)" % ([str(x) for x in u], r) for r, u in self.witt.items()]
        return " + ".join(parts) if parts else "0"

    def to_json(self):
        return {
            "inner": [{"degree": list(s), "coeff": c.to_json()} for s, c in self.inner.items()],
            "witt": [{"degree": list(r), "u": [x.to_json() for x in u]} for r, u in self.witt.items()],
        }

    @classmethod
    def from_json(cls, torus, obj):
        inner = {tuple(t["degree"]): as_scalar(t["coeff"]) for t in obj.get("inner", [])}
        witt = {tuple(t["degree"]): [as_scalar(x) for x in t["u"]] for t in obj.get("witt", [])}
        return cls(torus, inner, witt)


def der_bracket(x, y):
    """Lie bracket in Der(C_q), extended bilinearly from the three homogeneous rules."""
    T = x.torus
    if y.torus is not T:
        raise ValueError("derivations of different quantum tori")
    inner, witt = {}, {}

    def add_inner(s, c):
        if c:
            inner[s] = inner[s] + c if s in inner else c

    def add_witt(r, u):
        witt[r] = _addv(witt[r], u) if r in witt else u

    for s, a in x.inner.items():
        for s2, b in y.inner.items():
            k = _addv(s, s2)
            if T.in_rad(k):
                # sigma(s,s') = sigma(s',s) here because f(s, -s + r) = 1
                continue
            add_inner(k, a * b * (T.sigma(s, s2) - T.sigma(s2, s)))
    for r, u in x.witt.items():
        for s, b in y.inner.items():
            add_inner(_addv(r, s), b * pairing(u, s))
    for s, a in x.inner.items():
        for r, u in y.witt.items():
            add_inner(_addv(r, s), -a * pairing(u, s))
    for r, u in x.witt.items():
        for r2, u2 in y.witt.items():
            cu, cu2 = pairing(u, r2), pairing(u2, r)
            w = tuple(cu * b - cu2 * a for a, b in zip(u, u2))
            add_witt(_addv(r, r2), w)
    return Derivation(T, inner, witt)


def z_act(r, x):
    """t^r . x for t^r central: shift every degree by r."""
    T = x.torus
    r = tuple(r)
    if not T.in_rad(r):
        raise ValueError("z_act needs r in Rad(f); got %s" % (r,))
    return Derivation(T, {_addv(s, r): c for s, c in x.inner.items()},
                      {_addv(q, r): u for q, u in x.witt.items()})


def der_apply(x, a):
    """Action of a derivation on a torus element: D(u,r) t^n = (u|n) t^{n+r}, ad(t^s) a = [t^s, a]."""
    T = x.torus
    out = T.zero()
    for s, c in x.inner.items():
        out = out + T.monomial(s, c).commutator(a)
    terms = {}
    for r, u in x.witt.items():
        for n, c in a.terms.items():
            k = _addv(r, n)
            v = c * pairing(u, n)
            terms[k] = terms[k] + v if k in terms else v
    return out + TorusElement(T, terms)


def solenoidal_e(torus, r, u):
    """e_r = D(u, r)."""
    if not torus.in_rad(r):
        raise ValueError("e_r needs r in Rad(f); got %s" % (tuple(r),))
    return Derivation.D(torus, u, r)


def window_generic_u(torus, bound, lattice_only=True):
    """u = (1, c, c^2, ...) with (u|r) != 0 for nonzero r, |r|_inf <= bound, smallest c >= 2.

    With lattice_only the condition is imposed on Rad(f) points only.
    """
    d = torus.d
    pts = np.array(list(product(range(-bound, bound + 1), repeat=d)), dtype=np.int64)
    pts = pts[np.any(pts != 0, axis=1)]
    if lattice_only:
        keep = np.array([torus.in_rad(tuple(int(x) for x in p)) for p in pts], dtype=bool)
        pts = pts[keep] if len(pts) else pts
    c = 2
    while True:
        u = np.array([c ** i for i in range(d)], dtype=object)
        vals = pts.astype(object) @ u if len(pts) else np.array([1])
        if np.all(vals != 0):
            return tuple(as_scalar(int(x)) for x in u)
        c += 1


def window_degrees(d, radius):
    return [tuple(p) for p in product(range(-radius, radius + 1), repeat=d)]


def window_generators(torus, radius):
    """Homogeneous basis elements of Der(C_q) with degrees in |n|_inf <= radius.

    ad(t^s) for noncentral s, and D(e_i, r) for central r and i = 1..d.
    """
    d = torus.d
    out = []
    for n in window_degrees(d, radius):
        if torus.in_rad(n):
            for i in range(d):
                u = [0] * d
                u[i] = 1
                out.append(Derivation.D(torus, u, n))
        else:
            out.append(Derivation.ad(torus, n))
    return out
