"""Rational quantum tori C_q: the cocycle sigma, the form f and multiplication."""

from functools import lru_cache
from math import lcm

import numpy as np

from .cyclotomic import CycScalar, as_scalar, cyc_make, cyc_order, zeta
from .lattice import radical_from_exponents

__all__ = ["QMatrix", "QuantumTorus", "CorruptedSigmaTorus", "TorusElement"]


class QMatrix:
    """d x d matrix of roots of unity with q_ii = 1 and q_ij q_ji = 1."""

    def __init__(self, entries):
        entries = tuple(tuple(as_scalar(x) for x in row) for row in entries)
        d = len(entries)
        if d < 1 or any(len(r) != d for r in entries):
            raise ValueError("q must be a square matrix")
        for i in range(d):
            if entries[i][i] != 1:
                raise ValueError("q_%d%d must be 1" % (i + 1, i + 1))
            for j in range(i):
                if entries[i][j] * entries[j][i] != 1:
                    raise ValueError("q_%d%d q_%d%d != 1" % (i + 1, j + 1, j + 1, i + 1))
        orders = {}
        for i in range(d):
            for j in range(d):
                m = cyc_order(entries[i][j])
                if m is None:
                    raise ValueError("q_%d%d is not a root of unity" % (i + 1, j + 1))
                orders[i, j] = m
        self.d = d
        self.entries = entries
        self._orders = orders

    @classmethod
    def from_pairs(cls, pairs):
        """From a matrix of [num, den] pairs meaning exp(2 pi i num/den)."""
        return cls([[cyc_make(int(p[0]), int(p[1])) for p in row] for row in pairs])

    @classmethod
    def from_exponents(cls, A, L):
        return cls([[zeta(L, a % L) for a in row] for row in A])

    @classmethod
    def normal_form(cls, d, ks):
        """q_{2i,2i-1} = zeta_{k_i}, q_{2i-1,2i} = zeta_{k_i}^{-1}, all other entries 1."""
        if 2 * len(ks) > d:
            raise ValueError("too many blocks for dimension %d" % d)
        rows = [[cyc_make(0, 1)] * d for _ in range(d)]
        for i, k in enumerate(ks):
            rows[2 * i + 1][2 * i] = cyc_make(1, k)
            rows[2 * i][2 * i + 1] = cyc_make(-1, k)
        return cls(rows)

    @classmethod
    def ones(cls, d):
        return cls.normal_form(d, [])

    def __getitem__(self, ij):
        return self.entries[ij[0]][ij[1]]

    def __eq__(self, other):
        return isinstance(other, QMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return "QMatrix(%s)" % (self.to_json(),)

    @property
    def L(self):
        return self.exponents()[0]

    def exponents(self):
        """(L, A) with q_ij = zeta_L^{A[i][j]}, L the lcm of the entry orders."""
        cached = self.__dict__.get("_exps")
        if cached is None:
            L = 1
            for m in self._orders.values():
                L = lcm(L, m)
            A = [[0] * self.d for _ in range(self.d)]
            for i in range(self.d):
                for j in range(self.d):
                    x = self.entries[i][j]
                    A[i][j] = next(a for a in range(L) if zeta(L, a) == x)
            cached = (L, A)
            self.__dict__["_exps"] = cached
        return cached[0], [list(r) for r in cached[1]]

    def to_json(self):
        return [[x.root_pair() for x in row] for row in self.entries]

    def is_normal_form(self):
        """True if q has the block shape with k_{i+1} | k_i (and no stray entries)."""
        d = self.d
        ks = []
        for i in range(0, d - 1, 2):
            m = self._orders[i + 1, i]
            if m == 1:
                break
            ks.append(m)
        z = len(ks)
        for i in range(d):
            for j in range(d):
                if i == j:
                    continue
                inblock = i // 2 == j // 2 and max(i, j) < 2 * z
                if not inblock and self.entries[i][j] != 1:
                    return False
        return all(ks[i] % ks[i + 1] == 0 for i in range(z - 1))

    def block_roots(self):
        """[(k_i, q_i)] for a normal-form q."""
        out = []
        for i in range(0, self.d - 1, 2):
            m = self._orders[i + 1, i]
            if m == 1:
                break
            out.append((m, self.entries[i + 1][i]))
        return out


class QuantumTorus:
    """Context object: q together with its exponent data and radical lattice.

    sigma and f are evaluated through the exponent matrix, i.e. as the
    product formulas with every q_ji written as a power of zeta_L.
    """

    def __init__(self, q):
        if not isinstance(q, QMatrix):
            q = QMatrix(q) if not _looks_like_pairs(q) else QMatrix.from_pairs(q)
        self.q = q
        self.d = q.d
        self.L, A = q.exponents()
        self.A = tuple(tuple(r) for r in A)
        self.rad = radical_from_exponents(A, self.L)
        # sigma exponent: sum_{i<j} A[j][i] n_j m_i, stored as (j, i, a) triples
        self._sigma_terms = tuple((j, i, A[j][i]) for i in range(self.d) for j in range(i + 1, self.d) if A[j][i] % self.L)
        self._f_terms = tuple((j, i, A[j][i]) for i in range(self.d) for j in range(self.d) if A[j][i] % self.L)
        self.normal = q.is_normal_form()

    def __repr__(self):
        return "QuantumTorus(%s)" % (self.q.to_json(),)

    # -- forms ------------------------------------------------------------

    def sigma_exponent(self, n, m):
        e = 0
        for j, i, a in self._sigma_terms:
            e += a * n[j] * m[i]
        return e % self.L

    def f_exponent(self, n, m):
        e = 0
        for j, i, a in self._f_terms:
            e += a * n[j] * m[i]
        return e % self.L

    def sigma(self, n, m):
        """sigma(n, m) = prod_{i<j} q_ji^{n_j m_i}."""
        return zeta(self.L, self.sigma_exponent(n, m))

    def f(self, n, m):
        """f(n, m) = prod_{i,j} q_ji^{n_j m_i}."""
        return zeta(self.L, self.f_exponent(n, m))

    def sigma_exponents(self, ns, ms):
        """Vectorized sigma exponents for integer arrays of shape (..., d)."""
        ns = np.asarray(ns, dtype=np.int64)
        ms = np.asarray(ms, dtype=np.int64)
        e = np.zeros(np.broadcast_shapes(ns.shape[:-1], ms.shape[:-1]), dtype=np.int64)
        for j, i, a in self._sigma_terms:
            e += a * ns[..., j] * ms[..., i]
        return e % self.L

    def f_exponents(self, ns, ms):
        ns = np.asarray(ns, dtype=np.int64)
        ms = np.asarray(ms, dtype=np.int64)
        e = np.zeros(np.broadcast_shapes(ns.shape[:-1], ms.shape[:-1]), dtype=np.int64)
        for j, i, a in self._f_terms:
            e += a * ns[..., j] * ms[..., i]
        return e % self.L

    # -- radical ----------------------------------------------------------

    def in_rad(self, n):
        return self.rad.contains(n)

    def require_normal(self):
        if not self.normal:
            raise ValueError("this operation needs q in normal form (use lattice.normalize_q)")

    # -- elements ---------------------------------------------------------

    def monomial(self, n, c=1):
        return TorusElement(self, {tuple(n): as_scalar(c)})

    def one(self):
        return self.monomial((0,) * self.d)

    def zero(self):
        return TorusElement(self, {})

    def qt_mul(self, a, b):
        return a * b

    def is_central(self, a):
        """True iff the support of a lies in Rad(f)."""
        return all(self.in_rad(n) for n in a.terms)

    def in_derived(self, a):
        """True iff a lies in C_q' (support avoids Rad(f))."""
        return not any(self.in_rad(n) for n in a.terms)


class CorruptedSigmaTorus(QuantumTorus):
    """Negative-control fixture: sigma(e_1, e_2) picks up an extra factor zeta_L^{L//2}.

    The change is at a single pair of degrees, so sigma stops being a
    cocycle and the bracket stops satisfying Jacobi.  Everything else
    (f, the radical, the matrix realization) is computed from q as usual.
    """

    def __init__(self, q):
        super().__init__(q)
        if self.L < 2 or self.d < 2:
            raise ValueError("a sigma fault needs d >= 2 and a nontrivial root of unity in q")
        self._e0 = np.eye(self.d, dtype=np.int64)[0]
        self._e1 = np.eye(self.d, dtype=np.int64)[1]

    def _bump(self, ns, ms):
        hit = np.all(np.asarray(ns) == self._e0, axis=-1) & np.all(np.asarray(ms) == self._e1, axis=-1)
        return hit * (self.L // 2)

    def sigma_exponent(self, n, m):
        return int((super().sigma_exponent(n, m) + self._bump(n, m)) % self.L)

    def sigma(self, n, m):
        return zeta(self.L, self.sigma_exponent(n, m))

    def sigma_exponents(self, ns, ms):
        return (super().sigma_exponents(ns, ms) + self._bump(ns, ms)) % self.L


def _looks_like_pairs(q):
    try:
        return all(isinstance(x, (list, tuple)) and len(x) == 2 and all(isinstance(y, int) for y in x)
                   for row in q for x in row)
    except TypeError:
        return False


class TorusElement:
    """Finite sum of c_n t^n with degrees stored as int tuples."""

    __slots__ = ("torus", "terms")

    def __init__(self, torus, terms):
        self.torus = torus
        clean = {}
        for n, c in terms.items():
            c = as_scalar(c)
            if c:
                n = tuple(int(x) for x in n)
                if len(n) != torus.d:
                    raise ValueError("degree %s has wrong length" % (n,))
                clean[n] = c
        self.terms = dict(sorted(clean.items()))

    def _check(self, other):
        if other.torus is not self.torus:
            raise ValueError("elements of different quantum tori")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for n, c in other.terms.items():
            out[n] = out[n] + c if n in out else c
        return TorusElement(self.torus, out)

    def __neg__(self):
        return TorusElement(self.torus, {n: -c for n, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = as_scalar(c)
        return TorusElement(self.torus, {n: c * x for n, x in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, TorusElement):
            return self.scale(other)
        self._check(other)
        T = self.torus
        out = {}
        for n, a in self.terms.items():
            for m, b in other.terms.items():
                k = tuple(x + y for x, y in zip(n, m))
                c = a * b * T.sigma(n, m)
                out[k] = out[k] + c if k in out else c
        return TorusElement(T, out)

    def __rmul__(self, c):
        return self.scale(c)

    def commutator(self, other):
        return self * other - other * self

    def is_zero(self):
        return not self.terms

    def degrees(self):
        return list(self.terms)

    def __eq__(self, other):
        if not isinstance(other, TorusElement):
            return NotImplemented
        return self.torus is other.torus and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join("(%s)*t^%s" % (c, n) for n, c in self.terms.items())

    def to_json(self):
        return [{"degree": list(n), "coeff": c.to_json()} for n, c in self.terms.items()]

    @classmethod
    def from_json(cls, torus, obj):
        return cls(torus, {tuple(t["degree"]): as_scalar(t["coeff"]) for t in obj})
