"""Dense matrices over Q(zeta_L) and exact linear algebra.

Rank, row reduction and kernels are computed by expanding every scalar into
its multiplication matrix on the power basis of Q(zeta_F), which turns a
matrix over the cyclotomic field into a rational matrix handled by flint.
"""

from functools import lru_cache
from math import lcm

from flint import fmpq, fmpq_mat, fmpq_poly

from .cyclotomic import CycScalar, as_scalar, cyclotomic_poly, totient

__all__ = [
    "CycMatrix",
    "field_order",
    "expand_matrix",
    "expand_vector",
    "collapse_vector",
    "rank",
    "nullspace",
    "row_basis",
    "qmat_nullspace",
    "qmat_rowspace",
]

_ZERO = CycScalar.rational(0)
_ONE = CycScalar.rational(1)


class CycMatrix:
    """Immutable rows x cols matrix with CycScalar entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries, rows=None, cols=None):
        entries = tuple(tuple(as_scalar(x) for x in row) for row in entries)
        self.rows = len(entries) if rows is None else rows
        self.cols = (len(entries[0]) if entries else 0) if cols is None else cols
        if any(len(r) != self.cols for r in entries) or len(entries) != self.rows:
            raise ValueError("ragged matrix")
        self.entries = entries

    @classmethod
    def identity(cls, n):
        return cls([[_ONE if i == j else _ZERO for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def zeros(cls, rows, cols):
        return cls([[_ZERO] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def diagonal(cls, values):
        n = len(values)
        return cls([[as_scalar(values[i]) if i == j else _ZERO for j in range(n)] for i in range(n)], n, n)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError("shape mismatch %s @ %s" % (self.shape, other.shape))
        cols = list(zip(*other.entries)) if other.rows else [()] * other.cols
        out = []
        for row in self.entries:
            nz = [(k, a) for k, a in enumerate(row) if a]
            new = []
            for col in cols:
                acc = _ZERO
                for k, a in nz:
                    b = col[k]
                    if b:
                        acc = acc + a * b
                new.append(acc)
            out.append(new)
        return CycMatrix(out, self.rows, other.cols)

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return CycMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
                         self.rows, self.cols)

    def __neg__(self):
        return CycMatrix([[-a for a in r] for r in self.entries], self.rows, self.cols)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = as_scalar(c)
        return CycMatrix([[c * a for a in r] for r in self.entries], self.rows, self.cols)

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def __pow__(self, n):
        if self.rows != self.cols or n < 0:
            raise ValueError("only nonnegative powers of square matrices")
        result, base = CycMatrix.identity(self.rows), self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def kron(self, other):
        out = []
        for r in self.entries:
            for s in other.entries:
                out.append([a * b for a in r for b in s])
        return CycMatrix(out, self.rows * other.rows, self.cols * other.cols)

    def transpose(self):
        return CycMatrix([list(c) for c in zip(*self.entries)], self.cols, self.rows)

    def apply(self, vec):
        """Matrix times a column vector given as a sequence of scalars."""
        if len(vec) != self.cols:
            raise ValueError("vector length %d, expected %d" % (len(vec), self.cols))
        return tuple(_dot(row, vec) for row in self.entries)

    def submatrix(self, rows, cols):
        return CycMatrix([[self.entries[i][j] for j in cols] for i in rows], len(rows), len(cols))

    def is_zero(self):
        return all(not a for r in self.entries for a in r)

    def __eq__(self, other):
        if not isinstance(other, CycMatrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for r, s in zip(self.entries, other.entries) for a, b in zip(r, s))

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return "CycMatrix(%s)" % ([[str(a) for a in r] for r in self.entries],)

    def to_json(self):
        return [[a.to_json() for a in r] for r in self.entries]

    @classmethod
    def from_json(cls, obj):
        return cls([[as_scalar(a) for a in r] for r in obj])


def _dot(row, vec):
    acc = _ZERO
    for a, b in zip(row, vec):
        if a and b:
            acc = acc + a * b
    return acc


def field_order(*scalars):
    """lcm of the orders of the given scalars (1 if none)."""
    L = 1
    for s in scalars:
        L = lcm(L, as_scalar(s).order)
    return L


@lru_cache(maxsize=None)
def _reduction_table(F):
    # zeta_F^e mod Phi_F as coefficient lists for 0 <= e < 2 phi(F)
    phi = cyclotomic_poly(F)
    n = totient(F)
    table = []
    for e in range(2 * n):
        cs = (fmpq_poly([0] * e + [1]) % phi).coeffs()
        table.append(list(cs) + [fmpq(0)] * (n - len(cs)))
    return table


def _coeff_list(a, F):
    n = totient(F)
    cs = a.promote(F).poly.coeffs()
    return list(cs) + [fmpq(0)] * (n - len(cs))


def _mult_block(a, F):
    """phi(F) x phi(F) rational matrix of multiplication by a."""
    n = totient(F)
    c = _coeff_list(a, F)
    red = _reduction_table(F)
    block = [[fmpq(0)] * n for _ in range(n)]
    for k in range(n):
        for j in range(n):
            if c[j] != 0:
                col = red[j + k]
                for i in range(n):
                    if col[i] != 0:
                        block[i][k] += c[j] * col[i]
    return block


def expand_matrix(m, F=None):
    """Rational matrix of a CycMatrix (or nested scalar lists) over Q(zeta_F)."""
    if not isinstance(m, CycMatrix):
        m = CycMatrix(m)
    if F is None:
        F = field_order(*[a for r in m.entries for a in r])
    n = totient(F)
    out = fmpq_mat(m.rows * n, m.cols * n)
    for i, row in enumerate(m.entries):
        for j, a in enumerate(row):
            if not a:
                continue
            if a.order == 1:
                c = a.poly.coeffs()[0]
                for k in range(n):
                    out[i * n + k, j * n + k] = c
                continue
            block = _mult_block(a, F)
            for r in range(n):
                for s in range(n):
                    if block[r][s] != 0:
                        out[i * n + r, j * n + s] = block[r][s]
    return out


def expand_vector(vec, F):
    n = totient(F)
    out = []
    for a in vec:
        out.extend(_coeff_list(as_scalar(a), F))
    return out


def collapse_vector(values, F):
    """Inverse of expand_vector."""
    n = totient(F)
    if len(values) % n:
        raise ValueError("length not a multiple of phi(F)")
    return tuple(CycScalar._raw(F, fmpq_poly(list(values[i:i + n]))) for i in range(0, len(values), n))


def _orbit_rows(vec, F):
    # Q-basis of the Q(zeta)-line through vec: zeta^k * vec for k < phi(F)
    n = totient(F)
    z = CycScalar._raw(F, fmpq_poly([0, 1])) if F > 2 else None
    rows, cur = [], tuple(as_scalar(a) for a in vec)
    for k in range(n):
        rows.append(expand_vector(cur, F))
        if z is not None:
            cur = tuple(z * a for a in cur)
    return rows


def qmat_rowspace(rows, ncols):
    """Nonzero rows of the rref of a list of rational rows (as fmpq_mat)."""
    if not rows:
        return fmpq_mat(0, ncols)
    m = fmpq_mat(len(rows), ncols, [x for r in rows for x in r])
    red, rk = m.rref()
    return fmpq_mat(rk, ncols, [red[i, j] for i in range(rk) for j in range(ncols)])


def qmat_nullspace(m):
    """Basis (list of fmpq lists) of the right kernel of a rational matrix."""
    red, rk = m.rref()
    ncols = m.ncols()
    pivots, r = [], 0
    for j in range(ncols):
        if r < rk and red[r, j] != 0:
            pivots.append(j)
            r += 1
    free = [j for j in range(ncols) if j not in set(pivots)]
    basis = []
    for f in free:
        v = [fmpq(0)] * ncols
        v[f] = fmpq(1)
        for i, p in enumerate(pivots):
            v[p] = -red[i, f]
        basis.append(v)
    return basis


def rank(m, F=None):
    """Rank over Q(zeta_F) of a CycMatrix."""
    if not isinstance(m, CycMatrix):
        m = CycMatrix(m)
    if m.rows == 0 or m.cols == 0:
        return 0
    if F is None:
        F = field_order(*[a for r in m.entries for a in r])
    rk = expand_matrix(m, F).rank()
    n = totient(F)
    assert rk % n == 0
    return rk // n


def nullspace(m, F=None):
    """Basis over Q(zeta_F) of the right kernel of a CycMatrix."""
    if not isinstance(m, CycMatrix):
        m = CycMatrix(m)
    if F is None:
        F = field_order(*[a for r in m.entries for a in r])
    if m.rows == 0:
        return [tuple(_ONE if i == j else _ZERO for i in range(m.cols)) for j in range(m.cols)]
    qbasis = qmat_nullspace(expand_matrix(m, F))
    # each Q-kernel vector is a Q(zeta)-kernel vector; keep an independent subset
    out, span_rows = [], []
    for v in qbasis:
        cand = collapse_vector(v, F)
        trial = span_rows + _orbit_rows(cand, F)
        if qmat_rowspace(trial, m.cols * totient(F)).nrows() > len(span_rows):
            out.append(cand)
            span_rows = trial
        if len(out) * totient(F) == len(qbasis):
            break
    return out


def row_basis(vectors, F=None):
    """Indices of a maximal Q(zeta)-independent subset of the given vectors (greedy)."""
    vectors = [tuple(as_scalar(a) for a in v) for v in vectors]
    if not vectors:
        return []
    if F is None:
        F = field_order(*[a for v in vectors for a in v])
    ncols = len(vectors[0]) * totient(F)
    chosen, rows, rk = [], [], 0
    for idx, v in enumerate(vectors):
        trial = rows + _orbit_rows(v, F)
        new_rk = qmat_rowspace(trial, ncols).nrows()
        if new_rk > rk:
            chosen.append(idx)
            rows, rk = trial, new_rk
    return chosen
