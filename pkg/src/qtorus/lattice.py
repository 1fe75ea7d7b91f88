"""Integer lattice machinery: Smith form, the radical lattice and its cosets.

Integer matrices are plain lists of lists of Python ints (row-major).  The
radical of the commutator form is computed from the exponent matrix A of q
(q_ij = zeta_L^{a_ij}) as {n : A n = 0 mod L}.
"""

from dataclasses import dataclass, field
from itertools import product
from math import gcd

__all__ = [
    "smith_normal_form",
    "int_det",
    "matmul",
    "identity",
    "RadicalData",
    "radical_from_exponents",
    "radical_basis",
    "gamma_cosets",
    "xi_norm",
    "skew_normal_form",
    "normalize_q",
    "box",
]


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def transpose(a):
    return [list(r) for r in zip(*a)]


def int_det(a):
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(r) for r in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def smith_normal_form(A):
    """Return (S, U, V) with U A V = S diagonal, d_1 | d_2 | ..., U, V unimodular."""
    rows = len(A)
    cols = len(A[0]) if rows else 0
    M = [list(r) for r in A]
    U, V = identity(rows), identity(cols)

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in M:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, c):
        M[dst] = [x + c * y for x, y in zip(M[dst], M[src])]
        U[dst] = [x + c * y for x, y in zip(U[dst], U[src])]

    def add_col(src, dst, c):
        for r in M:
            r[dst] += c * r[src]
        for r in V:
            r[dst] += c * r[src]

    for t in range(min(rows, cols)):
        while True:
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    if M[i][j] and (best is None or abs(M[i][j]) < abs(M[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return M, U, V
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = M[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if M[i][t]:
                    add_row(t, i, -(M[i][t] // p))
                    dirty |= M[i][t] != 0
            for j in range(t + 1, cols):
                if M[t][j]:
                    add_col(t, j, -(M[t][j] // p))
                    dirty |= M[t][j] != 0
            if dirty:
                continue
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if M[i][j] % p), None)
            if bad is not None:
                add_row(bad[0], t, 1)
                continue
            if p < 0:
                M[t] = [-x for x in M[t]]
                U[t] = [-x for x in U[t]]
            break
    return M, U, V


def _column_hnf(gens, d):
    """Upper-triangular basis (as columns) of the lattice spanned by gens.

    Column j has zero entries below row j, a positive diagonal, and entries
    above the diagonal reduced into [0, h_ii).
    """
    vecs = [list(g) for g in gens if any(g)]
    basis = [None] * d
    for c in range(d - 1, -1, -1):
        while True:
            nz = [v for v in vecs if v[c]]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda v: abs(v[c]))
            piv = nz[0]
            for v in nz[1:]:
                q = v[c] // piv[c]
                for i in range(d):
                    v[i] -= q * piv[i]
            vecs = [v for v in vecs if any(v)]
        nz = [v for v in vecs if v[c]]
        if not nz:
            raise ValueError("generators do not span a full-rank lattice")
        piv = nz[0]
        if piv[c] < 0:
            piv = [-x for x in piv]
        vecs = [v for v in vecs if not v[c]]
        basis[c] = piv
    for i in range(d - 1, -1, -1):
        for j in range(i + 1, d):
            q = basis[j][i] // basis[i][i]
            if q:
                basis[j] = [x - q * y for x, y in zip(basis[j], basis[i])]
    return transpose(basis)


def box(diag):
    """All integer points in prod [0, diag_i), lexicographic."""
    return [tuple(p) for p in product(*[range(k) for k in diag])]


@dataclass(frozen=True)
class RadicalData:
    """The lattice Rad(f) with its xi-basis, invariants and coset representatives."""

    d: int
    xi_basis: tuple          # d x d, columns xi_1..xi_d (upper triangular)
    invariants_k: tuple      # k_1 >= ... >= k_z, k_{i+1} | k_i
    z: int
    N: int
    delta: tuple = field(repr=False)

    @property
    def xis(self):
        return [tuple(self.xi_basis[i][j] for i in range(self.d)) for j in range(self.d)]

    @property
    def box_diag(self):
        return tuple(self.xi_basis[i][i] for i in range(self.d))

    @property
    def gamma_order(self):
        return len(self.delta)

    def coords(self, n):
        """gamma with n = sum gamma_i xi_i, or None if n is not in the lattice."""
        n = list(n)
        if len(n) != self.d:
            raise ValueError("expected a vector of length %d" % self.d)
        gamma = [0] * self.d
        for j in range(self.d - 1, -1, -1):
            h = self.xi_basis[j][j]
            if n[j] % h:
                return None
            g = n[j] // h
            gamma[j] = g
            for i in range(j + 1):
                n[i] -= g * self.xi_basis[i][j]
        return tuple(gamma)

    def contains(self, n):
        return self.coords(n) is not None

    def reduce(self, n):
        """The coset representative of n (lies in the box of the diagonal)."""
        n = list(n)
        for j in range(self.d - 1, -1, -1):
            h = self.xi_basis[j][j]
            g = n[j] // h
            if g:
                for i in range(j + 1):
                    n[i] -= g * self.xi_basis[i][j]
        return tuple(n)

    def coset_index(self, n):
        return self._index[self.reduce(n)]

    @property
    def _index(self):
        idx = self.__dict__.get("_index_cache")
        if idx is None:
            idx = {rep: i for i, rep in enumerate(self.delta)}
            object.__setattr__(self, "_index_cache", idx)
        return idx

    def point(self, gamma):
        return tuple(sum(self.xi_basis[i][j] * gamma[j] for j in range(self.d)) for i in range(self.d))

    def norm(self, r):
        return xi_norm(r, self)

    def points(self, max_norm):
        """All lattice points with xi-norm at most max_norm."""
        out = []
        for gamma in product(range(-max_norm, max_norm + 1), repeat=self.d):
            if sum(abs(g) for g in gamma) <= max_norm:
                out.append(self.point(gamma))
        return out

    def to_json(self):
        return {
            "d": self.d,
            "xi_basis": [list(r) for r in self.xi_basis],
            "invariants_k": list(self.invariants_k),
            "z": self.z,
            "N": self.N,
            "gamma_order": self.gamma_order,
            "delta": [list(p) for p in self.delta],
        }


def radical_from_exponents(A, L):
    """Rad(f) for the exponent matrix A (q_ij = zeta_L^{A[i][j]})."""
    d = len(A)
    S, U, V = smith_normal_form([[x % L for x in r] for r in A])
    # A n = 0 mod L  <=>  S y = 0 mod L with n = V y
    steps = [L // gcd(S[i][i], L) for i in range(d)]
    gens = [[V[i][j] * steps[j] for i in range(d)] for j in range(d)]
    H = _column_hnf(gens, d)
    diag = [H[i][i] for i in range(d)]
    Sx, _, _ = smith_normal_form(H)
    factors = sorted(abs(Sx[i][i]) for i in range(d) if abs(Sx[i][i]) > 1)
    if len(factors) % 2:
        raise ValueError("radical quotient is not of symplectic type: %s" % factors)
    pairs = factors[::2]
    if factors[1::2] != pairs:
        raise ValueError("radical quotient is not of symplectic type: %s" % factors)
    ks = tuple(sorted(pairs, reverse=True))
    N = 1
    for k in ks:
        N *= k
    delta = tuple(box(diag))
    return RadicalData(d=d, xi_basis=tuple(tuple(r) for r in H), invariants_k=ks, z=len(ks), N=N, delta=delta)


def radical_basis(q):
    """RadicalData of a rational QMatrix."""
    L, A = q.exponents()
    return radical_from_exponents(A, L)


def gamma_cosets(rad):
    return list(rad.delta)


def xi_norm(r, rad):
    gamma = rad.coords(r)
    if gamma is None:
        raise ValueError("%s is not in Rad(f)" % (tuple(r),))
    return sum(abs(g) for g in gamma)


def skew_normal_form(B):
    """Unimodular P and block matrix C with P^T B P = C for integer skew B.

    C is block diagonal with blocks [[0, -c_i], [c_i, 0]] (c_i > 0) on the
    coordinate pairs (2i, 2i+1), c_1 | c_2 | ..., and zeros elsewhere.
    """
    d = len(B)
    M = [list(r) for r in B]
    P = identity(d)

    def swap(i, j):
        M[i], M[j] = M[j], M[i]
        for r in M:
            r[i], r[j] = r[j], r[i]
        for r in P:
            r[i], r[j] = r[j], r[i]

    def addmul(src, dst, c):
        # congruence by E = I + c e_src e_dst^T
        M[dst] = [x + c * y for x, y in zip(M[dst], M[src])]
        for r in M:
            r[dst] += c * r[src]
        for r in P:
            r[dst] += c * r[src]

    t = 0
    while t + 1 < d:
        best = None
        for i in range(t, d):
            for j in range(i + 1, d):
                if M[i][j] and (best is None or abs(M[i][j]) < abs(M[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        swap(t, i)
        if j == t:
            j = i
        swap(t + 1, j)
        if M[t + 1][t] < 0:
            swap(t, t + 1)
        p = M[t + 1][t]
        dirty = False
        for k in range(t + 2, d):
            if M[t][k]:
                # M[t][k] += c * M[t][t+1] = c * (-p)
                addmul(t + 1, k, M[t][k] // p)
                dirty |= M[t][k] != 0
            if M[t + 1][k]:
                addmul(t, k, -(M[t + 1][k] // p))
                dirty |= M[t + 1][k] != 0
        if dirty:
            continue
        bad = next(((a, b) for a in range(t + 2, d) for b in range(t + 2, d) if M[a][b] % p), None)
        if bad is not None:
            addmul(bad[0], t, 1)
            continue
        t += 2
    return P, M


def normalize_q(q):
    """(q_std, P): q_std in block normal form, P unimodular, f_std(n,m) = f_q(Pn, Pm)."""
    from .torus import QMatrix

    L, A = q.exponents()
    d = q.d
    B = [[0] * d for _ in range(d)]
    for i in range(d):
        for j in range(i):
            B[i][j] = A[i][j] % L
            B[j][i] = -B[i][j]
    P, C = skew_normal_form(B)
    exps = [[0] * d for _ in range(d)]
    for i in range(0, d - 1, 2):
        c = C[i + 1][i] % L
        exps[i + 1][i] = c
        exps[i][i + 1] = (-c) % L
    return QMatrix.from_exponents(exps, L), P
