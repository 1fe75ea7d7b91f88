"""Matrix realization of C_q modulo its radical ideal, and Gamma-graded gl_N-modules."""

import json
from functools import lru_cache

from .cyclotomic import as_scalar, cyc_order
from .linalg import CycMatrix

__all__ = [
    "block_generators",
    "XRealization",
    "x_power",
    "loop_embed",
    "loop_mul",
    "GradedGlModule",
    "left_regular_module",
    "trivial_module",
    "degree_key",
    "parse_degree_key",
]


def block_generators(k, q_i):
    """(X_odd, X_even) for one tensor factor: diag(1, q, ..., q^{k-1}) and the cyclic shift."""
    q_i = as_scalar(q_i)
    if cyc_order(q_i) != k:
        raise ValueError("q_i must have order exactly %d" % k)
    x_odd = CycMatrix.diagonal([q_i ** j for j in range(k)])
    x_even = CycMatrix([[1 if j == (i + 1) % k else 0 for j in range(k)] for i in range(k)]) if k > 1 \
        else CycMatrix.identity(1)
    return x_odd, x_even


class XRealization:
    """X^n = (x) X_{2i-1}^{n_{2i-1}} X_{2i}^{n_{2i}} over the blocks of a normal-form torus."""

    def __init__(self, torus):
        torus.require_normal()
        self.torus = torus
        self.blocks = [(k, block_generators(k, qi)) for k, qi in torus.q.block_roots()]
        self.N = torus.rad.N
        self._cache = {}

    def power(self, n):
        n = tuple(n)
        key = tuple(n[2 * i] % k for i, (k, _) in enumerate(self.blocks)) + \
            tuple(n[2 * i + 1] % k for i, (k, _) in enumerate(self.blocks))
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        result = CycMatrix.identity(1)
        for i, (k, (xo, xe)) in enumerate(self.blocks):
            # X^k = 1 so exponents reduce mod k
            factor = (xo ** (n[2 * i] % k)) @ (xe ** (n[2 * i + 1] % k))
            result = result.kron(factor)
        self._cache[key] = result
        return result

    def identity(self):
        return CycMatrix.identity(self.N)


@lru_cache(maxsize=None)
def _realization(torus):
    return XRealization(torus)


def x_power(n, torus):
    """The matrix X^n in gl_N."""
    return _realization(torus).power(n)


def loop_embed(a):
    """Image of a torus element in gl_N (x) A: list of (c_n X^n, n)."""
    X = _realization(a.torus)
    return [(X.power(n).scale(c), n) for n, c in a.terms.items()]


def loop_mul(p, q):
    """Product in gl_N (x) A of two lists of (matrix, degree) pairs, merged by degree."""
    out = {}
    for a, n in p:
        for b, m in q:
            k = tuple(x + y for x, y in zip(n, m))
            prod = a @ b
            out[k] = out[k] + prod if k in out else prod
    return [(mat, k) for k, mat in sorted(out.items()) if not mat.is_zero()]


def degree_key(n):
    return ",".join(str(x) for x in n)


def parse_degree_key(s):
    return tuple(int(x) for x in s.split(",")) if s else ()


class GradedGlModule:
    """Finite-dimensional Gamma-graded gl_N-module.

    `action` maps each coset representative (a tuple in the radical box)
    to the dim x dim matrix by which X^n acts; `grading` gives the coset
    representative of each basis vector.
    """

    def __init__(self, torus, dim, action, grading, check=True):
        self.torus = torus
        self.rad = torus.rad
        self.N = torus.rad.N
        self.dim = dim
        self.grading = tuple(self.rad.reduce(g) for g in grading)
        self.action = {self.rad.reduce(k): (m if isinstance(m, CycMatrix) else CycMatrix(m))
                       for k, m in action.items()}
        self._components = {}
        for idx, g in enumerate(self.grading):
            self._components.setdefault(g, []).append(idx)
        if check:
            self.validate()

    def component(self, n):
        """Basis indices of W_{n bar}."""
        return self._components.get(self.rad.reduce(n), [])

    def component_dim(self, n):
        return len(self.component(n))

    def act(self, s):
        """Matrix of X^s on W (X^{s+r} = X^s for r in the radical)."""
        key = self.rad.reduce(s)
        m = self.action.get(key)
        if m is None:
            return CycMatrix.zeros(self.dim, self.dim)
        return m

    def block(self, s, n):
        """The component map W_{n bar} -> W_{(n+s) bar} of X^s."""
        rows = self.component(tuple(a + b for a, b in zip(n, s)))
        cols = self.component(n)
        return self.act(s).submatrix(rows, cols)

    def validate(self):
        if len(self.grading) != self.dim:
            raise ValueError("grading must list one coset per basis vector")
        for key, m in self.action.items():
            if m.shape != (self.dim, self.dim):
                raise ValueError("action matrix for %s has shape %s" % (key, m.shape))
        zero = (0,) * self.torus.d
        if self.act(zero) != CycMatrix.identity(self.dim):
            raise ValueError("the identity matrix E must act as the identity on W")
        for key, m in self.action.items():
            for j, g in enumerate(self.grading):
                target = self.rad.reduce(tuple(a + b for a, b in zip(key, g)))
                for i in range(self.dim):
                    if m[i, j] and self.grading[i] != target:
                        raise ValueError("X^%s does not map W_%s into W_%s" % (key, g, target))

    def graded_submodule(self, j):
        """Dimension of the submodule generated by basis vector j."""
        if all(len(v) == 1 for v in self._components.values()):
            # every matrix sends a basis line to a basis line: plain reachability
            edges = self._edges()
            seen, stack = {j}, [j]
            while stack:
                for k in edges[stack.pop()]:
                    if k not in seen:
                        seen.add(k)
                        stack.append(k)
            return len(seen)
        from .linalg import rank

        vecs = [tuple(1 if i == j else 0 for i in range(self.dim))]
        current = 1
        mats = list(self.action.values())
        frontier = list(vecs)
        while frontier:
            new = []
            for m in mats:
                for v in frontier:
                    w = m.apply(v)
                    if any(w):
                        r = rank(CycMatrix(vecs + [w]))
                        if r > current:
                            vecs.append(w)
                            new.append(w)
                            current = r
            frontier = new
        return current

    def _edges(self):
        edges = self.__dict__.get("_edge_cache")
        if edges is None:
            edges = [set() for _ in range(self.dim)]
            for m in self.action.values():
                for k, row in enumerate(m.entries):
                    for i, a in enumerate(row):
                        if a:
                            edges[i].add(k)
            self._edge_cache = edges
        return edges

    def is_graded_irreducible(self):
        """Every homogeneous basis vector generates all of W.

        This decides graded irreducibility when each W_n is one-dimensional,
        which covers the stock modules.
        """
        return all(self.graded_submodule(j) == self.dim for j in range(self.dim))

    def to_json(self):
        return {
            "N": self.N,
            "dim": self.dim,
            "grading": [self.rad.coset_index(g) for g in self.grading],
            "action": {degree_key(k): m.to_json() for k, m in sorted(self.action.items())},
        }

    @classmethod
    def from_json(cls, torus, obj):
        if isinstance(obj, str):
            with open(obj) as fh:
                obj = json.load(fh)
        if int(obj["N"]) != torus.rad.N:
            raise ValueError("module is for N=%s but the torus has N=%d" % (obj["N"], torus.rad.N))
        delta = torus.rad.delta
        grading = [delta[int(g)] if not isinstance(g, (list, str)) else
                   (tuple(g) if isinstance(g, list) else parse_degree_key(g)) for g in obj["grading"]]
        action = {parse_degree_key(k): CycMatrix.from_json(m) for k, m in obj["action"].items()}
        return cls(torus, int(obj["dim"]), action, grading)


@lru_cache(maxsize=None)
def left_regular_module(torus):
    """gl_N acting on itself by left multiplication, graded by W_{n bar} = C X^n."""
    X = _realization(torus)
    rad = torus.rad
    reps = list(rad.delta)
    N = rad.N
    basis = [X.power(r) for r in reps]
    index = {r: i for i, r in enumerate(reps)}
    action = {}
    for m in reps:
        Xm = X.power(m)
        cols = []
        for j, r in enumerate(reps):
            prod = Xm @ basis[j]
            target = rad.reduce(tuple(a + b for a, b in zip(m, r)))
            ref = basis[index[target]]
            coeff = _proportionality(prod, ref)
            col = [0] * len(reps)
            col[index[target]] = coeff
            cols.append(col)
        action[m] = CycMatrix([list(row) for row in zip(*cols)])
    return GradedGlModule(torus, len(reps), action, reps)


def trivial_module(torus):
    """One-dimensional module: E acts by 1, X^n by 0 for n outside the radical."""
    zero = (0,) * torus.d
    return GradedGlModule(torus, 1, {zero: CycMatrix.identity(1)}, [zero])


def _proportionality(a, b):
    """c with a = c * b for monomial-pattern matrices; raises if not proportional."""
    c = None
    for i in range(a.rows):
        for j in range(a.cols):
            if b[i, j]:
                c = a[i, j] / b[i, j]
                break
        if c is not None:
            break
    if c is None or a != b.scale(c):
        raise ArithmeticError("X^m X^n is not a multiple of X^{m+n}")
    return c
