"""gl_d-modules, the graded Der(C_q)-modules V^alpha(V, W), and windowed checks on them."""

import json
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from math import lcm

import numpy as np
from flint import fmpq, fmpq_mat, fmpq_poly

from .cyclotomic import CycScalar, as_scalar, totient
from .derivations import Derivation, der_bracket, pairing, window_degrees, window_generators
from .glrep import GradedGlModule, left_regular_module, trivial_module
from .linalg import CycMatrix, expand_matrix, expand_vector, collapse_vector, field_order, qmat_nullspace
from .torus import TorusElement

__all__ = [
    "GlDModule",
    "young_module",
    "weyl_dimension",
    "ModuleDescriptor",
    "GradedVector",
    "vw_act",
    "verify_rep",
    "submodule_probe",
    "reducibility_probe",
]

_ZERO = as_scalar(0)
_ONE = as_scalar(1)


# ---------------------------------------------------------------------------
# gl_d-modules


class GlDModule:
    """A finite-dimensional gl_d-module given by the matrices of the E_ij."""

    def __init__(self, d, dim, action, highest_weight=None, b=None, check=True):
        self.d = d
        self.dim = dim
        self.action = {ij: (m if isinstance(m, CycMatrix) else CycMatrix(m)) for ij, m in action.items()}
        self.highest_weight = tuple(highest_weight) if highest_weight is not None else None
        ident = self.rho([[_ONE if i == j else _ZERO for j in range(d)] for i in range(d)])
        self.b = ident[0, 0] if dim else as_scalar(b if b is not None else 0)
        if check:
            self.validate()

    def E(self, i, j):
        m = self.action.get((i, j))
        return m if m is not None else CycMatrix.zeros(self.dim, self.dim)

    def rho(self, X):
        """Image of the d x d matrix X = sum X_ij E_ij."""
        out = CycMatrix.zeros(self.dim, self.dim)
        for i in range(self.d):
            for j in range(self.d):
                c = as_scalar(X[i][j])
                if c:
                    out = out + self.E(i, j).scale(c)
        return out

    def rho_outer(self, r, u):
        """Image of the outer product r u^T."""
        return self.rho([[as_scalar(r[i]) * u[j] for j in range(self.d)] for i in range(self.d)])

    def validate(self):
        d = self.d
        for m in self.action.values():
            if m.shape != (self.dim, self.dim):
                raise ValueError("action matrices must be %d x %d" % (self.dim, self.dim))
        for i, j, k, l in product(range(d), repeat=4):
            lhs = self.E(i, j) @ self.E(k, l) - self.E(k, l) @ self.E(i, j)
            rhs = CycMatrix.zeros(self.dim, self.dim)
            if j == k:
                rhs = rhs + self.E(i, l)
            if l == i:
                rhs = rhs - self.E(k, j)
            if lhs != rhs:
                raise ValueError("[E_%d%d, E_%d%d] is not represented correctly" % (i + 1, j + 1, k + 1, l + 1))
        ident = self.rho([[1 if i == j else 0 for j in range(d)] for i in range(d)])
        if ident != CycMatrix.identity(self.dim).scale(self.b):
            raise ValueError("the identity matrix does not act by a scalar")

    def to_json(self):
        return {"d": self.d, "dim": self.dim, "lambda": list(self.highest_weight or ()), "b": self.b.to_json()}


def weyl_dimension(lam, d):
    """Dimension of the irreducible gl_d-module of highest weight lam."""
    lam = list(lam) + [0] * (d - len(lam))
    num, den = 1, 1
    for i in range(d):
        for j in range(i + 1, d):
            num *= lam[i] - lam[j] + j - i
            den *= j - i
    return num // den


def _tableau(lam):
    rows, k = [], 0
    for part in lam:
        rows.append(list(range(k, k + part)))
        k += part
    cols = [[row[c] for row in rows if c < len(row)] for c in range(lam[0] if lam else 0)]
    return rows, cols


def _perm_sign(p):
    sign, seen = 1, set()
    for i in range(len(p)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _subgroup(blocks, k):
    """All permutations of range(k) preserving each block setwise."""
    out = [list(range(k))]
    for blk in blocks:
        nxt = []
        for base in out:
            for img in permutations(blk):
                p = list(base)
                for a, b in zip(blk, img):
                    p[a] = b
                nxt.append(p)
        out = nxt
    return [tuple(p) for p in out]


@lru_cache(maxsize=None)
def _schur_data(lam, d):
    # image of the Young symmetrizer a_lam b_lam on (C^d)^{(x) k}, with the E_ij restricted to it
    k = sum(lam)
    size = d ** k
    idx = np.array(list(product(range(d), repeat=k)), dtype=np.int64).reshape(size, k)
    weights = d ** np.arange(k - 1, -1, -1)

    def perm_matrix(p):
        m = np.zeros((size, size), dtype=np.int64)
        m[idx[:, list(p)] @ weights, np.arange(size)] = 1
        return m

    rows, cols = _tableau(lam)
    a = sum(perm_matrix(p) for p in _subgroup(rows, k))
    b = sum(_perm_sign(p) * perm_matrix(p) for p in _subgroup(cols, k))
    c = a @ b
    cq = fmpq_mat(size, size, [int(x) for x in c.ravel()])
    red, rk = cq.transpose().rref()
    basis = [[red[i, j] for j in range(size)] for i in range(rk)]  # rows span the column space
    B = fmpq_mat(size, rk, [basis[j][i] for i in range(size) for j in range(rk)])
    # rows where B is invertible
    redB, _ = B.transpose().rref()
    piv, r = [], 0
    for j in range(size):
        if r < rk and redB[r, j] != 0:
            piv.append(j)
            r += 1
    Bp_inv = fmpq_mat(rk, rk, [B[i, j] for i in piv for j in range(rk)]).inv() if rk else None
    action = {}
    for i in range(d):
        for j in range(d):
            E = np.zeros((size, size), dtype=np.int64)
            for pos in range(k):
                src = np.nonzero(idx[:, pos] == j)[0]
                tgt_idx = idx[src].copy()
                tgt_idx[:, pos] = i
                E[tgt_idx @ weights, src] += 1
            Eq = fmpq_mat(size, size, [int(x) for x in E.ravel()])
            EB = Eq * B
            X = Bp_inv * fmpq_mat(rk, rk, [EB[p, s] for p in piv for s in range(rk)]) if rk else None
            if rk and B * X != EB:
                raise ArithmeticError("Young symmetrizer image is not gl_d-stable")
            action[i, j] = [[Fraction(int(X[a_, b_].p), int(X[a_, b_].q)) for b_ in range(rk)]
                            for a_ in range(rk)] if rk else []
    return rk, action


def young_module(lam, d, b=None):
    """Irreducible gl_d-module of highest weight lam, with the identity matrix acting by b.

    Built as the image of a Young symmetrizer on tensors; the identity
    component is then shifted by (b - |lam|)/d, leaving sl_d untouched.
    b defaults to |lam| (no shift).
    """
    lam = tuple(int(x) for x in lam if int(x) != 0)
    if any(x < 0 for x in lam) or list(lam) != sorted(lam, reverse=True):
        raise ValueError("lambda must be a partition")
    if len(lam) > d:
        raise ValueError("a partition with %d parts has no gl_%d module" % (len(lam), d))
    k = sum(lam)
    b = as_scalar(k if b is None else b)
    shift = (b - k) / d
    if k == 0:
        dim, raw = 1, {(i, j): [[0]] for i in range(d) for j in range(d)}
    else:
        dim, raw = _schur_data(lam, d)
    action = {}
    for (i, j), m in raw.items():
        mat = CycMatrix(m) if dim else CycMatrix.zeros(0, 0)
        if i == j:
            mat = mat + CycMatrix.identity(dim).scale(shift)
        action[i, j] = mat
    return GlDModule(d, dim, action, highest_weight=lam, b=b)


# ---------------------------------------------------------------------------
# graded vectors and the modules V^alpha(V, W)


class GradedVector:
    """Finitely supported element: degree n -> coefficients in V (x) W_n (V-index major)."""

    __slots__ = ("support",)

    def __init__(self, support=None):
        clean = {}
        for n, vec in (support or {}).items():
            vec = tuple(as_scalar(x) for x in vec)
            if any(vec):
                clean[tuple(int(x) for x in n)] = vec
        self.support = dict(sorted(clean.items()))

    def __add__(self, other):
        out = dict(self.support)
        for n, v in other.support.items():
            out[n] = tuple(a + b for a, b in zip(out[n], v)) if n in out else v
        return GradedVector(out)

    def scale(self, c):
        c = as_scalar(c)
        return GradedVector({n: tuple(c * a for a in v) for n, v in self.support.items()})

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, c):
        return self.scale(c)

    def is_zero(self):
        return not self.support

    def __eq__(self, other):
        if not isinstance(other, GradedVector):
            return NotImplemented
        return self.support == other.support

    def __hash__(self):
        return hash(tuple(self.support.items()))

    def __repr__(self):
        return "GradedVector(%s)" % {n: [str(a) for a in v] for n, v in self.support.items()}

    def to_json(self):
        return [{"degree": list(n), "coeffs": [a.to_json() for a in v]} for n, v in self.support.items()]


def _kron_identity_right(m, k):
    """m (x) I_k."""
    if k == 1:
        return m
    return m.kron(CycMatrix.identity(k))


class ModuleDescriptor:
    """The module V^alpha(V, W) = sum_n V (x) W_{n bar} (x) t^n, evaluated lazily.

    `fault` is only for negative controls: "d-sign" flips the sign of the
    matrix term in the D(u, r) action.
    """

    def __init__(self, torus, V, W, alpha, fault=None):
        torus.require_normal()
        if W.torus is not torus and W.N != torus.rad.N:
            raise ValueError("W is a module for a different gl_N")
        alpha = tuple(as_scalar(a) for a in alpha)
        if len(alpha) != torus.d or V.d != torus.d:
            raise ValueError("alpha and V must match d = %d" % torus.d)
        zero = (0,) * torus.d
        if W.act(zero) != CycMatrix.identity(W.dim):
            raise ValueError("E must act as the identity on W")
        self.torus = torus
        self.rad = torus.rad
        self.V = V
        self.W = W
        self.alpha = alpha
        self.fault = fault
        scalars = [torus.q[i, j] for i in range(torus.d) for j in range(torus.d)]
        scalars += list(alpha) + [V.b]
        scalars += [a for m in W.action.values() for r in m.entries for a in r]
        scalars += [a for m in V.action.values() for r in m.entries for a in r]
        self.F = lcm(torus.L, field_order(*scalars))
        self.phi = totient(self.F)
        self._cache = {}

    # -- shapes -------------------------------------------------------------

    def weight_dim(self, n):
        return self.V.dim * self.W.component_dim(n)

    def weight(self, n):
        """The weight alpha + n."""
        return tuple(a + x for a, x in zip(self.alpha, n))

    # -- operator blocks (CycMatrix level) ---------------------------------

    def t_block(self, s, n):
        """Matrix of t^s: M_n -> M_{n+s}."""
        key = ("t", self.rad.reduce(s), self.rad.reduce(n))
        hit = self._cache.get(key)
        if hit is None:
            wb = self.W.block(s, n)
            hit = CycMatrix.identity(self.V.dim).kron(wb)
            self._cache[key] = hit
        return hit

    def rho_block(self, u, r):
        key = ("rho", tuple(u), tuple(r))
        hit = self._cache.get(key)
        if hit is None:
            hit = self.V.rho_outer(r, u)
            if self.fault == "d-sign":
                hit = -hit
            self._cache[key] = hit
        return hit

    def D_block(self, u, r, n):
        """Matrix of D(u, r): M_n -> M_{n+r}."""
        u = tuple(as_scalar(x) for x in u)
        scal = pairing(u, self.weight(n)) if any(self.alpha) else pairing(u, n)
        m = CycMatrix.identity(self.V.dim).scale(scal) + self.rho_block(u, r)
        return _kron_identity_right(m, self.W.component_dim(n))

    def op_block(self, x, n):
        """Matrix of a homogeneous Derivation or torus monomial on M_n, with its degree."""
        if isinstance(x, TorusElement):
            if len(x.terms) != 1:
                raise ValueError("op_block needs a homogeneous element")
            (s, c), = x.terms.items()
            return self.t_block(s, n).scale(c), s
        if not x.is_homogeneous():
            raise ValueError("op_block needs a homogeneous element")
        if x.is_zero():
            return None, None
        if x.inner:
            (s, c), = x.inner.items()
            return self.t_block(s, n).scale(c), s
        (r, u), = x.witt.items()
        return self.D_block(u, r, n), r

    # -- rational expansions for fast checks --------------------------------

    def qblock(self, x, n, key=None):
        """op_block expanded to a rational matrix over Q(zeta_F); cached when key is given."""
        if key is not None:
            ck = ("q", key, tuple(n))
            hit = self._cache.get(ck)
            if hit is not None:
                return hit
        m, deg = self.op_block(x, n)
        q = expand_matrix(m, self.F) if m is not None else None
        if key is not None:
            self._cache[ck] = (q, deg)
        return q, deg

    def zeta_block(self, n):
        """Multiplication by zeta_F on M_n, as a rational matrix."""
        key = ("zeta", self.rad.reduce(n))
        hit = self._cache.get(key)
        if hit is None:
            from .cyclotomic import zeta

            hit = expand_matrix(CycMatrix.identity(self.weight_dim(n)).scale(zeta(self.F)), self.F)
            self._cache[key] = hit
        return hit

    # -- serialization ----------------------------------------------------

    def to_json(self):
        return {
            "V": self.V.to_json(),
            "W": {"N": self.W.N, "dim": self.W.dim},
            "alpha": [a.to_json() for a in self.alpha],
        }

    @classmethod
    def from_config(cls, torus, spec, base_dir="."):
        """Build from {V: {lambda, b}, W: "left-regular" | "trivial" | path | object, alpha}."""
        import os

        vspec = spec.get("V", {})
        V = young_module(vspec.get("lambda", []), torus.d, vspec.get("b"))
        wspec = spec.get("W", "left-regular")
        if wspec == "left-regular":
            W = left_regular_module(torus)
        elif wspec == "trivial":
            W = trivial_module(torus)
        elif isinstance(wspec, dict):
            W = GradedGlModule.from_json(torus, wspec)
        else:
            path = wspec if os.path.isabs(wspec) else os.path.join(base_dir, wspec)
            with open(path) as fh:
                W = GradedGlModule.from_json(torus, json.load(fh))
        alpha = spec.get("alpha", [0] * torus.d)
        return cls(torus, V, W, [as_scalar(a) for a in alpha], fault=spec.get("fault"))


def vw_act(x, v, desc):
    """Action of a Derivation or TorusElement (any finite sum) on a GradedVector."""
    pieces = x.terms() if isinstance(x, Derivation) else \
        [TorusElement(x.torus, {n: c}) for n, c in x.terms.items()]
    out = {}
    for piece in pieces:
        for n, vec in v.support.items():
            if len(vec) != desc.weight_dim(n):
                raise ValueError("component at degree %s has length %d, expected %d"
                                 % (n, len(vec), desc.weight_dim(n)))
            m, deg = desc.op_block(piece, n)
            if m is None:
                continue
            target = tuple(a + b for a, b in zip(n, deg))
            w = m.apply(vec)
            out[target] = tuple(a + b for a, b in zip(out[target], w)) if target in out else w
    return GradedVector(out)


# ---------------------------------------------------------------------------
# representation check


def _generator_key(x):
    if x.inner:
        (s, c), = x.inner.items()
        return ("ad", s, str(c))
    (r, u), = x.witt.items()
    return ("D", r, tuple(str(a) for a in u))


def verify_rep(desc, window, vector_window=None, max_failures=1):
    """Check the Lie representation law and its compatibility with the t^r action on windows.

    Operators: homogeneous generators with degrees |s|_inf <= window.  Vectors:
    all basis vectors at degrees |n|_inf <= vector_window (default window).
    Returns a dict report; on failure it carries a concrete counterexample.
    """
    if window < 1:
        raise ValueError("window must be at least 1")
    vw = window if vector_window is None else vector_window
    T = desc.torus
    gens = window_generators(T, window)
    keys = [_generator_key(g) for g in gens]
    degrees = window_degrees(T.d, vw)
    failures = []
    checked = 0

    def q(x, key, n):
        return desc.qblock(x, n, key)

    for a in range(len(gens)):
        x, kx = gens[a], keys[a]
        for b in range(a + 1, len(gens)):
            y, ky = gens[b], keys[b]
            br = der_bracket(x, y)
            for n in degrees:
                if not desc.weight_dim(n):
                    continue
                qy, dy = q(y, ky, n)
                qx, dx = q(x, kx, n)
                n_y = tuple(i + j for i, j in zip(n, dy))
                n_x = tuple(i + j for i, j in zip(n, dx))
                rhs = q(x, kx, n_y)[0] * qy - q(y, ky, n_x)[0] * qx
                if br.is_zero():
                    ok = rhs == fmpq_mat(rhs.nrows(), rhs.ncols())
                else:
                    lhs, _ = desc.qblock(br, n)
                    ok = lhs == rhs
                checked += 1
                if not ok:
                    failures.append({"law": "bracket", "x": x.to_json(), "y": y.to_json(), "degree": list(n)})
                    if len(failures) >= max_failures:
                        return _rep_report(False, checked, failures, window, vw)
    central = [r for r in window_degrees(T.d, window) if T.in_rad(r)]
    for a, x in enumerate(gens):
        for r2 in central:
            z = T.monomial(r2)
            for n in degrees:
                if not desc.weight_dim(n):
                    continue
                qz, _ = desc.qblock(z, n, ("z", r2))
                qx, dx = q(x, keys[a], n)
                n_z = tuple(i + j for i, j in zip(n, r2))
                n_x = tuple(i + j for i, j in zip(n, dx))
                comm = q(x, keys[a], n_z)[0] * qz - desc.qblock(z, n_x, ("z", r2))[0] * qx
                if x.witt:
                    # [D(u,r), t^r'] acts as (u|r') t^{r+r'}
                    (r, u), = x.witt.items()
                    c = pairing(u, r2)
                    if c:
                        target = T.monomial(tuple(i + j for i, j in zip(r, r2)), c)
                        lhs, _ = desc.qblock(target, n)
                    else:
                        lhs = fmpq_mat(comm.nrows(), comm.ncols())
                    law = "witt-central"
                else:
                    lhs = fmpq_mat(comm.nrows(), comm.ncols())
                    law = "inner-central"
                checked += 1
                if lhs != comm:
                    failures.append({"law": law, "x": x.to_json(), "central": list(r2), "degree": list(n)})
                    if len(failures) >= max_failures:
                        return _rep_report(False, checked, failures, window, vw)
    return _rep_report(not failures, checked, failures, window, vw)


def _rep_report(passed, checked, failures, window, vw):
    return {
        "passed": passed,
        "checked": checked,
        "window": window,
        "vector_window": vw,
        "counterexample": failures[0] if failures else None,
    }


# ---------------------------------------------------------------------------
# windowed submodule probes


class _Subspaces:
    """Per-degree rational subspaces stored as rref row lists."""

    def __init__(self, desc):
        self.desc = desc
        self.rows = {}

    def dim(self, n):
        return len(self.rows.get(n, ()))

    def add(self, n, vectors):
        """Add rational vectors to S_n; True if the space grew."""
        old = self.rows.get(n, [])
        if not vectors:
            return False
        width = len(vectors[0])
        stacked = old + [list(v) for v in vectors]
        m = fmpq_mat(len(stacked), width, [x for r in stacked for x in r])
        red, rk = m.rref()
        if rk == len(old):
            return False
        self.rows[n] = [[red[i, j] for j in range(width)] for i in range(rk)]
        return True

    def matrix(self, n):
        rows = self.rows.get(n, [])
        if not rows:
            return None
        return fmpq_mat(len(rows[0]), len(rows), [rows[j][i] for i in range(len(rows[0])) for j in range(len(rows))])


def _probe_operators(desc, radius):
    T = desc.torus
    gens = window_generators(T, radius)
    return [(g, _generator_key(g)) for g in gens]


def submodule_probe(desc, seed, radius, stop_when_filled=True):
    """Spin a seed under all homogeneous generators of degree |s|_inf <= radius.

    Everything is truncated to the window |n|_inf <= radius; the report
    compares generated and full dimensions on the inner window of radius
    radius - L*d (at least 0).  Because only genuine module elements are
    produced, a filled inner weight space is certain while a deficit is a
    windowed indication of a proper submodule.
    """
    T = desc.torus
    d = T.d
    inner = max(radius - T.L * d, 0)
    phi = desc.phi
    ops = _probe_operators(desc, radius)
    spaces = _Subspaces(desc)
    queue = []
    seeds = seed if isinstance(seed, (list, tuple)) else [seed]
    for sd in seeds:
        for n, vec in sd.support.items():
            if max((abs(x) for x in n), default=0) > radius:
                raise ValueError("seed support must lie in the window")
            rows = _zeta_closure(desc, n, [expand_vector(vec, desc.F)])
            if spaces.add(n, rows) and n not in queue:
                queue.append(n)
    inner_degrees = [n for n in window_degrees(d, inner) if desc.weight_dim(n)]

    def filled():
        return all(spaces.dim(n) == desc.weight_dim(n) * phi for n in inner_degrees)

    steps = 0
    while queue:
        if stop_when_filled and filled():
            break
        n = queue.pop(0)
        basis = spaces.matrix(n)
        if basis is None:
            continue
        for g, key in ops:
            qm, deg = desc.qblock(g, n, key)
            if qm is None:
                continue
            tgt = tuple(a + b for a, b in zip(n, deg))
            if max(abs(x) for x in tgt) > radius or not desc.weight_dim(tgt):
                continue
            img = qm * basis
            vecs = [[img[i, j] for i in range(img.nrows())] for j in range(img.ncols())]
            vecs = [v for v in vecs if any(x != 0 for x in v)]
            if vecs and spaces.add(tgt, vecs):
                if tgt not in queue:
                    queue.append(tgt)
            steps += 1
    profile = {}
    deficits = []
    for n in inner_degrees:
        got, full = spaces.dim(n) // phi, desc.weight_dim(n)
        profile[n] = (got, full)
        if got < full:
            deficits.append(n)
    return {
        "radius": radius,
        "inner_radius": inner,
        "profile": profile,
        "deficits": deficits,
        "filled": not deficits,
        "nonzero": any(v[0] for v in profile.values()),
        "steps": steps,
    }


def _zeta_closure(desc, n, rows):
    if desc.phi == 1:
        return rows
    Z = desc.zeta_block(n)
    out = list(rows)
    cur = rows
    for _ in range(desc.phi - 1):
        nxt = []
        for r in cur:
            v = Z * fmpq_mat(len(r), 1, r)
            nxt.append([v[i, 0] for i in range(v.nrows())])
        out += nxt
        cur = nxt
    return out


def _round_trip_candidates(desc, n0, radius, rng):
    """Invariant subspaces at degree n0 of a few operators M_n0 -> M_n0 (a small MeatAxe step)."""
    dim = desc.weight_dim(n0) * desc.phi
    if dim == 0:
        return []
    if dim == desc.phi:
        return [[[fmpq(int(i == j)) for i in range(dim)] for j in range(dim)]]
    T = desc.torus
    loops = []
    ops = _probe_operators(desc, min(radius, 2))
    by_deg = {}
    for g, key in ops:
        _, deg = desc.op_block(g, n0)
        by_deg.setdefault(deg, []).append((g, key))
    for deg, items in sorted(by_deg.items()):
        back = by_deg.get(tuple(-x for x in deg), [])
        for g, key in items:
            qg, _ = desc.qblock(g, n0, key)
            mid = tuple(a + b for a, b in zip(n0, deg))
            if not desc.weight_dim(mid):
                continue
            for h, hkey in back:
                qh, _ = desc.qblock(h, mid, hkey)
                loops.append(qh * qg)
    if desc.phi > 1:
        loops.append(desc.zeta_block(n0))
    if not loops:
        return []
    coeffs = rng.integers(-3, 4, size=len(loops))
    a = fmpq_mat(dim, dim)
    for c, m in zip(coeffs, loops):
        if c:
            a = a + m * fmpq(int(c))
    _, factors = fmpq_poly(a.charpoly().coeffs()).factor()
    cands = []
    for p, mult in factors:
        pa = _poly_eval(p, a)
        for _ in range(mult - 1):
            pa = pa * _poly_eval(p, a)
        ker = qmat_nullspace(pa)
        if not ker or len(ker) == dim:
            continue
        space = _spin(ker, loops, dim)
        if len(space) < dim:
            cands.append(space)
    return cands


def _poly_eval(p, a):
    n = a.nrows()
    out = fmpq_mat(n, n)
    ident = fmpq_mat(n, n, [int(i == j) for i in range(n) for j in range(n)])
    for c in reversed(p.coeffs()):
        out = out * a + ident * c
    return out


def _spin(rows, mats, dim):
    span = [list(r) for r in rows]
    while True:
        m = fmpq_mat(len(span), dim, [x for r in span for x in r])
        red, rk = m.rref()
        span = [[red[i, j] for j in range(dim)] for i in range(rk)]
        new = []
        for g in mats:
            for r in span:
                v = g * fmpq_mat(dim, 1, r)
                new.append([v[i, 0] for i in range(dim)])
        m2 = fmpq_mat(len(span) + len(new), dim, [x for r in span + new for x in r])
        red2, rk2 = m2.rref()
        if rk2 == rk:
            return span
        span = [[red2[i, j] for j in range(dim)] for i in range(rk2)]


def reducibility_probe(desc, radius, n_random=3, seed=0, candidate_degrees=None):
    """Search for a seed whose generated subspace misses part of the inner window.

    Seeds tried, in order: n_random random homogeneous vectors (numpy PCG64
    with the given seed), then candidate subspaces at each inner degree
    (basis vectors for one-dimensional weight spaces, invariant subspaces of
    round-trip operators otherwise).
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    T = desc.torus
    inner = max(radius - T.L * T.d, 0)
    inner_degrees = [n for n in window_degrees(T.d, inner) if desc.weight_dim(n)]
    tried = []

    def run(label, n, rows):
        seeds = [GradedVector({n: collapse_vector(r, desc.F)}) for r in rows]
        report = submodule_probe(desc, seeds, radius)
        tried.append(label)
        return None if report["filled"] else report

    for i in range(n_random):
        n = inner_degrees[int(rng.integers(len(inner_degrees)))]
        dim = desc.weight_dim(n) * desc.phi
        vec = [fmpq(int(x)) for x in rng.integers(-5, 6, size=dim)]
        if not any(vec):
            vec[0] = fmpq(1)
        rep = run("random:%d" % i, n, [vec])
        if rep is not None:
            return _verdict(True, rep, tried, radius, n_random, seed)
    degrees = inner_degrees if candidate_degrees is None else candidate_degrees
    for n in degrees:
        for cand in _round_trip_candidates(desc, n, radius, rng):
            rep = run("candidate:%s" % (n,), n, cand)
            if rep is not None:
                return _verdict(True, rep, tried, radius, n_random, seed)
    return _verdict(False, None, tried, radius, n_random, seed)


def _verdict(reducible, report, tried, radius, n_random, seed):
    return {
        "verdict": "window-reducible" if reducible else "window-irreducible",
        "radius": radius,
        "seeds_tried": len(tried),
        "random_seeds": n_random,
        "rng": {"generator": "PCG64", "seed": seed},
        "witness": tried[-1] if reducible else None,
        "deficits": [list(n) for n in report["deficits"]] if report else [],
        "profile": report["profile"] if report else None,
    }
