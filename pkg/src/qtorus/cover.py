"""The cover (C_q' (x) M)/J of a module M = V^alpha(V, W), differentiators and the rewriting identity.

With full=True the left tensor factor is all of C_q rather than its
derived algebra C_q'.  In the Witt case C_q' = 0, so this is the only way
to get nontrivial tensor computations there; every identity checked below
holds in both settings.
"""

from math import comb

import numpy as np
from flint import fmpq, fmpq_mat

from .cyclotomic import as_scalar
from .derivations import Derivation, der_apply, der_bracket, pairing, window_degrees, window_generic_u
from .linalg import collapse_vector, qmat_nullspace
from .modules import GradedVector, vw_act
from .torus import TorusElement

__all__ = [
    "TensorVector",
    "tensor_act",
    "pi_map",
    "evaluate",
    "j_membership",
    "cover_weight_space",
    "Differentiator",
    "differentiator_apply",
    "annihilation_report",
    "minimal_annihilating_l",
    "rewriting_identity_check",
    "random_tensor",
    "random_j_element",
    "cover_identity_sweep",
    "rewriting_identity_sweep",
]


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


class TensorVector:
    """sum_p t^p (x) w_p with w_p a GradedVector of M."""

    __slots__ = ("torus", "terms", "full")

    def __init__(self, torus, terms=None, full=False):
        self.torus = torus
        self.full = full
        clean = {}
        for p, w in (terms or {}).items():
            p = tuple(int(x) for x in p)
            if not full and torus.in_rad(p):
                raise ValueError("t^%s is central, so it is not in C_q'" % (p,))
            if not w.is_zero():
                clean[p] = clean[p] + w if p in clean else w
        self.terms = {p: w for p, w in sorted(clean.items()) if not w.is_zero()}

    def __add__(self, other):
        out = dict(self.terms)
        for p, w in other.terms.items():
            out[p] = out[p] + w if p in out else w
        return TensorVector(self.torus, out, self.full or other.full)

    def scale(self, c):
        return TensorVector(self.torus, {p: w.scale(c) for p, w in self.terms.items()}, self.full)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, c):
        return self.scale(c)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, TensorVector):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __repr__(self):
        return " + ".join("t^%s (x) %r" % (p, w) for p, w in self.terms.items()) or "0"

    def weight_degrees(self):
        """Total degrees p + n of the homogeneous pieces."""
        return sorted({_add(p, n) for p, w in self.terms.items() for n in w.support})

    def to_json(self):
        return [{"degree": list(p), "vector": w.to_json()} for p, w in self.terms.items()]


def tensor_act(x, v, desc):
    """Action on C_q' (x) M: Lie elements by Leibniz, central t^r by t^r(t^n (x) w) = t^{n+r} (x) w.

    x may be a Derivation or a TorusElement; torus terms of central degree act
    through the center, the others as ad(t^s).
    """
    T = desc.torus
    out = TensorVector(T, full=v.full)
    if isinstance(x, TorusElement):
        lie = {}
        for s, c in x.terms.items():
            if T.in_rad(s):
                out = out + TensorVector(T, {_add(p, s): w.scale(c) for p, w in v.terms.items()}, v.full)
            else:
                lie[s] = c
        if not lie:
            return out
        x = Derivation(T, inner=lie)
    for p, w in v.terms.items():
        left = der_apply(x, T.monomial(p))
        for q, c in left.terms.items():
            out = out + TensorVector(T, {q: w.scale(c)}, v.full)
        out = out + TensorVector(T, {p: vw_act(x, w, desc)}, v.full)
    return out


def central_shift(r, v, desc):
    """t^r acting through the center; r must lie in Rad(f)."""
    T = desc.torus
    if not T.in_rad(r):
        raise ValueError("central shift needs r in Rad(f); got %s" % (tuple(r),))
    return tensor_act(T.monomial(r), v, desc)


def evaluate(v, desc, gamma):
    """sum_p t^{p+gamma} w_p computed in M."""
    T = desc.torus
    out = GradedVector()
    for p, w in v.terms.items():
        out = out + vw_act(T.monomial(_add(p, gamma)), w, desc)
    return out


def pi_map(v, desc):
    """pi(t^p (x) w) = t^p w."""
    return evaluate(v, desc, (0,) * desc.torus.d)


def _gammas(rad, radius):
    return rad.points(radius)


def j_membership(v, desc, gamma_window, stability=True):
    """(verdict, stable): v lies in the windowed J, and the verdict persists one xi-step further.

    With stability=False the second pass is skipped and stable is None.
    """
    if gamma_window < 1:
        raise ValueError("gamma_window must be at least 1")
    rad = desc.torus.rad

    def inside(radius):
        return all(evaluate(v, desc, g).is_zero() for g in _gammas(rad, radius))

    verdict = inside(gamma_window)
    if not stability:
        return verdict, None
    stable = verdict == inside(gamma_window + 1)
    return verdict, stable


# ---------------------------------------------------------------------------
# weight spaces of the cover


def _max_weight_dim(desc):
    return max(desc.weight_dim(n) for n in desc.rad.delta)


def _cover_rank(desc, D, window, gamma_window, full):
    """Rank of the stacked evaluations on the windowed spanning set at total degree D."""
    T = desc.torus
    rad = desc.rad
    zero = (0,) * T.d
    reps = [n for n in rad.delta if full or n != zero]
    cols = []
    labels = []
    for n in reps:
        for r in rad.points(window):
            p = _add(n, r)
            m = tuple(a - b for a, b in zip(D, p))
            k = desc.weight_dim(m)
            for i in range(k):
                cols.append((p, m, i))
                labels.append((p, i))
    gammas = _gammas(rad, gamma_window)
    phi = desc.phi
    if not cols:
        return 0, 0, []
    row_blocks = []
    for g in gammas:
        tgt = _add(D, g)
        h = desc.weight_dim(tgt)
        if not h:
            continue
        block = [[fmpq(0)] * (len(cols) * phi) for _ in range(h * phi)]
        for c, (p, m, i) in enumerate(cols):
            qm, _ = desc.qblock(T.monomial(_add(p, g)), m, ("t", rad.reduce(_add(p, g)), rad.reduce(m)))
            for a in range(h * phi):
                for s in range(phi):
                    block[a][c * phi + s] = qm[a, i * phi + s]
        row_blocks.extend(block)
    if not row_blocks:
        return 0, len(cols), cols
    mat = fmpq_mat(len(row_blocks), len(cols) * phi, [x for r in row_blocks for x in r])
    return mat.rank() // phi, len(cols), cols


def cover_weight_space(lambda_degree, desc, window, gamma_window=2, l=None, full=False, strict=True):
    """Dimension of the windowed cover weight space at total degree lambda_degree.

    The weight is alpha + lambda_degree.  The span of psi(t^{n+r}, M_{lambda-n-r})
    over coset representatives n (nonzero cosets unless full) and ||r|| <= window
    is taken modulo the windowed J (gamma with ||gamma|| <= gamma_window).
    Reports the dimension at window and window - 1, and the spanning bound
    |Delta| * #{r : ||r|| <= l d / 2} * max dim M_mu, plus dim M_{-alpha} when
    the weight is an integer vector (the psi(t^{n0+r0}, M_0) term).
    """
    import warnings

    T = desc.torus
    d = T.d
    if strict and window < 2 * T.L * d:
        warnings.warn("cover window %d is below 2*L*d = %d" % (window, 2 * T.L * d))
    D = tuple(int(x) for x in lambda_degree)
    dim, ncols, _ = _cover_rank(desc, D, window, gamma_window, full)
    prev, _, _ = _cover_rank(desc, D, window - 1, gamma_window, full)
    stable = dim == prev
    if not stable:
        warnings.warn("cover weight space at %s has not stabilized" % (D,))
    if l is None:
        l = minimal_annihilating_l(desc, window=2, l_max=4)
    zero = (0,) * d
    n_reps = len([n for n in desc.rad.delta if full or n != zero])
    n_small = len(desc.rad.points((l * d) // 2)) if l is not None else None
    bound = None
    boundary = 0
    weight = desc.weight(D)
    if all(w.is_rational() and w.to_fraction().denominator == 1 for w in weight):
        # lambda is an integer vector, so the psi(t^{n0+r0}, M_0) term is present
        # exactly when M has a weight-zero space, i.e. alpha is integral
        m0 = tuple(-int(a.to_fraction()) for a in desc.alpha) if all(
            a.is_rational() and a.to_fraction().denominator == 1 for a in desc.alpha) else None
        if m0 is not None:
            boundary = desc.weight_dim(m0)
    if n_small is not None:
        bound = n_reps * n_small * _max_weight_dim(desc) + boundary
    # pi restricted to the spanning set hits M_lambda
    pi_rank = _pi_rank(desc, D, window, full)
    return {
        "degree": list(D),
        "dimension": dim,
        "previous_window_dimension": prev,
        "stable": stable,
        "window": window,
        "gamma_window": gamma_window,
        "spanning_set_size": ncols,
        "l": l,
        "bound": bound,
        "boundary_term": boundary,
        "within_bound": bound is not None and dim <= bound,
        "weight_space_dim": desc.weight_dim(D),
        "pi_rank": pi_rank,
    }


def _pi_rank(desc, D, window, full):
    dim, _, _ = _cover_rank(desc, D, window, 0, full)
    return dim


# ---------------------------------------------------------------------------
# differentiators


class Differentiator:
    """Omega_r^{(l,h)} = sum_i (-1)^i C(l,i) e_{r-ih} e_{ih}, with e_s = D(u, s)."""

    def __init__(self, torus, r, h, l, u):
        if not torus.in_rad(r) or not torus.in_rad(h):
            raise ValueError("r and h must lie in Rad(f)")
        if l < 1:
            raise ValueError("l must be positive")
        self.torus = torus
        self.r = tuple(r)
        self.h = tuple(h)
        self.l = l
        self.u = tuple(as_scalar(x) for x in u)

    def terms(self):
        """[(coefficient, left degree, right degree)] with the right factor applied first."""
        out = []
        for i in range(self.l + 1):
            ih = tuple(i * x for x in self.h)
            out.append(((-1) ** i * comb(self.l, i), tuple(a - b for a, b in zip(self.r, ih)), ih))
        return out

    def __repr__(self):
        return "Omega(r=%s, h=%s, l=%d)" % (self.r, self.h, self.l)


def differentiator_apply(om, v, desc):
    T = desc.torus
    out = GradedVector()
    for c, left, right in om.terms():
        w = vw_act(Derivation.D(T, om.u, right), v, desc)
        w = vw_act(Derivation.D(T, om.u, left), w, desc)
        out = out + w.scale(c)
    return out


def _e_block(desc, u, s, n):
    key = ("e", tuple(u), tuple(s))
    return desc.qblock(Derivation.D(desc.torus, u, s), n, key)


def annihilation_report(desc, window, l, u=None):
    """Whether Omega_r^{(l, xi_j)} kills every basis vector at degrees |n|_inf <= window,
    for all r with ||r|| <= window and all j; a counterexample is returned otherwise."""
    T = desc.torus
    if u is None:
        u = window_generic_u(T, 2 * (window + 1) * max(desc.rad.box_diag))
    xis = desc.rad.xis
    degrees = [n for n in window_degrees(T.d, window) if desc.weight_dim(n)]
    for r in desc.rad.points(window):
        for j, h in enumerate(xis):
            om = Differentiator(T, r, h, l, u)
            for n in degrees:
                acc = None
                for c, left, right in om.terms():
                    qr, _ = _e_block(desc, u, right, n)
                    ql, _ = _e_block(desc, u, left, _add(n, right))
                    term = (ql * qr) * fmpq(c)
                    acc = term if acc is None else acc + term
                if acc != fmpq_mat(acc.nrows(), acc.ncols()):
                    return {"annihilates": False, "l": l, "r": list(r), "j": j, "degree": list(n)}
    return {"annihilates": True, "l": l}


def minimal_annihilating_l(desc, window, l_max, u=None, report=False):
    """Smallest 2 <= l <= l_max for which the windowed differentiators annihilate M, or None."""
    last = None
    for l in range(2, l_max + 1):
        rep = annihilation_report(desc, window, l, u)
        if rep["annihilates"]:
            return (l, None) if report else l
        last = rep
    return (None, last) if report else None


# ---------------------------------------------------------------------------
# rewriting identity
#
# e_0 w (x) t^{n+r} is rewritten, modulo J, as a combination of terms
# t^{n+r-a xi} (x) e_{a xi} w and t^{n+a xi} (x) e_{r-a xi} w.  This is what
# bounds the cover by a finite spanning set.


def rewriting_identity_check(desc, n, r, l, j, window, m=None, u=None, l_min=None, full=False):
    """Check the rewriting identity in the windowed cover for every basis vector w at degree m.

    v = e_0 w, and both sides are compared through j_membership of their
    difference.  Returns None (skipped) when the inputs are not admissible:
    n central (unless full), r not central, (u|n) = 0, v of weight zero,
    or l below the minimal annihilating l.
    """
    T = desc.torus
    d = T.d
    n, r = tuple(n), tuple(r)
    if u is None:
        u = window_generic_u(T, 4 * window * max(desc.rad.box_diag))
    if not T.in_rad(r) or (T.in_rad(n) and not full):
        return None
    if not pairing(u, n):
        return None
    if l_min is None:
        l_min = minimal_annihilating_l(desc, window, max(l, 2), u)
    if l_min is None or l < l_min:
        return None
    xi = desc.rad.xis[j]
    degrees = [m] if m is not None else [x for x in window_degrees(d, 1)]
    checked = False
    for mm in degrees:
        mm = tuple(mm)
        k = desc.weight_dim(mm)
        e0 = pairing(u, desc.weight(mm))
        if not k or not e0:
            continue
        for i in range(k):
            w = GradedVector({mm: tuple(1 if a == i else 0 for a in range(k))})
            lhs = TensorVector(T, {_add(n, r): w.scale(e0)}, full)
            rhs = TensorVector(T, full=full)
            for a in range(1, l + 1):
                ixi = tuple(a * x for x in xi)
                c = -((-1) ** a) * comb(l, a)
                ew = vw_act(Derivation.D(T, u, ixi), w, desc)
                rhs = rhs + TensorVector(T, {tuple(p - q for p, q in zip(_add(n, r), ixi)): ew.scale(c)}, full)
            for a in range(l + 1):
                kxi = tuple(a * x for x in xi)
                c = -((-1) ** a) * comb(l, a)
                ew = vw_act(Derivation.D(T, u, tuple(p - q for p, q in zip(r, kxi))), w, desc)
                rhs = rhs + TensorVector(T, {_add(n, kxi): ew.scale(c)}, full)
            ok, _ = j_membership(lhs - rhs, desc, window, stability=False)
            checked = True
            if not ok:
                return False
    return True if checked else None


def _test_degree(desc, u, radius=1):
    """First degree m with M_m nonzero and (u | weight) != 0, scanning the window."""
    for m in window_degrees(desc.torus.d, radius):
        if desc.weight_dim(m) and pairing(u, desc.weight(m)):
            return tuple(m)
    return None


def rewriting_identity_sweep(desc, radius, ls=(2, 3), window=1, full=False, m=None):
    """Run rewriting_identity_check over every (n, r, l, j) with |n|_inf, |r|_inf <= radius.

    Returns counts of passed, failed and skipped (inadmissible) tuples, plus
    the first failure.
    """
    T = desc.torus
    u = window_generic_u(T, 4 * window * max(desc.rad.box_diag))
    l_min = minimal_annihilating_l(desc, window, max(ls), u)
    if m is None:
        m = _test_degree(desc, u)
    counts = {"passed": 0, "failed": 0, "skipped": 0}
    first = None
    central = [r for r in window_degrees(T.d, radius) if T.in_rad(r)]
    for n in window_degrees(T.d, radius):
        for r in central:
            for l in ls:
                for j in range(T.d):
                    res = rewriting_identity_check(desc, n, r, l, j, window, m=m, u=u, l_min=l_min, full=full) \
                        if m is not None and l_min is not None else None
                    if res is None:
                        counts["skipped"] += 1
                    elif res:
                        counts["passed"] += 1
                    else:
                        counts["failed"] += 1
                        if first is None:
                            first = {"n": list(n), "r": list(r), "l": l, "j": j}
    return {"counts": counts, "l_min": l_min, "m": list(m) if m else None,
            "passed": counts["failed"] == 0 and counts["passed"] > 0, "counterexample": first}


# ---------------------------------------------------------------------------
# random inputs


def _random_graded(desc, n, rng):
    size = desc.weight_dim(n) * desc.phi
    coeffs = [fmpq(int(x)) for x in rng.integers(-4, 5, size=size)]
    return GradedVector({n: collapse_vector(coeffs, desc.F)})


def random_tensor(desc, rng, radius, terms=2, full=False):
    """Random element with `terms` homogeneous pieces at degrees |.|_inf <= radius."""
    T = desc.torus
    d = T.d
    out = TensorVector(T, full=full)
    tries = 0
    while len(out.terms) < terms and tries < 100:
        tries += 1
        p = tuple(int(x) for x in rng.integers(-radius, radius + 1, size=d))
        if T.in_rad(p) and not full:
            continue
        m = tuple(int(x) for x in rng.integers(-radius, radius + 1, size=d))
        if not desc.weight_dim(m):
            continue
        out = out + TensorVector(T, {p: _random_graded(desc, m, rng)}, full)
    return out


def random_j_element(desc, rng, radius, D=None, terms=3, gamma_window=1, full=False):
    """A random element of the windowed J at total degree D, built from a kernel computation."""
    T = desc.torus
    d = T.d
    if D is None:
        D = tuple(int(x) for x in rng.integers(-radius, radius + 1, size=d))
    ps = []
    tries = 0
    while len(ps) < terms and tries < 200:
        tries += 1
        p = tuple(int(x) for x in rng.integers(-radius, radius + 1, size=d))
        if p in ps or (T.in_rad(p) and not full):
            continue
        if desc.weight_dim(tuple(a - b for a, b in zip(D, p))):
            ps.append(p)
    cols = []
    for p in ps:
        m = tuple(a - b for a, b in zip(D, p))
        for i in range(desc.weight_dim(m)):
            cols.append((p, m, i))
    phi = desc.phi
    rows = []
    for g in _gammas(desc.rad, gamma_window):
        tgt = _add(D, g)
        h = desc.weight_dim(tgt)
        for a in range(h * phi):
            row = []
            for p, m, i in cols:
                qm, _ = desc.qblock(T.monomial(_add(p, g)), m)
                row.extend(qm[a, i * phi + s] for s in range(phi))
            rows.append(row)
    if not cols:
        return TensorVector(T, full=full)
    width = len(cols) * phi
    mat = fmpq_mat(len(rows), width, [x for r in rows for x in r]) if rows else fmpq_mat(0, width)
    kernel = qmat_nullspace(mat) if rows else [[fmpq(int(i == j)) for i in range(width)] for j in range(width)]
    if not kernel:
        return TensorVector(T, full=full)
    combo = [fmpq(0)] * width
    for vec in kernel:
        c = int(rng.integers(-3, 4))
        combo = [x + c * y for x, y in zip(combo, vec)]
    out = TensorVector(T, full=full)
    for idx, (p, m, i) in enumerate(cols):
        coeff = collapse_vector(combo[idx * phi:(idx + 1) * phi], desc.F)[0]
        if coeff:
            k = desc.weight_dim(m)
            w = GradedVector({m: tuple(coeff if a == i else 0 for a in range(k))})
            out = out + TensorVector(T, {p: w}, full)
    return out


# ---------------------------------------------------------------------------
# randomized structural identities on C_q' (x) M


def _random_central(desc, rng, max_norm=1):
    pts = desc.rad.points(max_norm)
    return pts[int(rng.integers(len(pts)))]


def _random_lie(desc, rng, radius, inner_only=False):
    """A random homogeneous derivation: ad(t^s) or D(u, r) with small integer u."""
    T = desc.torus
    d = T.d
    if inner_only and T.rad.N == 1:
        raise ValueError("every degree is central, so there is no inner derivation")
    while True:
        if T.rad.N == 1 or (not inner_only and rng.random() < 0.5):
            r = _random_central(desc, rng)
            u = [int(x) for x in rng.integers(-2, 3, size=d)]
            if any(u):
                return Derivation.D(T, u, r)
        else:
            s = tuple(int(x) for x in rng.integers(-radius, radius + 1, size=d))
            if not T.in_rad(s):
                return Derivation.ad(T, s)


def cover_identity_sweep(desc, n_inputs, radius=1, seed=0, full=False):
    """Randomized checks of the Z-D structure on C_q' (x) M, of pi, and of J.

    compatibility: [D(u,m), t^r] v = D t^r v - t^r D v, t^s t^r v = t^r t^s v,
      and the Lie law [x, y] v = x(y v) - y(x v);
    pi: pi(x v) = x pi(v) for Lie x and for central t^r;
    J: t^r eta, D(u, r) eta and t^s eta stay in J for eta in J (checked one
      xi-step inside the window eta was built on).
    Returns counts per family and the first failure.
    """
    T = desc.torus
    rng = np.random.Generator(np.random.PCG64(seed))
    counts = {"compatibility": 0, "pi": 0, "j_stable": 0, "j_nontrivial": 0}
    failure = None

    def fail(kind, **info):
        return {"family": kind, **{k: repr(v) for k, v in info.items()}}

    for _ in range(n_inputs):
        v = random_tensor(desc, rng, radius, full=full)
        r = _random_central(desc, rng)
        x, y = _random_lie(desc, rng, radius), _random_lie(desc, rng, radius)
        # compatibility identities
        m = _random_central(desc, rng)
        u = [int(a) for a in rng.integers(-2, 3, size=T.d)]
        D = Derivation.D(T, u, m)
        lhs = tensor_act(D, central_shift(r, v, desc), desc) - central_shift(r, tensor_act(D, v, desc), desc)
        rhs = tensor_act(T.monomial(_add(m, r), pairing(u, r)), v, desc) if pairing(u, r) else TensorVector(T, full=full)
        if T.rad.N > 1:
            s_ad = _random_lie(desc, rng, radius, inner_only=True)
            swap = tensor_act(s_ad, central_shift(r, v, desc), desc) - central_shift(r, tensor_act(s_ad, v, desc), desc)
        else:
            # every degree is central in the Witt case, so there is no ad(t^s)
            swap = TensorVector(T, full=full)
        lie = tensor_act(der_bracket(x, y), v, desc) - (
            tensor_act(x, tensor_act(y, v, desc), desc) - tensor_act(y, tensor_act(x, v, desc), desc))
        counts["compatibility"] += 1
        if failure is None and (lhs != rhs or not swap.is_zero() or not lie.is_zero()):
            failure = fail("compatibility", v=v, x=x, y=y, D=D, r=r)
        # pi is a module map
        counts["pi"] += 1
        if failure is None and (pi_map(tensor_act(x, v, desc), desc) != vw_act(x, pi_map(v, desc), desc)
                                or pi_map(central_shift(r, v, desc), desc)
                                != vw_act(T.monomial(r), pi_map(v, desc), desc)):
            failure = fail("pi", v=v, x=x, r=r)
        # J is a submodule
        eta = random_j_element(desc, rng, radius, gamma_window=2, full=full)
        if not eta.is_zero():
            counts["j_nontrivial"] += 1
        images = [central_shift(r, eta, desc), tensor_act(D, eta, desc), tensor_act(x, eta, desc)]
        counts["j_stable"] += 1
        if failure is None and not all(j_membership(im, desc, 1)[0] for im in images):
            failure = fail("J", eta=eta, D=D, x=x, r=r)
    return {"counts": counts, "passed": failure is None, "counterexample": failure}
