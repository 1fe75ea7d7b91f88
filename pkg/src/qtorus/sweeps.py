"""Vectorized exhaustive sweeps over degree windows.

Roots of unity are tracked by their exponent mod L.  A signed sum of roots
of unity is reduced to coordinates in Q(zeta_L) with an integer table of
zeta^e mod Phi_L, so zero tests stay exact.  Every kernel here is
cross-checked in the test suite against the scalar library functions.
"""

from functools import lru_cache
from itertools import product

import numpy as np

from .cyclotomic import _power_table, totient

__all__ = [
    "degree_grid",
    "rad_mask",
    "reduction_table",
    "sigma_product_exponent",
    "cocycle_sweep",
    "radical_bruteforce",
    "monomial_form",
    "loop_hom_sweep",
    "jacobi_sweep",
]


def degree_grid(d, radius):
    """All integer vectors with |n|_inf <= radius, lexicographic, as an (M, d) array."""
    axis = np.arange(-radius, radius + 1, dtype=np.int64)
    return np.array(list(product(axis, repeat=d)), dtype=np.int64).reshape(-1, d)


def rad_mask(rad, arr):
    """Boolean mask of rows of arr lying in Rad(f) (back substitution in the xi-basis)."""
    n = np.array(arr, dtype=np.int64, copy=True)
    ok = np.ones(len(n), dtype=bool)
    H = np.array(rad.xi_basis, dtype=np.int64)
    for j in range(rad.d - 1, -1, -1):
        h = H[j, j]
        ok &= n[:, j] % h == 0
        g = n[:, j] // h
        n[:, : j + 1] -= g[:, None] * H[: j + 1, j][None, :]
    return ok


@lru_cache(maxsize=None)
def reduction_table(L):
    """(L, phi(L)) integer array: row e holds the coordinates of zeta_L^e."""
    phi = totient(L)
    out = np.zeros((L, phi), dtype=np.int64)
    for e, p in enumerate(_power_table(L)):
        for k, c in enumerate(p.coeffs()):
            assert c.q == 1
            out[e, k] = int(c.p)
    return out


def sigma_product_exponent(torus, n, m):
    """Exponent of prod_{i<j} q_ji^{n_j m_i}, computed entry by entry from the q matrix.

    Used as the independent oracle for the vectorized exponent form.
    """
    from .cyclotomic import zeta

    acc = zeta(1, 0)
    for i in range(torus.d):
        for j in range(i + 1, torus.d):
            e = n[j] * m[i]
            if e:
                acc = acc * torus.q[j, i] ** e
    L = torus.L
    return next(k for k in range(L) if zeta(L, k) == acc)


def cocycle_sweep(torus, radius):
    """sigma(a,b) sigma(a+b,c) = sigma(a,b+c) sigma(b,c) on all triples in the window.

    Returns (number of triples, first failing triple or None).
    """
    grid = degree_grid(torus.d, radius)
    L = torus.L
    B = grid[:, None, :]
    C = grid[None, :, :]
    sbc = torus.sigma_exponents(B, C)
    BC = B + C
    count = 0
    for a in grid:
        lhs = torus.sigma_exponents(a, B) + torus.sigma_exponents(a + B, C)
        rhs = torus.sigma_exponents(a, BC) + sbc
        bad = (lhs - rhs) % L != 0
        count += bad.size
        if bad.any():
            i, j = np.argwhere(bad)[0]
            return count, (tuple(int(x) for x in a), tuple(int(x) for x in grid[i]), tuple(int(x) for x in grid[j]))
    return count, None


def radical_bruteforce(torus, radius, m_radius):
    """Points n with |n|_inf <= radius and f(n, m) = 1 for every |m|_inf <= m_radius.

    f(n, m) depends on n only through the row vector A^T n mod L, so the test
    over m runs once per distinct row vector.
    """
    L = torus.L
    A = np.array(torus.A, dtype=np.int64)
    grid = degree_grid(torus.d, radius)
    # f exponent = sum_{i,j} A[j][i] n_j m_i = (A^T n) . m
    rows = (grid @ A) % L
    uniq, inverse = np.unique(rows, axis=0, return_inverse=True)
    ms = degree_grid(torus.d, m_radius)
    trivial = np.all((uniq @ ms.T) % L == 0, axis=1)
    keep = trivial[inverse.ravel()]
    return grid[keep]


def monomial_form(mat, L):
    """(perm, exps) with mat[i, perm[i]] = zeta_L^{exps[i]} and zeros elsewhere, or None."""
    from .cyclotomic import zeta

    n = mat.rows
    perm = np.zeros(n, dtype=np.int64)
    exps = np.zeros(n, dtype=np.int64)
    for i, row in enumerate(mat.entries):
        nz = [j for j, a in enumerate(row) if a]
        if len(nz) != 1:
            return None
        a = row[nz[0]]
        e = next((k for k in range(L) if zeta(L, k) == a), None)
        if e is None:
            return None
        perm[i], exps[i] = nz[0], e
    return perm, exps


def loop_hom_sweep(torus, radius, box_only=False):
    """X^n X^m = sigma(n, m) X^{n+m} for all n, m in the window.

    With box_only, n and m range over the coset box instead.  Returns
    (number of pairs, first failing pair or None).
    """
    from .glrep import x_power
    from .lattice import box

    L = torus.L
    d = torus.d
    if box_only:
        grid = np.array(box(torus.rad.box_diag), dtype=np.int64).reshape(-1, d)
    else:
        grid = degree_grid(d, radius)
    # the realization depends on n mod k blockwise; tabulate over that residue box
    ks = [k for k, _ in torus.q.block_roots()]
    mods = np.ones(d, dtype=np.int64)
    for i, k in enumerate(ks):
        mods[2 * i] = mods[2 * i + 1] = k
    res_shape = tuple(int(x) for x in mods)
    table_perm = {}
    table_exp = {}
    for res in product(*[range(k) for k in res_shape]):
        form = monomial_form(x_power(res, torus), L)
        if form is None:
            raise ValueError("X^%s is not a monomial matrix" % (res,))
        table_perm[res], table_exp[res] = form
    # keys were inserted in product order, so a mixed-radix index addresses them
    keys = list(table_perm)
    P = np.stack([table_perm[k] for k in keys])
    E = np.stack([table_exp[k] for k in keys])

    def lookup(arr):
        r = arr % mods
        flat = np.zeros(len(arr), dtype=np.int64)
        for i in range(d):
            flat = flat * res_shape[i] + r[:, i]
        return flat

    idx = lookup(grid)
    count = 0
    for a_i, a in enumerate(grid):
        sums = a[None, :] + grid
        s_idx = lookup(sums)
        p1, e1 = P[idx[a_i]], E[idx[a_i]]
        p2, e2 = P[idx], E[idx]
        # (M1 M2)[i, p2[p1[i]]] = zeta^{e1[i] + e2[p1[i]]}
        prod_perm = p2[:, p1]
        prod_exp = (e1[None, :] + e2[:, p1]) % L
        sig = torus.sigma_exponents(a, grid)
        want_perm = P[s_idx]
        want_exp = (E[s_idx] + sig[:, None]) % L
        bad = np.any(prod_perm != want_perm, axis=1) | np.any(prod_exp != want_exp, axis=1)
        count += len(grid)
        if bad.any():
            j = int(np.argmax(bad))
            return count, (tuple(int(x) for x in a), tuple(int(x) for x in grid[j]))
    return count, None


# ---------------------------------------------------------------------------
# Jacobi identity on homogeneous generators


def _pairs_after(n, a):
    i, j = np.triu_indices(n - a - 1, 1)
    return i + a + 1, j + a + 1


def _rad_lookup(rad, radius):
    """Fast Rad(f) membership for points with |n|_inf <= radius, via a precomputed table."""
    table = rad_mask(rad, degree_grid(rad.d, radius))
    side = 2 * radius + 1
    weights = side ** np.arange(rad.d - 1, -1, -1, dtype=np.int64)

    def member(arr):
        return table[(arr + radius) @ weights]

    return member


def _root_diff(torus, x, y, R):
    """Coordinates of sigma(x, y) - sigma(y, x) for row arrays x, y."""
    return R[torus.sigma_exponents(x, y)] - R[torus.sigma_exponents(y, x)]


def jacobi_sweep(torus, radius):
    """Jacobi identity on all unordered triples of distinct homogeneous generators.

    Generators: ad(t^s) for noncentral s and D(e_i, r) for central r, with
    degrees |.|_inf <= radius.  Returns a dict with per-type counts and the
    first counterexample (or None).
    """
    rad = torus.rad
    L = torus.L
    d = torus.d
    R = reduction_table(L)
    grid = degree_grid(d, radius)
    cmask = rad_mask(rad, grid)
    S = grid[~cmask]
    Rad = grid[cmask]
    Dr = np.repeat(Rad, d, axis=0)
    Du = np.tile(np.eye(d, dtype=np.int64), (len(Rad), 1))
    counts = {"inner3": 0, "D_inner2": 0, "D2_inner": 0, "D3": 0}

    def fail(kind, triple):
        return {"counts": counts, "counterexample": {"type": kind, "triple": triple}}

    central = _rad_lookup(rad, 3 * radius)

    def noncentral(x):
        return ~central(x)

    # three inner derivations
    nS = len(S)
    for a in range(nS - 2):
        bi, ci = _pairs_after(nS, a)
        if not len(bi):
            continue
        x = np.broadcast_to(S[a], (len(bi), d))
        y, z = S[bi], S[ci]
        total = np.zeros((len(bi), R.shape[1]), dtype=np.int64)
        full_ok = noncentral(x + y + z)
        for p, q, r in ((x, y, z), (y, z, x), (z, x, y)):
            qr = q + r
            m = (noncentral(qr) & full_ok)[:, None]
            # [p, [q, r]] = c(q,r) c(p, q+r) t^{p+q+r}, coefficients multiplied in Q(zeta)
            e1 = torus.sigma_exponents(q, r)
            e2 = torus.sigma_exponents(r, q)
            e3 = torus.sigma_exponents(p, qr)
            e4 = torus.sigma_exponents(qr, p)
            prod = R[(e1 + e3) % L] - R[(e1 + e4) % L] - R[(e2 + e3) % L] + R[(e2 + e4) % L]
            total += m * prod
        counts["inner3"] += len(bi)
        bad = np.any(total != 0, axis=1)
        if bad.any():
            k = int(np.argmax(bad))
            return fail("inner3", [("ad", S[a].tolist()), ("ad", y[k].tolist()), ("ad", z[k].tolist())])

    # one D(u, r) and two inner derivations
    if len(S) >= 2:
        bi, ci = np.triu_indices(nS, 1)
        y, z = S[bi], S[ci]
        yz = y + z
        base = _root_diff(torus, y, z, R)
        m_yz = noncentral(yz)[:, None].astype(np.int64)
        for r, u in zip(Dr, Du):
            uy = y @ u
            uz = z @ u
            t1 = m_yz * (yz @ u)[:, None] * base
            rz = z + r
            ry = y + r
            full = noncentral(yz + r)[:, None].astype(np.int64)
            t2 = -full * uz[:, None] * _root_diff(torus, y, rz, R)
            t3 = full * uy[:, None] * _root_diff(torus, z, ry, R)
            total = t1 + t2 + t3
            counts["D_inner2"] += len(bi)
            bad = np.any(total != 0, axis=1)
            if bad.any():
                k = int(np.argmax(bad))
                return fail("D_inner2", [("D", u.tolist(), r.tolist()), ("ad", y[k].tolist()), ("ad", z[k].tolist())])

    # two D's and one inner derivation (rational coefficients only)
    nD = len(Dr)
    if nD >= 2 and len(S):
        pi, qi = np.triu_indices(nD, 1)
        r1, u1, r2, u2 = Dr[pi], Du[pi], Dr[qi], Du[qi]
        for c in S:
            u1c, u2c = u1 @ c, u2 @ c
            term1 = u2c * np.einsum("ij,ij->i", u1, r2 + c)
            term2 = -u1c * np.einsum("ij,ij->i", u2, r1 + c)
            w = np.einsum("ij,ij->i", u1, r2)[:, None] * u2 - np.einsum("ij,ij->i", u2, r1)[:, None] * u1
            term3 = -(w @ c)
            total = term1 + term2 + term3
            counts["D2_inner"] += len(pi)
            if np.any(total != 0):
                k = int(np.argmax(total != 0))
                return fail("D2_inner", [("D", u1[k].tolist(), r1[k].tolist()), ("D", u2[k].tolist(), r2[k].tolist()),
                                         ("ad", c.tolist())])

    # three D's
    if nD >= 3:
        def wbr(ua, ra, ub, rb):
            # [D(ua, ra), D(ub, rb)] = D(w, ra + rb)
            return (np.einsum("ij,ij->i", ua, rb)[:, None] * ub - np.einsum("ij,ij->i", ub, ra)[:, None] * ua, ra + rb)

        for a in range(nD - 2):
            bi, ci = _pairs_after(nD, a)
            if not len(bi):
                continue
            ua = np.broadcast_to(Du[a], (len(bi), d))
            ra = np.broadcast_to(Dr[a], (len(bi), d))
            ub, rb, uc, rc = Du[bi], Dr[bi], Du[ci], Dr[ci]
            total = np.zeros((len(bi), d), dtype=np.int64)
            for (pu, pr), (qu, qr), (su, sr) in (((ua, ra), (ub, rb), (uc, rc)),
                                                 ((ub, rb), (uc, rc), (ua, ra)),
                                                 ((uc, rc), (ua, ra), (ub, rb))):
                w, wr = wbr(qu, qr, su, sr)
                w2, _ = wbr(pu, pr, w, wr)
                total += w2
            counts["D3"] += len(bi)
            bad = np.any(total != 0, axis=1)
            if bad.any():
                k = int(np.argmax(bad))
                return fail("D3", [("D", Du[a].tolist(), Dr[a].tolist()), ("D", ub[k].tolist(), rb[k].tolist()),
                                   ("D", uc[k].tolist(), rc[k].tolist())])
    return {"counts": counts, "counterexample": None}
