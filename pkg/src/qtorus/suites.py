"""Verification suites behind `qtorus verify`.

Each suite takes a torus, a window radius, a seed and (where relevant) a
module descriptor, and returns a JSON-ready report with a pass flag, the
number of individual checks and the first counterexample.
"""

import itertools

import numpy as np

from .cyclotomic import as_scalar
from .derivations import der_bracket, window_generators
from .glrep import x_power
from .linalg import CycMatrix
from .sweeps import (
    cocycle_sweep,
    degree_grid,
    jacobi_sweep,
    loop_hom_sweep,
    rad_mask,
    radical_bruteforce,
    sigma_product_exponent,
)

__all__ = ["SUITES", "DEFAULT_SUITES", "run_suite", "default_module_spec", "rng_for", "jsonable"]

SUITES = ("cocycle", "radical", "loop-hom", "jacobi", "rep", "cover")
DEFAULT_SUITES = ("jacobi", "loop-hom", "rep", "cover")

# exhaustive pair sweeps stay below this many grid points per side
_MAX_GRID = 2000


def rng_for(seed):
    """The documented generator: numpy PCG64 seeded with the integer seed."""
    return np.random.Generator(np.random.PCG64(int(seed)))


def default_module_spec(torus):
    """Natural gl_d-module with b = 1, W left-regular (trivial when N = 1), alpha = (1/2, 1/3, ...)."""
    return {
        "V": {"lambda": [1], "b": 1},
        "W": "left-regular" if torus.rad.N > 1 else "trivial",
        "alpha": ["1/%d" % (i + 2) for i in range(torus.d)],
    }


def _tuple(a):
    return [int(x) for x in a]


def _report(name, passed, checked, counterexample=None, **extra):
    out = {"suite": name, "passed": bool(passed), "checked": int(checked), "counterexample": counterexample}
    out.update(extra)
    return out


# ---------------------------------------------------------------------------


def suite_cocycle(torus, window, seed, module=None):
    """Cocycle identity on all triples, sigma against the product formula, qt_mul checks."""
    rng = rng_for(seed)
    checked = 0
    # vectorized sigma against the entrywise product of q's, on every pair in window 1
    small = degree_grid(torus.d, 1)
    vec = torus.sigma_exponents(small[:, None, :], small[None, :, :])
    for i, n in enumerate(small):
        for j, m in enumerate(small):
            checked += 1
            if sigma_product_exponent(torus, n, m) != vec[i, j]:
                return _report("cocycle", False, checked, {"kind": "sigma-formula", "n": _tuple(n), "m": _tuple(m)})
    count, bad = cocycle_sweep(torus, window)
    checked += count
    if bad is not None:
        return _report("cocycle", False, checked, {"kind": "cocycle", "triple": [list(t) for t in bad]})
    # qt_mul on monomials agrees with sigma on every pair, so monomial
    # associativity is the cocycle identity above
    grid = [tuple(int(x) for x in n) for n in degree_grid(torus.d, window)]
    if len(grid) <= _MAX_GRID:
        for n in grid:
            tn = torus.monomial(n)
            for m in grid:
                checked += 1
                k = tuple(a + b for a, b in zip(n, m))
                if tn * torus.monomial(m) != torus.monomial(k, torus.sigma(n, m)):
                    return _report("cocycle", False, checked, {"kind": "qt_mul", "n": list(n), "m": list(m)})
    # multi-term associativity on random triples
    for _ in range(200):
        a, b, c = (_random_element(torus, rng, window) for _ in range(3))
        checked += 1
        if (a * b) * c != a * (b * c):
            return _report("cocycle", False, checked, {"kind": "associativity", "a": a.to_json(), "b": b.to_json(),
                                                       "c": c.to_json()})
    return _report("cocycle", True, checked, triples=count)


def _random_element(torus, rng, radius, terms=3):
    out = {}
    for _ in range(terms):
        n = tuple(int(x) for x in rng.integers(-radius, radius + 1, size=torus.d))
        out[n] = as_scalar(int(rng.integers(-5, 6)))
    from .torus import TorusElement

    return TorusElement(torus, out)


def suite_radical(torus, window, seed, module=None):
    """radical_basis against the brute-force kernel of f, and |Delta| = N^2."""
    rad = torus.rad
    grid = degree_grid(torus.d, window)
    brute = {tuple(int(x) for x in n) for n in radical_bruteforce(torus, window, window)}
    checked = 0
    for n in grid:
        n = tuple(int(x) for x in n)
        checked += 1
        if rad.contains(n) != (n in brute):
            return _report("radical", False, checked, {"kind": "membership", "n": list(n),
                                                       "radical_basis": rad.contains(n)})
    for xi in rad.xis:
        checked += 1
        if any(torus.f_exponent(xi, e) for e in np.eye(torus.d, dtype=int)):
            return _report("radical", False, checked, {"kind": "xi-not-in-kernel", "xi": list(xi)})
    checked += 1
    if len(rad.delta) != rad.N ** 2:
        return _report("radical", False, checked, {"kind": "gamma-order", "gamma_order": len(rad.delta),
                                                   "N": rad.N})
    return _report("radical", True, checked, N=rad.N, gamma_order=len(rad.delta))


def suite_loop_hom(torus, window, seed, module=None):
    """X^n X^m = sigma(n, m) X^{n+m} and X^r = E for central r.

    When the window has more than _MAX_GRID points the pair sweep runs on
    the largest sub-window that fits, and the rest is covered by periodicity:
    X^n only depends on n modulo the radical box, sigma is an explicit
    bicharacter, and sigma(xi_j, e_i) = sigma(e_i, xi_j) = 1 is checked.
    """
    torus.require_normal()
    d = torus.d
    checked = 0
    E = CycMatrix.identity(torus.rad.N)
    grid = degree_grid(d, window)
    central = grid[rad_mask(torus.rad, grid)]
    for r in central:
        checked += 1
        if x_power(tuple(int(x) for x in r), torus) != E:
            return _report("loop-hom", False, checked, {"kind": "X^r != E", "r": _tuple(r)})
    sweep_radius = window
    while (2 * sweep_radius + 1) ** d > _MAX_GRID:
        sweep_radius -= 1
    count, bad = loop_hom_sweep(torus, sweep_radius)
    checked += count
    if bad is not None:
        return _report("loop-hom", False, checked, {"kind": "product", "n": list(bad[0]), "m": list(bad[1])})
    method = "exhaustive"
    if sweep_radius < window:
        method = "periodic-reduction"
        count, bad = loop_hom_sweep(torus, 0, box_only=True)
        checked += count
        if bad is not None:
            return _report("loop-hom", False, checked, {"kind": "product", "n": list(bad[0]), "m": list(bad[1])})
        basis = np.eye(d, dtype=np.int64)
        for xi in torus.rad.xis:
            xi = np.array(xi, dtype=np.int64)
            checked += 2 * d
            if np.any(torus.sigma_exponents(xi, basis)) or np.any(torus.sigma_exponents(basis, xi)):
                return _report("loop-hom", False, checked, {"kind": "sigma-periodicity", "xi": _tuple(xi)})
    return _report("loop-hom", True, checked, method=method, pair_window=sweep_radius)


def suite_jacobi(torus, window, seed, module=None):
    """Antisymmetry and Jacobi on homogeneous generators with degrees |.|_inf <= window."""
    torus.require_normal()
    rng = rng_for(seed)
    gens = window_generators(torus, window)
    checked = 0
    for x, y in itertools.combinations(gens, 2):
        checked += 1
        if not (der_bracket(x, y) + der_bracket(y, x)).is_zero():
            return _report("jacobi", False, checked, {"kind": "antisymmetry", "x": x.to_json(), "y": y.to_json()})
    result = jacobi_sweep(torus, window)
    checked += sum(result["counts"].values())
    if result["counterexample"] is not None:
        triple = result["counterexample"]["triple"]
        replay = _literal_jacobi(torus, [_gen_from_key(torus, t) for t in triple])
        return _report("jacobi", False, checked, {"kind": "jacobi", "type": result["counterexample"]["type"],
                                                  "triple": [list(t) for t in triple],
                                                  "replay_nonzero": replay is not None})
    # literal cross-check on sampled triples
    n = len(gens)
    if n >= 3:
        for _ in range(min(300, n * (n - 1) * (n - 2) // 6)):
            i, j, k = rng.choice(n, size=3, replace=False)
            checked += 1
            if _literal_jacobi(torus, [gens[i], gens[j], gens[k]]) is not None:
                return _report("jacobi", False, checked, {"kind": "jacobi-literal",
                                                          "triple": [gens[a].to_json() for a in (i, j, k)]})
    return _report("jacobi", True, checked, generators=len(gens), triples=result["counts"])


def _gen_from_key(torus, key):
    from .derivations import Derivation

    if key[0] == "ad":
        return Derivation.ad(torus, key[1])
    return Derivation.D(torus, key[1], key[2])


def _literal_jacobi(torus, triple):
    x, y, z = triple
    s = der_bracket(x, der_bracket(y, z)) + der_bracket(y, der_bracket(z, x)) + der_bracket(z, der_bracket(x, y))
    return None if s.is_zero() else s


def suite_rep(torus, window, seed, module=None):
    """verify_rep on the module: Lie law plus the two compatibility identities."""
    from .modules import ModuleDescriptor, verify_rep

    desc = module if module is not None else ModuleDescriptor.from_config(torus, default_module_spec(torus))
    rep = verify_rep(desc, window)
    return _report("rep", rep["passed"], rep["checked"], jsonable(rep["counterexample"]),
                   vector_window=rep["vector_window"])


def suite_cover(torus, window, seed, module=None):
    """Cover machinery: structure identities, minimal l, the rewriting identity and cover weight spaces."""
    from .cover import cover_identity_sweep, cover_weight_space, rewriting_identity_sweep, minimal_annihilating_l
    from .modules import ModuleDescriptor

    desc = module if module is not None else ModuleDescriptor.from_config(torus, default_module_spec(torus))
    full = torus.rad.N == 1
    checked = 0
    ids = cover_identity_sweep(desc, 20, radius=1, seed=seed, full=full)
    checked += sum(v for k, v in ids["counts"].items() if k != "j_nontrivial")
    if not ids["passed"]:
        return _report("cover", False, checked, ids["counterexample"])
    l_min = minimal_annihilating_l(desc, window=1, l_max=4)
    checked += 1
    if l_min is None:
        return _report("cover", False, checked, {"kind": "no-annihilating-l", "l_max": 4})
    # d >= 3 keeps the radius-1 and window-4 sizes; 2*L*d is out of reach there
    small = torus.d <= 2
    ident = rewriting_identity_sweep(desc, radius=min(window, 2 if small else 1), ls=(2, 3), full=full)
    checked += ident["counts"]["passed"] + ident["counts"]["failed"]
    if ident["counts"]["failed"]:
        return _report("cover", False, checked, dict(ident["counterexample"], kind="identity"))
    D = (1,) + (0,) * (torus.d - 1)
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        cw = cover_weight_space(D, desc, window=2 * torus.L * torus.d if small else 4, l=l_min, full=full)
    checked += 1
    ok = cw["stable"] and cw["within_bound"]
    return _report("cover", ok, checked, None if ok else {"kind": "cover-weight-space", "report": cw},
                   l_min=l_min, identity_counts=ident["counts"], cover_weight_space=cw)


def jsonable(obj):
    """Plain JSON data from reports: tuples become lists, scalars their JSON form."""
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, dict):
        return {(",".join(str(int(a)) for a in k) if isinstance(k, tuple) else str(k)): jsonable(v)
                for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if hasattr(obj, "to_json"):
        return obj.to_json()
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return str(obj)


_RUNNERS = {
    "cocycle": suite_cocycle,
    "radical": suite_radical,
    "loop-hom": suite_loop_hom,
    "jacobi": suite_jacobi,
    "rep": suite_rep,
    "cover": suite_cover,
}


def run_suite(name, torus, window, seed=0, module=None):
    """Run one registered suite and return its JSON-ready report."""
    if name not in _RUNNERS:
        raise KeyError("unknown suite %r; choose from %s" % (name, ", ".join(SUITES)))
    if window < 1:
        raise ValueError("window must be at least 1")
    return jsonable(_RUNNERS[name](torus, window, seed, module))
