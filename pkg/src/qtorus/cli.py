"""Command-line front end: `qtorus analyze | verify | module`.

Every command reads a JSON config and writes one JSON report (sorted keys,
rationals as "p/q" strings, no timings), so identical inputs give
byte-identical output.  Exit codes: 0 pass, 1 a suite failed, 2 bad input.
"""

import argparse
import json
import os
import sys
import warnings

from .derivations import window_degrees
from .glrep import degree_key
from .lattice import normalize_q
from .suites import DEFAULT_SUITES, SUITES, default_module_spec, jsonable, run_suite
from .torus import CorruptedSigmaTorus, QMatrix, QuantumTorus

SCHEMA = 1
EXIT_PASS, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


class ConfigError(Exception):
    pass


# ---------------------------------------------------------------------------
# config parsing


def load_config(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ConfigError("cannot read %s: %s" % (path, exc.strerror))
    except json.JSONDecodeError as exc:
        raise ConfigError("%s is not valid JSON: %s" % (path, exc))


def parse_q(spec):
    """QMatrix from {"d", "k"} or a matrix whose entries are [num, den] pairs (or scalar JSON)."""
    if isinstance(spec, dict) and "q" in spec:
        spec = spec["q"]
    try:
        if isinstance(spec, dict):
            return QMatrix.normal_form(int(spec["d"]), [int(k) for k in spec.get("k", [])])
        if not isinstance(spec, list):
            raise ConfigError("q must be a matrix or {\"d\": ..., \"k\": [...]}")
        return QMatrix(spec)
    except ConfigError:
        raise
    except (ValueError, TypeError, KeyError, ZeroDivisionError) as exc:
        raise ConfigError("invalid q: %s" % exc)


def _standard_torus(q, fault=None):
    """Torus in normal form (normalizing q if needed) and the change of basis."""
    if q.is_normal_form():
        q_std, P = q, None
    else:
        q_std, P = normalize_q(q)
    if fault is None:
        return QuantumTorus(q_std), P
    if fault != "sigma":
        raise ConfigError("unknown fault %r (only \"sigma\" is available)" % (fault,))
    try:
        return CorruptedSigmaTorus(q_std), P
    except ValueError as exc:
        raise ConfigError(str(exc))


def _module(torus, spec, base_dir):
    from .modules import ModuleDescriptor

    try:
        return ModuleDescriptor.from_config(torus, spec or default_module_spec(torus), base_dir=base_dir)
    except (ValueError, TypeError, KeyError, OSError, ZeroDivisionError) as exc:
        raise ConfigError("invalid module: %s" % exc)


def _window(value, default):
    w = default if value is None else value
    try:
        w = int(w)
    except (TypeError, ValueError):
        raise ConfigError("window must be an integer")
    if w < 1:
        raise ConfigError("window must be at least 1")
    return w


def _matrix_json(m):
    return [[x.root_pair() if x.root_pair() is not None else x.to_json() for x in row] for row in m]


# ---------------------------------------------------------------------------
# commands


def cmd_analyze(cfg, args):
    q = parse_q(cfg)
    torus = QuantumTorus(q)
    rad = torus.rad
    q_std, P = normalize_q(q)
    return EXIT_PASS, {
        "command": "analyze",
        "d": q.d,
        "L": torus.L,
        "q": _matrix_json(q.entries),
        "normal_form": q.is_normal_form(),
        "xi_basis": [list(r) for r in rad.xi_basis],
        "invariants_k": list(rad.invariants_k),
        "k": list(rad.invariants_k),
        "z": rad.z,
        "N": rad.N,
        "gamma_order": rad.gamma_order,
        "delta": [list(p) for p in rad.delta],
        "q_std": _matrix_json(q_std.entries),
        "P": [list(r) for r in P],
    }


def cmd_verify(cfg, args):
    q = parse_q(cfg)
    window = _window(args.window, cfg.get("window", 2))
    seed = int(args.seed if args.seed is not None else cfg.get("seed", 0))
    names = args.suite.split(",") if args.suite else cfg.get("suites", list(DEFAULT_SUITES))
    names = [n.strip() for n in names if n.strip()]
    if not names:
        raise ConfigError("no suites given")
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise ConfigError("unknown suite(s) %s; choose from %s" % (", ".join(unknown), ", ".join(SUITES)))
    torus, P = _standard_torus(q, cfg.get("fault"))
    module = None
    if any(n in ("rep", "cover") for n in names):
        module = _module(torus, cfg.get("module"), args.base_dir)
    reports = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for name in names:
            reports.append(run_suite(name, torus, window, seed=seed, module=module))
    passed = all(r["passed"] for r in reports)
    report = {
        "command": "verify",
        "window": window,
        "seed": seed,
        "rng": {"generator": "PCG64", "seed": seed},
        "q_std": _matrix_json(torus.q.entries),
        "P": [list(r) for r in P] if P is not None else None,
        "fault": cfg.get("fault"),
        "suites": reports,
        "passed": passed,
    }
    return (EXIT_PASS if passed else EXIT_FAIL), report


def cmd_module(cfg, args):
    from .cover import cover_weight_space, minimal_annihilating_l
    from .modules import reducibility_probe

    q = parse_q(cfg)
    torus, _ = _standard_torus(q)
    desc = _module(torus, cfg.get("module"), args.base_dir)
    window = _window(args.window, cfg.get("window", 2))
    seed = int(args.seed if args.seed is not None else cfg.get("seed", 0))
    d = torus.d
    probe_radius = int(cfg.get("probe_radius", 4 if d <= 2 else 2))
    weights = {degree_key(n): desc.weight_dim(n) for n in window_degrees(d, window)}
    probe = reducibility_probe(desc, probe_radius, n_random=3, seed=seed)
    l_min = minimal_annihilating_l(desc, window=1, l_max=4)
    full = torus.rad.N == 1
    cover_window = 2 * torus.L * d if d <= 2 else 4
    covers = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for i in range(d):
            D = tuple(1 if j == i else 0 for j in range(d))
            covers.append(cover_weight_space(D, desc, cover_window, l=l_min, full=full))
    return EXIT_PASS, {
        "command": "module",
        "module": desc.to_json(),
        "window": window,
        "weight_dims": weights,
        "probe": probe,
        "minimal_annihilating_l": l_min,
        "cover": {"ambient": "C_q" if full else "C_q'", "weight_spaces": covers},
    }


COMMANDS = {"analyze": cmd_analyze, "verify": cmd_verify, "module": cmd_module}


# ---------------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(prog="qtorus", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in (("analyze", "radical, Gamma and normal form of a q-matrix"),
                           ("verify", "run verification suites"),
                           ("module", "weight spaces, probes, annihilating l and cover of a module")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--input", required=True, help="JSON config file")
        p.add_argument("--output", help="write the JSON report here instead of stdout")
        if name != "analyze":
            p.add_argument("--window", type=int, help="degree window radius (default from config, else 2)")
            p.add_argument("--seed", type=int, help="seed for the PCG64 generator (default from config, else 0)")
        if name == "verify":
            p.add_argument("--suite", help="comma-separated suites: " + ",".join(SUITES))
    return parser


def render(report):
    return json.dumps(dict(jsonable(report), schema=SCHEMA), sort_keys=True, indent=2) + "\n"


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = None
    try:
        cfg = load_config(args.input)
        if not isinstance(cfg, (dict, list)):
            raise ConfigError("config must be a JSON object")
        if isinstance(cfg, list):
            cfg = {"q": cfg}
        if "schema" in cfg and cfg["schema"] != SCHEMA:
            raise ConfigError("unsupported config schema %r" % (cfg["schema"],))
        args.base_dir = os.path.dirname(os.path.abspath(args.input))
        code, report = COMMANDS[args.command](cfg, args)
    except ConfigError as exc:
        code, report = EXIT_CONFIG, {"command": args.command, "error": str(exc)}
        print("qtorus: %s" % exc, file=sys.stderr)
    out = args.output or (cfg.get("output") if code != EXIT_CONFIG and isinstance(cfg, dict) else None)
    text = render(report)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
