"""Command-line entry point: ``phasecat cat|decohere|kerr|kho|verify``.

Every run reads one JSON config. ``--out`` and ``--seed`` override the
``out`` and ``seed`` fields. Grids are written as CSV with a two-line
``#`` header, reports as JSON; both carry :data:`SCHEMA_VERSION`.
"""

import argparse
import json
import os
import sys
import tempfile

import numpy as np

from . import __version__
from .cat import PureCat, cat_wigner, classify_fringes, interference_term, normal_form
from .errors import ConfigError, PhaseCatError
from .kerr import ThermalState, fringe_width, fringe_widths, kerr_cat, kerr_coefficients
from .lindblad import (LindbladChannel, check_signature_preservation, damped_oscillator, evolve_state,
                       fringe_to_hill_ratio, term_covariance)
from .semiclassical import (KHOParams, classical_map, decompose_squeezed, kho_compare,
                            squeezed_initial_state)
from .states import GaussianPure, sample_grid
from .symplectic import squeeze
from .verify import CRITERIA, DEFAULT_SEED, SEEDED, random_cat

SCHEMA_VERSION = "phasecat-1"
SUBCOMMANDS = ("cat", "decohere", "kerr", "kho", "verify")


# --------------------------------------------------------------------------- output helpers


def _atomic_write(path, text):
    d = os.path.dirname(os.path.abspath(path))
    os.makedirs(d, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _clean(obj):
    """Convert numpy scalars/arrays and complex numbers to plain JSON values."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": float(obj.real), "im": float(obj.imag)}
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    return obj


def write_json(path, payload):
    body = {"schema": SCHEMA_VERSION, "version": __version__}
    body.update(_clean(payload))
    _atomic_write(path, json.dumps(body, indent=2, sort_keys=True) + "\n")


def grid_csv(grid, state=""):
    """CSV text of a 2-D grid: rows index ``p``, columns index ``q``."""
    if grid.values.ndim != 2:
        raise ValueError("only one-mode grids can be written as CSV")
    (ql, qh, qn), (pl, ph, pn) = grid.axes
    head1 = f"# schema={SCHEMA_VERSION} version={__version__} hbar={grid.hbar!r} state={state or grid.description}"
    head2 = f"# q={ql!r}:{qh!r}:{qn} p={pl!r}:{ph!r}:{pn} rows=p cols=q"
    rows = [",".join("%.12e" % v for v in row) for row in np.asarray(grid.values, dtype=float).T]
    return "\n".join([head1, head2] + rows) + "\n"


def read_grid_csv(path):
    """Parse a grid written by :func:`grid_csv` into ``(axes, values[q, p])``."""
    with open(path) as fh:
        fh.readline()
        axes_line = fh.readline()
        data = np.loadtxt(fh, delimiter=",", ndmin=2)
    fields = dict(tok.split("=", 1) for tok in axes_line[1:].split())
    axes = []
    for key in ("q", "p"):
        lo, hi, cnt = fields[key].split(":")
        axes.append((float(lo), float(hi), int(cnt)))
    return tuple(axes), data.T


def _table_csv(header, columns, meta):
    lines = [f"# schema={SCHEMA_VERSION} version={__version__} {meta}", "# " + ",".join(header)]
    for row in zip(*columns):
        lines.append(",".join("%.12e" % v for v in row))
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------- config parsing


def load_config(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"{path}: cannot read config ({exc.strerror})") from exc
    try:
        cfg = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON ({exc.msg})") from exc
    if not isinstance(cfg, dict):
        raise ConfigError(f"{path}: top level must be a JSON object")
    return cfg


def _get(cfg, key, default=None, kind=float, where=""):
    name = f"{where}.{key}" if where else key
    if key not in cfg:
        if default is None:
            raise ConfigError(f"missing field '{name}'")
        return default
    val = cfg[key]
    try:
        if kind is int:
            if isinstance(val, bool) or int(val) != val:
                raise ValueError
            return int(val)
        if kind is float:
            if isinstance(val, bool):
                raise ValueError
            return float(val)
        if kind is bool:
            if not isinstance(val, bool):
                raise ValueError
            return val
        return kind(val)
    except (TypeError, ValueError):
        raise ConfigError(f"field '{name}': expected {kind.__name__}, got {val!r}") from None


def _complex(val, name):
    if isinstance(val, (int, float)) and not isinstance(val, bool):
        return complex(val)
    if isinstance(val, (list, tuple)) and len(val) == 2:
        return complex(float(val[0]), float(val[1]))
    raise ConfigError(f"field '{name}': expected a number or [re, im], got {val!r}")


def _vector(val, name, dim=None):
    try:
        arr = np.asarray(val, dtype=float)
    except (TypeError, ValueError):
        raise ConfigError(f"field '{name}': expected a list of numbers") from None
    if arr.ndim != 1 or (dim is not None and arr.shape != (dim,)):
        raise ConfigError(f"field '{name}': expected a vector of length {dim}, got shape {arr.shape}")
    return arr


def _matrix(val, name):
    try:
        arr = np.asarray(val, dtype=float)
    except (TypeError, ValueError):
        raise ConfigError(f"field '{name}': expected a row-major matrix") from None
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] % 2:
        raise ConfigError(f"field '{name}': expected a 2n x 2n matrix, got shape {arr.shape}")
    return arr


def _branch(spec, hbar, name):
    if not isinstance(spec, dict):
        raise ConfigError(f"field '{name}': expected an object with S and center")
    S = _matrix(spec.get("S", [[1, 0], [0, 1]]), f"{name}.S")
    center = _vector(spec.get("center", [0.0] * S.shape[0]), f"{name}.center", S.shape[0])
    try:
        return GaussianPure(S, center, hbar)
    except ValueError as exc:
        raise ConfigError(f"field '{name}': {exc}") from None


def _axes(cfg, n_default=101, span=5.0):
    g = cfg.get("grid", {})
    out = []
    for key in ("q", "p"):
        ax = g.get(key, [-span, span, n_default])
        if not isinstance(ax, (list, tuple)) or len(ax) != 3:
            raise ConfigError(f"field 'grid.{key}': expected [min, max, count]")
        lo, hi, cnt = float(ax[0]), float(ax[1]), ax[2]
        if int(cnt) != cnt or cnt < 2 or hi <= lo:
            raise ConfigError(f"field 'grid.{key}': need max > min and an integer count >= 2")
        out.append((lo, hi, int(cnt)))
    return out


def build_cat(cfg, seed):
    """Pure cat from a preset name or explicit branches."""
    hbar = _get(cfg, "hbar", 1.0)
    preset = cfg.get("preset")
    d = _get(cfg, "displacement", 2.0)
    s = _get(cfg, "squeeze", 2.0)
    if preset == "coherent-pair":
        return PureCat(1, 1, GaussianPure(np.eye(2), [d, 0], hbar), GaussianPure(np.eye(2), [-d, 0], hbar))
    if preset == "coherent-squeezed":
        return PureCat(1, 1, GaussianPure(np.eye(2), [d, 0], hbar), GaussianPure(squeeze(s), [-d, 0], hbar))
    if preset == "orthogonal-squeezed":
        return PureCat(1, 1, GaussianPure(squeeze(s), [0, 0], hbar), GaussianPure(squeeze(1 / s), [0, 0], hbar))
    if preset == "random":
        return random_cat(np.random.default_rng(seed), hbar)
    if preset is not None:
        raise ConfigError(f"field 'preset': unknown preset {preset!r}")
    try:
        return PureCat(_complex(cfg.get("a", 1.0), "a"), _complex(cfg.get("b", 1.0), "b"),
                       _branch(cfg.get("branch1", {}), hbar, "branch1"),
                       _branch(cfg.get("branch2", {}), hbar, "branch2"))
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from None


def build_channel(spec, hbar):
    if not isinstance(spec, dict):
        raise ConfigError("field 'channel': expected an object")
    if "kappa" in spec:
        return damped_oscillator(_get(spec, "kappa", where="channel"), _get(spec, "omega", 1.0, where="channel"),
                                 hbar)
    B = _matrix(spec.get("B", [[0, 0], [0, 0]]), "channel.B")
    lams = []
    for i, lam in enumerate(spec.get("lambdas", [])):
        lams.append(np.array([_complex(c, f"channel.lambdas[{i}]") for c in lam]))
    try:
        return LindbladChannel(B, tuple(lams), hbar)
    except ValueError as exc:
        raise ConfigError(f"field 'channel': {exc}") from None


# --------------------------------------------------------------------------- subcommands


def _cat_report(cat):
    term = interference_term(cat)
    nf = normal_form(cat.g1.S, cat.g2.S)
    env_cov = 0.5 * cat.hbar * np.linalg.inv(term.G.real)
    return {
        "K_magnitude": term.K_magnitude,
        "global_phase": term.global_phase,
        "thetas": nf.thetas,
        "classification": classify_fringes(nf).value,
        "envelope_covariance": env_cov,
        "normal_form_transform": nf.transform,
        "normal_form_base_change": nf.base_change,
        "eta": term.eta,
        "zeta_rel": term.zeta_rel,
        "norm": cat.norm2(),
    }


def cmd_cat(cfg, out, seed):
    cat = build_cat(cfg, seed)
    if cat.n != 1:
        raise ConfigError("grids are written for one mode only")
    state = cat_wigner(cat)
    name = cfg.get("name", cfg.get("preset", "cat"))
    grid = sample_grid(state, _axes(cfg))
    files = [os.path.join(out, f"{name}_wigner.csv"), os.path.join(out, f"{name}_report.json")]
    _atomic_write(files[0], grid_csv(grid, name))
    report = _cat_report(cat)
    report.update({"subcommand": "cat", "name": name, "hbar": cat.hbar, "seed": seed, "grid_axes": grid.axes})
    write_json(files[1], report)
    return files


def cmd_decohere(cfg, out, seed):
    cat = build_cat(cfg, seed)
    if cat.n != 1:
        raise ConfigError("grids are written for one mode only")
    ch = build_channel(cfg.get("channel", {"kappa": 0.5}), cat.hbar)
    times = [float(t) for t in cfg.get("times", [0.0, 0.1, 0.25, 0.5, 1.0, 2.0])]
    if any(t < 0 for t in times):
        raise ConfigError("field 'times': times must be nonnegative")
    name = cfg.get("name", cfg.get("preset", "cat"))
    state0 = cat_wigner(cat)
    axes = _axes(cfg)
    files, ratios, peaks = [], [], []
    for k, t in enumerate(times):
        st = evolve_state(state0, ch, t)
        path = os.path.join(out, f"{name}_t{k:02d}.csv")
        _atomic_write(path, grid_csv(sample_grid(st, axes), f"{name} t={t!r}"))
        files.append(path)
        ratios.append(fringe_to_hill_ratio(st))
        peaks.append(max((tm.envelope_peak() for tm in st.terms
                          if np.any(tm.M.imag) or np.any(tm.center.imag)), default=0.0))
    sig = []
    for i, term in enumerate(state0.terms):
        rep = check_signature_preservation(term_covariance(term), ch, times)
        sig.append({"term": i, "ok": rep.ok,
                    "re_signatures": [list(s) for s in rep.re_signatures],
                    "im_signatures": [list(s) for s in rep.im_signatures],
                    "re_C_positive": rep.re_C_positive, "violations": rep.violations})
    report = {"subcommand": "decohere", "name": name, "hbar": cat.hbar, "seed": seed, "times": times,
              "signatures": sig, "signatures_constant": all(s["ok"] for s in sig),
              "fringe_envelope_peak": peaks, "fringe_to_hill_ratio": ratios, "grid_axes": axes}
    rpath = os.path.join(out, f"{name}_decoherence.json")
    write_json(rpath, report)
    return files + [rpath]


def cmd_kerr(cfg, out, seed):
    hbar = _get(cfg, "hbar", 1.0)
    mu, nu = _get(cfg, "mu", 1, int), _get(cfg, "nu", 8, int)
    nbar = _get(cfg, "nbar", 0.5)
    disp = _vector(cfg.get("displacement", [2.0, 0.0]), "displacement", 2)
    try:
        kc = kerr_coefficients(mu, nu)
        state = kerr_cat(ThermalState(nbar, disp, hbar), mu, nu)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    name = cfg.get("name", f"kerr_{mu}_{nu}")
    grid = sample_grid(state, _axes(cfg, 121, 6.0))
    sweep = [float(x) for x in cfg.get("nbar_sweep", [0.0, 0.5, 1.0, 2.0])]
    swept = [kerr_cat(ThermalState(nb, disp, hbar), mu, nu) for nb in sweep] if kc.component_count > 1 else []
    widths = [fringe_width(st) for st in swept]
    all_widths = [fringe_widths(st) for st in swept]
    files = [os.path.join(out, f"{name}_wigner.csv"), os.path.join(out, f"{name}_report.json")]
    _atomic_write(files[0], grid_csv(grid, name))
    idx = kc.nonzero
    write_json(files[1], {
        "subcommand": "kerr", "name": name, "hbar": hbar, "seed": seed, "mu": mu, "nu": nu, "nbar": nbar,
        "displacement": disp, "period": kc.L, "component_count": kc.component_count,
        "coefficients": [{"k": int(k), "angle": 2 * np.pi * k / kc.L, "c": kc.coeffs[k],
                          "modulus": abs(kc.coeffs[k])} for k in idx],
        "reconstruction_error": kc.reconstruction_error(),
        "nbar_sweep": sweep, "fringe_fwhm": widths, "fringe_fwhm_all": all_widths, "grid_axes": grid.axes})
    return files


def cmd_kho(cfg, out, seed):
    hbar = _get(cfg, "hbar", 0.0128)
    try:
        params = KHOParams(_get(cfg, "K", 2.0), _get(cfg, "tau", float(np.pi / 3)), hbar,
                           _get(cfg, "kicks", 2, int))
        psi0 = squeezed_initial_state(_get(cfg, "sigma_q", 0.64), hbar, _get(cfg, "q0", 0.0))
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    g = cfg.get("grid", {})
    p_range = _vector(cfg.get("p_range", [-4.0, 4.0]), "p_range", 2)
    swarm = decompose_squeezed(psi0)
    res = kho_compare(params, psi0, q_section=_get(cfg, "q_section", -2.0), p_range=tuple(p_range),
                      p_count=_get(cfg, "p_count", 401, int), half_width=_get(g, "half_width", 10.0, where="grid"),
                      count=_get(g, "count", 16384, int, where="grid"), swarm=swarm,
                      frozen=_get(cfg, "frozen", False, bool))
    name = cfg.get("name", "kho")
    meta = f"hbar={hbar!r} K={params.K!r} tau={params.tau!r} kicks={params.kicks}"
    sec = os.path.join(out, f"{name}_section.csv")
    _atomic_write(sec, _table_csv(["p", "exact", "swarm"], [res.p, res.section_exact, res.section_swarm],
                                  meta + f" q={_get(cfg, 'q_section', -2.0)!r}"))
    # classical images of the initial nodes: the branch-center manifold
    cols = [[], [], [], []]
    for q0, w in zip(swarm.nodes, swarm.weights):
        x = np.array([q0, 0.0])
        for _ in range(params.kicks):
            x, _ = classical_map(x, params)
        for c, v in zip(cols, (q0, x[0], x[1], w)):
            c.append(v)
    man = os.path.join(out, f"{name}_manifold.csv")
    _atomic_write(man, _table_csv(["q_initial", "q", "p", "weight"], cols, meta))
    rep = os.path.join(out, f"{name}_report.json")
    write_json(rep, {"subcommand": "kho", "name": name, "seed": seed, "K": params.K, "tau": params.tau,
                     "hbar": hbar, "kicks": params.kicks, "branches": len(swarm),
                     "fidelity": res.fidelity, "section_discrepancy": res.discrepancy,
                     "swarm_norm": res.swarm_norm})
    return [sec, man, rep]


def cmd_verify(cfg, out, seed):
    names = cfg.get("criteria", list(CRITERIA))
    unknown = [n for n in names if n not in CRITERIA]
    if unknown:
        raise ConfigError(f"field 'criteria': unknown criteria {unknown}")
    results = []
    for n in names:
        r = CRITERIA[n](seed=seed) if n in SEEDED else CRITERIA[n]()
        print(r.line(), flush=True)
        results.append(r)
    entries = []
    for r in results:
        d = r.to_dict()
        # wall-clock times would break byte-identical reports
        d["metrics"] = {k: v for k, v in d["metrics"].items() if k != "seconds"}
        entries.append(d)
    path = os.path.join(out, "verify_report.json")
    write_json(path, {"subcommand": "verify", "seed": seed, "criteria": entries,
                      "passed": all(r.passed for r in results)})
    return [path], all(r.passed for r in results)


COMMANDS = {"cat": cmd_cat, "decohere": cmd_decohere, "kerr": cmd_kerr, "kho": cmd_kho, "verify": cmd_verify}


def _parser():
    ap = argparse.ArgumentParser(prog="phasecat", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"phasecat {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in SUBCOMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--config", required=True, help="JSON run configuration")
        sp.add_argument("--out", help="output directory (overrides the config 'out' field)")
        sp.add_argument("--seed", type=int, help="PRNG seed (overrides the config 'seed' field)")
    return ap


def main(argv=None):
    args = _parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        out = args.out or cfg.get("out", ".")
        seed = args.seed if args.seed is not None else _get(cfg, "seed", DEFAULT_SEED, int)
        if not 0 <= seed < 2 ** 64:
            raise ConfigError("seed must be an unsigned 64-bit integer")
        result = COMMANDS[args.command](cfg, out, seed)
    except ConfigError as exc:
        print(f"phasecat: config error: {exc}", file=sys.stderr)
        return 2
    except PhaseCatError as exc:
        print(f"phasecat: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    ok = True
    if args.command == "verify":
        result, ok = result
    for path in result:
        print(path)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
