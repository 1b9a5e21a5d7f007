"""
Command-line scenario runner.

    spacetime-em <subcommand> [--config FILE] [--seed N] [--out DIR]

Subcommands: verify, fields, trajectory, flip, constitutive, retarded.
Each writes ``report.json`` (and CSV tables where relevant) into ``--out``.
Exit status: 0 if every check passes, 1 if any check fails, 2 on a usage
or configuration error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import electrodynamics as ed
from . import forms, kernel, mechanics, pauli
from .errors import DomainError, NumericError

SUBCOMMANDS = ("verify", "fields", "trajectory", "flip", "constitutive", "retarded")


class ConfigError(ValueError):
    """Invalid scenario configuration; the message names the offending field."""


# -- config helpers -------------------------------------------------------------

def _get(cfg, key, default):
    return cfg.get(key, default) if isinstance(cfg, dict) else default


def _number(cfg, key, default, path, positive=False):
    value = _get(cfg, key, default)
    name = f"{path}{key}"
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{name}: expected a number, got {value!r}")
    if not math.isfinite(value):
        raise ConfigError(f"{name}: must be finite")
    if positive and value <= 0:
        raise ConfigError(f"{name}: must be positive")
    return float(value)


def _vector(cfg, key, default, path, length=3):
    value = _get(cfg, key, default)
    name = f"{path}{key}"
    try:
        arr = np.asarray(value, dtype=float)
    except (TypeError, ValueError):
        raise ConfigError(f"{name}: expected {length} numbers") from None
    if arr.shape != (length,) or not np.all(np.isfinite(arr)):
        raise ConfigError(f"{name}: expected {length} finite numbers")
    return arr


def _sign(cfg, key, default, path):
    value = _get(cfg, key, default)
    if value not in (1, -1):
        raise ConfigError(f"{path}{key}: must be +1 or -1")
    return int(value)


def _section(cfg, key):
    value = cfg.get(key, {})
    if not isinstance(value, dict):
        raise ConfigError(f"{key}: expected an object")
    return value


def _stencil(cfg):
    from .calculus import StencilConfig

    sec = _section(cfg, "stencil")
    h = _number(sec, "h", 1e-3, "stencil.", positive=True)
    order = _get(sec, "order", 2)
    if order not in (2, 4):
        raise ConfigError("stencil.order: must be 2 or 4")
    return StencilConfig(h, int(order))


def _field(cfg, key="field", default=None):
    sec = cfg.get(key, default)
    if not isinstance(sec, dict) or "preset" not in sec:
        raise ConfigError(f"{key}.preset: required")
    name = sec["preset"]
    if name not in ed.PRESETS:
        raise ConfigError(f"{key}.preset: unknown preset {name!r}; choose from {sorted(ed.PRESETS)}")
    params = sec.get("params", {})
    if not isinstance(params, dict):
        raise ConfigError(f"{key}.params: expected an object")
    try:
        return name, params, ed.PRESETS[name](**params)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{key}.params: {exc}") from None


def _particle(cfg, default=None):
    sec = cfg.get("particle", default or {})
    if not isinstance(sec, dict):
        raise ConfigError("particle: expected an object")
    m = _number(sec, "m", 1.0, "particle.", positive=True)
    q = _number(sec, "q", 1.0, "particle.")
    pos = _vector(sec, "position", [0.0, 0.0, 0.0, 0.0], "particle.", 4)
    mom = _vector(sec, "momentum", [0.0, 0.0, 0.0], "particle.")
    return mechanics.ChargedParticle.from_state(m, q, pos, mom)


def _blob(cfg, key="blob"):
    sec = _section(cfg, key)
    q = _number(sec, "q", 1.0, f"{key}.")
    sigma = _number(sec, "sigma", 1.0, f"{key}.", positive=True)
    center = _vector(sec, "center", [0.0, 0.0, 0.0], f"{key}.")
    velocity = _vector(sec, "velocity", [0.0, 0.0, 0.0], f"{key}.")
    if np.linalg.norm(velocity) >= 1.0:
        raise ConfigError(f"{key}.velocity: speed must be below 1")
    return ed.gaussian_blob(q, sigma, center, velocity), (q, sigma, center, velocity)


# -- report ---------------------------------------------------------------------

class Report:
    def __init__(self, command, seed):
        self.command = command
        self.seed = seed
        self.checks = []
        self.data = {}

    def check(self, name, value, tolerance, passed=None):
        value = float(value)
        if passed is None:
            passed = bool(math.isfinite(value) and value <= tolerance)
        self.checks.append({"name": name, "value": value, "tolerance": float(tolerance),
                            "passed": bool(passed)})

    @property
    def passed(self):
        return all(c["passed"] for c in self.checks)

    def as_dict(self):
        return {"command": self.command, "seed": self.seed, "passed": self.passed,
                "checks": self.checks, "data": self.data}


def _tol(cfg, name, default):
    return _number(_section(cfg, "tolerances"), name, default, "tolerances.", positive=True)


# -- subcommands --------------------------------------------------------------------

def _random_mv(rng, grade=None):
    c = rng.normal(size=16)
    if grade is not None:
        c = np.where(kernel.GRADE == grade, c, 0.0)
    return kernel.Multivector(c)


def run_verify(cfg, rng, report, out):
    orientation = _sign(cfg, "orientation", 1, "")
    i_sign = _sign(cfg, "i_sign", 1, "")
    samples = int(_number(cfg, "samples", 200, "", positive=True))
    tau = forms.VolumeElement(orientation)
    tol = _tol(cfg, "identity", 1e-12)

    index, sign = kernel.blade_product_table()
    mismatches = sum((index[a, b], sign[a, b]) != kernel.blade_product_naive(a, b)
                     for a in range(16) for b in range(16))
    report.check("kernel.table_vs_naive", mismatches, 0)
    anti = max(abs(((kernel.gamma(m) * kernel.gamma(n) + kernel.gamma(n) * kernel.gamma(m))
                    - 2 * kernel.ETA[m, n]).norm()) for m in range(4) for n in range(4))
    report.check("kernel.anticommutation", anti, 0)
    report.check("kernel.pseudoscalar_square", (kernel.G5 * kernel.G5 + 1).norm(), 0)

    worst_assoc = 0.0
    worst_hodge = 0.0
    for _ in range(samples):
        a, b, c = (_random_mv(rng) for _ in range(3))
        worst_assoc = max(worst_assoc, float(((a * b) * c - a * (b * c)).norm()))
        p = int(rng.integers(0, 5))
        A = forms.PairForm(_random_mv(rng, p), p)
        B = forms.PairForm(_random_mv(rng, p), p)
        lhs = kernel.outer(B, forms.pair_hodge(A, tau))
        rhs = kernel.scalar_product(B, A) * tau.pair.value
        worst_hodge = max(worst_hodge, float((lhs - rhs).norm()))
    report.check("kernel.associativity", worst_assoc, 1e-10)
    report.check("forms.hodge_inner_product", worst_hodge, tol)

    A = forms.PairForm(_random_mv(rng, 2), 2)
    flip = forms.pair_hodge(A, tau.flipped()) + forms.pair_hodge(A, tau)
    report.check("forms.hodge_orientation_flip", flip.norm(), 0)
    inv = forms.pair_hodge_inverse(forms.pair_hodge(A, tau), tau) - A
    report.check("forms.hodge_inverse", inv.norm(), tol)

    worst_law = 0.0
    for _ in range(20):
        chart = forms.LinearChart(rng.normal(size=(4, 4)))
        pair = forms.transform_components(kernel.G5, chart, "pair").coeffs[15]
        imp = forms.transform_components(kernel.G5, chart, "impair").coeffs[15]
        worst_law = max(worst_law, abs(pair - chart.det), abs(imp - abs(chart.det)))
    report.check("forms.volume_transformation", worst_law, 1e-10)

    anti_sigma = max(float((pauli.SIGMA[j] * pauli.SIGMA[k] + pauli.SIGMA[k] * pauli.SIGMA[j]
                            - 2.0 * (j == k)).norm()) for j in range(3) for k in range(3))
    report.check("pauli.sigma_anticommutation", anti_sigma, 0)
    i = pauli.pseudoscalar_i(i_sign)
    report.check("pauli.i_square", (i * i + 1).norm(), 0)
    a, b = rng.normal(size=3), rng.normal(size=3)
    cr = pauli.cross(a, b, i_sign).components - i_sign * np.cross(a, b)
    report.check("pauli.cross_product", np.abs(cr).max(), tol)
    report.data.update({"orientation": orientation, "i_sign": i_sign, "samples": samples})


def _axis(value, name):
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return np.array([float(value)])
    if isinstance(value, list) and len(value) == 3 and all(isinstance(v, (int, float)) for v in value):
        lo, hi, n = value
        if int(n) != n or n < 1:
            raise ConfigError(f"grid.{name}: point count must be a positive integer")
        return np.linspace(lo, hi, int(n))
    raise ConfigError(f"grid.{name}: expected a number or [lo, hi, n]")


def _write_csv(path, rows, header):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([repr(float(v) + 0.0) for v in row])  # + 0.0 folds -0.0


VACUUM_PRESETS = ("plane_wave", "uniform_EB")
FIELD_HEADER = ["x0", "x1", "x2", "x3"] + [f"c{b}" for b in range(16)]


def run_fields(cfg, rng, report, out):
    name, params, fmap = _field(cfg, default={"preset": "plane_wave"})
    grid = _section(cfg, "grid") or {"x0": 0.0, "x1": 0.0, "x2": 0.0, "x3": [0.0, 1.0, 10]}
    axes = [_axis(grid.get(f"x{k}", 0.0), f"x{k}") for k in range(4)]
    mesh = np.meshgrid(*axes, indexing="ij")
    points = np.stack([m.ravel() for m in mesh], axis=-1)
    rows = []
    skipped = 0
    for p in points:
        try:
            rows.append(np.concatenate([p, fmap(p).coeffs]))
        except DomainError:
            skipped += 1
    _write_csv(out / "fields.csv", rows, FIELD_HEADER)
    report.data.update({"preset": name, "params": params, "samples": len(rows), "skipped": skipped,
                        "csv": "fields.csv"})
    report.check("fields.finite", 0 if np.all(np.isfinite(np.array(rows))) else 1, 0)
    if name in VACUUM_PRESETS:
        stencil = _stencil(cfg)
        worst = max(ed.maxwell_residual(fmap, None, row[:4], stencil=stencil).max_norm for row in rows)
        report.check("fields.vacuum_maxwell_residual", worst, _tol(cfg, "maxwell", 1e-6))


def _orbit_checks(cfg, report, particle, fmap, name, params, wl):
    tol = _tol(cfg, "trajectory", 1e-6)
    m, q = particle.m, particle.q
    shell = np.abs(wl.u[:, 0] ** 2 - np.sum(wl.u[:, 1:] ** 2, axis=1) - 1.0).max()
    report.check("trajectory.mass_shell", shell, tol)
    if name != "uniform_EB":
        return
    E = np.asarray(params.get("E", [0, 0, 0]), dtype=float)
    B = np.asarray(params.get("B", [0, 0, 0]), dtype=float)
    p0 = m * wl.u[0, 1:]
    if np.allclose(E, 0) and np.linalg.norm(B) > 0 and q != 0 and abs(p0 @ B) < 1e-14:
        bmag = np.linalg.norm(B)
        radius = np.linalg.norm(p0) / (abs(q) * bmag)
        center = wl.x[0, 1:] + np.cross(p0, B) / (q * bmag ** 2)
        dev = np.abs(np.linalg.norm(wl.x[:, 1:] - center, axis=1) - radius).max()
        report.check("trajectory.gyroradius", dev, tol)
        report.data["gyroradius"] = float(radius)
    elif np.allclose(B, 0) and np.linalg.norm(E) > 0 and np.allclose(p0, 0) and q != 0:
        a = abs(q) * np.linalg.norm(E) / m
        ehat = E / np.linalg.norm(E)
        s = wl.s - wl.s[0]
        along = (wl.x[:, 1:] - wl.x[0, 1:]) @ ehat * np.sign(q)
        dev = max(np.abs(along - (np.cosh(a * s) - 1) / a).max(),
                  np.abs(wl.x[:, 0] - wl.x[0, 0] - np.sinh(a * s) / a).max())
        report.check("trajectory.hyperbolic", dev, tol)


GYRATION = {
    "particle": {"m": 1.0, "q": 1.0, "momentum": [1.0, 0.0, 0.0]},
    "field": {"preset": "uniform_EB", "params": {"B": [0.0, 0.0, 1.0]}},
    "s_end": 2 * math.pi,
    "ds": 2 * math.pi / 2000,
}


def _push_setup(cfg):
    merged = dict(GYRATION)
    merged.update(cfg)
    particle = _particle(merged, GYRATION["particle"])
    name, params, fmap = _field(merged)
    s_end = _number(merged, "s_end", GYRATION["s_end"], "", positive=True)
    ds = _number(merged, "ds", GYRATION["ds"], "", positive=True)
    return particle, name, params, fmap, s_end, ds


def run_trajectory(cfg, rng, report, out):
    particle, name, params, fmap, s_end, ds = _push_setup(cfg)
    wl = mechanics.lorentz_push(particle, fmap, s_end, ds)
    rows = np.column_stack([wl.s, wl.x, wl.u])
    header = ["s", "x0", "x1", "x2", "x3", "u0", "u1", "u2", "u3"]
    _write_csv(out / "trajectory.csv", rows, header)
    _orbit_checks(cfg, report, particle, fmap, name, params, wl)
    report.data.update({"preset": name, "params": params, "steps": len(wl) - 1,
                        "final_position": wl.x[-1].tolist(), "csv": "trajectory.csv"})


def run_flip(cfg, rng, report, out):
    particle, name, params, fmap, s_end, ds = _push_setup(cfg)
    blob, _ = _blob(cfg)
    res = mechanics.orientation_flip_experiment(particle, fmap, s_end, ds, blob)
    tol = _tol(cfg, "flip", 1e-12)
    qtol = _tol(cfg, "charge", 1e-6)
    q = blob.charge
    report.check("flip.trajectory_deviation", res.max_deviation, tol)
    report.check("flip.charge_pair_positive", abs(res.charge_pair - q), qtol)
    report.check("flip.charge_pair_flipped", abs(res.charge_pair_flipped + q), qtol)
    report.check("flip.charge_impair_positive", abs(res.charge_impair - q), qtol)
    report.check("flip.charge_impair_flipped", abs(res.charge_impair_flipped - q), qtol)
    spatial = pauli.flip_spatial_orientation()
    report.check("flip.spatial_force_deviation", spatial.force_deviation, tol)
    report.check("flip.spatial_residual_deviation", spatial.residual_deviation, tol)
    report.data.update({"orbit": res.as_dict(), "spatial": spatial.as_dict(), "preset": name})


def _chi(cfg):
    sec = _section(cfg, "chi") or {"kind": "vacuum"}
    kind = sec.get("kind", "vacuum")
    if kind == "vacuum":
        return ed.ConstitutiveTensor.vacuum()
    if kind == "axion":
        return ed.ConstitutiveTensor.axion(_number(sec, "a", 1.0, "chi."))
    if kind == "metric":
        try:
            g = np.asarray(sec.get("g"), dtype=float)
            return ed.effective_metric_constitutive(g)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"chi.g: {exc}") from None
    if kind == "array":
        try:
            return ed.ConstitutiveTensor(np.asarray(sec.get("array"), dtype=float))
        except (TypeError, ValueError, NumericError) as exc:
            raise ConfigError(f"chi.array: {exc}") from None
    raise ConfigError(f"chi.kind: unknown kind {kind!r}; choose vacuum, axion, metric or array")


def run_constitutive(cfg, rng, report, out):
    chi = _chi(cfg)
    tol = _tol(cfg, "constitutive", 1e-12)
    principal, skewon, axion = ed.constitutive_decompose(chi)
    resum = np.abs(principal + skewon + axion * ed.EPS6 - chi.chi).max()
    report.check("constitutive.resum", resum, tol)
    dims = [int(np.linalg.matrix_rank(P)) for P in ed.decomposition_projectors()]
    report.check("constitutive.dimensions", 0 if dims == [20, 15, 1] else 1, 0)
    if _section(cfg, "chi").get("kind", "vacuum") == "vacuum":
        F = ed.assemble_F(rng.normal(size=3), rng.normal(size=3))
        diff = (ed.excitation_form(chi, F) - forms.pair_hodge(F)).norm()
        report.check("constitutive.vacuum_hodge", diff, tol)
    report.data.update({
        "axion": axion,
        "norms": {"principal": float(np.linalg.norm(principal)), "skewon": float(np.linalg.norm(skewon)),
                  "axion": abs(axion)},
        "dimensions": {"principal": dims[0], "skewon": dims[1], "axion": dims[2]},
    })
    print(f"principal |P| = {np.linalg.norm(principal):.6g}  (dim {dims[0]})")
    print(f"skewon    |S| = {np.linalg.norm(skewon):.6g}  (dim {dims[1]})")
    print(f"axion       a = {axion:.6g}  (dim {dims[2]})")


def run_retarded(cfg, rng, report, out):
    blob, (q, sigma, center, velocity) = _blob(cfg)
    n = int(_number(cfg, "quadrature", ed.RETARDED_POINTS, "", positive=True))
    points = cfg.get("points", [[0.0, center[0] + 5 * sigma, center[1], center[2]]])
    if not isinstance(points, list) or not points:
        raise ConfigError("points: expected a non-empty list of spacetime points")
    moving = bool(np.linalg.norm(velocity) > 0)
    tol = _tol(cfg, "retarded", 0.01 if moving else 0.005)
    oracle = (ed.boosted_coulomb_field(q, velocity, center) if moving else ed.coulomb_field(q, center))
    rows = []
    worst = 0.0
    for k, p in enumerate(points):
        x = _vector({"p": p}, "p", None, f"points[{k}].", 4)
        F = ed.retarded_field(blob, x, n)
        ref = oracle(x)
        rel = float((F - ref).norm() / ref.norm())
        worst = max(worst, rel)
        rows.append(np.concatenate([x, F.coeffs]))
    _write_csv(out / "retarded.csv", rows, FIELD_HEADER)
    report.check("retarded.relative_error", worst, tol)
    report.data.update({"quadrature": n, "moving": moving, "csv": "retarded.csv"})


RUNNERS = {
    "verify": run_verify, "fields": run_fields, "trajectory": run_trajectory,
    "flip": run_flip, "constitutive": run_constitutive, "retarded": run_retarded,
}


def build_parser():
    parser = argparse.ArgumentParser(prog="spacetime-em", description=__doc__.strip().splitlines()[0])
    parser.add_argument("command", choices=SUBCOMMANDS)
    parser.add_argument("--config", type=Path, help="JSON scenario file")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized checks (default 0)")
    parser.add_argument("--out", type=Path, default=Path("."), help="output directory")
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    if args.seed < 0:
        print("error: --seed must be non-negative", file=sys.stderr)
        return 2
    try:
        cfg = {}
        if args.config is not None:
            try:
                cfg = json.loads(args.config.read_text())
            except OSError as exc:
                raise ConfigError(f"config: cannot read {args.config}: {exc.strerror}") from None
            except json.JSONDecodeError as exc:
                raise ConfigError(f"config: invalid JSON ({exc.msg} at line {exc.lineno})") from None
            if not isinstance(cfg, dict):
                raise ConfigError("config: top level must be an object")
        args.out.mkdir(parents=True, exist_ok=True)
        report = Report(args.command, args.seed)
        rng = np.random.default_rng(args.seed)
        try:
            RUNNERS[args.command](cfg, rng, report, args.out)
        except (NumericError, DomainError) as exc:
            report.checks.append({"name": "numeric", "value": None, "tolerance": 0.0,
                                  "passed": False, "error": str(exc)})
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = json.dumps(report.as_dict(), sort_keys=True, indent=2, default=_jsonable)
    (args.out / "report.json").write_text(text + "\n")
    for c in report.checks:
        value = "error" if c["value"] is None else f"{c['value']:.3e}"
        print(f"{'PASS' if c['passed'] else 'FAIL'} {c['name']}: {value} (tol {c['tolerance']:.1e})")
    return 0 if report.passed else 1


def _jsonable(obj):
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.generic):
        return obj.item()
    raise TypeError(f"cannot serialize {type(obj).__name__}")
