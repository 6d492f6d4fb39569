"""Command-line workbench wiring the library into reproducible data pipelines.

Four subcommands produce CSV data files plus a JSON sidecar that records the
fully resolved parameter set, seed and tool version:

* ``modes``     -- closed-form excitation energies along a coupling sweep,
                   with exact symplectic eigenvalues and a discrepancy column;
* ``squeeze``   -- quadrature variances along a coupling sweep;
* ``spectrum``  -- analytic displacement spectrum with detected peaks;
* ``simulate``  -- stochastic trajectories, Welch spectrum, and a comparison
                   report against the analytic spectrum.

Re-running any subcommand with the same configuration and seed reproduces
every data file byte for byte; a sidecar can itself be passed to ``--config``
to replay a run. Exit codes: 0 success, 2 configuration error, 3 numerical
failure, 4 dynamically unstable parameters.
"""

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .config import load_params_file
from .errors import (
    ComplexThreshold,
    ConfigError,
    TrimodeError,
    Unstable,
    UnstableParameters,
)
from .langevin import (
    RNG_ALGORITHM,
    averaged_psd,
    compare_psd_with_analytic,
    drift_matrix,
    simulate,
)
from .model import LinearizedParams
from .modes import (
    NORMAL,
    critical_lambda,
    excitation_energies,
    g1_critical,
    lambda_unstable,
)
from .presets import PRESETS
from .spectrum import displacement_spectrum, find_peaks
from .squeezing import variance_sweep
from .symplectic import hessian, symplectic_eigenvalues

SWEEP_AXES = ("lambda", "G1", "G2")

_DEFAULTS = {
    "grid": (0.0, 2.5, 10000),
    "seed": 0,
    "trajectories": 8,
    "steps": 1 << 18,
    "segment_len": 1 << 15,
    "overlap": 0.5,
    "prominence": 0.01,
    "decimate": 1,
    "write_trajectory": False,
}


@dataclass
class RunConfig:
    subcommand: str
    lp: LinearizedParams
    out: Path
    preset_name: str | None = None
    note: str = ""
    extra: dict | None = None
    sweep: tuple | None = None
    grid: tuple | None = None
    seed: int = 0
    trajectories: int = 8
    steps: int = 1 << 18
    segment_len: int = 1 << 15
    overlap: float = 0.5
    prominence: float = 0.01
    decimate: int = 1
    write_trajectory: bool = False
    workers: int = 1


def _parse_range(text, what):
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError(f"{what} must look like start:stop:n, got {text!r}")
    try:
        start, stop, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise ConfigError(f"bad {what} {text!r}: {exc}") from exc
    return start, stop, n


def _parse_sweep(text):
    if "=" not in text:
        raise ConfigError(f"sweep must look like axis=start:stop:n, got {text!r}")
    axis, rng = text.split("=", 1)
    axis = axis.strip()
    if axis not in SWEEP_AXES:
        raise ConfigError(f"sweep axis must be one of {SWEEP_AXES}, got {axis!r}")
    return (axis, *_parse_range(rng, "sweep range"))


def _check_grid(spec, what):
    start, stop, n = spec[-3], spec[-2], spec[-1]
    if n < 1:
        raise ConfigError(f"{what} needs at least one point, got n={n}")
    if not stop > start:
        raise ConfigError(f"{what} must be strictly increasing, got {start}..{stop}")
    return spec


def _grid_values(spec):
    return np.linspace(spec[-3], spec[-2], spec[-1])


def _params_from_dict(d):
    kwargs = {
        "Omega1": d["Omega1"],
        "Omega2": d["Omega2"],
        "omega_m": d.get("omega_m", 1.0),
        "G1": d.get("G1", 0.0),
        "G2": d.get("G2", 0.0),
        "lam": d.get("lambda", 0.0),
        "gamma_c1": d.get("gamma_c1", 0.0),
        "gamma_c2": d.get("gamma_c2", 0.0),
        "gamma_m": d.get("gamma_m", 0.0),
        "T_dim": d.get("T_dim", 0.0),
    }
    return LinearizedParams(**{k: float(v) for k, v in kwargs.items()})


def _load_sidecar(path):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read sidecar {path}: {exc}") from exc
    if "params" not in data:
        raise ConfigError(f"sidecar {path} has no 'params' entry")
    return data


def _resolve(args) -> RunConfig:
    if (args.config is None) == (args.preset is None):
        raise ConfigError("exactly one of --config or --preset is required")

    sidecar = {}
    preset = None
    if args.preset is not None:
        preset = PRESETS.get(args.preset)
        if preset is None:
            raise ConfigError(f"unknown preset {args.preset!r}; have {sorted(PRESETS)}")
        lp = preset.params
    elif str(args.config).endswith(".json"):
        sidecar = _load_sidecar(args.config)
        try:
            lp = _params_from_dict(sidecar["params"])
        except (KeyError, ValueError, TypeError) as exc:
            raise ConfigError(f"bad params in sidecar: {exc}") from exc
    else:
        lp = load_params_file(args.config)

    def pick(name, cli_value, builtin):
        if cli_value is not None:
            return cli_value
        if name in sidecar and sidecar[name] is not None:
            return sidecar[name]
        return builtin

    sweep = None
    if args.sweep is not None:
        sweep = _parse_sweep(args.sweep)
    elif sidecar.get("sweep"):
        s = sidecar["sweep"]
        sweep = (s["axis"], s["start"], s["stop"], int(s["n"]))
    elif preset is not None and preset.sweep is not None:
        sweep = preset.sweep
    if sweep is not None:
        _check_grid(sweep, "sweep grid")

    if args.grid is not None:
        grid = _parse_range(args.grid, "grid")
    elif sidecar.get("grid"):
        g = sidecar["grid"]
        grid = (g["start"], g["stop"], int(g["n"]))
    elif preset is not None and preset.grid is not None:
        grid = preset.grid
    else:
        grid = _DEFAULTS["grid"]
    _check_grid(grid, "grid")

    cfg = RunConfig(
        subcommand=args.subcommand,
        lp=lp,
        out=Path(args.out),
        preset_name=preset.name if preset else sidecar.get("preset"),
        note=preset.note if preset else sidecar.get("note", ""),
        extra=dict(preset.extra) if preset else dict(sidecar.get("extra") or {}),
        sweep=sweep,
        grid=grid,
        seed=int(pick("seed", args.seed, _DEFAULTS["seed"])),
        trajectories=int(pick("trajectories", args.trajectories, _DEFAULTS["trajectories"])),
        steps=int(pick("steps", args.steps, _DEFAULTS["steps"])),
        segment_len=int(pick("segment_len", args.segment_len, _DEFAULTS["segment_len"])),
        overlap=float(pick("overlap", args.overlap, _DEFAULTS["overlap"])),
        prominence=float(pick("prominence", args.prominence, _DEFAULTS["prominence"])),
        decimate=int(pick("decimate", args.decimate, _DEFAULTS["decimate"])),
        write_trajectory=bool(
            pick("write_trajectory", args.write_trajectory or None, _DEFAULTS["write_trajectory"])
        ),
        workers=max(1, args.workers or 1),
    )
    if cfg.subcommand in ("modes", "squeeze") and cfg.sweep is None:
        raise ConfigError(f"{cfg.subcommand} needs --sweep axis=start:stop:n")
    if cfg.subcommand == "simulate":
        if cfg.trajectories < 1:
            raise ConfigError("--trajectories must be >= 1")
        if cfg.decimate < 1:
            raise ConfigError("--decimate must be >= 1")
    return cfg


# ---------------------------------------------------------------------------
# output helpers


def _fmt(x):
    """Shortest round-trip decimal form; deterministic across runs."""
    x = float(x)
    return repr(x)


def _csv_text(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _sidecar_text(cfg: RunConfig, **command_fields):
    doc = {
        "tool": "trimode",
        "version": __version__,
        "subcommand": cfg.subcommand,
        "preset": cfg.preset_name,
        "note": cfg.note,
        "params": cfg.lp.as_dict(),
        "sweep": None
        if cfg.sweep is None
        else {"axis": cfg.sweep[0], "start": cfg.sweep[1], "stop": cfg.sweep[2], "n": cfg.sweep[3]},
        "grid": None
        if cfg.grid is None
        else {"start": cfg.grid[0], "stop": cfg.grid[1], "n": cfg.grid[2]},
        "seed": cfg.seed,
        "extra": cfg.extra or {},
    }
    doc.update(command_fields)
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _write_outputs(outdir: Path, files: dict):
    """Write all outputs via temp files; nothing is left behind on failure."""
    outdir.mkdir(parents=True, exist_ok=True)
    staged = []
    try:
        for name, content in files.items():
            tmp = outdir / (name + ".tmp")
            tmp.write_bytes(content.encode("utf-8") if isinstance(content, str) else content)
            staged.append((tmp, outdir / name))
        for tmp, final in staged:
            os.replace(tmp, final)
    except BaseException:
        for tmp, _ in staged:
            tmp.unlink(missing_ok=True)
        raise


def _map_ordered(fn, values, workers):
    if workers <= 1:
        return [fn(v) for v in values]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, values))


# ---------------------------------------------------------------------------
# subcommands


def cmd_modes(cfg: RunConfig):
    axis = cfg.sweep[0]
    values = _grid_values(cfg.sweep)

    def one(value):
        lp = cfg.lp.with_coupling(axis, float(value))
        nm = excitation_energies(lp)
        spec = symplectic_eigenvalues(hessian(lp))
        if spec.stable:
            oracle = spec.eigs
            if nm.phase == NORMAL:
                closed = sorted((abs(nm.eps_X), abs(nm.eps_Y), abs(nm.eps_Z)))
                disc = max(abs(c - o) for c, o in zip(closed, oracle))
            else:
                disc = math.nan
        else:
            oracle = (math.nan, math.nan, math.nan)
            disc = math.nan
        return [
            _fmt(value),
            _fmt(nm.eps_X.real), _fmt(nm.eps_X.imag),
            _fmt(nm.eps_Y.real), _fmt(nm.eps_Y.imag),
            _fmt(nm.eps_Z.real), _fmt(nm.eps_Z.imag),
            nm.phase,
            _fmt(oracle[0]), _fmt(oracle[1]), _fmt(oracle[2]),
            _fmt(disc),
        ]

    rows = _map_ordered(one, values, cfg.workers)
    header = [
        "coupling",
        "re_eps_X", "im_eps_X", "re_eps_Y", "im_eps_Y", "re_eps_Z", "im_eps_Z",
        "phase",
        "oracle_eig1", "oracle_eig2", "oracle_eig3",
        "discrepancy",
    ]

    def try_threshold(fn):
        try:
            return fn(cfg.lp)
        except ComplexThreshold:
            return None

    derived = {
        "lambda_c": critical_lambda(cfg.lp),
        "lambda_unstable": try_threshold(lambda_unstable),
        "G1_critical": try_threshold(g1_critical),
    }
    _write_outputs(
        cfg.out,
        {
            "modes.csv": _csv_text(header, rows),
            "modes.meta.json": _sidecar_text(cfg, derived=derived),
        },
    )


def cmd_squeeze(cfg: RunConfig):
    axis = cfg.sweep[0]
    points = variance_sweep(cfg.lp, axis, _grid_values(cfg.sweep))
    header = [
        "coupling",
        "var_x", "var_y", "var_z", "var_px", "var_py", "var_pz",
        "squeezed_x", "squeezed_y", "squeezed_z",
        "squeezed_px", "squeezed_py", "squeezed_pz",
        "flag",
    ]
    rows = []
    for pt in points:
        if pt.variances is None:
            rows.append([_fmt(pt.coupling)] + [_fmt(math.nan)] * 6 + [""] * 6 + [pt.flag])
        else:
            v = pt.variances
            flag = "divergent" if v.divergent else pt.flag
            rows.append(
                [
                    _fmt(pt.coupling),
                    _fmt(v.var_x), _fmt(v.var_y), _fmt(v.var_z),
                    _fmt(v.var_px), _fmt(v.var_py), _fmt(v.var_pz),
                    str(v.squeezed_x), str(v.squeezed_y), str(v.squeezed_z),
                    str(v.squeezed_px), str(v.squeezed_py), str(v.squeezed_pz),
                    flag,
                ]
            )
    _write_outputs(
        cfg.out,
        {
            "squeeze.csv": _csv_text(header, rows),
            "squeeze.meta.json": _sidecar_text(cfg, lambda_c=critical_lambda(cfg.lp)),
        },
    )


def _peaks_json(peaks):
    return [
        {"omega_peak": p.omega_peak, "height": p.height, "prominence": p.prominence}
        for p in peaks
    ]


def cmd_spectrum(cfg: RunConfig):
    sr = displacement_spectrum(cfg.lp, _grid_values(cfg.grid))
    sr.peaks = find_peaks(sr, cfg.prominence)
    rows = [[_fmt(w), _fmt(s)] for w, s in zip(sr.omega_grid, sr.s_values)]
    _write_outputs(
        cfg.out,
        {
            "spectrum.csv": _csv_text(["omega", "s_q"], rows),
            "spectrum.meta.json": _sidecar_text(
                cfg, peaks=_peaks_json(sr.peaks), prominence_frac=cfg.prominence
            ),
        },
    )


def cmd_simulate(cfg: RunConfig):
    dm = drift_matrix(cfg.lp)
    if dm.spectral_abscissa >= 0.0:
        evs = np.linalg.eigvals(dm.A)
        worst = evs[np.argmax(evs.real)]
        raise UnstableParameters(
            f"drift matrix unstable: eigenvalue {worst:.6g} has nonnegative real part",
            eigenvalue=complex(worst),
        )
    omega_max = cfg.grid[1]
    dt = 2.0 * math.pi / (400.0 * omega_max)
    seeds = [cfg.seed + k for k in range(cfg.trajectories)]
    omega_w, psd = averaged_psd(
        cfg.lp, dt, cfg.steps, seeds, cfg.segment_len, cfg.overlap
    )
    report = compare_psd_with_analytic(
        cfg.lp, omega_w, psd, omega_max, prominence_frac=cfg.prominence
    )
    report.update(
        {
            "dt": dt,
            "n_trajectories": cfg.trajectories,
            "n_steps": cfg.steps,
            "segment_len": cfg.segment_len,
            "overlap": cfg.overlap,
        }
    )
    files = {
        "psd.csv": _csv_text(
            ["omega", "psd"], [[_fmt(w), _fmt(v)] for w, v in zip(omega_w, psd)]
        ),
        "report.json": json.dumps(report, indent=2, sort_keys=True) + "\n",
        "psd.meta.json": _sidecar_text(
            cfg,
            trajectories=cfg.trajectories,
            steps=cfg.steps,
            segment_len=cfg.segment_len,
            overlap=cfg.overlap,
            prominence=cfg.prominence,
            decimate=cfg.decimate,
            write_trajectory=cfg.write_trajectory,
            rng=RNG_ALGORITHM,
            dt=dt,
        ),
    }
    if cfg.write_trajectory:
        traj = simulate(cfg.lp, dt, cfg.steps, seeds[0])
        sl = slice(None, None, cfg.decimate)
        t = traj.times[sl]
        rows = [
            [_fmt(ti)] + [_fmt(v) for v in row]
            for ti, row in zip(t, traj.states[sl])
        ]
        files["trajectory.csv"] = _csv_text(
            ["t", "X1", "Y1", "X2", "Y2", "Q", "P"], rows
        )
    _write_outputs(cfg.out, files)


# ---------------------------------------------------------------------------
# entry points


def build_parser():
    parser = argparse.ArgumentParser(
        prog="trimode",
        description="two optical modes + one mechanical mode: figure-data pipelines",
    )
    parser.add_argument("--version", action="version", version=f"trimode {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name, doc in (
        ("modes", "excitation energies along a coupling sweep"),
        ("squeeze", "quadrature variances along a coupling sweep"),
        ("spectrum", "analytic displacement spectrum and peaks"),
        ("simulate", "stochastic trajectories, Welch spectrum, comparison report"),
    ):
        p = sub.add_parser(name, help=doc)
        p.add_argument("--config", help="parameter file or a .meta.json sidecar to replay")
        p.add_argument("--preset", help=f"named preset: {', '.join(sorted(PRESETS))}")
        p.add_argument("--sweep", help="axis=start:stop:n with axis in lambda|G1|G2")
        p.add_argument("--grid", help="start:stop:n frequency grid")
        p.add_argument("--out", default=".", help="output directory (default: .)")
        p.add_argument("--seed", type=int, help="base RNG seed (default: 0)")
        p.add_argument("--trajectories", type=int, help="number of trajectories (simulate)")
        p.add_argument("--workers", type=int, default=1, help="worker threads for sweeps")
        p.add_argument("--steps", type=int, help="integration steps per trajectory")
        p.add_argument("--segment-len", dest="segment_len", type=int, help="Welch segment length")
        p.add_argument("--overlap", type=float, help="Welch segment overlap fraction")
        p.add_argument("--prominence", type=float, help="peak prominence fraction of max")
        p.add_argument("--decimate", type=int, help="trajectory output decimation factor")
        p.add_argument(
            "--write-trajectory",
            dest="write_trajectory",
            action="store_true",
            help="also write the first trajectory as CSV (simulate)",
        )
    return parser


_HANDLERS = {
    "modes": cmd_modes,
    "squeeze": cmd_squeeze,
    "spectrum": cmd_spectrum,
    "simulate": cmd_simulate,
}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        cfg = _resolve(args)
        _HANDLERS[cfg.subcommand](cfg)
        return 0
    except ConfigError as exc:
        print(f"trimode: config error: {exc}", file=sys.stderr)
        return 2
    except (UnstableParameters, Unstable) as exc:
        print(f"trimode: unstable parameters: {exc}", file=sys.stderr)
        return 4
    except TrimodeError as exc:
        print(f"trimode: numerical failure: {exc}", file=sys.stderr)
        return 3
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"trimode: unexpected failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


def entry():
    sys.exit(main())
