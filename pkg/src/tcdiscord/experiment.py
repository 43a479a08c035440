"""Experiment pipeline, config files, bundled presets and CSV output.

A run goes basis -> Hamiltonian -> evolution -> field trace -> GQD / VNE /
purity for every time point of every sweep value, then extracts peaks,
revival rates, maxima, fits and revival shifts.

Config files are TOML documents written with flat dotted keys::

    name = "demo"
    output.dir = "results"
    system.n_atoms = 2
    system.n_photons = 10
    system.gamma = 0.0
    initial.p = 0.0
    initial.alpha = "pi/4"        # numbers or "k*pi/m" strings
    time.start = 0.0
    time.end = 10.0
    time.step = 0.01
    time.auto_step = true         # refine to min(step, 0.2 / spectral width)
    sweep.axis = "n_photons"      # n_photons | alpha | gamma | n_atoms
    sweep.values = [0, 10]
    optimizer.multistarts = 1

See :data:`CONFIG_KEYS` for the full list.
"""

from __future__ import annotations

import csv
import json
import math
import platform
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

import numpy as np
import scipy

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from . import __version__
from .analysis import (
    DEFAULT_THRESHOLD_FRACTION,
    find_peaks,
    max_quantifier,
    polyfit,
    revival_rate,
    revival_shift,
    slope_gqd_vs_vne,
)
from .correlations import OptimizerOptions, minimize_gqd, von_neumann_entropy
from .dynamics import (
    DEFAULT_STEP,
    DEFAULT_T_END,
    EvolutionKernel,
    TimeSeries,
    auto_step,
    evolve,
    purity,
    time_grid,
    trace_out_field,
)
from .hamiltonian import build_hamiltonian, eigendecompose
from .model import (
    InitialStateParams,
    InvalidStateError,
    NumericalError,
    SystemConfig,
    build_basis,
    initial_state,
)

SWEEP_AXES = ("n_photons", "alpha", "gamma", "n_atoms")

# Looser than the library default: every time point is also warm-started
# from the previous minimizer.
SERIES_OPTIMIZER = OptimizerOptions(multistarts=1, sample_points=256)


class ConfigError(ValueError):
    """Invalid experiment configuration."""


@dataclass(frozen=True)
class TimeGridSpec:
    start: float = 0.0
    end: float = DEFAULT_T_END
    step: float = DEFAULT_STEP
    auto_step: bool = True


@dataclass(frozen=True)
class ExperimentConfig:
    name: str
    system: SystemConfig
    initial: InitialStateParams = InitialStateParams()
    time: TimeGridSpec = TimeGridSpec()
    sweep_axis: str | None = None
    sweep_values: tuple = ()
    optimizer: OptimizerOptions = SERIES_OPTIMIZER
    output_dir: str = "results"
    threshold_fraction: float = DEFAULT_THRESHOLD_FRACTION
    peak_number: int = 2

    def __post_init__(self):
        if not re.fullmatch(r"[A-Za-z0-9_.-]+", self.name or ""):
            raise ConfigError(f"experiment name {self.name!r} must be a non-empty file-name-safe string")
        if self.time.step <= 0 or self.time.end < self.time.start or self.time.start < 0:
            raise ConfigError("time grid needs 0 <= start <= end and step > 0")
        if self.sweep_axis is not None and self.sweep_axis not in SWEEP_AXES:
            raise ConfigError(f"sweep.axis must be one of {SWEEP_AXES}, got {self.sweep_axis!r}")
        if self.sweep_axis is not None and not self.sweep_values:
            raise ConfigError("sweep.values must be non-empty when sweep.axis is set")
        if self.sweep_axis is None and self.sweep_values:
            raise ConfigError("sweep.values given without sweep.axis")
        if len(set(self.sweep_values)) != len(self.sweep_values):
            raise ConfigError("sweep.values contains duplicates")
        try:
            self.points()
        except ValueError as exc:
            raise ConfigError(f"invalid sweep value: {exc}") from exc

    def points(self):
        """``[(sweep_value, SystemConfig, InitialStateParams), ...]`` sorted by sweep value."""
        if self.sweep_axis is None:
            return [(None, self.system, self.initial)]
        out = []
        for value in sorted(self.sweep_values):
            system, initial = self.system, self.initial
            if self.sweep_axis == "n_photons":
                system = replace(system, n_photons=_as_int(value))
            elif self.sweep_axis == "n_atoms":
                system = replace(system, n_atoms=_as_int(value))
            elif self.sweep_axis == "gamma":
                system = replace(system, decoherence=float(value))
            else:
                initial = replace(initial, superposition_angle=float(value))
            out.append((value, system, initial))
        return out

    def flat(self) -> dict:
        """Dotted-key view of the configuration (inverse of :func:`config_from_mapping`)."""
        d = {
            "name": self.name,
            "output.dir": self.output_dir,
            "system.n_atoms": self.system.n_atoms,
            "system.n_photons": self.system.n_photons,
            "system.coupling": self.system.coupling,
            "system.atom_freq": self.system.atom_freq,
            "system.field_freq": self.system.field_freq,
            "system.gamma": self.system.decoherence,
            "initial.p": self.initial.mixing_prob,
            "initial.alpha": self.initial.superposition_angle,
            "time.start": self.time.start,
            "time.end": self.time.end,
            "time.step": self.time.step,
            "time.auto_step": self.time.auto_step,
            "analysis.threshold_fraction": self.threshold_fraction,
            "analysis.peak_number": self.peak_number,
        }
        if self.sweep_axis is not None:
            d["sweep.axis"] = self.sweep_axis
            d["sweep.values"] = list(self.sweep_values)
        for key, value in asdict(self.optimizer).items():
            d[f"optimizer.{key}"] = value
        return d


def _as_int(value) -> int:
    if isinstance(value, bool) or int(value) != value:
        raise ValueError(f"expected an integer, got {value!r}")
    return int(value)


_ANGLE = re.compile(r"^\s*(?:([0-9.]+)\s*\*?\s*)?pi\s*(?:/\s*([0-9.]+))?\s*$")


def parse_angle(value) -> float:
    """Accept plain numbers or strings such as ``"pi"``, ``"pi/4"``, ``"3*pi/4"``."""
    if isinstance(value, bool):
        raise ValueError(f"not an angle: {value!r}")
    if isinstance(value, (int, float)):
        return float(value)
    text = str(value)
    m = _ANGLE.match(text)
    if m:
        num = float(m.group(1)) if m.group(1) else 1.0
        den = float(m.group(2)) if m.group(2) else 1.0
        return num * math.pi / den
    return float(text)


def _bool(value) -> bool:
    if isinstance(value, bool):
        return value
    if str(value).lower() in ("true", "1", "yes"):
        return True
    if str(value).lower() in ("false", "0", "no"):
        return False
    raise ValueError(f"not a boolean: {value!r}")


CONFIG_KEYS = {
    "name": str,
    "output.dir": str,
    "system.n_atoms": _as_int,
    "system.n_photons": _as_int,
    "system.coupling": float,
    "system.atom_freq": float,
    "system.field_freq": float,
    "system.gamma": float,
    "initial.p": float,
    "initial.alpha": parse_angle,
    "time.start": float,
    "time.end": float,
    "time.step": float,
    "time.auto_step": _bool,
    "sweep.axis": str,
    "sweep.values": list,
    "analysis.threshold_fraction": float,
    "analysis.peak_number": _as_int,
    "optimizer.multistarts": _as_int,
    "optimizer.theta_steps": _as_int,
    "optimizer.phi_steps": _as_int,
    "optimizer.max_grid_points": _as_int,
    "optimizer.sample_points": _as_int,
    "optimizer.initial_step": float,
    "optimizer.fatol": float,
    "optimizer.xatol": float,
    "optimizer.max_evaluations": _as_int,
    "optimizer.agreement_tol": float,
}


def _flatten(tree: dict, prefix: str = "") -> dict:
    flat = {}
    for key, value in tree.items():
        dotted = f"{prefix}{key}"
        if isinstance(value, dict):
            flat.update(_flatten(value, dotted + "."))
        else:
            flat[dotted] = value
    return flat


def config_from_mapping(flat: dict) -> ExperimentConfig:
    """Build a config from a dotted-key mapping, validating every key and value."""
    unknown = sorted(set(flat) - set(CONFIG_KEYS))
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
    try:
        v = {key: CONFIG_KEYS[key](value) for key, value in flat.items()}
        axis = v.get("sweep.axis")
        values = v.get("sweep.values", [])
        if axis == "alpha":
            values = [parse_angle(x) for x in values]
        elif axis == "gamma":
            values = [float(x) for x in values]
        elif axis in ("n_photons", "n_atoms"):
            values = [_as_int(x) for x in values]
        system = SystemConfig(
            n_atoms=v.get("system.n_atoms", 2),
            n_photons=v.get("system.n_photons", 0),
            coupling=v.get("system.coupling", 1.0),
            atom_freq=v.get("system.atom_freq", 1.0),
            field_freq=v.get("system.field_freq", 1.0),
            decoherence=v.get("system.gamma", 0.0),
        )
        initial = InitialStateParams(v.get("initial.p", 0.0), v.get("initial.alpha", 0.0))
        grid = TimeGridSpec(
            v.get("time.start", 0.0), v.get("time.end", DEFAULT_T_END),
            v.get("time.step", DEFAULT_STEP), v.get("time.auto_step", True),
        )
        opt_kwargs = {k.split(".", 1)[1]: val for k, val in v.items() if k.startswith("optimizer.")}
        optimizer = replace(SERIES_OPTIMIZER, **opt_kwargs)
        return ExperimentConfig(
            name=v.get("name", "experiment"),
            system=system,
            initial=initial,
            time=grid,
            sweep_axis=axis,
            sweep_values=tuple(values),
            optimizer=optimizer,
            output_dir=v.get("output.dir", "results"),
            threshold_fraction=v.get("analysis.threshold_fraction", DEFAULT_THRESHOLD_FRACTION),
            peak_number=v.get("analysis.peak_number", 2),
        )
    except ConfigError:
        raise
    except (ValueError, TypeError) as exc:
        raise ConfigError(str(exc)) from exc


def parse_override(text: str):
    """``"key=value"`` -> ``(key, value)``; the value is read as a TOML literal when possible."""
    if "=" not in text:
        raise ConfigError(f"override {text!r} is not of the form key=value")
    key, raw = (s.strip() for s in text.split("=", 1))
    try:
        value = tomllib.loads(f"v = {raw}")["v"]
    except tomllib.TOMLDecodeError:
        value = raw
    return key, value


def load_config(path, overrides=()) -> ExperimentConfig:
    with open(path, "rb") as fh:
        try:
            tree = tomllib.load(fh)
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError(f"{path}: {exc}") from exc
    flat = _flatten(tree)
    flat.update(parse_override(o) for o in overrides)
    return config_from_mapping(flat)


def apply_overrides(config: ExperimentConfig, overrides=()) -> ExperimentConfig:
    if not overrides:
        return config
    flat = config.flat()
    flat.update(parse_override(o) for o in overrides)
    return config_from_mapping(flat)


# ---------------------------------------------------------------- presets

def _panel(name, **kw):
    system = SystemConfig(kw.pop("n_atoms", 2), kw.pop("n_photons", 0), decoherence=kw.pop("gamma", 0.0))
    initial = InitialStateParams(kw.pop("p", 0.0), kw.pop("alpha", 0.0))
    return ExperimentConfig(name=name, system=system, initial=initial, **kw)


def _alpha_values(count=17):
    return tuple(float(a) for a in np.linspace(0.0, math.pi, count))


def _build_presets():
    presets = {}
    presets["fig1"] = [
        _panel(f"fig1_N{N}_n{n}", n_atoms=N, n_photons=n)
        for N in (2, 5) for n in (0, 10)
    ]
    presets["fig2"] = [
        _panel(f"fig2_N{N}", n_atoms=N, p=0.5, sweep_axis="alpha", sweep_values=_alpha_values())
        for N in (2, 5)
    ]
    presets["fig3"] = [
        _panel("fig3_N2", n_atoms=2, sweep_axis="n_photons", sweep_values=tuple(range(0, 21, 2)) + (100,)),
        _panel("fig3_N5", n_atoms=5, sweep_axis="n_photons", sweep_values=tuple(range(0, 21, 2))),
    ]
    presets["fig4"] = [
        _panel(f"fig4_N{N}_n{n}", n_atoms=N, n_photons=n, gamma=0.05, alpha=math.pi / 4)
        for N in (2, 5) for n in (0, 10)
    ]
    presets["fig5"] = [
        _panel("fig5_N2", n_atoms=2, sweep_axis="n_photons", sweep_values=tuple(range(0, 21))),
    ]
    presets["fig6"] = [
        _panel(f"fig6_N{N}", n_atoms=N, n_photons=10, gamma=0.05, sweep_axis="alpha", sweep_values=_alpha_values())
        for N in (2, 5)
    ]
    presets["fig7"] = [
        _panel(f"fig7_N{N}", n_atoms=N, sweep_axis="alpha", sweep_values=(0.0, math.pi / 4))
        for N in (2, 5)
    ]
    presets["fig8"] = [
        _panel("fig8", n_photons=10, sweep_axis="n_atoms", sweep_values=(2, 3, 4, 5)),
    ]
    presets["fig9"] = [
        _panel("fig9", n_photons=10, sweep_axis="n_atoms", sweep_values=(2, 3, 4, 5)),
    ]
    return presets


PRESET_DESCRIPTIONS = {
    "fig1": "GQD/VNE dynamics, N in {2,5}, n in {0,10}, gamma=0, p=0, alpha=0",
    "fig2": "alpha in [0,pi] density sweep, N in {2,5}, n=0, gamma=0, p=0.5",
    "fig3": "d_max versus photon number n (N=2 up to n=100, N=5), gamma=0, p=0, alpha=0",
    "fig4": "dynamics with intrinsic decoherence, N in {2,5}, n in {0,10}, gamma=0.05, alpha=pi/4, p=0",
    "fig5": "revival rate m_R versus n in 0..20, N=2, gamma=0, p=0, alpha=0",
    "fig6": "alpha in [0,pi] density sweep, N in {2,5}, n=10, gamma=0.05, p=0",
    "fig7": "purity against GQD/VNE, alpha in {0,pi/4}, N in {2,5}, gamma=0, p=0",
    "fig8": "revival shift Delta t2 of N=3,4,5 relative to N=2, n=10, gamma=0, alpha=0",
    "fig9": "d_max and e_max versus N in 2..5 with quadratic fits, n=10, gamma=0, p=0",
}


def list_presets() -> list:
    return sorted(PRESET_DESCRIPTIONS)


def get_preset(name: str) -> list:
    """Experiment panels of a bundled preset."""
    presets = _build_presets()
    if name not in presets:
        raise ConfigError(f"unknown preset {name!r}; choose from {', '.join(list_presets())}")
    return presets[name]


# ---------------------------------------------------------------- pipeline

@dataclass
class Trajectory:
    """Quantifiers of the atomic state along a time grid (scaled time ``g t``)."""

    system: SystemConfig
    initial: InitialStateParams
    times: np.ndarray
    gqd: np.ndarray
    vne: np.ndarray
    purity: np.ndarray
    frames: np.ndarray
    converged: np.ndarray
    evaluations: int = 0

    def series(self, quantity: str) -> TimeSeries:
        return TimeSeries(self.times, getattr(self, quantity), quantity)


def simulation_times(system: SystemConfig, grid: TimeGridSpec = TimeGridSpec()) -> np.ndarray:
    step = grid.step
    if grid.auto_step:
        basis = build_basis(system)
        spectrum = eigendecompose(build_hamiltonian(basis, system))
        step = auto_step(spectrum, grid.step / system.coupling) * system.coupling
    return time_grid(grid.start, grid.end, step)


def simulate(system: SystemConfig, initial: InitialStateParams, times=None,
             optimizer: OptimizerOptions = SERIES_OPTIMIZER, with_gqd: bool = True) -> Trajectory:
    """Evolve, trace out the field and evaluate GQD, VNE and purity at each scaled time.

    Each GQD minimization is warm-started from the minimizer of the previous
    time point.  ``with_gqd=False`` skips the minimization (GQD reported as NaN).
    """
    if times is None:
        times = simulation_times(system)
    times = np.asarray(times, dtype=float)
    basis = build_basis(system)
    spectrum = eigendecompose(build_hamiltonian(basis, system))
    kernel = EvolutionKernel.from_state(spectrum, initial_state(basis, initial), system.decoherence)
    N = system.n_atoms
    gqd = np.full(len(times), np.nan)
    vne = np.empty(len(times))
    pur = np.empty(len(times))
    frames = np.full((len(times), 2 * N), np.nan)
    conv = np.zeros(len(times), dtype=bool)
    evaluations = 0
    previous = None
    for i, tau in enumerate(times):
        atoms = trace_out_field(evolve(kernel, tau / system.coupling), basis)
        vne[i] = von_neumann_entropy(atoms)
        pur[i] = purity(atoms)
        if with_gqd:
            res = minimize_gqd(atoms, optimizer, starts=(previous,) if previous is not None else ())
            previous = res.argmin
            gqd[i] = res.value
            frames[i] = res.argmin.as_vector()
            conv[i] = res.converged
            evaluations += res.evaluations
    return Trajectory(system, initial, times, gqd, vne, pur, frames, conv, evaluations)


def _point_label(config: ExperimentConfig, value) -> str:
    return config.name if value is None else f"{config.name} at {config.sweep_axis}={value}"


def _run_point(args):
    config, value, system, initial = args
    try:
        times = simulation_times(system, config.time)
        return simulate(system, initial, times, config.optimizer)
    except (NumericalError, InvalidStateError) as exc:
        raise NumericalError(f"{_point_label(config, value)}: {exc}") from exc


TIMESERIES_COLUMNS = ["n_atoms", "n_photons", "gamma", "p", "alpha", "t", "gqd", "vne", "purity"]


def _timeseries_rows(config: ExperimentConfig, results):
    max_n = max(traj.system.n_atoms for _, traj in results)
    header = (
        ([config.sweep_axis] if config.sweep_axis else [])
        + TIMESERIES_COLUMNS
        + [f"theta_{j + 1}" for j in range(max_n)]
        + [f"phi_{j + 1}" for j in range(max_n)]
        + ["converged"]
    )
    rows = []
    for value, traj in results:
        s, ini = traj.system, traj.initial
        N = s.n_atoms
        pad = [""] * (max_n - N)
        for i, t in enumerate(traj.times):
            frame = traj.frames[i]
            rows.append(
                ([repr(value)] if config.sweep_axis else [])
                + [s.n_atoms, s.n_photons, repr(s.decoherence), repr(ini.mixing_prob),
                   repr(ini.superposition_angle), repr(float(t)), repr(float(traj.gqd[i])),
                   repr(float(traj.vne[i])), repr(float(traj.purity[i]))]
                + [repr(float(a)) for a in frame[:N]] + pad
                + [repr(float(a)) for a in frame[N:]] + pad
                + [int(traj.converged[i])]
            )
    return header, rows


def analyse(config: ExperimentConfig, results) -> list:
    """Long-format analysis records ``(sweep_value, quantity, value)``."""
    records = []
    peaks_by_value = {}
    maxima = []
    for value, traj in results:
        gqd = traj.series("gqd")
        vne = traj.series("vne")
        d_max, t_d = max_quantifier(gqd)
        e_max, t_e = max_quantifier(vne)
        t_span = float(traj.times[-1] - traj.times[0])
        rec = {"d_max": d_max, "t_d_max": t_d, "e_max": e_max, "t_e_max": t_e,
               "purity_min": float(traj.purity.min()), "purity_max": float(traj.purity.max())}
        if len(traj.times) >= 3:
            peaks = find_peaks(gqd, config.threshold_fraction * float(gqd.values.max()))
            peaks_by_value[value] = peaks
            rec["n_peaks"] = len(peaks)
            if t_span > 0:
                rec["m_R"] = revival_rate(peaks, t_span)
            for k, tp in enumerate(peaks.peak_times[:config.peak_number], start=1):
                rec[f"t_peak_{k}"] = float(tp)
            if np.ptp(vne.values) > 0:
                fit = slope_gqd_vs_vne(gqd, vne)
                rec["gqd_vne_intercept"] = float(fit.coefficients[0])
                rec["gqd_vne_slope"] = float(fit.coefficients[1])
        records.extend((value, q, x) for q, x in rec.items())
        maxima.append((value, d_max, e_max))

    if config.sweep_axis == "n_atoms":
        reference = peaks_by_value.get(2)
        shifts = []
        for value, peaks in peaks_by_value.items():
            if value == 2 or reference is None:
                continue
            try:
                shift = revival_shift(reference, peaks, config.peak_number)
            except ValueError:
                continue
            records.append((value, "delta_t2", shift))
            shifts.append((value, shift))
        if len(shifts) >= 2:
            fit = polyfit([v for v, _ in shifts], [s for _, s in shifts], 1)
            records.append((None, "delta_t2_fit_c0", float(fit.coefficients[0])))
            records.append((None, "delta_t2_fit_c1", float(fit.coefficients[1])))
        if len(maxima) >= 3:
            xs = [v for v, _, _ in maxima]
            for label, col in (("d_max", 1), ("e_max", 2)):
                fit = polyfit(xs, [m[col] for m in maxima], 2)
                for k, c in enumerate(fit.coefficients):
                    records.append((None, f"{label}_fit_c{k}", float(c)))
                records.append((None, f"{label}_fit_rms", fit.residual_rms))
    return records


def _write_csv(path: Path, header, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


@dataclass
class RunSummary:
    name: str
    files: dict = field(default_factory=dict)
    n_rows: int = 0
    wall_time: float = 0.0
    records: list = field(default_factory=list)


def run_experiment(config: ExperimentConfig, workers: int = 1, output_dir=None) -> RunSummary:
    """Run every sweep point and write ``<name>_timeseries.csv``, ``<name>_analysis.csv``
    and ``<name>_meta.json`` into the output directory.

    Output content does not depend on ``workers``.
    """
    started = time.perf_counter()
    out = Path(output_dir if output_dir is not None else config.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    jobs = [(config, value, system, initial) for value, system, initial in config.points()]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            trajectories = list(pool.map(_run_point, jobs))
    else:
        trajectories = [_run_point(job) for job in jobs]
    results = [(job[1], traj) for job, traj in zip(jobs, trajectories)]

    header, rows = _timeseries_rows(config, results)
    records = analyse(config, results)
    files = {
        "timeseries": out / f"{config.name}_timeseries.csv",
        "analysis": out / f"{config.name}_analysis.csv",
        "meta": out / f"{config.name}_meta.json",
    }
    _write_csv(files["timeseries"], header, rows)
    _write_csv(
        files["analysis"],
        ["sweep_axis", "sweep_value", "quantity", "value"],
        [[config.sweep_axis or "", "" if v is None else repr(v), q, repr(float(x))] for v, q, x in records],
    )
    wall = time.perf_counter() - started
    manifest = {
        "name": config.name,
        "config": config.flat(),
        "version": __version__,
        "numpy": np.__version__,
        "scipy": scipy.__version__,
        "python": platform.python_version(),
        "rows": len(rows),
        "gqd_evaluations": int(sum(t.evaluations for t in trajectories)),
        "wall_time_s": wall,
        "files": {k: p.name for k, p in files.items()},
    }
    with open(files["meta"], "w") as fh:
        json.dump(manifest, fh, indent=2)
    return RunSummary(config.name, files, len(rows), wall, records)
