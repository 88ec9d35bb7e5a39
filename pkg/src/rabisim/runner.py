"""Scenario engine: config parsing, execution modes, CSV emission.

A scenario couples one parameter set with one execution mode:

  fidelity_scan   Trotter-vs-exact propagator diagnostics over an l-list
  evolve_exact    observable traces under the exact propagator
  evolve_trotter  observable traces at the l step boundaries of a digitization
  evolve_lindblad dissipative traces from the master-equation integrator
  compare         exact trace plus side-by-side exact/Trotter columns per l

Output files are CSV with '#'-prefixed metadata lines, 17 significant
digits, written via a temp file and os.replace so no partial file survives
an error. Identical configs produce byte-identical output.
"""

from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import yaml

from . import __version__
from .digitize import (
    SCHEMES,
    TrotterPlan,
    exact_propagator,
    fidelity,
    propagate_state,
    trotter_propagator,
    trotter_states,
)
from .dissipation import DensityMatrix, LindbladSpec, evolve_master
from .hilbert import FockCutoff, Operator, StateVector, annihilation, embed_boson, embed_qubit, pauli
from .model import TWO_PI, RabiParams, effective_params, h_ajc, h_jc
from .observables import (
    _parse_boson,
    atom_parity_op,
    boson_number_op,
    excited_population_op,
    expectation,
    initial_state,
    leakage,
    photon_parity_op,
)

__all__ = [
    "MODES",
    "OUT_DIR_ENV",
    "ConfigError",
    "PlanSpec",
    "InitialSpec",
    "SweepSpec",
    "LindbladOptions",
    "Scenario",
    "RunResult",
    "scenario_to_dict",
    "scenario_from_dict",
    "load_config",
    "save_config",
    "run",
]

MODES = ("fidelity_scan", "evolve_exact", "evolve_trotter", "evolve_lindblad", "compare")
OUT_DIR_ENV = "RABISIM_OUT_DIR"

_TERM_BUILDERS = {"jc": h_jc, "ajc": h_ajc}
_QUBIT_LABELS = ("e", "g", "plus", "minus")
_SWEEP_KEYS = ("omega_t_over_2pi", "g_over_omega_b")
_CHANNELS = ("photon_loss", "qubit_relaxation")

EVOLVE_COLUMNS = ("t", "boson_n", "qubit_excited", "atom_parity", "photon_parity", "leakage")
SCAN_COLUMNS = ("l", "overlap", "lower_bound", "norm_error")


class ConfigError(ValueError):
    """Scenario configuration is malformed or inconsistent."""


@dataclass(frozen=True)
class PlanSpec:
    """Digitization request: scheme, step counts, and term ordering."""

    scheme: str = "general"
    steps: tuple[int, ...] = (64,)
    ordering: tuple[str, ...] = ("jc", "ajc")

    def __post_init__(self) -> None:
        if self.scheme not in SCHEMES:
            raise ConfigError(f"plan.scheme must be one of {SCHEMES}, got {self.scheme!r}")
        steps = tuple(int(l) for l in self.steps)
        if not steps:
            raise ConfigError("plan.l must list at least one step count")
        if any(l < 1 for l in steps):
            raise ConfigError(f"plan.l entries must be >= 1, got {steps}")
        ordering = tuple(self.ordering)
        if sorted(ordering) != sorted(_TERM_BUILDERS):
            raise ConfigError(
                f"plan.ordering must be a permutation of {tuple(_TERM_BUILDERS)}, got {ordering}"
            )
        object.__setattr__(self, "steps", steps)
        object.__setattr__(self, "ordering", ordering)


@dataclass(frozen=True)
class InitialSpec:
    """Product initial state |qubit> (x) |boson>."""

    qubit: str = "e"
    boson: str = "vacuum"

    def __post_init__(self) -> None:
        if self.qubit not in _QUBIT_LABELS:
            raise ConfigError(f"initial.qubit must be one of {_QUBIT_LABELS}, got {self.qubit!r}")
        try:
            _parse_boson(self.boson)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"initial.boson {self.boson!r} is not parseable: {exc}")


@dataclass(frozen=True)
class SweepSpec:
    """One sweep dimension for fidelity scans; each value emits its own file."""

    key: str
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        if self.key not in _SWEEP_KEYS:
            raise ConfigError(f"sweep.key must be one of {_SWEEP_KEYS}, got {self.key!r}")
        values = tuple(float(v) for v in self.values)
        if not values or any(v <= 0 or not np.isfinite(v) for v in values):
            raise ConfigError(f"sweep.values must be positive and finite, got {self.values}")
        object.__setattr__(self, "values", values)


@dataclass(frozen=True)
class LindbladOptions:
    """Channel selection and rates for evolve_lindblad runs."""

    channels: tuple[str, ...] = ("photon_loss", "qubit_relaxation")
    gamma: float | tuple[float, ...] = 1.0
    dt: float | None = None
    include_hamiltonian: bool = True

    def __post_init__(self) -> None:
        channels = tuple(self.channels)
        for ch in channels:
            if ch not in _CHANNELS:
                raise ConfigError(f"unknown collapse channel {ch!r}, expected one of {_CHANNELS}")
        if not channels:
            raise ConfigError("lindblad.channels must be non-empty")
        gamma = self.gamma
        if isinstance(gamma, (list, tuple)):
            gamma = tuple(float(x) for x in gamma)
            if len(gamma) != len(channels):
                raise ConfigError(f"{len(gamma)} rates for {len(channels)} channels")
        else:
            gamma = float(gamma)
        object.__setattr__(self, "channels", channels)
        object.__setattr__(self, "gamma", gamma)


@dataclass(frozen=True)
class Scenario:
    """One fully resolved experiment: parameters, plan, initial state, mode."""

    name: str
    mode: str
    params: RabiParams
    plan: PlanSpec
    initial: InitialSpec
    T: float
    n_samples: int = 401
    outputs: str = "out"
    sweep: SweepSpec | None = None
    lindblad: LindbladOptions | None = None
    leakage_threshold: float = 1e-4

    def __post_init__(self) -> None:
        if not self.name or not isinstance(self.name, str):
            raise ConfigError(f"name must be a non-empty string, got {self.name!r}")
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}, got {self.mode!r}")
        if not np.isfinite(self.T) or self.T <= 0:
            raise ConfigError(f"T must be positive and finite, got {self.T}")
        if self.n_samples < 2:
            raise ConfigError(f"n_samples must be >= 2, got {self.n_samples}")
        if self.mode == "fidelity_scan" and not self.plan.steps:
            raise ConfigError("fidelity_scan requires a non-empty plan.l list")
        if self.sweep is not None and self.mode != "fidelity_scan":
            raise ConfigError("sweep is only supported in fidelity_scan mode")
        if self.leakage_threshold <= 0:
            raise ConfigError(f"leakage_threshold must be positive, got {self.leakage_threshold}")
        if self.mode == "evolve_lindblad" and self.lindblad is None:
            object.__setattr__(self, "lindblad", LindbladOptions())


@dataclass(frozen=True)
class RunResult:
    files: tuple[Path, ...]
    max_leakage: float
    leakage_flagged: bool


# --- serialization ---------------------------------------------------------

def scenario_to_dict(s: Scenario) -> dict:
    p = s.params
    out = {
        "name": s.name,
        "mode": s.mode,
        "params": {
            "omega_q": p.omega_q,
            "omega_b": p.omega_b,
            "g": p.g,
            "omega_q1": p.omega_q1,
            "omega_q2": p.omega_q2,
            "omega_re": p.omega_re,
            "n_max": p.cutoff.n_max,
        },
        "plan": {
            "scheme": s.plan.scheme,
            "l": list(s.plan.steps),
            "ordering": list(s.plan.ordering),
        },
        "initial": {"qubit": s.initial.qubit, "boson": s.initial.boson},
        "T": s.T,
        "n_samples": s.n_samples,
        "outputs": s.outputs,
        "leakage_threshold": s.leakage_threshold,
    }
    if s.sweep is not None:
        out["sweep"] = {"key": s.sweep.key, "values": list(s.sweep.values)}
    if s.lindblad is not None:
        lb = {
            "channels": list(s.lindblad.channels),
            "gamma": list(s.lindblad.gamma)
            if isinstance(s.lindblad.gamma, tuple)
            else s.lindblad.gamma,
            "include_hamiltonian": s.lindblad.include_hamiltonian,
        }
        if s.lindblad.dt is not None:
            lb["dt"] = s.lindblad.dt
        out["lindblad"] = lb
    return out


def _require(d: dict, key: str, where: str):
    if key not in d:
        raise ConfigError(f"missing required key {key!r} in {where}")
    return d[key]


def _check_unknown(d: dict, allowed: set[str], where: str) -> None:
    unknown = set(d) - allowed
    if unknown:
        raise ConfigError(f"unknown key(s) {sorted(unknown)} in {where}")


def scenario_from_dict(d: dict) -> Scenario:
    if not isinstance(d, dict):
        raise ConfigError(f"config root must be a mapping, got {type(d).__name__}")
    _check_unknown(
        d,
        {"name", "mode", "params", "plan", "initial", "T", "n_samples", "outputs",
         "sweep", "lindblad", "leakage_threshold"},
        "config",
    )
    pd = _require(d, "params", "config")
    _check_unknown(
        pd, {"omega_q", "omega_b", "g", "omega_q1", "omega_q2", "omega_re", "n_max"}, "params"
    )
    try:
        cutoff = FockCutoff(int(_require(pd, "n_max", "params")))
        params = RabiParams(
            omega_q=float(_require(pd, "omega_q", "params")),
            omega_b=float(_require(pd, "omega_b", "params")),
            g=float(_require(pd, "g", "params")),
            omega_q1=float(_require(pd, "omega_q1", "params")),
            omega_q2=float(_require(pd, "omega_q2", "params")),
            omega_re=float(_require(pd, "omega_re", "params")),
            cutoff=cutoff,
        )
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"invalid params: {exc}")

    plan_d = dict(d.get("plan", {}))
    _check_unknown(plan_d, {"scheme", "l", "ordering"}, "plan")
    steps = plan_d.get("l", [64])
    if isinstance(steps, (int, float)):
        steps = [steps]
    try:
        plan = PlanSpec(
            scheme=plan_d.get("scheme", "general"),
            steps=tuple(int(l) for l in steps),
            ordering=tuple(plan_d.get("ordering", ("jc", "ajc"))),
        )
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"invalid plan: {exc}")

    init_d = dict(d.get("initial", {}))
    _check_unknown(init_d, {"qubit", "boson"}, "initial")
    initial = InitialSpec(qubit=init_d.get("qubit", "e"), boson=init_d.get("boson", "vacuum"))

    sweep = None
    if d.get("sweep") is not None:
        sd = dict(d["sweep"])
        _check_unknown(sd, {"key", "values"}, "sweep")
        sweep = SweepSpec(key=_require(sd, "key", "sweep"), values=tuple(_require(sd, "values", "sweep")))

    lindblad = None
    if d.get("lindblad") is not None:
        ld = dict(d["lindblad"])
        _check_unknown(ld, {"channels", "gamma", "dt", "include_hamiltonian"}, "lindblad")
        gamma = ld.get("gamma", 1.0)
        if isinstance(gamma, list):
            gamma = tuple(gamma)
        lindblad = LindbladOptions(
            channels=tuple(ld.get("channels", _CHANNELS)),
            gamma=gamma,
            dt=None if ld.get("dt") is None else float(ld["dt"]),
            include_hamiltonian=bool(ld.get("include_hamiltonian", True)),
        )

    try:
        return Scenario(
            name=str(_require(d, "name", "config")),
            mode=str(_require(d, "mode", "config")),
            params=params,
            plan=plan,
            initial=initial,
            T=float(_require(d, "T", "config")),
            n_samples=int(d.get("n_samples", 401)),
            lindblad=lindblad,
            sweep=sweep,
            outputs=str(d.get("outputs", "out")),
            leakage_threshold=float(d.get("leakage_threshold", 1e-4)),
        )
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"invalid scenario: {exc}")


def load_config(path: str | Path) -> Scenario:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}")
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"config {path} is not valid YAML: {exc}")
    return scenario_from_dict(data)


def save_config(s: Scenario, path: str | Path) -> None:
    Path(path).write_text(
        yaml.safe_dump(scenario_to_dict(s), sort_keys=True, default_flow_style=False),
        encoding="utf-8",
    )


# --- execution -------------------------------------------------------------

def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x))
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.17g}"


def _write_csv(path: Path, meta: list[tuple[str, object]], columns, rows) -> None:
    tmp = path.parent / (path.name + ".tmp")
    with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
        for key, val in meta:
            fh.write(f"# {key} = {val}\n")
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(x) for x in row) + "\n")
    os.replace(tmp, path)


def _flatten(prefix: str, value, out: list[tuple[str, object]]) -> None:
    if isinstance(value, dict):
        for k in sorted(value):
            _flatten(f"{prefix}.{k}" if prefix else str(k), value[k], out)
    elif isinstance(value, (list, tuple)):
        out.append((prefix, "[" + " ".join(_fmt(v) if isinstance(v, (int, float)) else str(v) for v in value) + "]"))
    elif isinstance(value, float):
        out.append((prefix, _fmt(value)))
    else:
        out.append((prefix, value))


def _base_meta(s: Scenario, p: RabiParams, T: float, extra: list[tuple[str, object]]) -> list[tuple[str, object]]:
    eff = effective_params(p)
    meta: list[tuple[str, object]] = [
        ("generator", f"rabisim {__version__}"),
        ("scenario", s.name),
        ("mode", s.mode),
    ]
    flat: list[tuple[str, object]] = []
    d = scenario_to_dict(s)
    del d["name"], d["mode"]
    d["params"].update(
        omega_q=p.omega_q, omega_b=p.omega_b, g=p.g,
        omega_q1=p.omega_q1, omega_q2=p.omega_q2, omega_re=p.omega_re,
        n_max=p.cutoff.n_max,
    )
    d["T"] = T
    _flatten("", d, flat)
    meta.extend(flat)
    meta.append(("effective.g_eff", _fmt(eff.g_eff)))
    meta.append(("effective.omega_b_eff", _fmt(eff.omega_b_eff)))
    meta.append(("effective.omega_q_eff", _fmt(eff.omega_q_eff)))
    meta.append(("omega_b_T_over_2pi", _fmt(p.omega_b * T / TWO_PI)))
    meta.extend(extra)
    return meta


def _terms(p: RabiParams, ordering: tuple[str, ...]) -> tuple[Operator, ...]:
    return tuple(_TERM_BUILDERS[name](p) for name in ordering)


def _sum_terms(terms: tuple[Operator, ...]) -> Operator:
    total = terms[0]
    for t in terms[1:]:
        total = total + t
    return total


class _ObservableSet:
    """Cached composite observables for one cutoff."""

    def __init__(self, cutoff: FockCutoff):
        self.n_b = boson_number_op(cutoff)
        self.exc = excited_population_op(cutoff)
        self.par_atom = atom_parity_op(cutoff)
        self.par_photon = photon_parity_op(cutoff)

    def row(self, t: float, state) -> tuple:
        return (
            t,
            expectation(state, self.n_b),
            expectation(state, self.exc),
            expectation(state, self.par_atom),
            expectation(state, self.par_photon),
            leakage(state),
        )


def _resolve_slices(s: Scenario) -> list[tuple[str, RabiParams, float, list[tuple[str, object]]]]:
    if s.sweep is None:
        return [("", s.params, s.T, [])]
    slices = []
    for v in s.sweep.values:
        if s.sweep.key == "omega_t_over_2pi":
            t_slice = TWO_PI * v / s.params.omega_b
            slices.append(
                (f"_wt{v:g}", s.params, t_slice, [("sweep.omega_t_over_2pi", _fmt(v))])
            )
        else:
            omega_b = s.params.g / v
            p = dataclasses.replace(s.params, omega_b=omega_b, omega_re=omega_b / 2.0)
            slices.append((f"_ratio{v:g}", p, s.T, [("sweep.g_over_omega_b", _fmt(v))]))
    return slices


def _run_fidelity_scan(s: Scenario, out_dir: Path) -> tuple[list[Path], float]:
    files: list[Path] = []
    max_leak = 0.0
    for suffix, p, T, extra in _resolve_slices(s):
        terms = _terms(p, s.plan.ordering)
        h_total = _sum_terms(terms)
        exact = exact_propagator(h_total, T)
        psi0 = initial_state(s.initial.qubit, s.initial.boson, p.cutoff)
        slice_leak = leakage(psi0.apply(exact))
        rows = []
        for l in s.plan.steps:
            plan = TrotterPlan(s.plan.scheme, l, terms, T)
            approx = trotter_propagator(plan)
            rep = fidelity(exact, approx, psi0, steps=l, total_time=T)
            slice_leak = max(slice_leak, leakage(psi0.apply(approx)))
            rows.append((l, rep.overlap, rep.lower_bound, rep.norm_error))
        max_leak = max(max_leak, slice_leak)
        meta = _base_meta(s, p, T, extra)
        meta.append(("leakage_max", _fmt(slice_leak)))
        meta.append(("leakage_flag", slice_leak >= s.leakage_threshold))
        path = out_dir / f"{s.name}__scan{suffix}.csv"
        _write_csv(path, meta, SCAN_COLUMNS, rows)
        files.append(path)
    return files, max_leak


def _trace_rows(obs: _ObservableSet, times: np.ndarray, states) -> tuple[list[tuple], float]:
    rows = [obs.row(t, st) for t, st in zip(times, states)]
    max_leak = max(row[-1] for row in rows)
    return rows, max_leak


def _run_evolve_exact(s: Scenario, out_dir: Path) -> tuple[list[Path], float]:
    p = s.params
    h_total = _sum_terms(_terms(p, s.plan.ordering))
    psi0 = initial_state(s.initial.qubit, s.initial.boson, p.cutoff)
    times = np.linspace(0.0, s.T, s.n_samples)
    states = propagate_state(h_total, psi0, times)
    obs = _ObservableSet(p.cutoff)
    rows, max_leak = _trace_rows(obs, times, states)
    meta = _base_meta(s, p, s.T, [("variant", "exact")])
    meta.append(("leakage_max", _fmt(max_leak)))
    meta.append(("leakage_flag", max_leak >= s.leakage_threshold))
    path = out_dir / f"{s.name}__exact.csv"
    _write_csv(path, meta, EVOLVE_COLUMNS, rows)
    return [path], max_leak


def _run_evolve_trotter(s: Scenario, out_dir: Path) -> tuple[list[Path], float]:
    p = s.params
    terms = _terms(p, s.plan.ordering)
    psi0 = initial_state(s.initial.qubit, s.initial.boson, p.cutoff)
    obs = _ObservableSet(p.cutoff)
    files: list[Path] = []
    max_leak = 0.0
    for l in s.plan.steps:
        plan = TrotterPlan(s.plan.scheme, l, terms, s.T)
        times, states = trotter_states(plan, psi0)
        rows, leak = _trace_rows(obs, times, states)
        max_leak = max(max_leak, leak)
        meta = _base_meta(s, p, s.T, [("variant", f"trotter_l{l}")])
        meta.append(("leakage_max", _fmt(leak)))
        meta.append(("leakage_flag", leak >= s.leakage_threshold))
        path = out_dir / f"{s.name}__trotter_l{l}.csv"
        _write_csv(path, meta, EVOLVE_COLUMNS, rows)
        files.append(path)
    return files, max_leak


_COMPARE_COLUMNS = (
    "t",
    "exact_boson_n", "trotter_boson_n",
    "exact_qubit_excited", "trotter_qubit_excited",
    "exact_atom_parity", "trotter_atom_parity",
    "exact_photon_parity", "trotter_photon_parity",
    "exact_leakage", "trotter_leakage",
)


def _run_compare(s: Scenario, out_dir: Path) -> tuple[list[Path], float]:
    p = s.params
    terms = _terms(p, s.plan.ordering)
    h_total = _sum_terms(terms)
    psi0 = initial_state(s.initial.qubit, s.initial.boson, p.cutoff)
    obs = _ObservableSet(p.cutoff)

    files, max_leak = _run_evolve_exact(s, out_dir)
    files = list(files)
    for l in s.plan.steps:
        plan = TrotterPlan(s.plan.scheme, l, terms, s.T)
        times, tr_states = trotter_states(plan, psi0)
        ex_states = propagate_state(h_total, psi0, times)
        rows = []
        leak = 0.0
        for t, ex, tr in zip(times, ex_states, tr_states):
            ex_row = obs.row(t, ex)
            tr_row = obs.row(t, tr)
            leak = max(leak, ex_row[-1], tr_row[-1])
            rows.append((
                t,
                ex_row[1], tr_row[1],
                ex_row[2], tr_row[2],
                ex_row[3], tr_row[3],
                ex_row[4], tr_row[4],
                ex_row[5], tr_row[5],
            ))
        max_leak = max(max_leak, leak)
        meta = _base_meta(s, p, s.T, [("variant", f"compare_l{l}")])
        meta.append(("leakage_max", _fmt(leak)))
        meta.append(("leakage_flag", leak >= s.leakage_threshold))
        path = out_dir / f"{s.name}__compare_l{l}.csv"
        _write_csv(path, meta, _COMPARE_COLUMNS, rows)
        files.append(path)
    return files, max_leak


def _collapse_op(name: str, cutoff: FockCutoff) -> Operator:
    if name == "photon_loss":
        return embed_boson(annihilation(cutoff), cutoff)
    return embed_qubit(pauli("minus"), cutoff)


def _run_evolve_lindblad(s: Scenario, out_dir: Path) -> tuple[list[Path], float]:
    p = s.params
    opts = s.lindblad if s.lindblad is not None else LindbladOptions()
    if opts.include_hamiltonian:
        h_total = _sum_terms(_terms(p, s.plan.ordering))
    else:
        h_total = Operator(np.zeros((p.cutoff.composite_dim,) * 2), p.cutoff)
    collapse = tuple(_collapse_op(name, p.cutoff) for name in opts.channels)
    lspec = LindbladSpec(
        hamiltonian=h_total,
        collapse_ops=collapse,
        t_span=(0.0, s.T),
        gamma=opts.gamma,
        dt=opts.dt,
    )
    psi0 = initial_state(s.initial.qubit, s.initial.boson, p.cutoff)
    rho0 = DensityMatrix.from_state(psi0)
    times = np.linspace(0.0, s.T, s.n_samples)
    samples = evolve_master(rho0, lspec, sample_times=times)
    obs = _ObservableSet(p.cutoff)
    rows = []
    max_leak = 0.0
    for t, rho in samples:
        base = obs.row(t, rho)
        max_leak = max(max_leak, base[-1])
        rows.append(base + (abs(rho.trace() - 1.0),))
    meta = _base_meta(s, p, s.T, [("variant", "lindblad"), ("dt", _fmt(lspec.resolved_dt()))])
    meta.append(("leakage_max", _fmt(max_leak)))
    meta.append(("leakage_flag", max_leak >= s.leakage_threshold))
    path = out_dir / f"{s.name}__lindblad.csv"
    _write_csv(path, meta, EVOLVE_COLUMNS + ("trace_dev",), rows)
    return [path], max_leak


def resolve_out_dir(s: Scenario, out_dir: str | Path | None) -> Path:
    if out_dir is not None:
        return Path(out_dir)
    env = os.environ.get(OUT_DIR_ENV)
    if env:
        return Path(env)
    return Path(s.outputs)


def run(scenario: Scenario, out_dir: str | Path | None = None) -> RunResult:
    """Execute a scenario and write its CSV output files.

    ``out_dir`` overrides the scenario's output directory; the environment
    variable RABISIM_OUT_DIR sits between the two in priority.
    """
    target = resolve_out_dir(scenario, out_dir)
    target.mkdir(parents=True, exist_ok=True)
    dispatch = {
        "fidelity_scan": _run_fidelity_scan,
        "evolve_exact": _run_evolve_exact,
        "evolve_trotter": _run_evolve_trotter,
        "evolve_lindblad": _run_evolve_lindblad,
        "compare": _run_compare,
    }
    files, max_leak = dispatch[scenario.mode](scenario, target)
    return RunResult(
        files=tuple(files),
        max_leakage=max_leak,
        leakage_flagged=max_leak >= scenario.leakage_threshold,
    )
