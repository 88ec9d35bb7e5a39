"""Open-system evolution: GKSL master equation with fixed-step RK4.

The dissipator convention follows the generator

    d rho / dt = -i [H, rho] + sum_k gamma_k (2 L_k rho L_k' - {L_k' L_k, rho})

note the factor 2 in front of the sandwich term: rates are four times the
more common (1/2)-anticommutator convention, so a qubit prepared in |e> with
L = sigma- decays as exp(-2 gamma t).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hilbert import FockCutoff, InvariantViolationError, Operator, StateVector, spectral_norm

__all__ = [
    "DensityMatrix",
    "LindbladSpec",
    "lindblad_rhs",
    "evolve_master",
]

TRACE_ATOL = 1e-8
HERMITICITY_ATOL = 1e-10
EIGENVALUE_FLOOR = -1e-8

ABORT_TRACE_DRIFT = 1e-6
ABORT_NEGATIVITY = -1e-6


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Mixed state on the composite space.

    Construction performs structural checks only; ``validate`` enforces the
    physical invariants (Hermiticity, unit trace, positivity) at the given
    tolerances.
    """

    mat: np.ndarray
    cutoff: FockCutoff | None = None

    def __post_init__(self) -> None:
        mat = np.array(self.mat, dtype=np.complex128, copy=True)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError(f"density matrix must be square, got shape {mat.shape}")
        if self.cutoff is not None and mat.shape[0] != self.cutoff.composite_dim:
            raise ValueError(
                f"dimension {mat.shape[0]} does not match composite dimension "
                f"{self.cutoff.composite_dim}"
            )
        mat.setflags(write=False)
        object.__setattr__(self, "mat", mat)

    @classmethod
    def from_state(cls, psi: StateVector) -> "DensityMatrix":
        amp = psi.amplitudes
        return cls(np.outer(amp, amp.conj()), psi.cutoff)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def trace(self) -> float:
        return float(np.trace(self.mat).real)

    def validate(
        self,
        trace_atol: float = TRACE_ATOL,
        herm_atol: float = HERMITICITY_ATOL,
        eig_floor: float = EIGENVALUE_FLOOR,
    ) -> None:
        herm_dev = float(np.max(np.abs(self.mat - self.mat.conj().T)))
        if herm_dev > herm_atol:
            raise InvariantViolationError(f"density matrix not Hermitian: dev {herm_dev:.3e}")
        tr_dev = abs(np.trace(self.mat) - 1.0)
        if tr_dev > trace_atol:
            raise InvariantViolationError(f"density matrix trace off by {tr_dev:.3e}")
        min_eig = float(np.linalg.eigvalsh(self.mat)[0])
        if min_eig < eig_floor:
            raise InvariantViolationError(f"density matrix negativity {min_eig:.3e}")


@dataclass(frozen=True, eq=False)
class LindbladSpec:
    """Generator description: Hamiltonian, collapse operators, rates, time span.

    ``gamma`` is a single rate applied to every channel or a per-channel
    tuple. ``dt`` of None selects min(0.01/||H||, 0.01/gamma_max), the
    conservative default step.
    """

    hamiltonian: Operator
    collapse_ops: tuple[Operator, ...]
    t_span: tuple[float, float]
    gamma: float | tuple[float, ...] = 1.0
    dt: float | None = None
    sample_every: int = 1

    def __post_init__(self) -> None:
        if not self.hamiltonian.is_hermitian():
            raise ValueError("hamiltonian must be Hermitian")
        ops = tuple(self.collapse_ops)
        for i, op in enumerate(ops):
            if op.dim != self.hamiltonian.dim:
                raise ValueError(f"collapse_ops[{i}] dim {op.dim} != {self.hamiltonian.dim}")
        gammas = self.gamma
        if isinstance(gammas, (int, float)):
            gammas = tuple(float(gammas) for _ in ops)
        else:
            gammas = tuple(float(x) for x in gammas)
            if len(gammas) != len(ops):
                raise ValueError(f"{len(gammas)} rates for {len(ops)} collapse operators")
        for x in gammas:
            if x < 0 or not np.isfinite(x):
                raise ValueError(f"rates must be finite and >= 0, got {x}")
        t0, t1 = (float(self.t_span[0]), float(self.t_span[1]))
        if not (np.isfinite(t0) and np.isfinite(t1)) or t1 <= t0:
            raise ValueError(f"t_span must be an increasing finite pair, got {self.t_span}")
        if self.dt is not None and (not np.isfinite(self.dt) or self.dt <= 0):
            raise ValueError(f"dt must be positive, got {self.dt}")
        if self.sample_every < 1:
            raise ValueError(f"sample_every must be >= 1, got {self.sample_every}")
        object.__setattr__(self, "collapse_ops", ops)
        object.__setattr__(self, "gamma", gammas)
        object.__setattr__(self, "t_span", (t0, t1))

    def default_dt(self) -> float:
        scales = []
        h_norm = spectral_norm(self.hamiltonian)
        if h_norm > 0:
            scales.append(0.01 / h_norm)
        g_max = max(self.gamma) if self.gamma else 0.0
        if g_max > 0:
            scales.append(0.01 / g_max)
        if not scales:
            # free evolution with no decay: any step reproduces rho exactly
            return (self.t_span[1] - self.t_span[0]) / 400.0
        return min(scales)

    def resolved_dt(self) -> float:
        return self.dt if self.dt is not None else self.default_dt()


def _rhs(rho: np.ndarray, h: np.ndarray, pre: list[tuple[float, np.ndarray, np.ndarray]]) -> np.ndarray:
    out = -1j * (h @ rho - rho @ h)
    for gamma_k, l_k, ldl_k in pre:
        out += gamma_k * (2.0 * (l_k @ rho @ l_k.conj().T) - (ldl_k @ rho + rho @ ldl_k))
    return out


def _precompute(spec: LindbladSpec) -> list[tuple[float, np.ndarray, np.ndarray]]:
    pre = []
    for gamma_k, op in zip(spec.gamma, spec.collapse_ops):
        if gamma_k == 0.0:
            continue
        l_k = op.mat
        pre.append((gamma_k, l_k, l_k.conj().T @ l_k))
    return pre


def lindblad_rhs(rho: DensityMatrix | np.ndarray, spec: LindbladSpec) -> np.ndarray:
    """Right-hand side of the master equation; exactly traceless for any input."""
    mat = rho.mat if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    if mat.shape != (spec.hamiltonian.dim, spec.hamiltonian.dim):
        raise ValueError(f"rho shape {mat.shape} does not match generator dim")
    return _rhs(mat, spec.hamiltonian.mat, _precompute(spec))


def _rk4_step(rho: np.ndarray, dt: float, h: np.ndarray, pre) -> np.ndarray:
    k1 = _rhs(rho, h, pre)
    k2 = _rhs(rho + 0.5 * dt * k1, h, pre)
    k3 = _rhs(rho + 0.5 * dt * k2, h, pre)
    k4 = _rhs(rho + dt * k3, h, pre)
    return rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _check_sample(rho: np.ndarray, t: float, dt: float) -> None:
    drift = abs(np.trace(rho) - 1.0)
    if drift > ABORT_TRACE_DRIFT:
        raise InvariantViolationError(
            f"trace drift {drift:.3e} exceeds {ABORT_TRACE_DRIFT} at t = {t:.6g} "
            f"(dt = {dt:.3e} too large for this generator)"
        )
    min_eig = float(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))[0])
    if min_eig < ABORT_NEGATIVITY:
        raise InvariantViolationError(
            f"negativity {min_eig:.3e} below {ABORT_NEGATIVITY} at t = {t:.6g} "
            f"(dt = {dt:.3e} too large for this generator)"
        )


def evolve_master(
    rho0: DensityMatrix,
    spec: LindbladSpec,
    sample_times: np.ndarray | None = None,
) -> list[tuple[float, DensityMatrix]]:
    """Integrate the master equation with fixed-step RK4.

    With ``sample_times`` given, the integrator subdivides each sampling
    interval into equal substeps no longer than the resolved dt, landing on
    every sample exactly; otherwise it steps uniformly over t_span and
    samples every ``sample_every`` steps plus the endpoint. Samples are
    checked against the abort thresholds (trace drift 1e-6, negativity
    -1e-6) and returned as DensityMatrix values.
    """
    if rho0.dim != spec.hamiltonian.dim:
        raise ValueError(f"rho0 dim {rho0.dim} does not match generator dim")
    h = spec.hamiltonian.mat
    pre = _precompute(spec)
    dt_target = spec.resolved_dt()
    t0, t1 = spec.t_span
    cutoff = rho0.cutoff or spec.hamiltonian.cutoff

    samples: list[tuple[float, DensityMatrix]] = []

    def emit(t: float, rho: np.ndarray) -> None:
        _check_sample(rho, t, dt_target)
        samples.append((t, DensityMatrix(rho, cutoff)))

    rho = np.array(rho0.mat, dtype=complex)
    if sample_times is not None:
        times = np.asarray(sample_times, dtype=float)
        if times.ndim != 1 or len(times) < 2 or np.any(np.diff(times) <= 0):
            raise ValueError("sample_times must be strictly increasing with >= 2 entries")
        if abs(times[0] - t0) > 1e-12 or times[-1] > t1 + 1e-12:
            raise ValueError("sample_times must start at t_span[0] and stay inside t_span")
        emit(times[0], rho)
        for t_prev, t_next in zip(times[:-1], times[1:]):
            span = t_next - t_prev
            n_sub = max(1, int(np.ceil(span / dt_target - 1e-12)))
            dt = span / n_sub
            for _ in range(n_sub):
                rho = _rk4_step(rho, dt, h, pre)
            emit(t_next, rho)
        return samples

    span = t1 - t0
    n_steps = max(1, int(np.ceil(span / dt_target - 1e-12)))
    dt = span / n_steps
    emit(t0, rho)
    for i in range(1, n_steps + 1):
        rho = _rk4_step(rho, dt, h, pre)
        if i % spec.sample_every == 0 or i == n_steps:
            emit(t0 + i * dt, rho)
    return samples
