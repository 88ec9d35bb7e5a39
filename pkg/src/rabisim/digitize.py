"""Trotterized propagators, exact propagators, and fidelity diagnostics.

Both product formulas compute each per-term exponential once per (term, dt)
pair and raise the resulting single-step unitary to the step count, so the
cost is independent of l up to a matrix power.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hilbert import (
    InvariantViolationError,
    Operator,
    StateVector,
    commutator,
    expm_hermitian,
    spectral_norm,
)

__all__ = [
    "SCHEMES",
    "TrotterPlan",
    "FidelityReport",
    "exact_propagator",
    "trotter_general",
    "trotter_symmetrized",
    "trotter_propagator",
    "trotter_error_bound",
    "fidelity",
    "propagate_state",
    "trotter_states",
]

SCHEMES = ("general", "symmetrized")

FIDELITY_CHAIN_SLACK = 1e-9
_UNITARY_INPUT_ATOL = 1e-8


@dataclass(frozen=True, eq=False)
class TrotterPlan:
    """One digitization: scheme, step count l, Hamiltonian terms, total time."""

    scheme: str
    steps: int
    terms: tuple[Operator, ...]
    total_time: float

    def __post_init__(self) -> None:
        if self.scheme not in SCHEMES:
            raise ValueError(f"scheme must be one of {SCHEMES}, got {self.scheme!r}")
        if not isinstance(self.steps, (int, np.integer)) or isinstance(self.steps, bool):
            raise ValueError(f"steps must be an integer, got {self.steps!r}")
        if self.steps < 1:
            raise ValueError(f"steps must be >= 1, got {self.steps}")
        terms = tuple(self.terms)
        if not terms:
            raise ValueError("terms must be non-empty")
        dim = terms[0].dim
        for i, term in enumerate(terms):
            if term.dim != dim:
                raise ValueError(f"terms[{i}] has dim {term.dim}, expected {dim}")
            if not term.is_hermitian():
                raise ValueError(f"terms[{i}] is not Hermitian")
        if not np.isfinite(self.total_time) or self.total_time < 0:
            raise ValueError(f"total_time must be finite and >= 0, got {self.total_time}")
        object.__setattr__(self, "steps", int(self.steps))
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "total_time", float(self.total_time))

    @property
    def dim(self) -> int:
        return self.terms[0].dim


@dataclass(frozen=True)
class FidelityReport:
    """Fidelity diagnostic row obeying max(0, 1-||dU||) <= overlap <= 1."""

    lower_bound: float
    overlap: float
    norm_error: float
    steps: int | None = None
    total_time: float | None = None


def exact_propagator(h: Operator, total_time: float) -> Operator:
    """exp(-i h T) through the eigendecomposition; unitary to 1e-10."""
    return expm_hermitian(h, total_time)


def _sum_terms(terms: tuple[Operator, ...]) -> Operator:
    total = terms[0]
    for term in terms[1:]:
        total = total + term
    return total


def _step_general(plan: TrotterPlan) -> Operator:
    dt = plan.total_time / plan.steps
    step = expm_hermitian(plan.terms[0], dt)
    for term in plan.terms[1:]:
        step = step @ expm_hermitian(term, dt)
    return step


def _step_symmetrized(plan: TrotterPlan) -> Operator:
    dt = plan.total_time / plan.steps
    if len(plan.terms) == 1:
        return expm_hermitian(plan.terms[0], dt)
    halves = [expm_hermitian(term, dt / 2.0) for term in plan.terms[:-1]]
    step = halves[0]
    for h in halves[1:]:
        step = step @ h
    step = step @ expm_hermitian(plan.terms[-1], dt)
    for h in reversed(halves):
        step = step @ h
    return step


def _finish(step: Operator, plan: TrotterPlan) -> Operator:
    u = Operator(np.linalg.matrix_power(step.mat, plan.steps), step.cutoff)
    if not u.is_unitary():
        raise InvariantViolationError(
            f"trotter propagator lost unitarity (scheme={plan.scheme}, l={plan.steps})"
        )
    return u


def trotter_general(plan: TrotterPlan) -> Operator:
    """First-order product formula, terms applied left-to-right each step."""
    if plan.scheme != "general":
        raise ValueError(f"plan.scheme is {plan.scheme!r}, expected 'general'")
    return _finish(_step_general(plan), plan)


def trotter_symmetrized(plan: TrotterPlan) -> Operator:
    """Palindromic (Strang) product formula; error falls off as 1/l^2."""
    if plan.scheme != "symmetrized":
        raise ValueError(f"plan.scheme is {plan.scheme!r}, expected 'symmetrized'")
    return _finish(_step_symmetrized(plan), plan)


def trotter_propagator(plan: TrotterPlan) -> Operator:
    if plan.scheme == "general":
        return trotter_general(plan)
    return trotter_symmetrized(plan)


def trotter_error_bound(plan: TrotterPlan) -> float:
    """First-order bound sum_{i<j} ||[H_i, H_j]|| T^2 / (2 l).

    Meaningful in the small ||H|| T / l regime only; it is an upper estimate
    of the general-scheme error, not of the symmetrized one.
    """
    total = 0.0
    for i in range(len(plan.terms)):
        for j in range(i + 1, len(plan.terms)):
            total += spectral_norm(commutator(plan.terms[i], plan.terms[j]))
    return total * plan.total_time**2 / (2.0 * plan.steps)


def fidelity(
    exact: Operator,
    approx: Operator,
    psi0: StateVector,
    *,
    steps: int | None = None,
    total_time: float | None = None,
) -> FidelityReport:
    """Spectral-norm error, initial-state overlap, and the chain lower bound.

    norm_error = ||approx - exact|| (largest singular value),
    overlap = |<psi0| exact^dag approx |psi0>|,
    lower_bound = max(0, 1 - norm_error), and the chain
    lower_bound <= overlap <= 1 is verified to 1e-9 before returning.
    """
    if exact.dim != approx.dim:
        raise ValueError(f"dimension mismatch: exact {exact.dim} vs approx {approx.dim}")
    if psi0.dim != exact.dim:
        raise ValueError(f"state dim {psi0.dim} does not match operator dim {exact.dim}")
    if not exact.is_unitary(_UNITARY_INPUT_ATOL) or not approx.is_unitary(_UNITARY_INPUT_ATOL):
        raise ValueError("fidelity requires unitary inputs")
    norm_error = spectral_norm(approx - exact)
    amp = np.vdot(exact.mat @ psi0.amplitudes, approx.mat @ psi0.amplitudes)
    overlap = float(abs(amp))
    lower = max(0.0, 1.0 - norm_error)
    if overlap > 1.0 + FIDELITY_CHAIN_SLACK or overlap < lower - FIDELITY_CHAIN_SLACK:
        raise InvariantViolationError(
            f"fidelity chain violated: lower={lower!r}, overlap={overlap!r}"
        )
    return FidelityReport(
        lower_bound=lower,
        overlap=overlap,
        norm_error=norm_error,
        steps=steps,
        total_time=total_time,
    )


def propagate_state(h: Operator, psi0: StateVector, times: np.ndarray) -> list[StateVector]:
    """Exact evolution of psi0 under h sampled at the given times (one eigh)."""
    if not h.is_hermitian():
        raise ValueError("propagate_state requires a Hermitian generator")
    if psi0.dim != h.dim:
        raise ValueError(f"state dim {psi0.dim} does not match operator dim {h.dim}")
    w, v = np.linalg.eigh(h.mat)
    coeff = v.conj().T @ psi0.amplitudes
    out = []
    for t in np.asarray(times, dtype=float):
        amp = v @ (np.exp(-1j * w * t) * coeff)
        out.append(StateVector(amp, psi0.cutoff or h.cutoff))
    return out


def trotter_states(plan: TrotterPlan, psi0: StateVector) -> tuple[np.ndarray, list[StateVector]]:
    """States at the l+1 step boundaries t_j = j T / l of a digitized run."""
    if psi0.dim != plan.dim:
        raise ValueError(f"state dim {psi0.dim} does not match plan dim {plan.dim}")
    step = _step_general(plan) if plan.scheme == "general" else _step_symmetrized(plan)
    times = np.linspace(0.0, plan.total_time, plan.steps + 1)
    states = [psi0]
    current = psi0
    for _ in range(plan.steps):
        current = current.apply(step)
        states.append(current)
    return times, states
