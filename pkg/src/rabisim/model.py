"""Hamiltonian builders for the quantum Rabi model and its digitized pieces.

The Rabi Hamiltonian is realized as the sum of a Jaynes-Cummings term and an
anti-Jaynes-Cummings term that share the bosonic mode but carry their own
qubit frequencies; for equal qubit frequencies the qubit term of the sum
cancels exactly. The rotating-frame (effective) Hamiltonian and the mapping
from detunings to the simulated-model parameters live here as well.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hilbert import (
    FockCutoff,
    Operator,
    annihilation,
    creation,
    embed_boson,
    embed_qubit,
    number_op,
    pauli,
)

__all__ = [
    "TWO_PI",
    "OMEGA_Q1_DEFAULT",
    "OMEGA_Q2_DEFAULT",
    "COUPLING_DEFAULT",
    "RabiParams",
    "EffectiveParams",
    "transmon_params",
    "h_rabi",
    "h_jc",
    "h_ajc",
    "h_eff",
    "conjugate_by_sigma_x",
    "effective_params",
]

TWO_PI = 2.0 * np.pi

# Default operating point, angular frequencies in rad/ns ("2pi x f GHz").
OMEGA_Q1_DEFAULT = TWO_PI * 6.381
OMEGA_Q2_DEFAULT = TWO_PI * 5.452
COUPLING_DEFAULT = TWO_PI * 1.79


@dataclass(frozen=True)
class RabiParams:
    """Parameter set for one simulation scenario.

    omega_q is the qubit splitting of the Rabi model itself; omega_q1 and
    omega_q2 are the qubit frequencies used by the two digitized steps, and
    omega_re is the rotating-frame frequency the detunings are measured
    against. All angular, rad/ns.
    """

    omega_q: float
    omega_b: float
    g: float
    omega_q1: float
    omega_q2: float
    omega_re: float
    cutoff: FockCutoff

    def __post_init__(self) -> None:
        for name in ("omega_q", "omega_b", "g", "omega_q1", "omega_q2", "omega_re"):
            val = getattr(self, name)
            if not np.isfinite(val):
                raise ValueError(f"{name} must be finite, got {val!r}")
            object.__setattr__(self, name, float(val))
        if self.omega_b <= 0:
            raise ValueError(f"omega_b must be positive, got {self.omega_b}")
        if self.g < 0:
            raise ValueError(f"g must be non-negative, got {self.g}")

    # Detunings relative to the rotating frame.
    @property
    def delta_b(self) -> float:
        return self.omega_b - self.omega_re

    @property
    def delta_q(self) -> float:
        return self.omega_q - self.omega_re

    @property
    def delta_q1(self) -> float:
        return self.omega_q1 - self.omega_re

    @property
    def delta_q2(self) -> float:
        return self.omega_q2 - self.omega_re


@dataclass(frozen=True)
class EffectiveParams:
    """Simulated-model parameters reached through the rotating-frame mapping."""

    g_eff: float
    omega_b_eff: float
    omega_q_eff: float


def transmon_params(
    omega_b: float,
    cutoff: FockCutoff,
    *,
    g: float = COUPLING_DEFAULT,
    omega_q1: float = OMEGA_Q1_DEFAULT,
    omega_q2: float = OMEGA_Q2_DEFAULT,
    omega_q: float | None = None,
    omega_re: float | None = None,
) -> RabiParams:
    """Parameters at the default transmon operating point.

    omega_q defaults to omega_q1 - omega_q2, which makes h_rabi equal to
    h_jc + h_ajc as a matrix; omega_re defaults to omega_b / 2 so the
    effective mapping returns the simulated parameters unchanged.
    """
    if omega_q is None:
        omega_q = omega_q1 - omega_q2
    if omega_re is None:
        omega_re = omega_b / 2.0
    return RabiParams(
        omega_q=omega_q,
        omega_b=omega_b,
        g=g,
        omega_q1=omega_q1,
        omega_q2=omega_q2,
        omega_re=omega_re,
        cutoff=cutoff,
    )


def _composite_pieces(p: RabiParams):
    c = p.cutoff
    sz = embed_qubit(pauli("z"), c)
    n_b = embed_boson(number_op(c), c)
    # joint qubit-boson products: kron(qubit factor, boson factor)
    b = annihilation(c).mat
    bdag = creation(c).mat
    sp = pauli("plus").mat
    sm = pauli("minus").mat
    bdag_sm = Operator(np.kron(sm, bdag), c)  # photon up, qubit down
    b_sp = Operator(np.kron(sp, b), c)        # photon down, qubit up
    bdag_sp = Operator(np.kron(sp, bdag), c)  # photon up, qubit up
    b_sm = Operator(np.kron(sm, b), c)        # photon down, qubit down
    sx_x = Operator(np.kron(_sx(), b + bdag), c)
    return sz, n_b, bdag_sm, b_sp, bdag_sp, b_sm, sx_x


def _sx() -> np.ndarray:
    return pauli("x").mat


def h_rabi(p: RabiParams) -> Operator:
    """Quantum Rabi Hamiltonian (omega_q/2) sigma_z + omega_b b'b + g sigma_x (b' + b)."""
    sz, n_b, *_rest, sx_x = _composite_pieces(p)
    return 0.5 * p.omega_q * sz + p.omega_b * n_b + p.g * sx_x


def h_jc(p: RabiParams) -> Operator:
    """Jaynes-Cummings step: (omega_b/2) b'b + (omega_q1/2) sigma_z + g (b'sigma- + b sigma+)."""
    sz, n_b, bdag_sm, b_sp, *_ = _composite_pieces(p)
    return 0.5 * p.omega_b * n_b + 0.5 * p.omega_q1 * sz + p.g * (bdag_sm + b_sp)


def h_ajc(p: RabiParams) -> Operator:
    """Anti-Jaynes-Cummings step: (omega_b/2) b'b - (omega_q2/2) sigma_z + g (b'sigma+ + b sigma-)."""
    sz, n_b, _bdag_sm, _b_sp, bdag_sp, b_sm, _sx = _composite_pieces(p)
    return 0.5 * p.omega_b * n_b - 0.5 * p.omega_q2 * sz + p.g * (bdag_sp + b_sm)


def h_eff(p: RabiParams) -> Operator:
    """Rotating-frame JC Hamiltonian delta_b b'b - (delta_q/2) sigma_z + g (b'sigma- + b sigma+)."""
    sz, n_b, bdag_sm, b_sp, *_ = _composite_pieces(p)
    return p.delta_b * n_b - 0.5 * p.delta_q * sz + p.g * (bdag_sm + b_sp)


def conjugate_by_sigma_x(h: Operator) -> Operator:
    """(sigma_x (x) 1) h (sigma_x (x) 1): exchanges sigma+ <-> sigma- and flips sigma_z terms."""
    if h.cutoff is None:
        raise ValueError("conjugate_by_sigma_x requires a composite operator with a cutoff")
    x = embed_qubit(pauli("x"), h.cutoff)
    return x @ h @ x


def effective_params(p: RabiParams) -> EffectiveParams:
    """Map detunings to the simulated Rabi-model parameters.

    The coupling is frame-invariant, the simulated boson frequency is twice
    the resonator detuning, and the simulated qubit splitting is the
    difference of the two step detunings (independent of omega_re).
    """
    return EffectiveParams(
        g_eff=p.g,
        omega_b_eff=2.0 * p.delta_b,
        omega_q_eff=p.delta_q1 - p.delta_q2,
    )
