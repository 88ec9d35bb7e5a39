"""Initial states, expectation values, parities, and cat-state diagnostics."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .dissipation import DensityMatrix
from .hilbert import (
    FockCutoff,
    InvariantViolationError,
    Operator,
    StateVector,
    embed_boson,
    embed_qubit,
    number_op,
    pauli,
)

__all__ = [
    "TimeSeries",
    "Parity",
    "initial_state",
    "boson_amplitudes",
    "expectation",
    "parity",
    "atom_parity_op",
    "photon_parity_op",
    "total_parity_op",
    "excited_population_op",
    "boson_number_op",
    "cat_overlap",
    "leakage",
]

log = logging.getLogger(__name__)

IMAG_RESIDUE_ATOL = 1e-10

# qubit basis order (|e>, |g>) on the first factor
_QUBIT_AMPLITUDES = {
    "e": np.array([1.0, 0.0], dtype=complex),
    "g": np.array([0.0, 1.0], dtype=complex),
    "plus": np.array([1.0, 1.0], dtype=complex) / np.sqrt(2.0),
    "minus": np.array([1.0, -1.0], dtype=complex) / np.sqrt(2.0),
}


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """One labeled observable trace on a strictly increasing time grid."""

    label: str
    times: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        times = np.array(self.times, dtype=float)
        values = np.array(self.values, dtype=float)
        if times.ndim != 1 or values.shape != times.shape:
            raise ValueError("times and values must be 1-d arrays of equal length")
        if len(times) > 1 and np.any(np.diff(times) <= 0):
            raise ValueError("times must be strictly increasing")
        if not np.all(np.isfinite(times)) or not np.all(np.isfinite(values)):
            raise ValueError("times and values must be finite")
        times.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return len(self.times)


class Parity(NamedTuple):
    atom: float
    photon: float


def _parse_boson(boson) -> tuple[str, object]:
    if isinstance(boson, str):
        text = boson.strip()
        if text == "vacuum":
            return ("fock", 0)
        if text.startswith("fock:"):
            return ("fock", int(text.split(":", 1)[1]))
        if text.startswith("coherent:"):
            return ("coherent", complex(text.split(":", 1)[1].replace(" ", "")))
        raise ValueError(f"unknown boson state {boson!r}")
    kind, value = boson
    if kind == "fock":
        return ("fock", int(value))
    if kind == "coherent":
        return ("coherent", complex(value))
    raise ValueError(f"unknown boson state kind {kind!r}")


def boson_amplitudes(boson, cutoff: FockCutoff) -> np.ndarray:
    """Normalized amplitudes of a bare boson state on the truncated Fock factor.

    Accepts "vacuum", "fock:N", "coherent:ALPHA" or ("fock", n) /
    ("coherent", alpha). Coherent states are truncated then renormalized;
    a dropped tail above 1e-6 is logged as a warning.
    """
    kind, value = _parse_boson(boson)
    if kind == "fock":
        n = int(value)
        if n < 0 or n > cutoff.n_max:
            raise ValueError(f"fock index {n} beyond cutoff n_max = {cutoff.n_max}")
        amp = np.zeros(cutoff.fock_dim, dtype=complex)
        amp[n] = 1.0
        return amp
    alpha = complex(value)
    amp = np.zeros(cutoff.fock_dim, dtype=complex)
    amp[0] = np.exp(-0.5 * abs(alpha) ** 2)
    for n in range(1, cutoff.fock_dim):
        amp[n] = amp[n - 1] * alpha / np.sqrt(n)
    nrm = np.linalg.norm(amp)
    tail = 1.0 - nrm**2
    if tail > 1e-6:
        log.warning(
            "coherent state |alpha|^2 = %.3f drops tail %.3e at n_max = %d",
            abs(alpha) ** 2, tail, cutoff.n_max,
        )
    if nrm == 0.0:
        raise ValueError("coherent amplitude underflows the truncated space")
    return amp / nrm


def initial_state(qubit: str, boson, cutoff: FockCutoff) -> StateVector:
    """Product state (qubit in e/g/plus/minus) x (vacuum | fock | coherent)."""
    try:
        q_amp = _QUBIT_AMPLITUDES[qubit]
    except KeyError:
        raise ValueError(f"unknown qubit state {qubit!r}, expected one of {sorted(_QUBIT_AMPLITUDES)}")
    b_amp = boson_amplitudes(boson, cutoff)
    return StateVector(np.kron(q_amp, b_amp), cutoff)


def expectation(state: StateVector | DensityMatrix, obs: Operator) -> float:
    """Real expectation value of a Hermitian observable.

    The imaginary residue is checked against 1e-10 before being discarded.
    """
    if not obs.is_hermitian():
        raise ValueError("expectation requires a Hermitian observable")
    if isinstance(state, StateVector):
        if state.dim != obs.dim:
            raise ValueError(f"state dim {state.dim} != observable dim {obs.dim}")
        val = complex(np.vdot(state.amplitudes, obs.mat @ state.amplitudes))
    else:
        if state.dim != obs.dim:
            raise ValueError(f"state dim {state.dim} != observable dim {obs.dim}")
        val = complex(np.trace(obs.mat @ state.mat))
    if abs(val.imag) > IMAG_RESIDUE_ATOL * max(1.0, abs(val)):
        raise InvariantViolationError(f"imaginary residue {val.imag:.3e} in expectation value")
    return float(val.real)


def atom_parity_op(cutoff: FockCutoff) -> Operator:
    return embed_qubit(pauli("z"), cutoff)


def photon_parity_op(cutoff: FockCutoff) -> Operator:
    signs = (-1.0) ** np.arange(cutoff.fock_dim)
    return embed_boson(Operator(np.diag(signs)), cutoff)


def total_parity_op(cutoff: FockCutoff) -> Operator:
    """sigma_z (x) (-1)^(b'b): conserved by the Rabi Hamiltonian."""
    return atom_parity_op(cutoff) @ photon_parity_op(cutoff)


def excited_population_op(cutoff: FockCutoff) -> Operator:
    """sigma+ sigma- = |e><e| on the composite space."""
    return embed_qubit(pauli("plus") @ pauli("minus"), cutoff)


def boson_number_op(cutoff: FockCutoff) -> Operator:
    return embed_boson(number_op(cutoff), cutoff)


def parity(state: StateVector | DensityMatrix) -> Parity:
    """Atom parity <sigma_z> and photon parity <(-1)^(b'b)> as a labeled pair."""
    cutoff = state.cutoff
    if cutoff is None:
        raise ValueError("parity requires a state tagged with its cutoff")
    return Parity(
        atom=expectation(state, atom_parity_op(cutoff)),
        photon=expectation(state, photon_parity_op(cutoff)),
    )


def cat_overlap(state: StateVector, alpha: complex, sign: str) -> float:
    """Overlap of the qubit-conditional boson state with a normalized cat state.

    cat_even(alpha) ~ |alpha> + |-alpha> and cat_odd(alpha) ~ |alpha> - |-alpha>
    (normalized after truncation). The qubit is projected onto |g> for the
    even cat and |e> for the odd cat, the pairing the degenerate-coupling
    dynamics produces, and the conditional state is renormalized.
    """
    if sign not in ("even", "odd"):
        raise ValueError(f"sign must be 'even' or 'odd', got {sign!r}")
    cutoff = state.cutoff
    if cutoff is None:
        raise ValueError("cat_overlap requires a state tagged with its cutoff")
    cond = state.amplitudes.reshape(2, cutoff.fock_dim)[0 if sign == "odd" else 1]
    nrm = np.linalg.norm(cond)
    if nrm < 1e-12:
        raise ValueError("qubit projection yields a zero-norm conditional state")
    cond = cond / nrm
    plus = boson_amplitudes(("coherent", alpha), cutoff)
    minus = boson_amplitudes(("coherent", -alpha), cutoff)
    cat = plus + minus if sign == "even" else plus - minus
    cat_nrm = np.linalg.norm(cat)
    if cat_nrm < 1e-12:
        raise ValueError(f"cat_{sign}({alpha}) vanishes in the truncated space")
    cat = cat / cat_nrm
    return float(abs(np.vdot(cat, cond)) ** 2)


def leakage(state: StateVector | DensityMatrix) -> float:
    """Population of the top Fock level |n_max>, summed over the qubit."""
    cutoff = state.cutoff
    if cutoff is None:
        raise ValueError("leakage requires a state tagged with its cutoff")
    if isinstance(state, StateVector):
        block = state.amplitudes.reshape(2, cutoff.fock_dim)
        return float(np.sum(np.abs(block[:, -1]) ** 2))
    diag = np.diag(state.mat).real.reshape(2, cutoff.fock_dim)
    return float(np.sum(diag[:, -1]))
