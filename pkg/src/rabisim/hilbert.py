"""Dense operators and states on the composite qubit (x) truncated-Fock space.

Conventions used throughout the package: the qubit factor comes first with
basis order (|e>, |g>), the boson factor second with Fock states
|0> .. |n_max>, so the composite index is q * (n_max + 1) + n. Angular
frequencies are in rad/ns, times in ns, hbar = 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "HERMITICITY_RTOL",
    "UNITARITY_ATOL",
    "STATE_NORM_ATOL",
    "InvariantViolationError",
    "FockCutoff",
    "Operator",
    "StateVector",
    "annihilation",
    "creation",
    "number_op",
    "pauli",
    "qubit_identity",
    "fock_identity",
    "embed_qubit",
    "embed_boson",
    "expm_hermitian",
    "spectral_norm",
    "commutator",
]

HERMITICITY_RTOL = 1e-12
UNITARITY_ATOL = 1e-10
STATE_NORM_ATOL = 1e-10


class InvariantViolationError(RuntimeError):
    """A numeric invariant (unitarity, fidelity chain, trace, positivity) failed."""


@dataclass(frozen=True)
class FockCutoff:
    """Truncated Fock space keeping photon numbers 0 .. n_max (hard cutoff)."""

    n_max: int

    def __post_init__(self) -> None:
        if not isinstance(self.n_max, (int, np.integer)) or isinstance(self.n_max, bool):
            raise ValueError(f"n_max must be an integer, got {self.n_max!r}")
        if self.n_max < 1:
            raise ValueError(f"n_max must be >= 1, got {self.n_max}")
        object.__setattr__(self, "n_max", int(self.n_max))

    @property
    def fock_dim(self) -> int:
        return self.n_max + 1

    @property
    def composite_dim(self) -> int:
        return 2 * (self.n_max + 1)


def _merge_cutoffs(a: FockCutoff | None, b: FockCutoff | None) -> FockCutoff | None:
    if a is not None and b is not None and a != b:
        raise ValueError(f"cutoff mismatch: {a} vs {b}")
    return a if a is not None else b


@dataclass(frozen=True, eq=False)
class Operator:
    """Dense complex square matrix, optionally tagged with the composite cutoff.

    Factor-space operators (bare qubit or bare boson) carry ``cutoff=None``;
    composite operators carry the :class:`FockCutoff` they were built on.
    """

    mat: np.ndarray
    cutoff: FockCutoff | None = None

    def __post_init__(self) -> None:
        mat = np.array(self.mat, dtype=np.complex128, copy=True)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError(f"operator must be a square matrix, got shape {mat.shape}")
        if self.cutoff is not None and mat.shape[0] != self.cutoff.composite_dim:
            raise ValueError(
                f"dimension {mat.shape[0]} does not match composite dimension "
                f"{self.cutoff.composite_dim} of {self.cutoff}"
            )
        mat.setflags(write=False)
        object.__setattr__(self, "mat", mat)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def dag(self) -> "Operator":
        return Operator(self.mat.conj().T, self.cutoff)

    def is_hermitian(self, rtol: float = HERMITICITY_RTOL) -> bool:
        dev = np.max(np.abs(self.mat - self.mat.conj().T))
        scale = max(1.0, float(np.max(np.abs(self.mat))))
        return bool(dev <= rtol * scale)

    def is_unitary(self, atol: float = UNITARITY_ATOL) -> bool:
        eye = np.eye(self.dim)
        return bool(np.max(np.abs(self.mat.conj().T @ self.mat - eye)) <= atol)

    def __add__(self, other: "Operator") -> "Operator":
        return Operator(self.mat + other.mat, _merge_cutoffs(self.cutoff, other.cutoff))

    def __sub__(self, other: "Operator") -> "Operator":
        return Operator(self.mat - other.mat, _merge_cutoffs(self.cutoff, other.cutoff))

    def __neg__(self) -> "Operator":
        return Operator(-self.mat, self.cutoff)

    def __matmul__(self, other: "Operator") -> "Operator":
        return Operator(self.mat @ other.mat, _merge_cutoffs(self.cutoff, other.cutoff))

    def __mul__(self, scalar: complex) -> "Operator":
        if isinstance(scalar, Operator):
            raise TypeError("use @ for operator products, * is scalar-only")
        return Operator(self.mat * scalar, self.cutoff)

    __rmul__ = __mul__


@dataclass(frozen=True, eq=False)
class StateVector:
    """Normalized pure state on the composite space."""

    amplitudes: np.ndarray
    cutoff: FockCutoff | None = None

    def __post_init__(self) -> None:
        amp = np.array(self.amplitudes, dtype=np.complex128, copy=True)
        if amp.ndim != 1:
            raise ValueError(f"state must be a 1-d array, got shape {amp.shape}")
        if self.cutoff is not None and amp.shape[0] != self.cutoff.composite_dim:
            raise ValueError(
                f"dimension {amp.shape[0]} does not match composite dimension "
                f"{self.cutoff.composite_dim}"
            )
        nrm = float(np.linalg.norm(amp))
        if abs(nrm - 1.0) > STATE_NORM_ATOL:
            raise ValueError(f"state norm {nrm} deviates from 1 by more than {STATE_NORM_ATOL}")
        amp.setflags(write=False)
        object.__setattr__(self, "amplitudes", amp)

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def apply(self, op: Operator) -> "StateVector":
        if op.dim != self.dim:
            raise ValueError(f"operator dim {op.dim} does not match state dim {self.dim}")
        return StateVector(op.mat @ self.amplitudes, _merge_cutoffs(self.cutoff, op.cutoff))

    def overlap(self, other: "StateVector") -> complex:
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        return complex(np.vdot(self.amplitudes, other.amplitudes))


def annihilation(cutoff: FockCutoff) -> Operator:
    """Boson annihilation operator b on the bare Fock factor, <n-1|b|n> = sqrt(n)."""
    n = np.arange(1, cutoff.fock_dim)
    return Operator(np.diag(np.sqrt(n.astype(float)), k=1))


def creation(cutoff: FockCutoff) -> Operator:
    return annihilation(cutoff).dag()


def number_op(cutoff: FockCutoff) -> Operator:
    return Operator(np.diag(np.arange(cutoff.fock_dim, dtype=float)))


_PAULI_MATS = {
    # basis order (|e>, |g>): sigma_z = |e><e| - |g><g|
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
    "plus": np.array([[0, 1], [0, 0]], dtype=complex),
    "minus": np.array([[0, 0], [1, 0]], dtype=complex),
}


def pauli(which: str) -> Operator:
    """Qubit operator on the bare 2-dim factor: one of x, y, z, plus, minus."""
    try:
        return Operator(_PAULI_MATS[which])
    except KeyError:
        raise ValueError(f"unknown Pauli label {which!r}, expected one of {sorted(_PAULI_MATS)}")


def qubit_identity() -> Operator:
    return Operator(np.eye(2, dtype=complex))


def fock_identity(cutoff: FockCutoff) -> Operator:
    return Operator(np.eye(cutoff.fock_dim, dtype=complex))


def embed_qubit(op: Operator, cutoff: FockCutoff) -> Operator:
    """Lift a bare qubit operator to the composite space (qubit factor first)."""
    if op.dim != 2:
        raise ValueError(f"expected a 2-dim qubit operator, got dim {op.dim}")
    return Operator(np.kron(op.mat, np.eye(cutoff.fock_dim)), cutoff)


def embed_boson(op: Operator, cutoff: FockCutoff) -> Operator:
    """Lift a bare boson operator to the composite space."""
    if op.dim != cutoff.fock_dim:
        raise ValueError(f"expected a {cutoff.fock_dim}-dim boson operator, got dim {op.dim}")
    return Operator(np.kron(np.eye(2), op.mat), cutoff)


def expm_hermitian(h: Operator, scale: float = 1.0) -> Operator:
    """Unitary exp(-i * scale * h) of a Hermitian operator.

    Computed through the eigendecomposition h = V diag(w) V^dag rather than
    scaling-and-squaring, so the result is unitary to machine precision
    regardless of ``scale * ||h||``.
    """
    if not h.is_hermitian():
        dev = float(np.max(np.abs(h.mat - h.mat.conj().T)))
        raise ValueError(f"expm_hermitian requires a Hermitian input (max|A - A^dag| = {dev:.3e})")
    w, v = np.linalg.eigh(h.mat)
    phases = np.exp(-1j * scale * w)
    u = (v * phases) @ v.conj().T
    out = Operator(u, h.cutoff)
    if not out.is_unitary():
        raise InvariantViolationError("propagator failed the unitarity check")
    return out


def spectral_norm(op: Operator) -> float:
    """Largest singular value (the norm used by the Trotter error bounds)."""
    return float(np.linalg.norm(op.mat, 2))


def commutator(a: Operator, b: Operator) -> Operator:
    return a @ b - b @ a
