"""Digital quantum simulation of the quantum Rabi model on a truncated Fock space."""

__version__ = "0.1.0"

from .hilbert import (
    FockCutoff,
    InvariantViolationError,
    Operator,
    StateVector,
    annihilation,
    commutator,
    creation,
    embed_boson,
    embed_qubit,
    expm_hermitian,
    fock_identity,
    number_op,
    pauli,
    qubit_identity,
    spectral_norm,
)
from .model import (
    COUPLING_DEFAULT,
    OMEGA_Q1_DEFAULT,
    OMEGA_Q2_DEFAULT,
    TWO_PI,
    EffectiveParams,
    RabiParams,
    conjugate_by_sigma_x,
    effective_params,
    h_ajc,
    h_eff,
    h_jc,
    h_rabi,
    transmon_params,
)
from .digitize import (
    FidelityReport,
    TrotterPlan,
    exact_propagator,
    fidelity,
    propagate_state,
    trotter_error_bound,
    trotter_general,
    trotter_propagator,
    trotter_states,
    trotter_symmetrized,
)
from .dissipation import (
    DensityMatrix,
    LindbladSpec,
    evolve_master,
    lindblad_rhs,
)
from .observables import (
    Parity,
    TimeSeries,
    atom_parity_op,
    boson_amplitudes,
    boson_number_op,
    cat_overlap,
    excited_population_op,
    expectation,
    initial_state,
    leakage,
    parity,
    photon_parity_op,
    total_parity_op,
)
from .runner import (
    ConfigError,
    InitialSpec,
    LindbladOptions,
    PlanSpec,
    RunResult,
    Scenario,
    SweepSpec,
    load_config,
    run,
    save_config,
    scenario_from_dict,
    scenario_to_dict,
)
from .presets import PRESET_NAMES, list_presets, preset, preset_description

__all__ = [name for name in dir() if not name.startswith("_")]
