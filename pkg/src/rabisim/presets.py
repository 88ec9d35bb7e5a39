"""Named, ready-to-run scenarios covering the standard simulation campaigns.

Each preset is a plain Scenario; ``preset(name)`` returns a fresh instance
and ``list_presets()`` enumerates the canonical names. A couple of aliases
map shorthand names onto their canonical scenario.
"""

from __future__ import annotations

from .hilbert import FockCutoff
from .model import COUPLING_DEFAULT, OMEGA_Q1_DEFAULT, TWO_PI, transmon_params
from .runner import ConfigError, InitialSpec, LindbladOptions, PlanSpec, Scenario, SweepSpec

__all__ = ["preset", "list_presets", "preset_description", "PRESET_NAMES"]

_G = COUPLING_DEFAULT
_RATIOS = (2.67, 1.19, 0.62)
_FULL_L_LIST = tuple(range(1, 65))
_COMPARE_L_LIST = (4, 16, 64)


def _scan(name: str, *, T: float, scheme: str = "general",
          ordering: tuple[str, ...] = ("jc", "ajc"), omega_b: float = _G,
          n_max: int = 30, sweep: SweepSpec | None = None) -> Scenario:
    return Scenario(
        name=name,
        mode="fidelity_scan",
        params=transmon_params(omega_b=omega_b, cutoff=FockCutoff(n_max)),
        plan=PlanSpec(scheme=scheme, steps=_FULL_L_LIST, ordering=ordering),
        initial=InitialSpec(qubit="e", boson="vacuum"),
        T=T,
        sweep=sweep,
    )


def _compare(name: str, *, ratio: float, scheme: str, n_max: int,
             qubit: str = "e", degenerate: bool = False,
             n_samples: int = 801) -> Scenario:
    omega_b = _G / ratio
    kwargs = {"omega_q1": OMEGA_Q1_DEFAULT, "omega_q2": OMEGA_Q1_DEFAULT} if degenerate else {}
    return Scenario(
        name=name,
        mode="compare",
        params=transmon_params(omega_b=omega_b, cutoff=FockCutoff(n_max), **kwargs),
        plan=PlanSpec(scheme=scheme, steps=_COMPARE_L_LIST),
        initial=InitialSpec(qubit=qubit, boson="vacuum"),
        T=TWO_PI / omega_b,
        n_samples=n_samples,
    )


def _build_fig1_upper() -> Scenario:
    return _scan("fig1_upper", T=30.0)


def _build_fig1_lower() -> Scenario:
    return _scan("fig1_lower", T=2.0)


def _build_fig1_wt_scan() -> Scenario:
    return _scan(
        "fig1_wt_scan",
        T=TWO_PI / _G,
        sweep=SweepSpec(key="omega_t_over_2pi", values=(0.5, 1.0, 2.0, 4.0)),
    )


def _build_fig2_ordering() -> Scenario:
    return _scan("fig2_ordering", T=30.0, ordering=("ajc", "jc"))


def _build_fig3_ratio_scan() -> Scenario:
    return _scan(
        "fig3_ratio_scan", T=2.0, n_max=60,
        sweep=SweepSpec(key="g_over_omega_b", values=_RATIOS),
    )


def _build_fig3_ratio_scan_sym() -> Scenario:
    return _scan(
        "fig3_ratio_scan_sym", T=2.0, scheme="symmetrized", n_max=60,
        sweep=SweepSpec(key="g_over_omega_b", values=_RATIOS),
    )


def _build_fig4_degenerate() -> Scenario:
    return _compare(
        "fig4_degenerate", ratio=1.0, scheme="symmetrized", n_max=60,
        qubit="g", degenerate=True, n_samples=401,
    )


def _build_fig4_degenerate_general() -> Scenario:
    return _compare(
        "fig4_degenerate_general", ratio=1.0, scheme="general", n_max=60,
        qubit="g", degenerate=True, n_samples=401,
    )


def _build_fig4_lindblad() -> Scenario:
    return Scenario(
        name="fig4_lindblad",
        mode="evolve_lindblad",
        params=transmon_params(
            omega_b=_G, cutoff=FockCutoff(30),
            omega_q1=OMEGA_Q1_DEFAULT, omega_q2=OMEGA_Q1_DEFAULT,
        ),
        plan=PlanSpec(),
        initial=InitialSpec(qubit="g", boson="vacuum"),
        T=TWO_PI / _G,
        n_samples=201,
        lindblad=LindbladOptions(
            channels=("photon_loss", "qubit_relaxation"),
            gamma=1.0,
            dt=1e-4,
        ),
    )


def _build_fig5_dsc() -> Scenario:
    return _compare("fig5_dsc", ratio=2.67, scheme="general", n_max=100)


def _build_fig5_intermediate() -> Scenario:
    return _compare("fig5_intermediate", ratio=1.19, scheme="symmetrized", n_max=60)


def _build_fig6_usc() -> Scenario:
    return _compare("fig6_usc", ratio=0.62, scheme="general", n_max=30)


def _build_lindblad_decay() -> Scenario:
    return Scenario(
        name="lindblad_decay",
        mode="evolve_lindblad",
        params=transmon_params(omega_b=_G, cutoff=FockCutoff(1)),
        plan=PlanSpec(),
        initial=InitialSpec(qubit="e", boson="vacuum"),
        T=3.0,
        n_samples=301,
        lindblad=LindbladOptions(
            channels=("qubit_relaxation",),
            gamma=1.0,
            include_hamiltonian=False,
        ),
    )


_BUILDERS = {
    "fig1_upper": _build_fig1_upper,
    "fig1_lower": _build_fig1_lower,
    "fig1_wt_scan": _build_fig1_wt_scan,
    "fig2_ordering": _build_fig2_ordering,
    "fig3_ratio_scan": _build_fig3_ratio_scan,
    "fig3_ratio_scan_sym": _build_fig3_ratio_scan_sym,
    "fig4_degenerate": _build_fig4_degenerate,
    "fig4_degenerate_general": _build_fig4_degenerate_general,
    "fig4_lindblad": _build_fig4_lindblad,
    "fig5_dsc": _build_fig5_dsc,
    "fig5_intermediate": _build_fig5_intermediate,
    "fig6_usc": _build_fig6_usc,
    "lindblad_decay": _build_lindblad_decay,
}

_ALIASES = {
    "degenerate": "fig4_degenerate",
    "fig5_left": "fig5_dsc",
}

_DESCRIPTIONS = {
    "fig1_upper": "fidelity scan, general scheme, (jc, ajc), l = 1..64, T = 30 ns",
    "fig1_lower": "fidelity scan, general scheme, short window T = 2 ns",
    "fig1_wt_scan": "fidelity scans at omega_b T / 2pi in {0.5, 1, 2, 4}",
    "fig2_ordering": "fidelity scan with reversed term ordering (ajc, jc), T = 30 ns",
    "fig3_ratio_scan": "fidelity scans at g/omega_b in {2.67, 1.19, 0.62}, general scheme",
    "fig3_ratio_scan_sym": "fidelity scans at g/omega_b in {2.67, 1.19, 0.62}, symmetrized",
    "fig4_degenerate": "compare run, degenerate qubit, g = omega_b, symmetrized, one period",
    "fig4_degenerate_general": "compare run, degenerate qubit, g = omega_b, general scheme",
    "fig4_lindblad": "dissipative degenerate run with photon loss and qubit relaxation",
    "fig5_dsc": "compare run deep in strong coupling, g/omega_b = 2.67, one period",
    "fig5_intermediate": "compare run at g/omega_b = 1.19, symmetrized, one period",
    "fig6_usc": "compare run at g/omega_b = 0.62, general scheme, one period",
    "lindblad_decay": "bare qubit relaxation, excited population follows exp(-2 gamma t)",
}

PRESET_NAMES = tuple(_BUILDERS)


def preset(name: str) -> Scenario:
    """Return a fresh Scenario for a preset or alias name."""
    canon = _ALIASES.get(name, name)
    builder = _BUILDERS.get(canon)
    if builder is None:
        known = ", ".join(list(PRESET_NAMES) + sorted(_ALIASES))
        raise ConfigError(f"unknown preset {name!r}; available: {known}")
    return builder()


def list_presets() -> tuple[str, ...]:
    """Canonical preset names in catalog order."""
    return PRESET_NAMES


def preset_description(name: str) -> str:
    canon = _ALIASES.get(name, name)
    if canon not in _DESCRIPTIONS:
        raise ConfigError(f"unknown preset {name!r}")
    return _DESCRIPTIONS[canon]
