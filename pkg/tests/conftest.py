"""Shared helpers: independent numeric oracles and CSV parsing for tests."""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def taylor_expm(mat: np.ndarray, scale: float = 1.0, terms: int = 90) -> np.ndarray:
    """Oracle: exp(-i * scale * mat) by plain Taylor summation.

    Independent of any eigendecomposition; adequate whenever
    ||scale * mat|| is a few tens or less.
    """
    a = -1j * scale * np.asarray(mat, dtype=complex)
    out = np.eye(a.shape[0], dtype=complex)
    term = np.eye(a.shape[0], dtype=complex)
    for k in range(1, terms + 1):
        term = term @ a / k
        out = out + term
    return out


def power_iteration_norm(mat: np.ndarray, iters: int = 2000, seed: int = 5) -> float:
    """Oracle: largest singular value via power iteration on A^H A."""
    a = np.asarray(mat, dtype=complex)
    rng = np.random.default_rng(seed)
    v = rng.normal(size=a.shape[1]) + 1j * rng.normal(size=a.shape[1])
    v /= np.linalg.norm(v)
    gram = a.conj().T @ a
    for _ in range(iters):
        w = gram @ v
        nrm = np.linalg.norm(w)
        if nrm == 0.0:
            return 0.0
        v = w / nrm
    return math.sqrt(float(np.real(np.vdot(v, gram @ v))))


def loglog_slope(ls, errs) -> float:
    """Least-squares slope of log(err) against log(l)."""
    return float(np.polyfit(np.log(np.asarray(ls, float)), np.log(np.asarray(errs, float)), 1)[0])


def coherent_poisson_weights(alpha: complex, n_max: int) -> np.ndarray:
    """Oracle: |<n|alpha>|^2 = exp(-|a|^2) |a|^(2n) / n! before truncation."""
    out = np.empty(n_max + 1)
    for n in range(n_max + 1):
        out[n] = math.exp(-abs(alpha) ** 2) * abs(alpha) ** (2 * n) / math.factorial(n)
    return out


def read_csv(path: str | Path):
    """Parse an output file into (metadata dict, column names, float array)."""
    meta: dict[str, str] = {}
    columns: list[str] | None = None
    rows: list[list[float]] = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if line.startswith("#"):
            key, _, value = line[1:].partition("=")
            meta[key.strip()] = value.strip()
        elif columns is None:
            columns = line.split(",")
        else:
            rows.append([float(x) for x in line.split(",")])
    assert columns is not None, f"no header row in {path}"
    return meta, columns, np.array(rows)


def scan_reports(scenario, params=None, total_time=None):
    """Fidelity reports for every l of a fidelity-style scenario slice."""
    import rabisim as rs

    p = scenario.params if params is None else params
    T = scenario.T if total_time is None else total_time
    builders = {"jc": rs.h_jc, "ajc": rs.h_ajc}
    terms = tuple(builders[name](p) for name in scenario.plan.ordering)
    h = terms[0] + terms[1]
    exact = rs.exact_propagator(h, T)
    psi0 = rs.initial_state(scenario.initial.qubit, scenario.initial.boson, p.cutoff)
    reports = []
    for l in scenario.plan.steps:
        u = rs.trotter_propagator(rs.TrotterPlan(scenario.plan.scheme, l, terms, T))
        reports.append(rs.fidelity(exact, u, psi0, steps=l, total_time=T))
    return reports
