"""Trotter products, error scaling, and the overlap/norm fidelity chain."""

import numpy as np
import pytest

from conftest import loglog_slope
from rabisim.digitize import (
    FIDELITY_CHAIN_SLACK,
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
from rabisim.hilbert import (
    FockCutoff,
    Operator,
    StateVector,
    commutator,
    embed_boson,
    embed_qubit,
    expm_hermitian,
    number_op,
    pauli,
    spectral_norm,
)
from rabisim.model import RabiParams, h_ajc, h_jc
from rabisim.observables import initial_state


def degenerate_pair(n_max=8, omega_b=1.0, g=1.0):
    """JC/AJC split of the omega_q = 0 model; the acceptance work point."""
    p = RabiParams(omega_q=0.0, omega_b=omega_b, g=g, omega_q1=0.0, omega_q2=0.0,
                   omega_re=omega_b / 2.0, cutoff=FockCutoff(n_max))
    return h_jc(p), h_ajc(p), p


def random_hermitian(dim, seed, scale=1.0):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return Operator(scale * 0.5 * (a + a.conj().T))


class TestPlanValidation:
    def test_rejects_bad_scheme(self):
        h1, h2, _ = degenerate_pair(2)
        with pytest.raises(ValueError):
            TrotterPlan("strang", 4, (h1, h2), 1.0)

    def test_rejects_bad_steps(self):
        h1, h2, _ = degenerate_pair(2)
        with pytest.raises(ValueError):
            TrotterPlan("general", 0, (h1, h2), 1.0)

    def test_rejects_empty_terms(self):
        with pytest.raises(ValueError):
            TrotterPlan("general", 4, (), 1.0)

    def test_rejects_non_hermitian_term(self):
        h1, _, _ = degenerate_pair(2)
        bad = Operator(np.triu(np.ones((h1.dim, h1.dim))))
        with pytest.raises(ValueError):
            TrotterPlan("general", 4, (h1, bad), 1.0)

    def test_rejects_dimension_mismatch(self):
        h1, _, _ = degenerate_pair(2)
        h3, _, _ = degenerate_pair(3)
        with pytest.raises(ValueError):
            TrotterPlan("general", 4, (h1, h3), 1.0)

    def test_rejects_negative_time(self):
        h1, h2, _ = degenerate_pair(2)
        with pytest.raises(ValueError):
            TrotterPlan("general", 4, (h1, h2), -0.5)

    def test_scheme_guards_on_direct_calls(self):
        h1, h2, _ = degenerate_pair(2)
        plan = TrotterPlan("general", 2, (h1, h2), 0.5)
        with pytest.raises(ValueError):
            trotter_symmetrized(plan)
        plan_sym = TrotterPlan("symmetrized", 2, (h1, h2), 0.5)
        with pytest.raises(ValueError):
            trotter_general(plan_sym)


class TestProductStructure:
    def test_commuting_terms_are_exact(self):
        cut = FockCutoff(5)
        t1 = embed_boson(number_op(cut), cut)
        t2 = 0.7 * embed_qubit(pauli("z"), cut)
        exact = exact_propagator(t1 + t2, 2.3)
        for scheme in ("general", "symmetrized"):
            u = trotter_propagator(TrotterPlan(scheme, 3, (t1, t2), 2.3))
            assert spectral_norm(Operator(u.mat - exact.mat)) < 1e-12

    def test_single_term_is_exact(self):
        h = random_hermitian(6, seed=4)
        exact = exact_propagator(h, 1.7)
        for scheme in ("general", "symmetrized"):
            u = trotter_propagator(TrotterPlan(scheme, 5, (h,), 1.7))
            assert spectral_norm(Operator(u.mat - exact.mat)) < 1e-12

    def test_general_single_step_product(self):
        a = random_hermitian(5, seed=10)
        b = random_hermitian(5, seed=11)
        u = trotter_propagator(TrotterPlan("general", 1, (a, b), 0.8))
        ref = expm_hermitian(a, 0.8).mat @ expm_hermitian(b, 0.8).mat
        assert np.max(np.abs(u.mat - ref)) < 1e-13

    def test_symmetrized_single_step_palindrome(self):
        a = random_hermitian(5, seed=12)
        b = random_hermitian(5, seed=13)
        u = trotter_propagator(TrotterPlan("symmetrized", 1, (a, b), 0.8))
        half = expm_hermitian(a, 0.4).mat
        ref = half @ expm_hermitian(b, 0.8).mat @ half
        assert np.max(np.abs(u.mat - ref)) < 1e-13

    def test_result_is_unitary(self):
        a, b, _ = degenerate_pair(6)
        u = trotter_propagator(TrotterPlan("general", 16, (a, b), 3.0))
        assert u.is_unitary(atol=1e-10)

    def test_zero_time_is_identity(self):
        a, b, _ = degenerate_pair(3)
        u = trotter_propagator(TrotterPlan("general", 4, (a, b), 0.0))
        np.testing.assert_allclose(u.mat, np.eye(u.dim), atol=1e-14)


class TestErrorScaling:
    def test_single_step_error_matches_commutator_lead_term(self):
        # ||U - V|| = 0.5 ||[A,B]|| T^2 + O(T^3) for the two-term product
        a = random_hermitian(6, seed=14)
        b = random_hermitian(6, seed=15)
        T = 1e-3
        exact = exact_propagator(a + b, T)
        u = trotter_propagator(TrotterPlan("general", 1, (a, b), T))
        err = spectral_norm(Operator(u.mat - exact.mat))
        lead = 0.5 * spectral_norm(commutator(a, b)) * T**2
        assert err == pytest.approx(lead, rel=2e-3)

    def test_small_step_slopes(self):
        # in-regime scaling at omega_b T / 2pi = 0.1, n_max = 8, g = omega_b:
        # measured slopes -1.0036 (general) and -2.0052 (symmetrized)
        a, b, _ = degenerate_pair()
        T = 0.1 * 2.0 * np.pi
        exact = exact_propagator(a + b, T)
        ls = (4, 8, 16, 32, 64)
        slopes = {}
        for scheme in ("general", "symmetrized"):
            errs = [
                spectral_norm(Operator(
                    trotter_propagator(TrotterPlan(scheme, l, (a, b), T)).mat - exact.mat
                ))
                for l in ls
            ]
            slopes[scheme] = loglog_slope(ls, errs)
        assert -1.05 <= slopes["general"] <= -0.95
        assert -2.10 <= slopes["symmetrized"] <= -1.90

    def test_error_bound_dominates_measured_error(self):
        a, b, _ = degenerate_pair()
        T = 0.1 * 2.0 * np.pi
        exact = exact_propagator(a + b, T)
        for l in (8, 32, 128):
            u = trotter_propagator(TrotterPlan("general", l, (a, b), T))
            err = spectral_norm(Operator(u.mat - exact.mat))
            assert err <= trotter_error_bound(TrotterPlan("general", l, (a, b), T))

    def test_error_bound_formula_two_terms(self):
        a = random_hermitian(4, seed=16)
        b = random_hermitian(4, seed=17)
        plan = TrotterPlan("general", 10, (a, b), 2.0)
        expected = spectral_norm(commutator(a, b)) * 4.0 / 20.0
        assert trotter_error_bound(plan) == pytest.approx(expected, rel=1e-12)


class TestFidelity:
    def test_identical_propagators(self):
        a, b, p = degenerate_pair(4)
        u = exact_propagator(a + b, 1.0)
        psi0 = initial_state("e", "vacuum", p.cutoff)
        rep = fidelity(u, u, psi0)
        assert rep.norm_error == pytest.approx(0.0, abs=1e-14)
        assert rep.overlap == pytest.approx(1.0, abs=1e-14)
        assert rep.lower_bound == pytest.approx(1.0, abs=1e-14)

    def test_chain_holds_for_trotterized_pair(self):
        a, b, p = degenerate_pair(6)
        psi0 = initial_state("e", "vacuum", p.cutoff)
        exact = exact_propagator(a + b, 2.0)
        for l in (1, 3, 9):
            u = trotter_propagator(TrotterPlan("general", l, (a, b), 2.0))
            rep = fidelity(exact, u, psi0, steps=l, total_time=2.0)
            assert rep.lower_bound <= rep.overlap <= 1.0 + FIDELITY_CHAIN_SLACK
            assert rep.lower_bound == max(0.0, 1.0 - rep.norm_error)
            assert rep.steps == l

    def test_rejects_non_unitary_input(self):
        a, b, p = degenerate_pair(3)
        u = exact_propagator(a + b, 1.0)
        psi0 = initial_state("e", "vacuum", p.cutoff)
        with pytest.raises(ValueError):
            fidelity(u, Operator(0.5 * u.mat), psi0)

    def test_rejects_dimension_mismatch(self):
        a, b, p = degenerate_pair(3)
        u = exact_propagator(a + b, 1.0)
        a2, b2, p2 = degenerate_pair(4)
        v = exact_propagator(a2 + b2, 1.0)
        psi0 = initial_state("e", "vacuum", p.cutoff)
        with pytest.raises(ValueError):
            fidelity(u, v, psi0)


class TestStateTrajectories:
    def test_trotter_states_grid_and_endpoint(self):
        a, b, p = degenerate_pair(5)
        psi0 = initial_state("g", "vacuum", p.cutoff)
        plan = TrotterPlan("symmetrized", 8, (a, b), 1.6)
        times, states = trotter_states(plan, psi0)
        np.testing.assert_allclose(times, np.linspace(0.0, 1.6, 9), atol=1e-15)
        assert abs(states[0].overlap(psi0)) == pytest.approx(1.0, abs=1e-14)
        final = psi0.apply(trotter_propagator(plan))
        assert abs(states[-1].overlap(final)) == pytest.approx(1.0, abs=1e-12)

    def test_propagate_state_matches_exact_propagator(self):
        a, b, p = degenerate_pair(5)
        psi0 = initial_state("e", "vacuum", p.cutoff)
        h = a + b
        times = np.linspace(0.0, 2.0, 7)
        states = propagate_state(h, psi0, times)
        for t, st in zip(times, states):
            ref = psi0.apply(exact_propagator(h, t))
            assert abs(st.overlap(ref)) == pytest.approx(1.0, abs=1e-12)
