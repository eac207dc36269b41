import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from timebell import linalg as la
from timebell.quantum import (
    CORRELATION_SIGN,
    PAULI_X,
    PAULI_Y,
    TSIRELSON,
    GeneralizedPauli,
    Hamiltonian,
    TimeSettings,
    chsh_analytic,
    chsh_operator,
    chsh_value,
    correlation_analytic,
    correlation_g,
    correlation_simulated,
    evolution,
    evolved_state,
    optimal_settings,
    rotate_sigma,
    sigma_at_time,
    sigma_phi,
    singlet,
    u_delta_alpha,
)

times = st.floats(-50, 50)
gaps = st.floats(0.05, 20).flatmap(lambda x: st.sampled_from([x, -x]))

H = Hamiltonian(0.4, 1.9)


def power_iteration_norm(m, iters=500, seed=0):
    """Spectral norm via power iteration on M^dagger M."""
    g = np.random.default_rng(seed)
    a = m.conj().T @ m
    v = g.normal(size=a.shape[0]) + 1j * g.normal(size=a.shape[0])
    lam = 0.0
    for _ in range(iters):
        w = a @ v
        lam = np.linalg.norm(w)
        if lam == 0:
            return 0.0
        v = w / lam
    return math.sqrt(lam)


def random_settings(g):
    while True:
        t, tp, u, up = g.uniform(-20, 20, size=4)
        if t != tp and u != up:
            return TimeSettings(t, tp, u, up)


class TestTypes:
    def test_degenerate_hamiltonian_rejected(self):
        with pytest.raises(ValueError):
            Hamiltonian(1.0, 1.0)

    def test_negative_gap_allowed(self):
        assert Hamiltonian(2.0, 0.5).delta_e == -1.5

    def test_from_gap(self):
        assert Hamiltonian.from_gap(2.5).delta_e == 2.5

    def test_non_finite_energy(self):
        with pytest.raises(ValueError):
            Hamiltonian(0.0, math.inf)

    def test_degenerate_settings_rejected(self):
        with pytest.raises(ValueError):
            TimeSettings(1.0, 1.0, 0.0, 2.0)
        with pytest.raises(ValueError):
            TimeSettings(0.0, 1.0, 2.0, 2.0)

    def test_hamiltonian_matrix(self):
        assert_allclose(H.matrix(), np.diag([0.4, 1.9]))


class TestSigmaPhi:
    def test_zero_is_x(self):
        assert_allclose(sigma_phi(0.0), PAULI_X)

    def test_half_pi_is_y(self):
        assert_allclose(sigma_phi(math.pi / 2), PAULI_Y, atol=1e-16)

    def test_spectrum(self):
        # lambda^2 - 1 = 0
        ev = np.linalg.eigvalsh(sigma_phi(1.234))
        assert_allclose(ev, [-1, 1], atol=1e-14)

    @given(st.floats(-100, 100))
    def test_structure(self, phi):
        s = sigma_phi(phi)
        assert la.is_hermitian(s) and la.is_unitary(s)
        assert abs(np.trace(s)) < 1e-12

    @given(st.floats(-10, 10), st.sampled_from([1, -1]))
    def test_eigenvectors(self, phi, sign):
        p = GeneralizedPauli(phi)
        v = p.eigenvector(sign)
        assert_allclose(sigma_phi(phi) @ v, sign * v, atol=1e-14)
        assert_allclose(p.projector(1) + p.projector(-1), np.eye(2), atol=1e-14)

    def test_non_finite(self):
        with pytest.raises(ValueError):
            sigma_phi(math.nan)


class TestEvolution:
    def test_zero_time(self):
        assert_allclose(evolution(H, 0.0), np.eye(2))

    @given(times)
    def test_inverse(self, t):
        assert_allclose(evolution(H, t) @ evolution(H, -t), np.eye(2), atol=1e-12)

    @given(times, times)
    def test_group_law(self, a, b):
        assert_allclose(evolution(H, a) @ evolution(H, b), evolution(H, a + b), atol=1e-12)

    @given(times)
    def test_unitary(self, t):
        assert la.is_unitary(evolution(H, t))


class TestSigmaAtTime:
    def test_zero(self):
        assert_allclose(sigma_at_time(H, 0.0), sigma_phi(0.0))

    def test_closed_form_by_hand(self, rng):
        # diag(1, e^{i dE t}) X diag(1, e^{-i dE t}) = (0, e^{-i dE t}; e^{i dE t}, 0)
        for t in rng.uniform(-10, 10, size=100):
            ph = np.exp(1j * H.delta_e * t)
            hand = np.array([[0, ph.conjugate()], [ph, 0]])
            assert np.max(np.abs(sigma_at_time(H, t) - hand)) < 1e-12
            assert np.max(np.abs(sigma_at_time(H, t) - sigma_phi(H.delta_e * t))) < 1e-12

    @given(gaps, times, times)
    def test_transport_between_times(self, de, t, tp):
        h = Hamiltonian.from_gap(de)
        moved = evolution(h, tp - t) @ sigma_at_time(h, t) @ evolution(h, t - tp)
        assert np.max(np.abs(sigma_at_time(h, tp) - moved)) < 1e-12


class TestUDeltaAlpha:
    def test_zero(self):
        assert_allclose(u_delta_alpha(0.0), np.eye(2))

    @given(st.floats(-20, 20))
    def test_unitary(self, d):
        assert la.is_unitary(u_delta_alpha(d))

    def test_orientation(self):
        # U(d) sigma_a U(-d) = sigma_{a-d} in the equatorial convention.
        conj = u_delta_alpha(-0.5) @ sigma_phi(0.3) @ u_delta_alpha(0.5)
        assert_allclose(conj, sigma_phi(0.8), atol=1e-15)
        assert_allclose(u_delta_alpha(0.5) @ sigma_phi(0.8) @ u_delta_alpha(-0.5), sigma_phi(0.3), atol=1e-15)
        assert_allclose(rotate_sigma(sigma_phi(0.3), 0.5), sigma_phi(0.8), atol=1e-15)


class TestSinglet:
    def test_norm(self):
        assert la.is_normalized(singlet())

    def test_energy_basis_amplitudes(self):
        s = singlet()
        assert s[0] == 0 and s[3] == 0
        assert abs(abs(s[1]) - 1 / math.sqrt(2)) < 1e-15
        assert s[1] == -s[2]

    def test_anticorrelated_at_equal_settings(self):
        for phi in np.linspace(-math.pi, math.pi, 37):
            op = la.tensor(sigma_phi(phi), sigma_phi(phi))
            assert la.expectation(singlet(), op) == pytest.approx(-1.0, abs=1e-14)


class TestEvolvedState:
    def test_identity_at_zero(self):
        assert_allclose(evolved_state(H, 0, 0), singlet())

    @given(times, times)
    def test_norm_preserved(self, m, n):
        assert la.is_normalized(evolved_state(H, m, n))

    @given(times)
    def test_equal_times_is_singlet_up_to_phase(self, m):
        assert la.equal_up_to_phase(evolved_state(H, m, m), singlet())


class TestCorrelation:
    def test_sign_constant_is_minus_one(self):
        assert CORRELATION_SIGN == -1

    def test_analytic_values(self):
        assert correlation_analytic(H, 1.3, 1.3) == 1.0
        h = Hamiltonian.from_gap(1.0)
        assert correlation_analytic(h, 0.0, math.pi / 4) == pytest.approx(0.7071067812, abs=1e-10)
        assert correlation_analytic(h, 0.0, math.pi / 2) == pytest.approx(0.0, abs=1e-15)

    def test_equal_times(self):
        assert correlation_simulated(H, 2.2, 2.2) == pytest.approx(CORRELATION_SIGN, abs=1e-14)

    def test_grid_magnitude_and_sign(self):
        signs = set()
        for m in np.linspace(-3, 3, 10):
            for n in np.linspace(-3, 3, 10):
                sim, ref = correlation_simulated(H, m, n), correlation_analytic(H, m, n)
                assert abs(abs(sim) - abs(ref)) < 1e-12
                if abs(ref) > 1e-6:
                    signs.add(np.sign(sim) * np.sign(ref))
                assert abs(sim - CORRELATION_SIGN * ref) < 1e-12
        assert signs == {CORRELATION_SIGN}

    @given(gaps, times, times, st.floats(-20, 20))
    def test_depends_on_difference_only(self, de, m, n, c):
        h = Hamiltonian.from_gap(de)
        assert abs(correlation_simulated(h, m, n) - correlation_simulated(h, m + c, n + c)) < 1e-12


class TestChsh:
    def test_hermitian(self, rng):
        for _ in range(50):
            assert la.is_hermitian(chsh_operator(H, random_settings(rng)))

    def test_operator_norm_tsirelson(self, rng):
        for i in range(1000):
            b = np.asarray(chsh_operator(H, random_settings(rng)))
            assert power_iteration_norm(b, iters=200, seed=i) <= TSIRELSON + 1e-9

    def test_operator_norm_attained_at_optimum(self):
        b = np.asarray(chsh_operator(H, optimal_settings(H, 0.3)))
        assert power_iteration_norm(b) == pytest.approx(TSIRELSON, abs=1e-9)

    def test_optimal_value(self):
        s = optimal_settings(H, 0.0)
        v = chsh_value(H, s)
        assert abs(abs(v) - 2.8284271247) < 1e-10
        assert abs(abs(v) - TSIRELSON) < 1e-12
        assert v == pytest.approx(CORRELATION_SIGN * TSIRELSON, abs=1e-12)

    def test_routes_agree(self, rng):
        for _ in range(100):
            s = random_settings(rng)
            assert abs(chsh_value(H, s) - chsh_value(H, s, route="correlations")) < 1e-12

    def test_zero_phase_pattern(self):
        # Distinct times whose phase gaps are all multiples of 2 pi: s * (1 - 1 + 1 + 1).
        h = Hamiltonian.from_gap(1.0)
        per = 2 * math.pi
        s = TimeSettings(0.0, per, per, 2 * per)
        assert chsh_value(h, s) == pytest.approx(2 * CORRELATION_SIGN, abs=1e-12)

    def test_unknown_route(self):
        with pytest.raises(ValueError):
            chsh_value(H, optimal_settings(H), route="nope")

    def test_analytic_matches_signed(self, rng):
        for _ in range(50):
            s = random_settings(rng)
            assert chsh_value(H, s) == pytest.approx(CORRELATION_SIGN * chsh_analytic(H, s), abs=1e-12)


class TestOptimalSettings:
    def test_unit_gap(self):
        s = optimal_settings(Hamiltonian.from_gap(1.0), 0.0)
        assert (s.t, s.t_prime, s.u, s.u_prime) == (0.0, math.pi / 2, math.pi / 4, 3 * math.pi / 4)

    def test_random_maximum(self, rng):
        for _ in range(20):
            h = Hamiltonian.from_gap(rng.uniform(0.1, 10))
            s = optimal_settings(h, rng.uniform(-10, 10))
            assert abs(abs(chsh_value(h, s)) - TSIRELSON) < 1e-12

    def test_scaling(self):
        a = optimal_settings(Hamiltonian.from_gap(1.3), 0.7)
        b = optimal_settings(Hamiltonian.from_gap(2.6), 0.7)
        for x, y in zip((a.t, a.t_prime, a.u, a.u_prime), (b.t, b.t_prime, b.u, b.u_prime)):
            assert y == pytest.approx(x / 2, rel=1e-15)

    def test_negative_gap(self):
        h = Hamiltonian(1.0, -1.0)
        assert abs(abs(chsh_value(h, optimal_settings(h, 0.2))) - TSIRELSON) < 1e-12


class TestCorrelationG:
    def test_equal_g(self):
        assert correlation_g(H, 3.1, 0.7, 0.7) == pytest.approx(CORRELATION_SIGN, abs=1e-14)

    @given(times, st.floats(-5, 5))
    @settings(max_examples=50)
    def test_reduces_to_two_times(self, t, g0):
        assert abs(correlation_g(H, t, 1.0, g0) - correlation_simulated(H, t, g0 * t)) < 1e-12

    def test_half_turn(self):
        h = Hamiltonian.from_gap(1.0)
        assert correlation_g(h, math.pi, 0.0, 1.0) == pytest.approx(-CORRELATION_SIGN, abs=1e-14)

    @given(gaps, times, st.floats(-5, 5), st.floats(-5, 5))
    def test_closed_form(self, de, t, g1, g2):
        h = Hamiltonian.from_gap(de)
        expected = CORRELATION_SIGN * math.cos(de * t * (g2 - g1))
        assert abs(correlation_g(h, t, g1, g2) - expected) < 1e-12
