import math

import numpy as np
import pytest

from modefisher import (Direction, NonIdentifiableError, classical_fisher,
                        diagonal_state, direction_generator, make_fock_state,
                        measurement_probabilities, monte_carlo_estimate,
                        pure_state, qfi_spectral, rotate)


class TestRotate:
    def test_jz_phases_on_fock_states(self):
        theta = 0.7
        for big_n, k in ((3, 1), (5, 5)):
            rotated = rotate(make_fock_state(k, big_n), Direction(0, 0, 1), theta)
            expected_phase = np.exp(1j * theta * (2 * k - big_n) / 2)
            assert rotated.amplitudes[k] == pytest.approx(expected_phase, abs=1e-10)
            rho = rotated.density_matrix()
            target = np.zeros((big_n + 1, big_n + 1))
            target[k, k] = 1.0
            assert np.abs(rho - target).max() <= 1e-10

    def test_theta_zero_identity(self):
        state = pure_state(np.array([0.6, 0.8j, 0.0]))
        rotated = rotate(state, Direction(0, 1, 0), 0.0)
        assert np.abs(rotated.amplitudes - state.amplitudes).max() <= 1e-12

    def test_pi_about_x_swaps_poles(self):
        big_n = 4
        rotated = rotate(make_fock_state(big_n, big_n), Direction(1, 0, 0), math.pi)
        probs = np.abs(rotated.amplitudes) ** 2
        assert probs[0] == pytest.approx(1.0, abs=1e-10)

    def test_composition(self):
        state = make_fock_state(1, 3)
        n = Direction(0.6, 0.0, 0.8)
        one = rotate(rotate(state, n, 0.4), n, 0.9)
        two = rotate(state, n, 1.3)
        assert np.abs(one.amplitudes - two.amplitudes).max() <= 1e-10

    def test_unitarity_preserved(self):
        state = make_fock_state(2, 5)
        rotated = rotate(state, Direction(0, 1, 0), 1.7)
        assert np.sum(np.abs(rotated.amplitudes) ** 2) == pytest.approx(1.0, abs=1e-10)


class TestMeasurementProbabilities:
    def test_theta_zero_delta(self):
        p = measurement_probabilities(make_fock_state(2, 4), Direction(1, 0, 0), 0.0)
        assert np.allclose(p, [0, 0, 1, 0, 0], atol=1e-12)

    def test_z_rotation_leaves_diagonal_states_alone(self):
        rng = np.random.default_rng(4)
        state = diagonal_state(rng.dirichlet(np.ones(5)))
        p0 = measurement_probabilities(state, Direction(0, 0, 1), 0.0)
        p1 = measurement_probabilities(state, Direction(0, 0, 1), 1.1)
        assert np.abs(p0 - p1).max() <= 1e-12

    def test_normalized(self):
        p = measurement_probabilities(make_fock_state(1, 2), Direction(1, 0, 0), math.pi / 2)
        assert p.sum() == pytest.approx(1.0, abs=1e-10)
        assert p.min() >= 0.0


class TestClassicalFisher:
    def test_z_direction_vanishes(self):
        state = diagonal_state([0.3, 0.3, 0.4])
        assert classical_fisher(state, Direction(0, 0, 1), 0.5) == pytest.approx(0.0, abs=1e-8)

    def test_single_particle_fringe_saturates(self):
        state = make_fock_state(0, 1)
        f_cl = classical_fisher(state, Direction(1, 0, 0), 0.4)
        assert f_cl == pytest.approx(1.0, abs=1e-6)

    def test_data_processing_inequality(self):
        rng = np.random.default_rng(12)
        for _ in range(10):
            big_n = int(rng.integers(1, 7))
            k = int(rng.integers(0, big_n + 1))
            state = make_fock_state(k, big_n)
            v3 = rng.normal(size=3)
            n = Direction(*(v3 / np.linalg.norm(v3)))
            theta = rng.uniform(0.1, 1.2)
            f_cl = classical_fisher(state, n, theta)
            f_q = qfi_spectral(state, direction_generator(big_n, n))
            assert f_cl <= f_q + 1e-6

    def test_rejects_bad_step(self):
        with pytest.raises(ValueError):
            classical_fisher(make_fock_state(0, 1), Direction(1, 0, 0), 0.3, dtheta=0.0)


class TestMonteCarloEstimate:
    def test_deterministic_given_seed(self):
        state = make_fock_state(1, 2)
        n = Direction(1, 0, 0)
        a = monte_carlo_estimate(state, n, 0.4, 6, 500, 123)
        b = monte_carlo_estimate(state, n, 0.4, 6, 500, 123)
        assert (a.estimates == b.estimates).all()
        c = monte_carlo_estimate(state, n, 0.4, 6, 500, 124)
        assert not (a.estimates == c.estimates).all()

    def test_non_identifiable_configuration(self):
        state = diagonal_state([0.5, 0.5])
        with pytest.raises(NonIdentifiableError):
            monte_carlo_estimate(state, Direction(0, 0, 1), 0.3, 3, 50, 1)

    def test_bounds_ordering(self):
        run = monte_carlo_estimate(make_fock_state(1, 2), Direction(1, 0, 0),
                                   0.35, 20, 2000, 7)
        assert run.qcrb <= run.ccrb + 1e-12
        assert run.empirical_std >= 0.0
        assert len(run.estimates) == 20

    def test_estimates_concentrate_near_truth(self):
        run = monte_carlo_estimate(make_fock_state(1, 2), Direction(1, 0, 0),
                                   0.35, 30, 4000, 3)
        assert abs(float(np.mean(run.estimates)) - 0.35) < 0.02

    def test_rejects_bad_counts(self):
        with pytest.raises(ValueError):
            monte_carlo_estimate(make_fock_state(1, 2), Direction(1, 0, 0), 0.3, 0, 10, 1)
