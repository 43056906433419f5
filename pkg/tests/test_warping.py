import math

import numpy as np
import pytest

from steklov import (
    BadDimension,
    FrequencyOnDirichletSpectrum,
    NonPositiveProfile,
    OutOfDomain,
    admissibility_check,
    build_potential,
    cb_membership,
    eval_profile,
    involute,
    make_profile,
)
from steklov.chebyshev import fit_values, lobatto_nodes

from conftest import profile_from_function


class TestMakeProfile:
    def test_constant(self):
        profile = make_profile([1.0], 3, 0.0)
        assert eval_profile(profile, 0.5) == pytest.approx(1.0)

    def test_negative_constant_rejected(self):
        with pytest.raises(NonPositiveProfile):
            make_profile([-1.0], 3, 0.0)

    def test_quadratic_endpoints(self):
        profile = profile_from_function(lambda x: (1.0 + 0.2 * x) ** 2, 3, 0.0)
        assert eval_profile(profile, 0.0) == pytest.approx(1.0, abs=1e-13)
        assert eval_profile(profile, 1.0) == pytest.approx(1.44, abs=1e-13)

    def test_bad_dimension(self):
        with pytest.raises(BadDimension):
            make_profile([1.0], 1, 0.0)

    def test_empty_coefficients(self):
        with pytest.raises(ValueError):
            make_profile([], 3, 0.0)

    def test_sign_dip_between_nodes_caught(self):
        # positive at a coarse grid's ends but dipping negative inside
        nodes = lobatto_nodes(16)
        values = 0.05 + np.cos(2.0 * np.pi * nodes)
        with pytest.raises(NonPositiveProfile):
            make_profile(fit_values(nodes, values), 2, 0.0)


class TestEvalProfile:
    def test_constant_value(self, flat3):
        assert eval_profile(flat3, 0.5, 0) == pytest.approx(1.0)

    def test_constant_derivative(self, flat3):
        assert eval_profile(flat3, 0.3, 1) == pytest.approx(0.0, abs=1e-14)

    def test_quadratic_derivative(self, quad3):
        # f'(x) = 0.4 (1 + 0.2 x), so f'(1) = 0.48
        assert eval_profile(quad3, 1.0, 1) == pytest.approx(0.48, abs=1e-12)

    def test_out_of_domain(self, flat3):
        with pytest.raises(OutOfDomain):
            eval_profile(flat3, 1.5)

    def test_order_cap(self, flat3):
        with pytest.raises(ValueError):
            eval_profile(flat3, 0.5, 5)


class TestBuildPotential:
    def test_flat_zero_frequency(self):
        potential = build_potential(make_profile([1.0], 3, 0.0))
        assert np.max(np.abs(potential.q_values)) < 1e-12

    def test_flat_frequency_two(self):
        potential = build_potential(make_profile([1.0], 3, 2.0))
        assert np.max(np.abs(potential.q_values + 2.0)) < 1e-12

    def test_exponential_profile(self):
        # f = e^x, n = 4: w = e^{x/2} so q = w''/w = 1/4; ln(h)' = 2 with h = f^2
        profile = profile_from_function(np.exp, 4, 0.0)
        potential = build_potential(profile)
        assert np.max(np.abs(potential.q_values - 0.25)) < 1e-10
        assert potential.lnh_prime0 == pytest.approx(2.0, abs=1e-9)
        assert potential.lnh_prime1 == pytest.approx(2.0, abs=1e-9)

    def test_dimension_two_is_exact(self):
        profile = profile_from_function(lambda x: 1.0 + 0.5 * x, 2, 3.0)
        potential = build_potential(profile)
        f_vals = np.array([eval_profile(profile, x) for x in potential.nodes])
        assert np.array_equal(potential.q_values, -3.0 * f_vals)
        assert potential.lnh_prime0 == 0.0
        assert potential.lnh_prime1 == 0.0

    def test_node_count_floor(self, flat3):
        with pytest.raises(ValueError):
            build_potential(flat3, node_count=8)

    def test_reflection_covariance(self):
        profile = profile_from_function(
            lambda x: np.exp(0.3 * np.sin(2.0 * x) + 0.1 * x), 3, 0.7
        )
        q = build_potential(profile, 64).q_values
        q_reflected = build_potential(involute(profile), 64).q_values
        assert np.max(np.abs(q_reflected - q[::-1])) < 1e-10

    def test_scaling_matches_frequency_scaling(self):
        # n = 2: q depends only on frequency * f, so (c f, lam) == (f, c lam)
        c = 1.7
        base = profile_from_function(lambda x: 1.0 + 0.3 * np.sin(3.0 * x), 2, 0.9)
        scaled = make_profile(c * base.coefficients, 2, 0.9)
        rescaled = make_profile(base.coefficients, 2, c * 0.9)
        qa = build_potential(scaled).q_values
        qb = build_potential(rescaled).q_values
        assert np.max(np.abs(qa - qb)) < 1e-12


class TestInvolute:
    def test_constant_fixed_point(self, flat3):
        assert np.array_equal(involute(flat3).coefficients, flat3.coefficients)

    def test_endpoint_swap(self, quad3):
        reflected = involute(quad3)
        assert eval_profile(reflected, 0.0) == pytest.approx(1.44, abs=1e-12)
        assert eval_profile(reflected, 1.0) == pytest.approx(1.0, abs=1e-12)

    def test_involution_is_exact(self, quad3):
        twice = involute(involute(quad3))
        assert np.array_equal(twice.coefficients, quad3.coefficients)


class TestCbMembership:
    def test_constant(self):
        assert cb_membership(make_profile([1.0], 5, 0.0))

    def test_exponential_fails(self):
        # f'/f = 1 > 1/(n-2) = 1/2
        assert not cb_membership(profile_from_function(np.exp, 4, 0.0))

    def test_quadratic_passes(self, quad3):
        # ratios 0.4 and 1/3, both <= 1
        assert cb_membership(quad3)

    def test_vacuous_for_dimension_two(self):
        assert cb_membership(profile_from_function(np.exp, 2, 0.0))


class TestAdmissibility:
    def test_flat_zero_frequency_ok(self, flat3):
        potential = build_potential(flat3)
        admissibility_check(flat3, potential, 30)

    def test_dirichlet_hit(self):
        # n = 2, frequency pi^2: q = -pi^2 and Delta(0) = sin(pi)/pi = 0
        profile = make_profile([1.0], 2, math.pi**2)
        potential = build_potential(profile)
        with pytest.raises(FrequencyOnDirichletSpectrum) as excinfo:
            admissibility_check(profile, potential, 5)
        assert excinfo.value.m_index == 0

    def test_negative_frequency_ok(self):
        profile = make_profile([1.0], 2, -1.0)
        admissibility_check(profile, build_potential(profile), 10)
