import math

import numpy as np
import pytest

from steklov import (
    AtCharacteristicRoot,
    build_potential,
    dirichlet_alphas,
    fundamental_at,
    hadamard_truncated,
    involute,
    make_profile,
    weyl_functions,
)

from conftest import profile_from_function, smooth_random_profile


def flat_potential(frequency=0.0, n=2):
    """q = -frequency exactly (f = 1)."""
    return build_potential(make_profile([1.0], n, frequency))


def log_sinhc(root):
    """log(sinh(r)/r) without overflow."""
    return root + math.log1p(-math.exp(-2.0 * root)) - math.log(2.0 * root)


def log_cosh(root):
    return root + math.log1p(math.exp(-2.0 * root)) - math.log(2.0)


class TestFundamentalValues:
    def test_flat_at_one(self):
        values = fundamental_at(flat_potential(), 1.0)
        assert values.delta.value == pytest.approx(math.sinh(1.0), rel=1e-12)
        assert values.dd.value == pytest.approx(math.cosh(1.0), rel=1e-12)
        assert values.ee.value == pytest.approx(math.cosh(1.0), rel=1e-12)

    def test_flat_at_zero(self):
        values = fundamental_at(flat_potential(), 0.0)
        assert values.delta.value == pytest.approx(1.0, rel=1e-12)
        assert values.dd.value == pytest.approx(1.0, rel=1e-12)
        assert values.ee.value == pytest.approx(1.0, rel=1e-12)

    def test_flat_at_first_root(self):
        values = fundamental_at(flat_potential(), -math.pi**2)
        assert abs(values.delta.value) <= 1e-9

    def test_mantissa_normalized(self):
        for z in (1.0, 1e4, -40.0):
            values = fundamental_at(flat_potential(), z)
            for scaled in (values.delta, values.dd, values.ee):
                assert scaled.mantissa == 0.0 or 0.1 <= abs(scaled.mantissa) <= 10.0
                assert math.isfinite(scaled.log_scale)

    def test_wronskian_at_moderate_z(self):
        profile = smooth_random_profile(3, 3, 0.4)
        potential = build_potential(profile)
        for z in (-30.0, 0.0, 2.0, 25.0, 80.0):
            values = fundamental_at(potential, z)
            assert values.wronskian == pytest.approx(1.0, rel=1e-9)

    def test_z_cap(self):
        with pytest.raises(ValueError):
            fundamental_at(flat_potential(), 2e9)

    def test_complex_z_matches_closed_form(self):
        z = 2.0 + 3.0j
        root = z**0.5
        values = fundamental_at(flat_potential(), z)
        assert values.delta.value == pytest.approx(np.sinh(root) / root, rel=1e-10)
        assert values.dd.value == pytest.approx(np.cosh(root), rel=1e-10)


class TestGrowthEnvelope:
    def test_flat_follows_sinh_envelope(self):
        potential = flat_potential()
        for z in (1e2, 1e3, 1e4, 1e5, 1e6):
            root = math.sqrt(z)
            values = fundamental_at(potential, z)
            assert abs(values.delta.log_abs() - log_sinhc(root)) < 1e-11
            assert abs(values.dd.log_abs() - log_cosh(root)) < 1e-11
            assert abs(values.ee.log_abs() - log_cosh(root)) < 1e-11

    def test_generic_deviation_decays_like_inverse_root(self):
        profile = smooth_random_profile(11, 3, 1.0)
        potential = build_potential(profile)
        bound = potential.q_bound + 1.0
        for z in (1e2, 1e3, 1e4, 1e5, 1e6):
            root = math.sqrt(z)
            values = fundamental_at(potential, z)
            # log deviation approximates the relative deviation
            assert abs(values.delta.log_abs() - log_sinhc(root)) < bound / root
            assert abs(values.dd.log_abs() - log_cosh(root)) < bound / root
            assert abs(values.ee.log_abs() - log_cosh(root)) < bound / root


class TestWeylFunctions:
    def test_flat_at_one(self):
        m_fun, n_fun = weyl_functions(flat_potential(), 1.0)
        assert m_fun == pytest.approx(-1.0 / math.tanh(1.0), rel=1e-11)
        assert n_fun == pytest.approx(-1.0 / math.tanh(1.0), rel=1e-11)

    def test_flat_at_zero(self):
        m_fun, n_fun = weyl_functions(flat_potential(), 0.0)
        assert m_fun == pytest.approx(-1.0, rel=1e-12)
        assert n_fun == pytest.approx(-1.0, rel=1e-12)

    def test_constant_shift(self):
        # q = 2 via frequency -2: M(z) = -sqrt(z+2) coth(sqrt(z+2)) at z = 7
        m_fun, _ = weyl_functions(flat_potential(frequency=-2.0), 7.0)
        assert m_fun == pytest.approx(-3.0 / math.tanh(3.0), rel=1e-11)

    def test_raises_at_root(self):
        with pytest.raises(AtCharacteristicRoot):
            weyl_functions(flat_potential(), -math.pi**2)

    def test_reflection_swaps_m_and_n(self):
        profile = smooth_random_profile(5, 3, 0.6)
        potential = build_potential(profile)
        reflected = build_potential(involute(profile))
        for z in np.linspace(-35.0, 140.0, 20):
            m_fun, n_fun = weyl_functions(potential, float(z))
            m_ref, n_ref = weyl_functions(reflected, float(z))
            scale = max(1.0, abs(m_fun), abs(n_fun))
            assert abs(m_ref - n_fun) <= 1e-8 * scale
            assert abs(n_ref - m_fun) <= 1e-8 * scale
            delta = fundamental_at(potential, float(z)).delta
            delta_ref = fundamental_at(reflected, float(z)).delta
            assert delta.mantissa * math.exp(delta.log_scale - delta_ref.log_scale) == (
                pytest.approx(delta_ref.mantissa, rel=1e-8)
            )


class TestDirichletRoots:
    def test_flat_roots(self):
        alphas = dirichlet_alphas(flat_potential(), 20)
        expected = np.array([-((k + 1) ** 2) * math.pi**2 for k in range(20)])
        assert np.max(np.abs(alphas - expected)) < 1e-7

    def test_constant_shift(self):
        alphas = dirichlet_alphas(flat_potential(frequency=-5.0), 5)
        expected = np.array([-((k + 1) ** 2) * math.pi**2 - 5.0 for k in range(5)])
        assert np.max(np.abs(alphas - expected)) < 1e-7

    def test_contract_on_generic_potential(self):
        profile = smooth_random_profile(2, 3, 1.3)
        potential = build_potential(profile)
        count = 8
        alphas = dirichlet_alphas(potential, count)
        assert len(alphas) == count
        assert np.all(np.diff(alphas) < 0.0)
        # interlacing sanity against the unperturbed eigenvalues
        q_bound = float(np.max(np.abs(potential.q_values)))
        for j, alpha in enumerate(alphas):
            assert abs(alpha + (j + 1) ** 2 * math.pi**2) <= q_bound + 1.0
        # each alpha is an actual root: the characteristic function is tiny there
        for alpha in alphas:
            values = fundamental_at(potential, float(alpha))
            assert abs(values.delta.value) <= 1e-6


class TestHadamard:
    def test_normalization_at_zero(self):
        potential = flat_potential()
        c0 = fundamental_at(potential, 0.0).delta.value
        assert c0 == pytest.approx(1.0, rel=1e-12)
        alphas = -np.array([(k + 1.0) ** 2 * math.pi**2 for k in range(100)])
        assert hadamard_truncated(alphas, c0, 0.0, 50) == pytest.approx(1.0)

    def test_converges_to_sinh(self):
        ks = np.arange(10**4)
        alphas = -((ks + 1.0) ** 2) * math.pi**2
        # the first block of roots comes from the solver, the tail is exact
        solver_alphas = dirichlet_alphas(flat_potential(), 10)
        assert np.max(np.abs(solver_alphas - alphas[:10])) < 1e-7
        alphas[:10] = solver_alphas
        reference = math.sinh(5.0) / 5.0
        errors = [
            abs(hadamard_truncated(alphas, 1.0, 25.0, terms) - reference) / reference
            for terms in (100, 1000, 10000)
        ]
        assert errors[0] > errors[1] > errors[2]
        assert errors[2] <= 1e-2

    def test_vanishes_at_root(self):
        alphas = -np.array([(k + 1.0) ** 2 * math.pi**2 for k in range(10)])
        assert hadamard_truncated(alphas, 1.0, float(alphas[0]), 5) == 0.0

    def test_terms_bounded_by_roots(self):
        with pytest.raises(ValueError):
            hadamard_truncated(np.array([-1.0]), 1.0, 0.5, 2)
