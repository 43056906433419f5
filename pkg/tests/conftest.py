import numpy as np
import pytest

from steklov import make_profile
from steklov.chebyshev import fit_values, lobatto_nodes


def profile_from_function(func, n, frequency, node_count=32):
    """Fit a positive function on [0, 1] and wrap it as a validated profile."""
    nodes = lobatto_nodes(node_count)
    return make_profile(fit_values(nodes, func(nodes)), n, frequency)


def smooth_random_profile(seed, n, frequency, q_cap=10.0):
    """Seeded smooth positive profile whose reduced potential stays below q_cap."""
    from steklov import build_potential

    rng = np.random.default_rng(seed)
    amplitudes = rng.normal(0.0, 0.2, 4)
    phases = rng.uniform(0.0, 2.0 * np.pi, 4)

    def factory(scale):
        def f(x):
            g = sum(
                scale * a * np.sin((k + 1) * 1.7 * x + p)
                for k, (a, p) in enumerate(zip(amplitudes, phases))
            )
            return np.exp(g)

        return f

    scale = 1.0
    for _ in range(20):
        profile = profile_from_function(factory(scale), n, frequency)
        if build_potential(profile).q_bound <= q_cap:
            return profile
        scale *= 0.8
    raise RuntimeError("could not build a profile under the potential cap")


@pytest.fixture
def flat2():
    return make_profile([1.0], 2, 0.0)


@pytest.fixture
def flat3():
    return make_profile([1.0], 3, 0.0)


@pytest.fixture
def quad3():
    """f = (1 + 0.2 x)^2 with n = 3: endpoints f(0) = 1, f(1) = 1.44."""
    return profile_from_function(lambda x: (1.0 + 0.2 * x) ** 2, 3, 0.0, node_count=16)


@pytest.fixture
def quad2():
    return profile_from_function(lambda x: (1.0 + 0.2 * x) ** 2, 2, 0.0, node_count=16)
