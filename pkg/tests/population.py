"""Random filter populations shared by the property and acceptance tests."""

import numpy as np

from topofilter import FilterCoefficients, normalize_coefficients


def random_poles(rng, order, radius=0.95):
    """Conjugate-closed poles drawn uniformly from the disk |z| <= radius."""
    poles = []
    for _ in range(order // 2):
        r = radius * np.sqrt(rng.uniform())
        theta = rng.uniform(0.0, 2.0 * np.pi)
        z = r * np.exp(1j * theta)
        poles += [z, np.conj(z)]
    if order % 2:
        poles.append(rng.uniform(-radius, radius))
    return np.array(poles, dtype=complex)


def random_stable_filter(rng, order=None, max_order=8):
    if order is None:
        order = int(rng.integers(0, max_order + 1))
    a = np.real(np.poly(random_poles(rng, order)))[1:] if order else np.zeros(0)
    b = rng.uniform(-1.0, 1.0, order + 1)
    return FilterCoefficients(tuple(b), tuple(a))


def random_bounded_away_filter(rng, order, low=0.1, high=1.0):
    """Every coefficient has magnitude in [low, high]; stability is not required."""
    def draw(k):
        return rng.uniform(low, high, k) * rng.choice([-1.0, 1.0], k)

    return normalize_coefficients(draw(order + 1), draw(order))


def random_labels(rng, n):
    """Strictly increasing timestamps with irregular spacing."""
    return np.cumsum(rng.exponential(1.0, n) + 1e-3) + rng.normal()
