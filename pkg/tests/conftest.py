import numpy as np
import pytest

import curvcomp as cc


@pytest.fixture
def sphere():
    return cc.sphere_space()


@pytest.fixture
def flat():
    return cc.flat_space()


@pytest.fixture
def hyperbolic():
    return cc.hyperbolic_space()


@pytest.fixture
def gaussian():
    # mu = 1/k, so the deficit at level H = a/(n+k-1) is exactly a^2 r^2 / k
    return cc.gaussian_flat_space(a=1.0, n=3, k=2.0, mu=0.5)


@pytest.fixture
def perturbed():
    return cc.perturbed_sphere_space(0.05, 2.0)


def fd_eigenvalues(space, r, h=1e-5):
    """Independent curvature oracle: second differences of the raw warp and
    weight values, never touching the supplied derivative callables."""
    w = space.warp.value
    f = space.weight.value
    phi = float(w(r))
    dphi = float((w(r + h) - w(r - h)) / (2 * h))
    d2phi = float((w(r + h) - 2 * w(r) + w(r - h)) / h ** 2)
    df = float((f(r + h) - f(r - h)) / (2 * h))
    d2f = float((f(r + h) - 2 * f(r) + f(r - h)) / h ** 2)
    n = space.n
    radial = -(n - 1) * d2phi / phi + d2f - space.mu * df ** 2
    tangential = (-d2phi / phi + (n - 2) * (1 - dphi ** 2) / phi ** 2
                  + df * dphi / phi)
    return radial, tangential


def sample_radii(space, count, seed, lo=0.2, hi_cap=3.0):
    rng = np.random.default_rng(seed)
    hi = min(0.9 * space.L, hi_cap)
    return rng.uniform(lo, hi, size=count)
