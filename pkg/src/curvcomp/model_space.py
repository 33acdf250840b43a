"""Closed-form geometry of the constant-curvature comparison space.

The comparison space has constant sectional curvature H and is used at the
effective dimension N = n + k (k need not be an integer).  Everything here
is elementary: the generalized sine, the mean curvature of geodesic spheres
(a Riccati solution), sphere areas and ball volumes, and the explicit
coefficients entering the comparison estimates (ball, area, annulus,
doubling threshold, diameter threshold).

Positive curvature carries two domains: geodesic spheres exist up to the
period pi/sqrt(H), while the comparison coefficients are defined on the
half period pi/(2 sqrt(H)).  Operations reject radii within PERIOD_GUARD of
the period to avoid division blowup.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ParameterError, QuadratureError
from .quadrature import (DEFAULT_SPEC, integrate_graded,
                         power_weighted_integral)

PERIOD_GUARD = 1e-12


def unit_sphere_measure(n: int) -> float:
    """Total measure of the unit (n-1)-sphere, 2 pi^{n/2} / Gamma(n/2)."""
    return 2.0 * math.pi ** (n / 2.0) / math.gamma(n / 2.0)


def _sn_raw(H, t):
    """Generalized sine, no domain checks; t may be an array."""
    t = np.asarray(t, dtype=float)
    if H > 0.0:
        rt = math.sqrt(H)
        return np.sin(rt * t) / rt
    if H < 0.0:
        rt = math.sqrt(-H)
        return np.sinh(rt * t) / rt
    return t.copy()


def _cs_raw(H, t):
    """Derivative of the generalized sine."""
    t = np.asarray(t, dtype=float)
    if H > 0.0:
        return np.cos(math.sqrt(H) * t)
    if H < 0.0:
        return np.cosh(math.sqrt(-H) * t)
    return np.ones_like(t)


def sn(H: float, t):
    """Generalized sine: sin(sqrt(H) t)/sqrt(H), t, or sinh(sqrt(-H) t)/sqrt(-H).

    Continuous in H at H = 0, with sn(H, t)/t -> 1 as t -> 0+.

    Raises
    ------
    DomainError
        If t < 0, or H > 0 and t >= pi/sqrt(H).
    """
    arr = np.asarray(t, dtype=float)
    if np.any(arr < 0.0):
        raise DomainError("sn requires t >= 0")
    if H > 0.0 and np.any(arr >= math.pi / math.sqrt(H)):
        raise DomainError(
            f"sn domain for H={H} ends at pi/sqrt(H)={math.pi / math.sqrt(H)}")
    out = _sn_raw(H, arr)
    return float(out) if np.ndim(t) == 0 else out


@dataclass(frozen=True)
class ModelParams:
    """Comparison space parameters.

    n is the base dimension, k > 0 the quasi-Einstein constant, so the
    effective dimension is N = n + k.  ``omega`` is the total measure of the
    unit (n-1)-sphere and defaults to its closed form; every final
    inequality is invariant under rescaling it.
    """

    n: int
    k: float
    H: float
    omega: float | None = None

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise ParameterError("model requires integer n >= 2")
        if self.k <= 0.0:
            raise ParameterError("model requires k > 0")
        if self.omega is None:
            object.__setattr__(self, "omega", unit_sphere_measure(self.n))
        elif self.omega <= 0.0:
            raise ParameterError("model requires omega > 0")

    @property
    def N(self) -> float:
        return self.n + self.k

    @property
    def period(self) -> float:
        """Radius at which geodesic spheres close up (inf unless H > 0)."""
        return math.pi / math.sqrt(self.H) if self.H > 0.0 else math.inf

    @property
    def half_period(self) -> float:
        return 0.5 * self.period


def _check_period(model, t, inclusive=False):
    if model.H <= 0.0:
        return
    limit = model.period - PERIOD_GUARD
    arr = np.asarray(t, dtype=float)
    bad = np.any(arr > limit) if inclusive else np.any(arr >= limit)
    if bad:
        raise DomainError(
            f"radius beyond the H={model.H} period pi/sqrt(H)={model.period}")


def _check_half_period(model, t):
    if model.H > 0.0 and np.any(np.asarray(t) > model.half_period + PERIOD_GUARD):
        raise DomainError(
            f"radius beyond the half period pi/(2 sqrt(H))={model.half_period}")


def mean_curvature(model: ModelParams, t):
    """Mean curvature (N-1) sn'(H,t)/sn(H,t) of the geodesic sphere of radius t.

    Solves m' = -m^2/(N-1) - (N-1) H with m ~ (N-1)/t at the pole.
    """
    arr = np.asarray(t, dtype=float)
    if np.any(arr <= 0.0):
        raise DomainError("mean curvature requires t > 0")
    _check_period(model, arr)
    out = (model.N - 1.0) * _cs_raw(model.H, arr) / _sn_raw(model.H, arr)
    return float(out) if np.ndim(t) == 0 else out


def area(model: ModelParams, t):
    """Geodesic sphere area omega * sn(H,t)**(N-1); vanishes at t = 0."""
    arr = np.asarray(t, dtype=float)
    if np.any(arr < 0.0):
        raise DomainError("area requires t >= 0")
    _check_period(model, arr, inclusive=True)
    out = model.omega * _sn_raw(model.H, arr) ** (model.N - 1.0)
    return float(out) if np.ndim(t) == 0 else out


def ball_volume(model: ModelParams, r):
    """Ball volume int_0^r area dt; closed form for H = 0, Gauss-Jacobi else."""
    arr = np.asarray(r, dtype=float)
    if np.any(arr < 0.0):
        raise DomainError("volume requires r >= 0")
    _check_period(model, arr, inclusive=True)
    N = model.N
    if model.H == 0.0:
        out = model.omega * arr ** N / N
        return float(out) if np.ndim(r) == 0 else out

    def ratio(tt):
        return (_sn_raw(model.H, tt) / tt) ** (N - 1.0)

    out = model.omega * power_weighted_integral(ratio, arr, N - 1.0)
    return out


def annulus_volume(model: ModelParams, r1, r2):
    """Volume of the annulus r1 <= t <= r2 in the comparison space."""
    if r1 > r2:
        raise DomainError("annulus requires r1 <= r2")
    if r1 == r2:
        return 0.0
    return ball_volume(model, r2) - ball_volume(model, r1)


@dataclass(frozen=True)
class ConstantRequest:
    """Validated parameter bundle for the comparison coefficients.

    Requires 2p > n + k strictly; optional radii must be ordered
    0 <= r1 <= r2 <= R1 <= R2, and beta (for the doubling threshold) must
    exceed 1.
    """

    model: ModelParams
    p: float
    R: float
    r: float | None = None
    r1: float | None = None
    r2: float | None = None
    R1: float | None = None
    R2: float | None = None
    beta: float | None = None

    def __post_init__(self):
        if 2.0 * self.p <= self.model.N:
            raise ParameterError(
                f"comparison constants need 2p > n+k (p={self.p}, n+k={self.model.N})")
        if self.R <= 0.0:
            raise ParameterError("R must be positive")
        radii = [x for x in (self.r1, self.r2, self.R1, self.R2) if x is not None]
        if radii:
            if any(x < 0.0 for x in radii):
                raise ParameterError("annulus radii must be nonnegative")
            if any(a > b for a, b in zip(radii, radii[1:])):
                raise ParameterError(
                    "annulus radii must satisfy r1 <= r2 <= R1 <= R2")
        if self.beta is not None and self.beta <= 1.0:
            raise ParameterError("doubling requires beta > 1")


def _prefactor(N, p):
    """((N-1) / ((2p-1)(2p-N))) ** ((p-1)/(2p-1)), shared by the volume bounds."""
    return ((N - 1.0) / ((2.0 * p - 1.0) * (2.0 * p - N))) ** ((p - 1.0) / (2.0 * p - 1.0))


def ball_comparison_constant(req: ConstantRequest, spec=DEFAULT_SPEC) -> float:
    """Coefficient of the ball volume-ratio estimate.

    prefactor * int_0^R area(t) * (t / ball_volume(t))**(2p/(2p-1)) dt.
    The kernel has an integrable t**(-(N-1)/(2p-1)) singularity at 0.
    """
    model, p, R = req.model, req.p, req.R
    _check_half_period(model, R)
    N = model.N
    q = 2.0 * p / (2.0 * p - 1.0)

    def kernel(t):
        return area(model, t) * (t / ball_volume(model, t)) ** q

    s = (N - 1.0) / (2.0 * p - 1.0)
    return _prefactor(N, p) * integrate_graded(
        kernel, 0.0, R, singular_exponent=s, spec=spec, gamma=2.0 * p - 1.0)


def area_comparison_constant(req: ConstantRequest, spec=DEFAULT_SPEC) -> float:
    """Coefficient of the area-ratio estimate: prefactor * int_0^R area**(-1/(2p-1))."""
    model, p, R = req.model, req.p, req.R
    _check_half_period(model, R)
    N = model.N
    e = -1.0 / (2.0 * p - 1.0)

    def kernel(t):
        return area(model, t) ** e

    s = (N - 1.0) / (2.0 * p - 1.0)
    return _prefactor(N, p) * integrate_graded(
        kernel, 0.0, R, singular_exponent=s, spec=spec, gamma=2.0 * p - 1.0)


def annulus_comparison_constant(req: ConstantRequest, spec=DEFAULT_SPEC) -> float:
    """Coefficient of the annulus volume-ratio estimate.

    Sum of two smooth integrals once r2 < R1 strictly; at r2 = R1 the second
    kernel has a non-integrable endpoint and the constant diverges (unless
    the corresponding interval is empty).
    """
    model, p = req.model, req.p
    if None in (req.r1, req.r2, req.R1, req.R2):
        raise ParameterError("annulus constant needs r1, r2, R1, R2")
    r1, r2, R1, R2 = req.r1, req.r2, req.R1, req.R2
    _check_half_period(model, R2)
    if r1 == r2 and R1 == R2:
        return 0.0
    if r2 == R1:
        raise QuadratureError(
            f"annulus constant diverges when r2 = R1 = {r2}: the kernel has "
            "a non-integrable endpoint; widen the gap between r2 and R1")
    q = 2.0 * p / (2.0 * p - 1.0)

    outer = 0.0
    if R1 < R2:
        def outer_kernel(t):
            return area(model, t) * (t / (ball_volume(model, t)
                                          - ball_volume(model, r2))) ** q
        outer = integrate_graded(outer_kernel, R1, R2, spec=spec)

    inner = 0.0
    if r1 < r2:
        a_R1 = area(model, R1)
        v_R1 = ball_volume(model, R1)

        def inner_kernel(t):
            return a_R1 * (R1 / (v_R1 - ball_volume(model, t))) ** q
        inner = integrate_graded(inner_kernel, r1, r2, spec=spec)

    return _prefactor(model.N, p) * (outer + inner)


def doubling_threshold(req: ConstantRequest, spec=DEFAULT_SPEC) -> float:
    """Deficit-size threshold under which the volume doubling bound holds.

    epsilon**(p/(2p-1)) = (1 - (1/beta)**(1/(2p-1)))
                          / (3 C(R) ball_volume(R)**(1/(2p-1))).
    Tends to 0 as beta -> 1+ and decreases as R grows.
    """
    if req.beta is None:
        raise ParameterError("doubling threshold needs beta")
    model, p, R, beta = req.model, req.p, req.R, req.beta
    C = ball_comparison_constant(req, spec=spec)
    V = ball_volume(model, R)
    e = 1.0 / (2.0 * p - 1.0)
    ratio = (1.0 - (1.0 / beta) ** e) / (3.0 * C * V ** e)
    return ratio ** ((2.0 * p - 1.0) / p)


def diameter_threshold(model: ModelParams, r: float) -> float:
    """Smallest drift constant that makes the compactness argument positive.

    (8/3) * (ball_volume(r)/ball_volume(r/2)) * (7 (n+k)/r + 1); any constant
    strictly above this value closes the excess-function estimate.
    """
    if r <= 0.0:
        raise DomainError("diameter threshold requires r > 0")
    _check_half_period(model, r)
    ratio = ball_volume(model, r) / ball_volume(model, 0.5 * r)
    return (8.0 / 3.0) * ratio * (7.0 * model.N / r + 1.0)
