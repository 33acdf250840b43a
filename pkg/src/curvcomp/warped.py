"""Weighted rotationally symmetric spaces with radial weight.

A space here is (0, L] with metric dr^2 + warp(r)^2 g_{S^{n-1}} and measure
exp(-weight) dv.  Warp and weight are supplied as analytic triples (value,
first, second derivative), which keeps the curvature eigenvalues free of
differentiation noise; a tabulated adapter with spline derivatives exists
but is flagged reduced-accuracy.

For a radial weight the generalized quasi-Einstein tensor
Ric + Hess f - mu df (x) df is diagonal in the radial/tangential frame, so
its smallest eigenvalue is the min of two explicit branches; no eigensolver
is involved.

Pole handling: radial evaluations clamp to r >= POLE_FRACTION * L and use
the leading-order expansions warp ~ r, warp' ~ 1, weight' ~ 0 below that.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np

from .errors import DomainError, ParameterError
from .model_space import ModelParams, mean_curvature, unit_sphere_measure
from .quadrature import RadialGrid, power_weighted_integral

POLE_FRACTION = 1e-6


@dataclass(frozen=True)
class RadialFunction:
    """A radial C^2 function given with its first two derivatives.

    All three callables must accept numpy arrays.
    """

    value: Callable
    deriv: Callable
    deriv2: Callable


def _constant_zero(t):
    return np.zeros_like(np.asarray(t, dtype=float))


ZERO_WEIGHT = RadialFunction(_constant_zero, _constant_zero, _constant_zero)


@dataclass(frozen=True)
class WarpedSpace:
    """A weighted rotationally symmetric space on (0, L].

    Invariants enforced at construction: mu >= 1/k (every comparison
    estimate assumes it; violations are rejected, not repaired), the warp is
    smooth at the pole (warp(t)/t -> 1, warp'(t) -> 1), and the weight has
    vanishing radial derivative at the pole.

    ``closed_at`` marks the radius at which the warp returns to zero for
    compact (sphere-like) spaces; it doubles as the exact diameter.
    """

    n: int
    warp: RadialFunction
    weight: RadialFunction
    mu: float
    k: float
    L: float
    omega: float | None = None
    name: str = "custom"
    closed_at: float | None = None
    reduced_accuracy: bool = False

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise ParameterError("space requires integer n >= 2")
        if self.k <= 0.0:
            raise ParameterError("space requires k > 0")
        if self.mu < 1.0 / self.k:
            raise ParameterError(
                f"mu >= 1/k violated (mu={self.mu}, k={self.k}, 1/k={1.0 / self.k})")
        if self.L <= 0.0:
            raise ParameterError("space requires L > 0")
        if self.omega is None:
            object.__setattr__(self, "omega", unit_sphere_measure(self.n))
        elif self.omega <= 0.0:
            raise ParameterError("space requires omega > 0")
        self._validate_pole()

    def _validate_pole(self):
        t0 = POLE_FRACTION * self.L
        ratio = float(self.warp.value(np.array([t0]))[0]) / t0
        slope = float(self.warp.deriv(np.array([t0]))[0])
        if abs(ratio - 1.0) > 1e-4 or abs(slope - 1.0) > 1e-4:
            raise ParameterError(
                f"warp is not smooth at the pole: warp(t)/t={ratio}, "
                f"warp'(t)={slope} at t={t0}")
        f1 = float(self.weight.deriv(np.array([0.0]))[0])
        if abs(f1) > 1e-8:
            raise ParameterError(
                f"weight must have vanishing radial derivative at the pole "
                f"(weight'(0)={f1})")

    @property
    def r_pole(self) -> float:
        """Regularization radius below which leading-order expansions apply."""
        return POLE_FRACTION * self.L

    @property
    def N(self) -> float:
        return self.n + self.k


# --- clamped evaluation (valid on all of [0, L]; used inside integrals) ---

def _warp_value(space, t):
    t = np.asarray(t, dtype=float)
    tc = np.maximum(t, space.r_pole)
    return np.where(t < space.r_pole, t, space.warp.value(tc))


def _warp_deriv(space, t):
    t = np.asarray(t, dtype=float)
    tc = np.maximum(t, space.r_pole)
    return np.where(t < space.r_pole, 1.0, space.warp.deriv(tc))


def _warp_deriv2(space, t):
    t = np.asarray(t, dtype=float)
    tc = np.maximum(t, space.r_pole)
    return np.where(t < space.r_pole, 0.0, space.warp.deriv2(tc))


def _weight_value(space, t):
    t = np.asarray(t, dtype=float)
    tc = np.maximum(t, space.r_pole)
    return np.asarray(space.weight.value(tc), dtype=float)


def _weight_deriv(space, t):
    t = np.asarray(t, dtype=float)
    tc = np.maximum(t, space.r_pole)
    return np.where(t < space.r_pole, 0.0, space.weight.deriv(tc))


def _weight_deriv2(space, t):
    t = np.asarray(t, dtype=float)
    tc = np.maximum(t, space.r_pole)
    return np.asarray(space.weight.deriv2(tc), dtype=float)


def _check_radius(space, r, allow_zero=False):
    arr = np.asarray(r, dtype=float)
    lo_ok = np.all(arr >= 0.0) if allow_zero else np.all(arr > 0.0)
    if not lo_ok or np.any(arr > space.L * (1.0 + 1e-12)):
        raise DomainError(
            f"radius outside {'[0' if allow_zero else '(0'}, L={space.L}]")


def _eigenvalues(space, t):
    # below the regularization radius the evaluation clamps to it, so the
    # warp stays positive and the branches tend to their pole limits
    tc = np.maximum(np.asarray(t, dtype=float), space.r_pole)
    phi = np.asarray(space.warp.value(tc), dtype=float)
    dphi = np.asarray(space.warp.deriv(tc), dtype=float)
    d2phi = np.asarray(space.warp.deriv2(tc), dtype=float)
    f1 = np.asarray(space.weight.deriv(tc), dtype=float)
    f2 = np.asarray(space.weight.deriv2(tc), dtype=float)
    n = space.n
    radial = -(n - 1.0) * d2phi / phi + f2 - space.mu * f1 ** 2
    tangential = (-d2phi / phi + (n - 2.0) * (1.0 - dphi ** 2) / phi ** 2
                  + f1 * dphi / phi)
    return radial, tangential


def quasi_einstein_eigenvalues(space: WarpedSpace, r):
    """Eigenvalues of Ric + Hess f - mu df (x) df in the radial/tangential frame.

    radial     = -(n-1) warp''/warp + f'' - mu f'^2
    tangential = -warp''/warp + (n-2)(1 - warp'^2)/warp^2 + f' warp'/warp

    Raises
    ------
    DomainError
        Below the pole regularization radius or beyond L.
    """
    arr = np.asarray(r, dtype=float)
    if np.any(arr < space.r_pole):
        raise DomainError(
            f"eigenvalues need r >= pole regularization radius {space.r_pole}")
    _check_radius(space, arr)
    radial, tangential = _eigenvalues(space, arr)
    if np.ndim(r) == 0:
        return float(radial), float(tangential)
    return radial, tangential


def smallest_eigenvalue(space: WarpedSpace, t):
    """min of the two eigenvalue branches (clamped evaluation)."""
    radial, tangential = _eigenvalues(space, t)
    return np.minimum(radial, tangential)


def curvature_deficit(space: WarpedSpace, H: float, t):
    """Pointwise amount of the tensor below (n+k-1) H, clipped at zero."""
    level = (space.N - 1.0) * H
    return np.maximum(0.0, level - smallest_eigenvalue(space, t))


@dataclass(frozen=True)
class DeficitProfile:
    """Smallest eigenvalue and curvature deficit sampled on a radial grid."""

    grid: RadialGrid
    H: float
    lambda_min: np.ndarray
    deficit: np.ndarray


def deficit_profile(space: WarpedSpace, H: float, grid: RadialGrid) -> DeficitProfile:
    """Sample the smallest eigenvalue and deficit on grid nodes in (0, L]."""
    nodes = grid.nodes()
    if nodes[0] <= 0.0 or nodes[-1] > space.L * (1.0 + 1e-12):
        raise DomainError(f"grid must lie within (0, L={space.L}]")
    lam = smallest_eigenvalue(space, nodes)
    deficit = np.maximum(0.0, (space.N - 1.0) * H - lam)
    return DeficitProfile(grid=grid, H=H, lambda_min=lam, deficit=deficit)


def weighted_mean_curvature(space: WarpedSpace, r):
    """Mean curvature of geodesic spheres for the weighted measure:
    (n-1) warp'/warp - weight'."""
    arr = np.asarray(r, dtype=float)
    if np.any(arr < space.r_pole):
        raise DomainError(
            f"mean curvature needs r >= pole regularization radius {space.r_pole}")
    _check_radius(space, arr)
    out = _mean_curvature_clamped(space, arr)
    return float(out) if np.ndim(r) == 0 else out


def _mean_curvature_clamped(space, t):
    t = np.asarray(t, dtype=float)
    tc = np.maximum(t, space.r_pole)
    m = (space.n - 1.0) * _warp_deriv(space, tc) / _warp_value(space, tc)
    below = (space.n - 1.0) / np.maximum(t, 1e-300)
    return np.where(t < space.r_pole, below, m - _weight_deriv(space, tc))


def mean_curvature_excess(space: WarpedSpace, model: ModelParams, r):
    """Positive part of the weighted mean curvature over the comparison value."""
    arr = np.asarray(r, dtype=float)
    if np.any(arr <= 0.0):
        raise DomainError("excess requires r > 0")
    if model.H > 0.0 and np.any(arr >= model.period):
        raise DomainError(
            f"excess requires r < comparison period {model.period}")
    out = _excess_clamped(space, model, arr)
    return float(out) if np.ndim(r) == 0 else out


def _excess_clamped(space, model, t):
    return np.maximum(0.0,
                      _mean_curvature_clamped(space, t) - mean_curvature(model, t))


def area_density(space: WarpedSpace, t):
    """Radial density warp**(n-1) * exp(-weight) of the weighted area
    (per unit direction; multiply by omega for the full sphere area)."""
    t = np.asarray(t, dtype=float)
    return (_warp_value(space, t) ** (space.n - 1.0)
            * np.exp(-_weight_value(space, t)))


def weighted_area(space: WarpedSpace, r):
    """Weighted area omega * warp(r)**(n-1) * exp(-weight(r)); zero at r = 0."""
    arr = np.asarray(r, dtype=float)
    _check_radius(space, arr, allow_zero=True)
    out = space.omega * area_density(space, arr)
    return float(out) if np.ndim(r) == 0 else out


def weighted_volume(space: WarpedSpace, r):
    """Weighted ball volume omega * int_0^r warp**(n-1) exp(-weight) dt."""
    arr = np.asarray(r, dtype=float)
    _check_radius(space, arr, allow_zero=True)

    def ratio(tt):
        safe = np.maximum(tt, 1e-300)
        val = _warp_value(space, safe) / safe
        return val ** (space.n - 1.0) * np.exp(-_weight_value(space, safe))

    return space.omega * power_weighted_integral(ratio, arr, space.n - 1.0)


def weighted_annulus_volume(space: WarpedSpace, r1, r2):
    """Weighted volume of the annulus r1 <= t <= r2."""
    if r1 > r2:
        raise DomainError("annulus requires r1 <= r2")
    if r1 == r2:
        return 0.0
    return weighted_volume(space, r2) - weighted_volume(space, r1)


# --- builtin families ----------------------------------------------------

def _resolve_mu(mu, k):
    return 1.0 / k if mu is None else mu


def sphere_space(n=3, k=1.0, mu=None, L=3.05, omega=None) -> WarpedSpace:
    """Round unit sphere warp sin(t), no weight; L must stay below pi."""
    if not 0.0 < L < math.pi:
        raise ParameterError("sphere family requires L < pi")
    warp = RadialFunction(np.sin, np.cos, lambda t: -np.sin(t))
    return WarpedSpace(n=n, warp=warp, weight=ZERO_WEIGHT, mu=_resolve_mu(mu, k),
                       k=k, L=L, omega=omega, name="sphere", closed_at=math.pi)


def flat_space(n=3, k=1.0, mu=None, L=10.0, omega=None) -> WarpedSpace:
    """Euclidean space: warp t, no weight."""
    warp = RadialFunction(lambda t: np.asarray(t, dtype=float),
                          lambda t: np.ones_like(np.asarray(t, dtype=float)),
                          _constant_zero)
    return WarpedSpace(n=n, warp=warp, weight=ZERO_WEIGHT, mu=_resolve_mu(mu, k),
                       k=k, L=L, omega=omega, name="flat")


def hyperbolic_space(n=3, k=1.0, mu=None, L=5.0, omega=None) -> WarpedSpace:
    """Hyperbolic space: warp sinh(t), no weight."""
    warp = RadialFunction(np.sinh, np.cosh, np.sinh)
    return WarpedSpace(n=n, warp=warp, weight=ZERO_WEIGHT, mu=_resolve_mu(mu, k),
                       k=k, L=L, omega=omega, name="hyperbolic")


def gaussian_flat_space(a, n=3, k=2.0, mu=None, L=10.0, omega=None) -> WarpedSpace:
    """Euclidean space with Gaussian weight a t^2 / 2."""
    warp = RadialFunction(lambda t: np.asarray(t, dtype=float),
                          lambda t: np.ones_like(np.asarray(t, dtype=float)),
                          _constant_zero)
    weight = RadialFunction(lambda t: 0.5 * a * np.asarray(t, dtype=float) ** 2,
                            lambda t: a * np.asarray(t, dtype=float),
                            lambda t: np.full_like(np.asarray(t, dtype=float), a))
    return WarpedSpace(n=n, warp=warp, weight=weight, mu=_resolve_mu(mu, k),
                       k=k, L=L, omega=omega, name=f"gaussian_flat(a={a})")


def perturbed_sphere_space(delta, q=2.0, n=3, k=1.0, mu=None, L=3.05,
                           omega=None) -> WarpedSpace:
    """Round sphere with weight delta * (1 - cos t)**q; q >= 2 keeps the
    weight derivative vanishing at the pole."""
    if q < 2.0:
        raise ParameterError("perturbed sphere requires q >= 2")
    if not 0.0 < L < math.pi:
        raise ParameterError("perturbed sphere requires L < pi")
    warp = RadialFunction(np.sin, np.cos, lambda t: -np.sin(t))

    def f(t):
        return delta * (1.0 - np.cos(t)) ** q

    def f1(t):
        return delta * q * (1.0 - np.cos(t)) ** (q - 1.0) * np.sin(t)

    def f2(t):
        c = np.cos(t)
        s = np.sin(t)
        return delta * q * ((q - 1.0) * (1.0 - c) ** (q - 2.0) * s ** 2
                            + (1.0 - c) ** (q - 1.0) * c)

    weight = RadialFunction(f, f1, f2)
    return WarpedSpace(n=n, warp=warp, weight=weight, mu=_resolve_mu(mu, k),
                       k=k, L=L, omega=omega,
                       name=f"perturbed_sphere(delta={delta},q={q})",
                       closed_at=math.pi)


BUILTIN_FAMILIES = {
    "sphere": sphere_space,
    "flat": flat_space,
    "hyperbolic": hyperbolic_space,
    "gaussian_flat": gaussian_flat_space,
    "perturbed_sphere": perturbed_sphere_space,
}


# --- tabulated profiles ---------------------------------------------------

def space_from_table(source, n, k, mu=None, omega=None) -> WarpedSpace:
    """Build a space from a plain-text table of "r warp weight" triples.

    Requires at least 16 samples with strictly increasing r > 0.  Cubic
    splines supply derivatives, with the pole row (0, 0, weight[0]) and the
    pole slopes warp'(0) = 1, weight'(0) = 0 pinned; the result is flagged
    ``reduced_accuracy`` since spline curvature is less accurate than an
    analytic triple.
    """
    from scipy.interpolate import CubicSpline

    if isinstance(source, (str, Path)) and "\n" not in str(source):
        text = Path(source).read_text()
    else:
        text = str(source)
    rows = []
    for line_no, line in enumerate(io.StringIO(text), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ParameterError(
                f"table line {line_no}: expected 'r warp weight', got {line!r}")
        try:
            rows.append(tuple(float(x) for x in parts))
        except ValueError:
            raise ParameterError(
                f"table line {line_no}: non-numeric entry in {line!r}") from None
    if len(rows) < 16:
        raise ParameterError(
            f"table needs at least 16 samples, got {len(rows)}")
    data = np.array(rows, dtype=float)
    r = data[:, 0]
    if r[0] <= 0.0 or np.any(np.diff(r) <= 0.0):
        raise ParameterError("table radii must be strictly increasing and positive")

    r_full = np.concatenate(([0.0], r))
    warp_full = np.concatenate(([0.0], data[:, 1]))
    weight_full = np.concatenate(([data[0, 2]], data[:, 2]))
    warp_spline = CubicSpline(r_full, warp_full, bc_type=((1, 1.0), "not-a-knot"))
    weight_spline = CubicSpline(r_full, weight_full, bc_type=((1, 0.0), "not-a-knot"))

    warp = RadialFunction(warp_spline, warp_spline.derivative(1),
                          warp_spline.derivative(2))
    weight = RadialFunction(weight_spline, weight_spline.derivative(1),
                            weight_spline.derivative(2))
    return WarpedSpace(n=n, warp=warp, weight=weight, mu=_resolve_mu(mu, k),
                       k=k, L=float(r[-1]), omega=omega, name="table",
                       reduced_accuracy=True)
