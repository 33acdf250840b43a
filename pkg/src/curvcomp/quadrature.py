"""Graded-mesh quadrature, shared by every module that integrates.

The comparison constants integrate kernels with an integrable algebraic
singularity t**(-s), s < 1, at the lower endpoint.  Those integrals run on a
power-graded mesh ``t_i = a + (b-a) * (i/M)**gamma`` that flattens the
singularity, with Richardson-style mesh halving until two consecutive
resolutions agree.  Smooth radial integrals (weighted volumes, model volumes)
use a fixed Gauss-Jacobi rule that absorbs the t**e factor of the area
element exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import roots_jacobi

from .errors import ParameterError, QuadratureError

_MAX_MESH = 1 << 22  # hard cap on Simpson intervals; past this, give up


@dataclass(frozen=True)
class QuadratureSpec:
    """Convergence targets for the adaptive graded-mesh integrator."""

    abs_tol: float = 1e-10
    rel_tol: float = 1e-9
    max_refinements: int = 20

    def __post_init__(self):
        if self.abs_tol <= 0.0 or self.rel_tol <= 0.0:
            raise ParameterError("quadrature tolerances must be positive")
        if self.max_refinements < 1:
            raise ParameterError("max_refinements must be >= 1")


DEFAULT_SPEC = QuadratureSpec()


@dataclass(frozen=True)
class RadialGrid:
    """Graded radial discretization: nodes r_min + (r_max-r_min)*(i/m)**gamma.

    ``m`` counts intervals, so there are m+1 nodes.  gamma >= 1 clusters
    nodes toward r_min.
    """

    r_min: float
    r_max: float
    m: int = 4096
    gamma: float = 1.0

    def __post_init__(self):
        if not self.r_min < self.r_max:
            raise ParameterError("grid requires r_min < r_max")
        if self.r_min < 0.0:
            raise ParameterError("grid requires r_min >= 0")
        if self.m < 64:
            raise ParameterError("grid requires m >= 64")
        if self.gamma < 1.0:
            raise ParameterError("grid requires gamma >= 1")

    def nodes(self) -> np.ndarray:
        i = np.arange(self.m + 1, dtype=float)
        return self.r_min + (self.r_max - self.r_min) * (i / self.m) ** self.gamma

    def summary(self) -> dict:
        return {"r_min": self.r_min, "r_max": self.r_max,
                "m": self.m, "gamma": self.gamma}


def _graded_simpson(fn, a, b, gamma, m):
    """Composite Simpson on u in [0,1] after t = a + (b-a)*u**gamma."""
    u = np.arange(m + 1, dtype=float) / m
    t = a + (b - a) * u ** gamma
    g = np.zeros(m + 1, dtype=float)
    if gamma > 1.0:
        # the grading makes the transformed integrand vanish at u = 0; for
        # strong grading u**gamma can underflow, collapsing leading nodes
        # onto the endpoint, where the same limit applies
        idx = np.nonzero(t > a)[0]
        jac = gamma * (b - a) * u[idx] ** (gamma - 1.0)
        g[idx] = np.asarray(fn(t[idx]), dtype=float) * jac
    else:
        g[1:] = np.asarray(fn(t[1:]), dtype=float) * (b - a)
        g[0] = float(np.asarray(fn(np.array([a])), dtype=float)[0]) * (b - a)
    h = 1.0 / m
    return h / 3.0 * (g[0] + g[-1] + 4.0 * g[1:-1:2].sum() + 2.0 * g[2:-1:2].sum())


def integrate_graded(fn, a, b, singular_exponent=0.0, spec=DEFAULT_SPEC,
                     gamma=None, m0=4096):
    """Integrate ``fn`` over (a, b) allowing fn ~ (t-a)**(-s) at the left end.

    Parameters
    ----------
    fn : callable
        Vectorized integrand, evaluated only at interior points when a
        singularity is declared.
    singular_exponent : float
        s in the (t-a)**(-s) leading behaviour; must be < 1 (integrable).
    gamma : float, optional
        Mesh grading.  Strengthened automatically when the requested value
        does not flatten the declared singularity to at least u**1.
    m0 : int
        Initial interval count; doubled until two consecutive results agree
        to spec tolerances.

    Raises
    ------
    QuadratureError
        When max_refinements doublings do not reach the tolerance.
    """
    if b < a:
        raise ParameterError("integration bounds must satisfy a <= b")
    if b == a:
        return 0.0
    s = float(singular_exponent)
    if s >= 1.0:
        raise ParameterError(
            f"singular exponent {s} >= 1: integral is divergent")
    if gamma is None:
        gamma = 1.0 if s <= 0.0 else max(2.0, 2.0 / (1.0 - s))
    elif s > 0.0:
        # the requested grading must flatten the singularity (gamma*(1-s)
        # >= 2) but over-grading drives nodes into underflow territory, so
        # cap at gamma*(1-s) = 8
        lo = 2.0 / (1.0 - s)
        gamma = min(max(float(gamma), lo), max(8.0 / (1.0 - s), lo))
    else:
        gamma = float(gamma)

    m = max(16, int(m0))
    if m % 2:
        m += 1
    value_prev = _graded_simpson(fn, a, b, gamma, m // 2)
    for _ in range(spec.max_refinements):
        value = _graded_simpson(fn, a, b, gamma, m)
        if not math.isfinite(value):
            raise QuadratureError(
                "integrand is not finite on the graded mesh")
        err = abs(value - value_prev)
        if err <= max(spec.abs_tol, spec.rel_tol * abs(value)):
            return float(value)
        value_prev = value
        m *= 2
        if m > _MAX_MESH:
            break
    raise QuadratureError(
        f"graded quadrature did not converge after {spec.max_refinements} "
        f"refinements (last change {err:.3e})")


@lru_cache(maxsize=None)
def _jacobi_rule(exponent: float, order: int):
    x, w = roots_jacobi(order, 0.0, exponent)
    return x, w


def power_weighted_integral(g, r, exponent, order=48):
    """Compute int_0^r t**exponent * g(t) dt for smooth g, exponent > -1.

    ``r`` may be a scalar or an array; the rule is exact in the weight and
    spectrally accurate in g, so radial volume integrals resolve to machine
    precision without adaptivity.
    """
    if exponent <= -1.0:
        raise ParameterError("power weight must have exponent > -1")
    x, w = _jacobi_rule(float(exponent), order)
    r_arr = np.asarray(r, dtype=float)
    scalar = r_arr.ndim == 0
    r_arr = np.atleast_1d(r_arr)
    safe_r = np.where(r_arr > 0.0, r_arr, 1.0)
    t = 0.5 * (x + 1.0) * safe_r[..., None]
    vals = np.asarray(g(t), dtype=float)
    out = (0.5 * r_arr) ** (exponent + 1.0) * (vals * w).sum(axis=-1)
    out = np.where(r_arr > 0.0, out, 0.0)
    return float(out[0]) if scalar else out


@lru_cache(maxsize=None)
def _legendre_rule(order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    return x, w


def cumulative_integral(fn, nodes, order=8):
    """Cumulative integral of ``fn`` from 0 to each node of an ascending grid.

    Uses per-cell Gauss-Legendre (including the leading cell [0, nodes[0]]),
    so the result at nodes[i] approximates int_0^{nodes[i]} fn.
    """
    nodes = np.asarray(nodes, dtype=float)
    x, w = _legendre_rule(order)
    lo = np.concatenate(([0.0], nodes[:-1]))
    half = 0.5 * (nodes - lo)
    mid = 0.5 * (nodes + lo)
    pts = mid[:, None] + half[:, None] * x
    vals = np.asarray(fn(pts), dtype=float)
    cells = half * (vals * w).sum(axis=-1)
    return np.cumsum(cells)
