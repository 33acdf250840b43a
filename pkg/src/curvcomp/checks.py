"""Numerical verification of the comparison inequalities.

Each check computes both sides of one inequality on a concrete space and
returns a CheckReport with the margin.  The pass criterion is

    lhs <= rhs + tol * (1 + |rhs|)

with a default tol of 1e-7: the absolute-plus-relative slack absorbs
quadrature error without masking genuine violations.  The doubling check is
conditional and reports "hypothesis-not-met" (neither pass nor fail) when
its smallness hypothesis does not hold.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ParameterError
from .model_space import (ConstantRequest, ModelParams, _prefactor,
                          annulus_volume, area, area_comparison_constant,
                          annulus_comparison_constant, ball_comparison_constant,
                          ball_volume, diameter_threshold, doubling_threshold,
                          mean_curvature)
from .norms import normalized_deficit_norm, weighted_lp_norm
from .quadrature import (DEFAULT_SPEC, RadialGrid, cumulative_integral,
                         integrate_graded)
from .warped import (WarpedSpace, _excess_clamped, area_density,
                     curvature_deficit, weighted_annulus_volume, weighted_area,
                     weighted_volume)

DEFAULT_TOLERANCE = 1e-7

THEOREM_IDS = ("T1_eq16", "T1_eq17", "T1_ext_163", "T1_ext_164", "T31_eq31",
               "T31_eq32", "T2", "T3", "C32_doubling", "Eq21_chain",
               "T4_threshold")

STATUS_PASS = "pass"
STATUS_FAIL = "fail"
STATUS_HYPOTHESIS_NOT_MET = "hypothesis-not-met"


@dataclass
class CheckReport:
    """One verified inequality: both sides, the margin, and the verdict."""

    theorem_id: str
    params: dict
    lhs: float
    rhs: float
    margin: float
    passed: bool
    tolerance: float
    grid_meta: dict
    status: str

    def to_dict(self) -> dict:
        return {
            "theorem_id": self.theorem_id,
            "params": self.params,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "pass": self.passed,
            "tolerance": self.tolerance,
            "grid_meta": self.grid_meta,
            "status": self.status,
        }


def params_hash(params: dict) -> str:
    """Deterministic digest of a params echo; used to order suite output."""
    blob = json.dumps(params, sort_keys=True, default=str).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def _passes(lhs, rhs, tol):
    return bool(lhs <= rhs + tol * (1.0 + abs(rhs)))


def _finish(theorem_id, params, lhs, rhs, tol, grid_meta) -> CheckReport:
    ok = _passes(lhs, rhs, tol)
    return CheckReport(theorem_id=theorem_id, params=params, lhs=float(lhs),
                       rhs=float(rhs), margin=float(rhs - lhs), passed=ok,
                       tolerance=tol, grid_meta=grid_meta,
                       status=STATUS_PASS if ok else STATUS_FAIL)


def _require_match(space: WarpedSpace, model: ModelParams):
    if space.n != model.n or space.k != model.k:
        raise ParameterError(
            f"space (n={space.n}, k={space.k}) and model "
            f"(n={model.n}, k={model.k}) disagree")
    if not math.isclose(space.omega, model.omega, rel_tol=1e-12):
        raise ParameterError(
            f"space omega {space.omega} and model omega {model.omega} disagree")


def _require_exponent(space, p):
    if 2.0 * p <= space.N:
        raise ParameterError(
            f"checks need 2p > n+k (p={p}, n+k={space.N})")


def _require_half_range(model, r):
    if model.H > 0.0 and r > model.half_period + 1e-12:
        raise DomainError(
            f"radius {r} exceeds the half period {model.half_period}")


def _require_extended_range(model, r):
    if model.H <= 0.0:
        raise DomainError("extended-range estimates require H > 0")
    if not model.half_period < r < model.period:
        raise DomainError(
            f"extended range needs r in ({model.half_period}, {model.period}), "
            f"got {r}")


def _base_params(space, model, p=None, **extra):
    params = {
        "space": space.name,
        "n": space.n,
        "k": space.k,
        "mu": space.mu,
        "omega": space.omega,
        "L": space.L,
        "H": model.H,
    }
    if p is not None:
        params["p"] = p
    params.update(extra)
    return params


def _scan_grid(space, r, p, grid):
    if grid is not None:
        return grid
    return RadialGrid(space.r_pole, r, m=4096, gamma=2.0 * p - 1.0)


def _quad_meta(r, p):
    return {"r_min": 0.0, "r_max": float(r), "m": 4096, "gamma": 2.0 * p - 1.0}


def _deficit_fn(space, model):
    return lambda t: curvature_deficit(space, model.H, t)


def _cumulative_deficit(space, model, p, nodes):
    def kern(t):
        return (curvature_deficit(space, model.H, t) ** p
                * area_density(space, t))

    return space.omega * cumulative_integral(kern, nodes)


def _pointwise_coefficient(N, p):
    return (2.0 * p - 1.0) ** p * ((N - 1.0) / (2.0 * p - N)) ** (p - 1.0)


def _worst_node(lhs_nodes, rhs_nodes, tol, window=None):
    """Index to report from a per-node scan.

    All nodes must satisfy the relative pass criterion; if any violates it,
    report the worst violator, otherwise the node with the smallest raw
    margin.
    """
    slack = rhs_nodes + tol * (1.0 + np.abs(rhs_nodes)) - lhs_nodes
    margin = rhs_nodes - lhs_nodes
    if window is not None:
        slack = np.where(window, slack, np.inf)
        margin = np.where(window, margin, np.inf)
    if slack.min() < 0.0:
        return int(np.argmin(slack))
    return int(np.argmin(margin))


# --- mean curvature estimates ---------------------------------------------

def check_excess_norm(space, model, p, r, *, spec=DEFAULT_SPEC,
                      tol=DEFAULT_TOLERANCE, grid=None) -> CheckReport:
    """L^{2p} norm of the mean-curvature excess against the deficit norm.

    lhs = ||excess||_{2p}(r),
    rhs = ((N-1)(2p-1)/(2p-N) * ||deficit||_p(r))^(1/2).
    """
    _require_match(space, model)
    _require_exponent(space, p)
    _require_half_range(model, r)
    N = space.N
    lhs = weighted_lp_norm(space, lambda t: _excess_clamped(space, model, t),
                           2.0 * p, r, spec=spec)
    dn = weighted_lp_norm(space, _deficit_fn(space, model), p, r, spec=spec)
    rhs = math.sqrt((N - 1.0) * (2.0 * p - 1.0) / (2.0 * p - N) * dn)
    params = _base_params(space, model, p, r=r)
    return _finish("T1_eq16", params, lhs, rhs, tol, _quad_meta(r, p))


def check_excess_pointwise(space, model, p, r, *, spec=DEFAULT_SPEC,
                           tol=DEFAULT_TOLERANCE, grid=None) -> CheckReport:
    """Pointwise bound excess^{2p-1} * area <= coeff * cumulative deficit
    integral, verified at every grid node up to r; the report carries the
    worst node."""
    _require_match(space, model)
    _require_exponent(space, p)
    _require_half_range(model, r)
    grid = _scan_grid(space, r, p, grid)
    nodes = grid.nodes()
    lhs_nodes = (_excess_clamped(space, model, nodes) ** (2.0 * p - 1.0)
                 * weighted_area(space, nodes))
    rhs_nodes = (_pointwise_coefficient(space.N, p)
                 * _cumulative_deficit(space, model, p, nodes))
    worst = _worst_node(lhs_nodes, rhs_nodes, tol)
    params = _base_params(space, model, p, r=r,
                          worst_node=float(nodes[worst]))
    return _finish("T1_eq17", params, lhs_nodes[worst], rhs_nodes[worst],
                   tol, grid.summary())


def _extended_sin_power(space, p):
    return 4.0 * p - space.N - 1.0


def check_excess_norm_extended(space, model, p, r, *, spec=DEFAULT_SPEC,
                               tol=DEFAULT_TOLERANCE, grid=None) -> CheckReport:
    """Past the half period the excess norm carries a sin weight:
    lhs = ||sin(sqrt(H) t)^((4p-N-1)/(2p)) * excess||_{2p}(r), same rhs."""
    _require_match(space, model)
    _require_exponent(space, p)
    _require_extended_range(model, r)
    root_h = math.sqrt(model.H)
    power = _extended_sin_power(space, p) / (2.0 * p)

    def weighted_excess(t):
        return np.sin(root_h * t) ** power * _excess_clamped(space, model, t)

    lhs = weighted_lp_norm(space, weighted_excess, 2.0 * p, r, spec=spec)
    dn = weighted_lp_norm(space, _deficit_fn(space, model), p, r, spec=spec)
    rhs = math.sqrt((space.N - 1.0) * (2.0 * p - 1.0) / (2.0 * p - space.N) * dn)
    params = _base_params(space, model, p, r=r)
    return _finish("T1_ext_163", params, lhs, rhs, tol, _quad_meta(r, p))


def check_excess_pointwise_extended(space, model, p, r, *, spec=DEFAULT_SPEC,
                                    tol=DEFAULT_TOLERANCE,
                                    grid=None) -> CheckReport:
    """Extended-range pointwise bound, scanned over grid nodes past the half
    period: sin^{4p-N-1}(sqrt(H) t) excess^{2p-1} area <= coeff * cumulative
    deficit integral."""
    _require_match(space, model)
    _require_exponent(space, p)
    _require_extended_range(model, r)
    grid = _scan_grid(space, r, p, grid)
    nodes = grid.nodes()
    root_h = math.sqrt(model.H)
    sin_pow = np.sin(root_h * nodes) ** _extended_sin_power(space, p)
    lhs_nodes = (sin_pow * _excess_clamped(space, model, nodes) ** (2.0 * p - 1.0)
                 * weighted_area(space, nodes))
    rhs_nodes = (_pointwise_coefficient(space.N, p)
                 * _cumulative_deficit(space, model, p, nodes))
    window = nodes > model.half_period
    if not window.any():
        raise DomainError("no grid nodes beyond the half period")
    worst = _worst_node(lhs_nodes, rhs_nodes, tol, window=window)
    params = _base_params(space, model, p, r=r,
                          worst_node=float(nodes[worst]))
    return _finish("T1_ext_164", params, lhs_nodes[worst], rhs_nodes[worst],
                   tol, grid.summary())


def check_differential_inequality(space, model, p, grid=None, *,
                                  spec=DEFAULT_SPEC, tol=DEFAULT_TOLERANCE
                                  ) -> CheckReport:
    """Per-node residual of the rearranged excess differential inequality.

    (excess^{2p-1} area)' + excess^{2p} area ((2p-1)/(N-1) - 1)
      + excess^{2p-1} m_model area ((4p-2)/(N-1) - 1)
      <= (2p-1) deficit excess^{2p-2} area

    with the derivative taken by central differences on the grid.  This
    validates the derivation chain independently of the endpoint estimates.
    """
    _require_match(space, model)
    _require_exponent(space, p)
    if grid is None:
        upper = 0.98 * min(space.L, model.half_period)
        grid = RadialGrid(1e-3 * upper, upper, m=4096, gamma=1.0)
    nodes = grid.nodes()
    if nodes[0] <= 0.0 or nodes[-1] >= min(space.L, model.half_period) * (1 + 1e-12):
        raise DomainError(
            "chain grid must lie strictly inside (0, min(L, half period))")
    N = space.N
    excess = _excess_clamped(space, model, nodes)
    a_f = weighted_area(space, nodes)
    y = excess ** (2.0 * p - 1.0) * a_f
    dy = np.gradient(y, nodes)
    m_model = mean_curvature(model, nodes)
    deficit = curvature_deficit(space, model.H, nodes)
    lhs_nodes = (dy
                 + excess ** (2.0 * p) * a_f * ((2.0 * p - 1.0) / (N - 1.0) - 1.0)
                 + y * m_model * ((4.0 * p - 2.0) / (N - 1.0) - 1.0))
    rhs_nodes = (2.0 * p - 1.0) * deficit * excess ** (2.0 * p - 2.0) * a_f
    # one-sided differences at the edges are first order; scan interior only
    scale = 1.0 + np.abs(rhs_nodes) + np.abs(dy)
    slack = rhs_nodes + tol * scale - lhs_nodes
    margin = rhs_nodes - lhs_nodes
    slack[0] = slack[-1] = np.inf
    margin[0] = margin[-1] = np.inf
    ok = bool(slack.min() >= 0.0)
    worst = int(np.argmin(slack if not ok else margin))
    params = _base_params(space, model, p, worst_node=float(nodes[worst]))
    report = CheckReport(theorem_id="Eq21_chain", params=params,
                         lhs=float(lhs_nodes[worst]), rhs=float(rhs_nodes[worst]),
                         margin=float(rhs_nodes[worst] - lhs_nodes[worst]),
                         passed=ok, tolerance=tol, grid_meta=grid.summary(),
                         status=STATUS_PASS if ok else STATUS_FAIL)
    return report


# --- area and volume ratio estimates ---------------------------------------

def _ratio_power(x, p):
    return x ** (1.0 / (2.0 * p - 1.0))


def check_area_ratio(space, model, p, r, R, *, spec=DEFAULT_SPEC,
                     tol=DEFAULT_TOLERANCE, grid=None) -> CheckReport:
    """Area-ratio drift bounded by the area comparison coefficient:
    (A_f(R)/A(R))^(1/(2p-1)) - (A_f(r)/A(r))^(1/(2p-1))
      <= scriptC(R) * ||deficit||_p(R)^(p/(2p-1))."""
    _require_match(space, model)
    _require_exponent(space, p)
    if not 0.0 < r <= R:
        raise ParameterError("area ratio check needs 0 < r <= R")
    _require_half_range(model, R)
    params = _base_params(space, model, p, r=r, R=R)
    if r == R:
        return _finish("T31_eq31", params, 0.0, 0.0, tol, _quad_meta(R, p))
    lhs = (_ratio_power(weighted_area(space, R) / area(model, R), p)
           - _ratio_power(weighted_area(space, r) / area(model, r), p))
    coeff = area_comparison_constant(
        ConstantRequest(model=model, p=p, R=R), spec=spec)
    nd = weighted_lp_norm(space, _deficit_fn(space, model), p, R, spec=spec)
    rhs = coeff * nd ** (p / (2.0 * p - 1.0))
    return _finish("T31_eq31", params, lhs, rhs, tol, _quad_meta(R, p))


def check_area_ratio_extended(space, model, p, r, R, *, spec=DEFAULT_SPEC,
                              tol=DEFAULT_TOLERANCE, grid=None) -> CheckReport:
    """Extended-range area-ratio estimate with the 1/sin^2 kernel, normalized
    by the model area element so both sides share the omega scaling."""
    _require_match(space, model)
    _require_exponent(space, p)
    if r > R:
        raise ParameterError("area ratio check needs r <= R")
    _require_extended_range(model, r)
    if not r <= R < model.period:
        raise DomainError(
            f"extended range needs r <= R < {model.period}, got R={R}")
    params = _base_params(space, model, p, r=r, R=R)
    if r == R:
        return _finish("T31_eq32", params, 0.0, 0.0, tol, _quad_meta(R, p))
    N = space.N
    lhs = (_ratio_power(weighted_area(space, R) / area(model, R), p)
           - _ratio_power(weighted_area(space, r) / area(model, r), p))
    root_h = math.sqrt(model.H)
    kernel_int = integrate_graded(
        lambda t: 1.0 / np.sin(root_h * t) ** 2, r, R, spec=spec)
    kernel_int *= root_h ** ((N - 1.0) / (2.0 * p - 1.0))
    nd = weighted_lp_norm(space, _deficit_fn(space, model), p, R, spec=spec)
    rhs = (_prefactor(N, p) * nd ** (p / (2.0 * p - 1.0))
           * model.omega ** (-1.0 / (2.0 * p - 1.0)) * kernel_int)
    return _finish("T31_eq32", params, lhs, rhs, tol, _quad_meta(R, p))


def check_volume_ratio(space, model, p, r, R, *, spec=DEFAULT_SPEC,
                       tol=DEFAULT_TOLERANCE, grid=None) -> CheckReport:
    """Ball volume-ratio drift bounded by the ball comparison coefficient."""
    _require_match(space, model)
    _require_exponent(space, p)
    if not 0.0 < r <= R:
        raise ParameterError("volume ratio check needs 0 < r <= R")
    _require_half_range(model, R)
    params = _base_params(space, model, p, r=r, R=R)
    if r == R:
        return _finish("T2", params, 0.0, 0.0, tol, _quad_meta(R, p))
    lhs = (_ratio_power(weighted_volume(space, R) / ball_volume(model, R), p)
           - _ratio_power(weighted_volume(space, r) / ball_volume(model, r), p))
    coeff = ball_comparison_constant(
        ConstantRequest(model=model, p=p, R=R), spec=spec)
    nd = weighted_lp_norm(space, _deficit_fn(space, model), p, R, spec=spec)
    rhs = coeff * nd ** (p / (2.0 * p - 1.0))
    return _finish("T2", params, lhs, rhs, tol, _quad_meta(R, p))


def _annulus_ratio(space, model, a, b, p):
    if b > a:
        return _ratio_power(weighted_annulus_volume(space, a, b)
                            / annulus_volume(model, a, b), p)
    if a == 0.0:
        raise DomainError("annulus pinched at the pole has no finite ratio")
    return _ratio_power(weighted_area(space, a) / area(model, a), p)


def check_annulus_ratio(space, model, p, r1, r2, R1, R2, *, spec=DEFAULT_SPEC,
                        tol=DEFAULT_TOLERANCE, grid=None) -> CheckReport:
    """Annulus volume-ratio drift bounded by the annulus coefficient."""
    _require_match(space, model)
    _require_exponent(space, p)
    if not (0.0 <= r1 <= r2 <= R1 <= R2):
        raise ParameterError(
            "annulus check needs 0 <= r1 <= r2 <= R1 <= R2")
    _require_half_range(model, R2)
    params = _base_params(space, model, p, r1=r1, r2=r2, R1=R1, R2=R2)
    if r1 == r2 and R1 == R2:
        return _finish("T3", params, 0.0, 0.0, tol, _quad_meta(R2, p))
    coeff = annulus_comparison_constant(
        ConstantRequest(model=model, p=p, R=R2, r1=r1, r2=r2, R1=R1, R2=R2),
        spec=spec)
    lhs = (_annulus_ratio(space, model, r2, R2, p)
           - _annulus_ratio(space, model, r1, R1, p))
    nd = weighted_lp_norm(space, _deficit_fn(space, model), p, R2, spec=spec)
    rhs = coeff * nd ** (p / (2.0 * p - 1.0))
    return _finish("T3", params, lhs, rhs, tol, _quad_meta(R2, p))


def check_volume_doubling(space, model, p, beta, r1, r2, R, *,
                          spec=DEFAULT_SPEC, tol=DEFAULT_TOLERANCE,
                          grid=None) -> CheckReport:
    """Conditional volume doubling.

    The hypothesis is that the normalized deficit stays below the explicit
    threshold; when it does not the report carries the distinct
    "hypothesis-not-met" verdict (lhs = normalized deficit, rhs =
    threshold), never a pass or fail.  When it holds, the conclusion
    V_f(r2)/V_f(r1) <= beta * V(r2)/V(r1) is checked.
    """
    _require_match(space, model)
    _require_exponent(space, p)
    if beta <= 1.0:
        raise ParameterError("doubling requires beta > 1")
    if not 0.0 < r1 < r2 <= R:
        raise ParameterError("doubling requires 0 < r1 < r2 <= R")
    _require_half_range(model, R)
    epsilon = doubling_threshold(
        ConstantRequest(model=model, p=p, R=R, beta=beta), spec=spec)
    deficit_size = normalized_deficit_norm(space, p, model.H, R, spec=spec)
    params = _base_params(space, model, p, beta=beta, r1=r1, r2=r2, R=R,
                          epsilon=epsilon, normalized_deficit=deficit_size)
    if deficit_size >= epsilon:
        return CheckReport(theorem_id="C32_doubling", params=params,
                           lhs=float(deficit_size), rhs=float(epsilon),
                           margin=float(epsilon - deficit_size), passed=False,
                           tolerance=tol, grid_meta=_quad_meta(R, p),
                           status=STATUS_HYPOTHESIS_NOT_MET)
    lhs = weighted_volume(space, r2) / weighted_volume(space, r1)
    rhs = beta * ball_volume(model, r2) / ball_volume(model, r1)
    return _finish("C32_doubling", params, lhs, rhs, tol, _quad_meta(R, p))


def check_diameter_bound(space, model, p, r, R, *, spec=DEFAULT_SPEC,
                         tol=DEFAULT_TOLERANCE, grid=None) -> CheckReport:
    """Diameter probe for compact sphere-like spaces.

    The general diameter bound has a non-constructive constant, so only the
    computable pieces are asserted: the drift threshold and the normalized
    deficit are reported, and the exact diameter (pole-to-pole distance) is
    checked against pi/sqrt(H), the bound attained by the zero-deficit
    sphere family.
    """
    _require_match(space, model)
    _require_exponent(space, p)
    if model.H <= 0.0:
        raise ParameterError("diameter probe requires H > 0")
    if space.closed_at is None:
        raise DomainError(
            f"space {space.name!r} is not compact: the warp does not close")
    threshold = diameter_threshold(model, r)
    deficit_size = normalized_deficit_norm(space, p, model.H,
                                           min(R, space.L), spec=spec)
    diam = space.closed_at
    bound = math.pi / math.sqrt(model.H)
    params = _base_params(space, model, p, r=r, R=R,
                          drift_threshold=threshold,
                          normalized_deficit=deficit_size,
                          diameter=diam)
    return _finish("T4_threshold", params, diam, bound, tol, _quad_meta(R, p))


# --- registry ---------------------------------------------------------------

RADII_KEYS = {
    "T1_eq16": ("r",),
    "T1_eq17": ("r",),
    "T1_ext_163": ("r",),
    "T1_ext_164": ("r",),
    "T31_eq31": ("r", "R"),
    "T31_eq32": ("r", "R"),
    "T2": ("r", "R"),
    "T3": ("r1", "r2", "R1", "R2"),
    "C32_doubling": ("r1", "r2", "R"),
    "Eq21_chain": ("r_max",),
    "T4_threshold": ("r", "R"),
}


def run_check(theorem_id, space, model, p, radii, *, beta=2.0,
              spec=DEFAULT_SPEC, tol=DEFAULT_TOLERANCE, grid=None
              ) -> CheckReport:
    """Dispatch one check by its identifier with a radii tuple."""
    if theorem_id not in RADII_KEYS:
        raise ParameterError(f"unknown theorem id {theorem_id!r}")
    expected = len(RADII_KEYS[theorem_id])
    if len(radii) != expected:
        raise ParameterError(
            f"{theorem_id} expects {expected} radii "
            f"{RADII_KEYS[theorem_id]}, got {len(radii)}")
    kw = dict(spec=spec, tol=tol, grid=grid)
    if theorem_id == "T1_eq16":
        return check_excess_norm(space, model, p, radii[0], **kw)
    if theorem_id == "T1_eq17":
        return check_excess_pointwise(space, model, p, radii[0], **kw)
    if theorem_id == "T1_ext_163":
        return check_excess_norm_extended(space, model, p, radii[0], **kw)
    if theorem_id == "T1_ext_164":
        return check_excess_pointwise_extended(space, model, p, radii[0], **kw)
    if theorem_id == "T31_eq31":
        return check_area_ratio(space, model, p, radii[0], radii[1], **kw)
    if theorem_id == "T31_eq32":
        return check_area_ratio_extended(space, model, p, radii[0], radii[1], **kw)
    if theorem_id == "T2":
        return check_volume_ratio(space, model, p, radii[0], radii[1], **kw)
    if theorem_id == "T3":
        return check_annulus_ratio(space, model, p, *radii, **kw)
    if theorem_id == "C32_doubling":
        return check_volume_doubling(space, model, p, beta, *radii, **kw)
    if theorem_id == "Eq21_chain":
        upper = radii[0]
        chain_grid = grid or RadialGrid(1e-3 * upper, upper, m=4096, gamma=1.0)
        return check_differential_inequality(space, model, p, chain_grid,
                                             spec=spec, tol=tol)
    return check_diameter_bound(space, model, p, radii[0], radii[1], **kw)
