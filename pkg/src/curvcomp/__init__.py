"""Curvature-comparison toolkit for weighted rotationally symmetric spaces.

The package evaluates both sides of the comparison estimates that hold
under integral bounds on the generalized quasi-Einstein tensor
Ric + Hess f - mu df (x) df: mean-curvature excess norms, area and volume
ratio drifts, annulus comparison, conditional volume doubling, and a
diameter probe.  Everything is double precision with explicit tolerances.
"""

__version__ = "0.1.0"

from .checks import (CheckReport, THEOREM_IDS, check_annulus_ratio,
                     check_area_ratio, check_area_ratio_extended,
                     check_diameter_bound, check_differential_inequality,
                     check_excess_norm, check_excess_norm_extended,
                     check_excess_pointwise, check_excess_pointwise_extended,
                     check_volume_doubling, check_volume_ratio, run_check)
from .errors import (ConfigError, CurvCompError, DomainError, ParameterError,
                     QuadratureError)
from .model_space import (ConstantRequest, ModelParams, annulus_comparison_constant,
                          annulus_volume, area, area_comparison_constant,
                          ball_comparison_constant, ball_volume,
                          diameter_threshold, doubling_threshold,
                          mean_curvature, sn, unit_sphere_measure)
from .norms import normalized_deficit_norm, weighted_lp_norm
from .quadrature import (QuadratureSpec, RadialGrid, integrate_graded,
                         power_weighted_integral)
from .warped import (BUILTIN_FAMILIES, DeficitProfile, RadialFunction,
                     WarpedSpace, curvature_deficit, deficit_profile,
                     flat_space, gaussian_flat_space, hyperbolic_space,
                     mean_curvature_excess, perturbed_sphere_space,
                     quasi_einstein_eigenvalues, smallest_eigenvalue,
                     space_from_table, sphere_space, weighted_annulus_volume,
                     weighted_area, weighted_mean_curvature, weighted_volume)

__all__ = [name for name in dir() if not name.startswith("_")]
