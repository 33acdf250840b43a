import math

import numpy as np
import pytest

import curvcomp as cc
from curvcomp.checks import (_cumulative_deficit, _pointwise_coefficient,
                             params_hash)

H_SPHERE = 2.0 / 3.0


def model_for(space, H):
    return cc.ModelParams(n=space.n, k=space.k, H=H, omega=space.omega)


def relative_margin(report):
    scale = abs(report.lhs) + abs(report.rhs)
    return report.margin / scale if scale > 0 else 0.0


class TestExcessNorm:
    def test_sphere_both_sides_vanish(self, sphere):
        rep = cc.check_excess_norm(sphere, model_for(sphere, H_SPHERE), 3.0, 1.0)
        assert rep.passed and rep.status == "pass"
        assert rep.lhs == 0.0
        assert rep.rhs < 1e-5

    def test_gaussian_regression(self, gaussian):
        rep = cc.check_excess_norm(gaussian, model_for(gaussian, 0.0), 3.0, 2.0)
        assert rep.passed
        assert rep.lhs == 0.0
        assert rep.rhs == pytest.approx(4.464582801331687, rel=1e-6)

    def test_perturbed_sphere(self, perturbed):
        rep = cc.check_excess_norm(perturbed, model_for(perturbed, H_SPHERE),
                                   3.0, 1.0)
        assert rep.passed

    def test_nonzero_excess_still_passes(self):
        space = cc.perturbed_sphere_space(-0.5, 2.0)
        rep = cc.check_excess_norm(space, model_for(space, H_SPHERE), 3.0, 1.8)
        assert rep.passed
        assert rep.lhs > 0.1
        assert rep.lhs < rep.rhs

    def test_half_period_enforced(self, sphere):
        with pytest.raises(cc.DomainError):
            cc.check_excess_norm(sphere, model_for(sphere, H_SPHERE), 3.0, 2.5)

    def test_exponent_enforced(self, sphere):
        with pytest.raises(cc.ParameterError):
            cc.check_excess_norm(sphere, model_for(sphere, H_SPHERE), 2.0, 1.0)

    def test_model_space_mismatch(self, sphere):
        with pytest.raises(cc.ParameterError):
            cc.check_excess_norm(sphere, cc.ModelParams(n=3, k=2.0, H=0.0),
                                 3.0, 1.0)


class TestExcessPointwise:
    def test_flat_all_nodes(self, flat):
        rep = cc.check_excess_pointwise(flat, model_for(flat, 0.0), 3.0, 2.0)
        assert rep.passed
        assert rep.lhs == 0.0

    def test_gaussian_all_nodes(self, gaussian):
        rep = cc.check_excess_pointwise(gaussian, model_for(gaussian, 0.0),
                                        3.0, 2.0)
        assert rep.passed

    def test_sphere_above_matching_level(self, sphere):
        # H slightly above the zero-deficit level: deficit positive, the
        # bound must still hold
        rep = cc.check_excess_pointwise(sphere, model_for(sphere, 0.70),
                                        3.0, 1.0)
        assert rep.passed
        assert cc.normalized_deficit_norm(sphere, 3.0, 0.70, 1.0) > 0.09

    def test_worst_node_reported_on_failure_side(self):
        # nonzero excess exercises the per-node comparison machinery
        space = cc.perturbed_sphere_space(-0.5, 2.0)
        rep = cc.check_excess_pointwise(space, model_for(space, H_SPHERE),
                                        3.0, 1.8)
        assert rep.passed
        assert "worst_node" in rep.params

    def test_consistency_with_norm_form(self, gaussian, perturbed):
        # the cumulative right side at r equals the norm-based coefficient
        # form, cross-checked through an independent integration route
        for space, H in ((gaussian, 0.25), (perturbed, H_SPHERE)):
            model = model_for(space, H)
            p = 3.0
            grid = cc.RadialGrid(space.r_pole, 1.8, m=4096, gamma=5.0)
            nodes = grid.nodes()
            cum = _cumulative_deficit(space, model, p, nodes)
            rhs_cum = _pointwise_coefficient(space.N, p) * cum[-1]
            dn = cc.weighted_lp_norm(
                space, lambda t: cc.curvature_deficit(space, H, t), p,
                float(nodes[-1]))
            rhs_norm = _pointwise_coefficient(space.N, p) * dn ** p
            assert rhs_cum == pytest.approx(rhs_norm, rel=1e-8)


class TestExtendedRange:
    def test_requires_extended_window(self, sphere):
        model = model_for(sphere, H_SPHERE)
        with pytest.raises(cc.DomainError):
            cc.check_excess_norm_extended(sphere, model, 3.0, 1.0)
        with pytest.raises(cc.DomainError):
            cc.check_excess_norm_extended(sphere, model, 3.0, model.period)
        flat_model = model_for(sphere, 0.0)
        with pytest.raises(cc.DomainError):
            cc.check_excess_norm_extended(sphere, flat_model, 3.0, 1.0)

    def test_zero_deficit_sphere(self, sphere):
        model = model_for(sphere, H_SPHERE)
        r = 0.75 * model.period
        rep = cc.check_excess_norm_extended(sphere, model, 3.0, r)
        assert rep.passed and rep.lhs == 0.0
        rep = cc.check_excess_pointwise_extended(sphere, model, 3.0, r)
        assert rep.passed and rep.lhs == 0.0

    def test_perturbed_sphere(self, perturbed):
        model = model_for(perturbed, H_SPHERE)
        r = 0.75 * model.period
        assert cc.check_excess_norm_extended(perturbed, model, 3.0, r).passed
        assert cc.check_excess_pointwise_extended(perturbed, model, 3.0,
                                                  r).passed


def matched_perturbed_sphere(delta=0.05, q=2.0, H=H_SPHERE, L_frac=0.96,
                             omega=None):
    """Sphere of curvature H with the perturbing weight; its period matches
    the comparison space, so the whole extended window is available."""
    rh = math.sqrt(H)
    warp = cc.RadialFunction(lambda t: np.sin(rh * t) / rh,
                             lambda t: np.cos(rh * t),
                             lambda t: -rh * np.sin(rh * t))

    def f(t):
        return delta * (1.0 - np.cos(t)) ** q

    def f1(t):
        return delta * q * (1.0 - np.cos(t)) ** (q - 1.0) * np.sin(t)

    def f2(t):
        c, s = np.cos(t), np.sin(t)
        return delta * q * ((q - 1.0) * (1.0 - c) ** (q - 2.0) * s ** 2
                            + (1.0 - c) ** (q - 1.0) * c)

    period = math.pi / rh
    return cc.WarpedSpace(n=3, warp=warp, weight=cc.RadialFunction(f, f1, f2),
                          mu=1.0, k=1.0, L=L_frac * period, omega=omega,
                          name="matched_perturbed_sphere", closed_at=period)


class TestExtendedRangeMatchedSphere:
    def test_full_window_with_nonzero_excess(self):
        space = matched_perturbed_sphere()
        model = model_for(space, H_SPHERE)
        seen_positive_lhs = False
        for frac in (0.55, 0.65, 0.75, 0.85, 0.95):
            r = frac * model.period
            if r >= space.L:
                continue
            rep = cc.check_excess_norm_extended(space, model, 3.0, r)
            assert rep.passed, (frac, rep.lhs, rep.rhs)
            seen_positive_lhs |= rep.lhs > 0.1
            assert cc.check_excess_pointwise_extended(space, model, 3.0,
                                                      r).passed
        assert seen_positive_lhs

    def test_area_ratio_extended(self):
        space = matched_perturbed_sphere()
        model = model_for(space, H_SPHERE)
        rep = cc.check_area_ratio_extended(space, model, 3.0,
                                           0.55 * model.period,
                                           0.9 * model.period)
        assert rep.passed


class TestDifferentialInequality:
    def test_zero_excess_families(self, gaussian, perturbed):
        for space, H in ((gaussian, 0.0), (perturbed, H_SPHERE)):
            rep = cc.check_differential_inequality(space, model_for(space, H),
                                                   3.0)
            assert rep.passed
            assert rep.lhs == 0.0 and rep.rhs == 0.0

    def test_nonzero_excess(self):
        space = cc.perturbed_sphere_space(-0.5, 2.0)
        rep = cc.check_differential_inequality(space,
                                               model_for(space, H_SPHERE), 3.0)
        assert rep.passed
        # the scan must have seen genuinely active nodes
        grid = cc.RadialGrid(1e-3 * 1.88, 1.88, m=256, gamma=1.0)
        excess = cc.mean_curvature_excess(space, model_for(space, H_SPHERE),
                                          grid.nodes())
        assert excess.max() > 0.1

    def test_grid_must_stay_inside_half_period(self, sphere):
        model = model_for(sphere, H_SPHERE)
        grid = cc.RadialGrid(0.1, 3.0, m=128)
        with pytest.raises(cc.DomainError):
            cc.check_differential_inequality(sphere, model, 3.0, grid)


class TestAreaVolumeRatios:
    def test_sphere_monotone_ratio(self, sphere):
        model = model_for(sphere, H_SPHERE)
        rep = cc.check_area_ratio(sphere, model, 3.0, 0.5, 1.0)
        assert rep.passed and rep.lhs <= 0.0
        rep = cc.check_volume_ratio(sphere, model, 3.0, 0.5, 1.0)
        assert rep.passed and rep.lhs <= 0.0

    def test_gaussian_regression(self, gaussian):
        model = model_for(gaussian, 0.0)
        rep = cc.check_volume_ratio(gaussian, model, 3.0, 0.5, 1.0)
        assert rep.passed
        assert rep.margin == pytest.approx(0.3949589776172049, rel=1e-6)

    def test_gaussian_nonzero_deficit_level(self, gaussian):
        rep = cc.check_volume_ratio(gaussian, model_for(gaussian, 0.25),
                                    3.0, 0.5, 1.0)
        assert rep.passed and rep.rhs > 1.0

    def test_large_weight_nonzero_deficit(self):
        space = cc.gaussian_flat_space(a=3.0, n=3, k=1.0, mu=1.0)
        model = model_for(space, 0.0)
        rep = cc.check_volume_ratio(space, model, 3.0, 0.5, 1.0)
        assert rep.passed and rep.rhs > 0.0
        rep = cc.check_area_ratio(space, model, 3.0, 0.5, 1.0)
        assert rep.passed and rep.rhs > 0.0

    def test_small_weight_probe(self):
        space = cc.gaussian_flat_space(a=0.01, n=3, k=1.0, mu=1.0)
        rep = cc.check_volume_ratio(space, model_for(space, 0.0), 3.0, 0.5, 1.0)
        assert rep.passed
        assert rep.margin == pytest.approx(0.15795752234072546, rel=1e-6)

    def test_degenerate_radii_pass(self, sphere):
        model = model_for(sphere, H_SPHERE)
        for check in (cc.check_area_ratio, cc.check_volume_ratio):
            rep = check(sphere, model, 3.0, 1.0, 1.0)
            assert rep.passed and rep.lhs == 0.0 and rep.rhs == 0.0

    def test_radius_validation(self, sphere):
        model = model_for(sphere, H_SPHERE)
        with pytest.raises(cc.ParameterError):
            cc.check_volume_ratio(sphere, model, 3.0, 1.0, 0.5)
        with pytest.raises(cc.DomainError):
            cc.check_volume_ratio(sphere, model, 3.0, 0.5, 2.2)


class TestAnnulusRatio:
    def test_degenerate(self, sphere):
        model = model_for(sphere, H_SPHERE)
        rep = cc.check_annulus_ratio(sphere, model, 3.0, 0.3, 0.3, 0.9, 0.9)
        assert rep.passed and rep.lhs == 0.0 and rep.rhs == 0.0

    def test_gaussian(self, gaussian):
        rep = cc.check_annulus_ratio(gaussian, model_for(gaussian, 0.0), 3.0,
                                     0.2, 0.4, 0.8, 1.0)
        assert rep.passed

    def test_zero_deficit_nested(self, sphere):
        rep = cc.check_annulus_ratio(sphere, model_for(sphere, H_SPHERE), 3.0,
                                     0.2, 0.4, 0.8, 1.0)
        assert rep.passed and rep.lhs <= 1e-12

    def test_touching_radii_surfaced(self, gaussian):
        with pytest.raises(cc.QuadratureError):
            cc.check_annulus_ratio(gaussian, model_for(gaussian, 0.0), 3.0,
                                   0.2, 0.4, 0.4, 1.0)

    def test_ordering_violation(self, gaussian):
        with pytest.raises(cc.ParameterError):
            cc.check_annulus_ratio(gaussian, model_for(gaussian, 0.0), 3.0,
                                   0.4, 0.2, 0.8, 1.0)


class TestVolumeDoubling:
    def test_zero_deficit_sphere(self, sphere):
        rep = cc.check_volume_doubling(sphere, model_for(sphere, H_SPHERE),
                                       3.0, 1.1, 0.5, 1.0, 1.0)
        assert rep.status == "pass"
        assert rep.params["normalized_deficit"] < rep.params["epsilon"]

    def test_small_weight_passes_gate(self):
        space = cc.gaussian_flat_space(a=0.5, n=3, k=1.0, mu=1.0)
        rep = cc.check_volume_doubling(space, model_for(space, 0.0), 3.0, 2.0,
                                       0.5, 1.0, 1.0)
        assert rep.status == "pass"
        assert rep.lhs <= rep.rhs

    def test_large_weight_gated(self):
        space = cc.gaussian_flat_space(a=3.0, n=3, k=1.0, mu=1.0)
        rep = cc.check_volume_doubling(space, model_for(space, 0.0), 3.0, 2.0,
                                       0.5, 1.0, 1.0)
        assert rep.status == "hypothesis-not-met"
        assert not rep.passed
        assert rep.lhs >= rep.rhs  # normalized deficit vs threshold

    def test_parameter_validation(self, sphere):
        model = model_for(sphere, H_SPHERE)
        with pytest.raises(cc.ParameterError):
            cc.check_volume_doubling(sphere, model, 3.0, 1.0, 0.5, 1.0, 1.0)
        with pytest.raises(cc.ParameterError):
            cc.check_volume_doubling(sphere, model, 3.0, 2.0, 1.0, 0.5, 1.0)


class TestDiameterBound:
    def test_sphere_within_bound(self, sphere):
        rep = cc.check_diameter_bound(sphere, model_for(sphere, H_SPHERE),
                                      3.0, 1.0, 1.5)
        assert rep.passed
        assert rep.lhs == pytest.approx(math.pi)
        assert rep.rhs == pytest.approx(math.pi / math.sqrt(H_SPHERE))
        assert rep.params["drift_threshold"] > 0.0

    def test_flat_not_compact(self, flat):
        with pytest.raises(cc.DomainError):
            cc.check_diameter_bound(flat, model_for(flat, 1.0), 3.0, 1.0, 1.0)

    def test_requires_positive_curvature(self, sphere):
        with pytest.raises(cc.ParameterError):
            cc.check_diameter_bound(sphere, model_for(sphere, 0.0), 3.0,
                                    1.0, 1.0)

    def test_reports_threshold_value(self, sphere):
        rep = cc.check_diameter_bound(sphere, model_for(sphere, H_SPHERE),
                                      3.0, 1.0, 1.5)
        model = model_for(sphere, H_SPHERE)
        assert rep.params["drift_threshold"] == pytest.approx(
            cc.diameter_threshold(model, 1.0), rel=1e-12)

    def test_honest_failure_when_bound_violated(self, sphere):
        # curvature level above the sphere's own: diam = pi exceeds the
        # pi/sqrt(H) bound and the probe must say so
        rep = cc.check_diameter_bound(sphere, model_for(sphere, 1.2), 3.0,
                                      1.0, 1.2)
        assert rep.status == "fail" and not rep.passed


class TestInvariants:
    def test_omega_invariance(self):
        # identical verdicts and relative margins with the sphere measure
        # replaced by 1
        def reports(omega):
            space = cc.perturbed_sphere_space(0.05, 2.0, omega=omega)
            model = model_for(space, H_SPHERE)
            ext_space = matched_perturbed_sphere(omega=omega)
            ext_model = model_for(ext_space, H_SPHERE)
            return [
                cc.check_excess_norm(space, model, 3.0, 1.8),
                cc.check_excess_pointwise(space, model, 3.0, 1.8),
                cc.check_area_ratio(space, model, 3.0, 0.9, 1.8),
                cc.check_volume_ratio(space, model, 3.0, 0.9, 1.8),
                cc.check_annulus_ratio(space, model, 3.0, 0.36, 0.72, 1.44, 1.8),
                cc.check_volume_doubling(space, model, 3.0, 2.0, 0.9, 1.8, 1.8),
                cc.check_area_ratio_extended(ext_space, ext_model, 3.0,
                                             0.55 * ext_model.period,
                                             0.9 * ext_model.period),
                cc.check_excess_norm_extended(ext_space, ext_model, 3.0,
                                              0.75 * ext_model.period),
            ]

        for base, unit in zip(reports(None), reports(1.0)):
            assert base.status == unit.status
            assert relative_margin(base) == pytest.approx(
                relative_margin(unit), abs=1e-10)

    def test_zero_deficit_soundness_all_families(self, sphere, flat,
                                                 hyperbolic):
        for space, H in ((sphere, H_SPHERE), (flat, 0.0), (hyperbolic, -1.0)):
            model = model_for(space, H)
            reports = [
                cc.check_excess_norm(space, model, 3.0, 1.0),
                cc.check_excess_pointwise(space, model, 3.0, 1.0),
                cc.check_area_ratio(space, model, 3.0, 0.5, 1.0),
                cc.check_volume_ratio(space, model, 3.0, 0.5, 1.0),
                cc.check_annulus_ratio(space, model, 3.0, 0.2, 0.4, 0.8, 1.0),
            ]
            for rep in reports:
                assert rep.passed
                assert rep.lhs <= 1e-7 * (1.0 + abs(rep.rhs))

    def test_grid_stability(self, perturbed):
        # doubling the scan resolution and tightening the quadrature moves
        # margins by < 1e-4 relative
        model = model_for(perturbed, H_SPHERE)
        tight = cc.QuadratureSpec(abs_tol=1e-12, rel_tol=1e-11,
                                  max_refinements=22)
        for tid, radii in (("T1_eq16", (1.8,)), ("T1_eq17", (1.8,)),
                           ("T2", (0.9, 1.8)), ("T31_eq31", (0.9, 1.8)),
                           ("T3", (0.36, 0.72, 1.44, 1.8))):
            base = cc.run_check(tid, perturbed, model, 3.0, radii)
            fine_grid = cc.RadialGrid(perturbed.r_pole, radii[-1], m=8192,
                                      gamma=5.0)
            fine = cc.run_check(tid, perturbed, model, 3.0, radii,
                                spec=tight, grid=fine_grid)
            assert fine.margin == pytest.approx(
                base.margin, rel=1e-4, abs=1e-9), tid

    def test_report_shape(self, sphere):
        rep = cc.check_volume_ratio(sphere, model_for(sphere, H_SPHERE), 3.0,
                                    0.5, 1.0)
        doc = rep.to_dict()
        assert set(doc) == {"theorem_id", "params", "lhs", "rhs", "margin",
                            "pass", "tolerance", "grid_meta", "status"}
        assert doc["pass"] is (doc["lhs"] <= doc["rhs"]
                               + doc["tolerance"] * (1 + abs(doc["rhs"])))
        assert doc["margin"] == doc["rhs"] - doc["lhs"]
        # the echo is self-describing
        for key in ("space", "n", "k", "mu", "omega", "H", "p", "r", "R"):
            assert key in doc["params"]

    def test_params_hash_stable(self):
        params = {"a": 1.0, "b": "x"}
        assert params_hash(params) == params_hash({"b": "x", "a": 1.0})
        assert params_hash(params) != params_hash({"a": 1.1, "b": "x"})


class TestRunCheckDispatch:
    def test_all_ids_runnable_on_suitable_spaces(self, sphere):
        model = model_for(sphere, H_SPHERE)
        radii = {
            "T1_eq16": (1.0,),
            "T1_eq17": (1.0,),
            "T1_ext_163": (0.75 * model.period,),
            "T1_ext_164": (0.75 * model.period,),
            "T31_eq31": (0.5, 1.0),
            "T31_eq32": (0.55 * model.period, 0.75 * model.period),
            "T2": (0.5, 1.0),
            "T3": (0.2, 0.4, 0.8, 1.0),
            "C32_doubling": (0.5, 1.0, 1.0),
            "Eq21_chain": (1.8,),
            "T4_threshold": (1.0, 1.5),
        }
        for tid in cc.THEOREM_IDS:
            rep = cc.run_check(tid, sphere, model, 3.0, radii[tid])
            assert rep.theorem_id == tid
            assert rep.status == "pass", tid

    def test_unknown_id(self, sphere):
        with pytest.raises(cc.ParameterError):
            cc.run_check("T99", sphere, model_for(sphere, H_SPHERE), 3.0, (1.0,))

    def test_radii_arity(self, sphere):
        with pytest.raises(cc.ParameterError):
            cc.run_check("T2", sphere, model_for(sphere, H_SPHERE), 3.0, (1.0,))
