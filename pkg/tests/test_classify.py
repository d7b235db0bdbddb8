"""Vector-field taxonomy, quasi-Einstein fits, and warped-product detection."""

import numpy as np
import pytest

from concirc.classify import (
    RicciData,
    classify_point,
    classify_quasi_einstein,
    classify_vector,
    einstein_type,
    grw_detect,
    grw_identity_suite,
    perfect_fluid_kind,
    quasi_einstein_equivalences,
)
from concirc.connection import build_connection
from concirc.curvature import curvature_family
from concirc.geometry import MetricSpec, VectorFieldSpec

COORDS4 = ("t", "x", "y", "z")


def _diag_metric(coords, entries):
    n = len(coords)
    rows = [["0"] * n for _ in range(n)]
    for i, e in enumerate(entries):
        rows[i][i] = e
    return MetricSpec.from_strings(coords, rows)


DESITTER = _diag_metric(COORDS4, ["-1", "exp(2*t)", "exp(2*t)", "exp(2*t)"])
MINKOWSKI = _diag_metric(COORDS4, ["-1", "1", "1", "1"])
FLRW_LINEAR = _diag_metric(COORDS4, ["-1", "t^2", "t^2", "t^2"])

P_TIME = VectorFieldSpec.from_strings(COORDS4, ["1", "0", "0", "0"])
P_SPACE = VectorFieldSpec.from_strings(COORDS4, ["0", "1", "0", "0"])
P_FLRW = VectorFieldSpec.from_strings(
    COORDS4, ["t/(1 + (t^2)/2)", "0", "0", "0"])

PT = np.array([0.3, 0.4, -0.2, 0.7])
PT_FLRW = np.array([0.9, 0.1, -0.3, 0.25])

MINK_G = np.diag([-1.0, 1.0, 1.0, 1.0])
UNIT_PI = np.array([-1.0, 0.0, 0.0, 0.0])


class TestVectorTaxonomy:
    def test_position_field_is_concurrent(self):
        m = _diag_metric(("u", "v", "w"), ["1", "1", "1"])
        p = VectorFieldSpec.from_strings(("u", "v", "w"), ["u", "v", "w"])
        tax = classify_vector(m, p, np.array([0.4, -0.7, 1.1]))
        assert not tax.indeterminate
        assert tax.torse_forming
        assert tax.omega_hat == pytest.approx(1.0, abs=1e-12)
        assert tax.concurrent
        assert tax.torqued
        assert tax.concircular_fialkow
        assert tax.concircular_yano
        assert not tax.recurrent
        assert not tax.parallel
        assert not tax.geodesic
        assert tax.conformal_killing
        assert tax.conformal_factor == pytest.approx(1.0, abs=1e-12)
        assert not tax.killing

    def test_rotation_field_is_killing_but_not_torse_forming(self):
        m = _diag_metric(("u", "v"), ["1", "1"])
        p = VectorFieldSpec.from_strings(("u", "v"), ["0 - v", "u"])
        tax = classify_vector(m, p, np.array([0.4, -0.7]))
        assert not tax.torse_forming
        assert tax.fit_residual > 1e-3
        assert tax.killing
        assert tax.conformal_killing
        assert tax.conformal_factor == pytest.approx(0.0, abs=1e-12)

    def test_zero_field_is_indeterminate(self):
        m = _diag_metric(("u", "v"), ["1", "1"])
        p = VectorFieldSpec.from_strings(("u", "v"), ["0", "0"])
        tax = classify_vector(m, p, np.array([0.4, -0.7]))
        assert tax.indeterminate
        assert tax.omega_hat is None
        assert tax.killing is None

    def test_warp_time_generator(self):
        tax = classify_vector(DESITTER, P_TIME, PT)
        assert tax.torse_forming
        assert tax.omega_hat == pytest.approx(1.0, abs=1e-12)
        assert tax.self_torse_forming
        assert tax.unit_timelike
        assert not tax.unit_spacelike
        assert tax.unit_form_residual < 1e-12
        assert np.allclose(tax.eta_hat, [-1.0, 0.0, 0.0, 0.0], atol=1e-12)
        assert tax.geodesic
        assert not tax.torqued            # eta(P) = -1, not 0
        assert not tax.concircular_fialkow
        assert tax.concircular_yano       # the fitted eta field is closed
        assert not tax.anti_torqued
        assert not tax.conformal_killing

    def test_power_law_generator_is_self_torse_forming(self):
        tax = classify_vector(FLRW_LINEAR, P_FLRW, PT_FLRW)
        assert tax.torse_forming
        assert tax.self_torse_forming
        assert not tax.unit_timelike
        assert not tax.torqued
        assert not tax.concircular_fialkow
        assert not tax.recurrent

    def test_parallel_field_on_flat_space(self):
        tax = classify_vector(MINKOWSKI, P_SPACE, PT)
        assert tax.torse_forming
        assert tax.omega_hat == pytest.approx(0.0, abs=1e-14)
        assert tax.parallel
        assert tax.recurrent
        assert tax.concircular_fialkow
        assert tax.geodesic
        assert tax.killing
        assert tax.unit_spacelike


class TestQuasiEinsteinFit:
    def test_exact_two_parameter_data(self):
        d = RicciData(MINK_G, 2.0 * MINK_G + 3.0 * np.outer(UNIT_PI, UNIT_PI),
                      UNIT_PI)
        fit = classify_quasi_einstein(d)
        assert fit.a == pytest.approx(2.0, abs=1e-12)
        assert fit.b == pytest.approx(3.0, abs=1e-12)
        assert fit.residual < 1e-14
        assert fit.quasi_einstein
        assert not fit.einstein
        assert fit.b_identifiable

    def test_einstein_data_with_zero_form(self):
        d = RicciData(MINK_G, 5.0 * MINK_G, np.zeros(4))
        fit = classify_quasi_einstein(d)
        assert fit.a == pytest.approx(5.0, abs=1e-12)
        assert fit.b == 0.0
        assert fit.quasi_einstein
        assert fit.einstein
        assert not fit.b_identifiable

    def test_generic_data_rejected(self):
        ric = np.zeros((4, 4))
        ric[1, 2] = ric[2, 1] = 1.0
        d = RicciData(MINK_G, ric, UNIT_PI)
        fit = classify_quasi_einstein(d)
        assert not fit.quasi_einstein
        assert fit.residual > 1e-2


class TestEinsteinType:
    # Coefficient that makes the family-theta traceless tensor vanish for
    # Ric = (b + n - 1) g + b pi x pi with a unit timelike form, n = 4.
    B_BY_THETA = {0: 0.75, 4: 3.0, 5: 1.5}
    R_BY_THETA = {0: 14.25, 4: 21.0, 5: 16.5}

    @pytest.mark.parametrize("theta", [0, 4, 5])
    def test_constructed_data_passes(self, theta):
        b = self.B_BY_THETA[theta]
        ric = (b + 3.0) * MINK_G + b * np.outer(UNIT_PI, UNIT_PI)
        verdict = einstein_type(theta, RicciData(MINK_G, ric, UNIT_PI))
        assert verdict.holds
        assert verdict.residual < 1e-12

    @pytest.mark.parametrize("theta", [0, 4, 5])
    def test_wrong_family_fails(self, theta):
        other = {0: 4, 4: 5, 5: 0}[theta]
        b = self.B_BY_THETA[theta]
        ric = (b + 3.0) * MINK_G + b * np.outer(UNIT_PI, UNIT_PI)
        verdict = einstein_type(other, RicciData(MINK_G, ric, UNIT_PI))
        assert not verdict.holds

    @pytest.mark.parametrize("theta", [0, 4, 5])
    def test_perturbed_data_fails(self, theta):
        b = self.B_BY_THETA[theta]
        ric = (b + 3.0) * MINK_G + b * np.outer(UNIT_PI, UNIT_PI)
        ric = ric.copy()
        ric[1, 2] = ric[2, 1] = 1e-3
        verdict = einstein_type(theta, RicciData(MINK_G, ric, UNIT_PI))
        assert not verdict.holds

    @pytest.mark.parametrize("theta", [0, 4, 5])
    def test_equivalence_report_with_scalar_pinning(self, theta):
        b = self.B_BY_THETA[theta]
        ric = (b + 3.0) * MINK_G + b * np.outer(UNIT_PI, UNIT_PI)
        rep = quasi_einstein_equivalences(
            theta, RicciData(MINK_G, ric, UNIT_PI))
        assert rep.e_holds and rep.form_holds and rep.consistent
        assert rep.r == pytest.approx(self.R_BY_THETA[theta], abs=1e-10)
        assert rep.grw_kind_r == pytest.approx(
            self.R_BY_THETA[theta], abs=1e-10)
        assert rep.grw_kind_matches

    def test_five_dimensional_scalar_constant(self):
        g = np.diag([-1.0, 1.0, 1.0, 1.0, 1.0])
        pi = np.array([-1.0, 0.0, 0.0, 0.0, 0.0])
        b = 4.0  # family-4 coefficient in dimension five
        ric = (b + 4.0) * g + b * np.outer(pi, pi)
        rep = quasi_einstein_equivalences(4, RicciData(g, ric, pi))
        assert rep.e_holds and rep.form_holds
        assert rep.r == pytest.approx(36.0, abs=1e-10)
        assert rep.grw_kind_matches

    def test_bundle_source_accepted(self):
        bundle = curvature_family(build_connection(DESITTER, P_TIME, PT))
        assert einstein_type(1, bundle).holds
        assert einstein_type("g", bundle).holds
        assert not einstein_type(4, bundle).holds


class TestWarpedProductDetection:
    def test_exponential_warp_passes(self):
        rep = grw_detect(build_connection(DESITTER, P_TIME, PT))
        assert rep.passes
        assert rep.lorentzian
        assert rep.unit_timelike
        assert rep.generator_residual < 1e-12
        assert rep.omega == pytest.approx(1.0, abs=1e-12)
        assert rep.omega_is_one

    def test_flat_translation_fails(self):
        rep = grw_detect(build_connection(MINKOWSKI, P_SPACE, PT))
        assert not rep.passes
        assert not rep.unit_timelike

    def test_power_law_generator_fails(self):
        rep = grw_detect(build_connection(FLRW_LINEAR, P_FLRW, PT_FLRW))
        assert not rep.passes

    def test_identity_suite_on_detected_geometry(self):
        bundle = curvature_family(build_connection(DESITTER, P_TIME, PT))
        suite = grw_identity_suite(bundle)
        assert len(suite) == 15
        assert max(suite.values()) < 1e-11

    def test_fluid_coefficients_on_detected_geometry(self):
        bundle = curvature_family(build_connection(DESITTER, P_TIME, PT))
        rep = perfect_fluid_kind(bundle)
        assert rep.a_minus_b == pytest.approx(3.0, abs=1e-10)
        assert rep.a_minus_b_holds
        assert rep.rewrite_residual < 1e-12
        assert rep.fits["g"].a == pytest.approx(3.0, abs=1e-10)
        assert rep.fits["g"].b == pytest.approx(0.0, abs=1e-10)
        assert all(f.quasi_einstein for f in rep.fits.values())


class TestPointClassification:
    def test_full_report_on_warped_geometry(self):
        bundle = curvature_family(build_connection(DESITTER, P_TIME, PT))
        rep = classify_point(DESITTER, P_TIME, PT, bundle)
        assert rep.concircular
        assert rep.concircular_residual < 1e-12
        assert rep.grw.passes
        assert rep.grw_identities is not None
        assert rep.fluid is not None
        holds = {t: v.holds for t, v in rep.kinds.items()}
        assert holds == {"g": True, 0: False, 1: True, 2: True,
                         3: True, 4: False, 5: False}

    def test_detection_gated_sections_absent_off_condition(self):
        bundle = curvature_family(build_connection(MINKOWSKI, P_SPACE, PT))
        rep = classify_point(MINKOWSKI, P_SPACE, PT, bundle)
        assert not rep.concircular
        assert not rep.grw.passes
        assert rep.grw_identities is None
        assert rep.fluid is None
        assert rep.taxonomy.parallel
