"""Structure-identity suites on the round spheres S^3 and S^5."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from legspec import sasaki as sk
from legspec.errors import ChartError, InvalidSampleError


@pytest.fixture(scope="module", params=[1, 2], ids=["s3", "s5"])
def sphere(request):
    return sk.SphereSasaki(request.param)


class TestAxioms:
    def test_residuals_over_seeded_samples(self, sphere):
        samples = sk.sample_tangent_triples(sphere, 50, seed=101)
        res = sk.verify_sasaki_axioms(sphere, samples)
        assert set(res) == {
            "eta_reeb",
            "reeb_contraction",
            "phi_square",
            "metric_compatibility",
            "deta_phi",
            "normality",
        }
        for name, value in res.items():
            assert value <= 1e-7, name

    def test_reeb_insertion_vanishes(self, sphere):
        # iota_xi d eta = 0 checked with v replaced by the Reeb vector
        rng = np.random.default_rng(3)
        x = sphere.random_point(rng)
        w = sphere.random_tangent(rng, x)
        val = sk.contact_two_form(sphere, sk._reeb_field(sphere), sk._extend(w, x), x)
        assert abs(val) <= 1e-8

    def test_zero_vector_residuals_vanish(self, sphere):
        rng = np.random.default_rng(4)
        x = sphere.random_point(rng)
        z = np.zeros(sphere.embed_dim)
        res = sk.verify_sasaki_axioms(sphere, [(x, z, z)])
        assert res["metric_compatibility"] == 0.0
        assert res["deta_phi"] == 0.0

    def test_non_tangent_sample_rejected(self, sphere):
        rng = np.random.default_rng(5)
        x = sphere.random_point(rng)
        with pytest.raises(InvalidSampleError):
            sk.verify_sasaki_axioms(sphere, [(x, x.copy(), x.copy())])


class TestPointwiseStructure:
    def test_reeb_is_jx_and_eta_is_its_dual(self, sphere):
        rng = np.random.default_rng(6)
        for _ in range(100):
            x = sphere.random_point(rng)
            v = sphere.random_tangent(rng, x)
            assert_allclose(sphere.reeb(x), sphere.apply_J(x), atol=0.0)
            assert_allclose(sphere.eta(x, v), np.dot(sphere.apply_J(x), v), atol=0.0)

    def test_phi_is_tangential_projection_of_j(self, sphere):
        rng = np.random.default_rng(7)
        for _ in range(20):
            x = sphere.random_point(rng)
            v = sphere.random_tangent(rng, x)
            jv = sphere.apply_J(v)
            expected = jv - np.dot(jv, x) * x
            assert np.max(np.abs(sphere.phi(x, v) - expected)) <= 1e-12

    def test_j_squares_to_minus_identity(self, sphere):
        assert_allclose(sphere.J @ sphere.J, -np.eye(sphere.embed_dim), atol=0.0)


class TestEtaEinstein:
    def test_round_spheres_have_constant_2n(self, sphere):
        rng = np.random.default_rng(8)
        x = sphere.random_point(rng)
        assert sk.eta_einstein_residual(sphere, x) <= 1e-5

    def test_wrong_constant_is_detected(self, sphere):
        # with A' = A + 1 both discrepancies are order one and the
        # adapted-basis residual is exactly 1 up to discretization error
        rng = np.random.default_rng(9)
        x = sphere.random_point(rng)
        res = sk.eta_einstein_residual(sphere, x, constant=sphere.einstein_constant + 1)
        assert_allclose(res, 1.0, atol=1e-5)

    def test_off_sphere_point_raises(self, sphere):
        with pytest.raises(ChartError):
            sk.eta_einstein_residual(sphere, 1.5 * np.eye(sphere.embed_dim)[0])


class TestCone:
    def test_metric_restriction_matches_base(self, sphere):
        cone = sk.SphereCone(sphere)
        samples = sk.sample_tangent_triples(sphere, 100, seed=10)
        assert cone.restriction_residual(samples) <= 1e-12

    def test_connection_relations(self, sphere):
        cone = sk.SphereCone(sphere)
        samples = sk.sample_tangent_triples(sphere, 30, seed=11)
        res = cone.connection_relation_residuals(samples)
        assert res["radial_gradient"] <= 1e-8
        assert res["position_identity"] <= 1e-8

    def test_flat_evaluator_ricci(self, sphere):
        cone = sk.SphereCone(sphere)
        rng = np.random.default_rng(12)
        pts = [(sphere.random_point(rng), rng.uniform(0.5, 2.0)) for _ in range(5)]
        assert sk.cone_ricci_flat(cone, pts) <= 1e-8

    def test_chart_cross_check(self, sphere):
        rng = np.random.default_rng(13)
        pts = [(sphere.random_point(rng), 1.5)]
        assert sk.cone_ricci_flat_via_chart(sphere, pts) <= 1e-5

    def test_wrong_cone_metric_fails(self, sphere):
        rng = np.random.default_rng(14)
        pts = [(sphere.random_point(rng), 1.5)]
        assert sk.defective_cone_ricci(sphere, pts) >= 0.1
