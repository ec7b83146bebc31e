"""Corrected cone operators: algebra, identities, family coincidence."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from legspec import immersions as im
from legspec import moment as mo
from legspec import nomizu as nz
from legspec import sasaki as sk
from legspec.errors import InvalidFieldError, PreconditionError


def unit_point(n, seed=0):
    S = sk.SphereSasaki(n)
    return S.random_point(np.random.default_rng(seed))


class TestConeField:
    def test_from_automorphism_keeps_matrix(self):
        X = mo.algebra_basis(2)[5]
        K = nz.ConeField.from_automorphism(X)
        assert_allclose(K.matrix, X.generator, atol=0.0)

    def test_killing_and_holomorphy_residuals(self):
        rng = np.random.default_rng(1)
        pts = [rng.uniform(0.5, 2.0) * unit_point(2, seed=s) for s in range(5)]
        for X in mo.algebra_basis(2):
            res = nz.cone_field_residuals(nz.ConeField.from_automorphism(X), pts)
            assert res["killing"] <= 1e-7
            assert res["holomorphic"] <= 1e-7

    def test_non_skew_matrix_fails_check(self):
        M = np.zeros((6, 6))
        M[0, 1] = 1.0  # not skew, not J-commuting
        K = nz.ConeField(M, 2, "broken")
        with pytest.raises(InvalidFieldError):
            nz.nomizu_operator(K, unit_point(2))


class TestNomizuOperator:
    def test_traceless_field_is_fixed_point(self):
        # for generators with trace(J M) = 0 the correction vanishes
        for X in mo.traceless_basis(2):
            K = nz.ConeField.from_automorphism(X)
            op = nz.nomizu_operator(K, unit_point(2, seed=3))
            assert abs(op.div_jk) <= 1e-10
            assert np.max(np.abs(op.matrix - K.matrix)) <= 1e-10

    def test_reeb_generator_maps_to_zero(self):
        # K = J: div(JK) = trace(J J) = -(2n+2) cancels the field exactly
        n = 2
        K = nz.ConeField.from_automorphism(mo.reeb_generator(n))
        op = nz.nomizu_operator(K, 1.4 * unit_point(n, seed=4))
        assert_allclose(op.div_jk, -(2 * n + 2), atol=1e-9)
        assert np.max(np.abs(op.matrix)) <= 1e-9

    def test_zero_field(self):
        K = nz.ConeField(np.zeros((6, 6)), 2, "zero")
        op = nz.nomizu_operator(K, unit_point(2, seed=5))
        assert np.max(np.abs(op.matrix)) == 0.0

    def test_operator_invariants_at_200_points(self):
        J = sk.complex_structure(2)
        rng = np.random.default_rng(6)
        S = sk.SphereSasaki(2)
        points = [rng.uniform(0.5, 2.0) * S.random_point(rng) for _ in range(200)]
        for X in mo.algebra_basis(2):
            K = nz.ConeField.from_automorphism(X)
            for p in points:
                res = nz.nomizu_operator(K, p).residuals(J)
                assert res["skew"] <= 1e-8
                assert res["j_commutes"] <= 1e-8
                assert res["j_trace"] <= 1e-8


class TestNomizuFunction:
    def test_reeb_generator_gives_zero_function(self):
        K = nz.ConeField.from_automorphism(mo.reeb_generator(2))
        f = nz.nomizu_function(K)
        x = sk.SphereSasaki(2).random_point(np.random.default_rng(7), count=20)
        assert np.max(np.abs(f.ambient(x))) <= 1e-9

    def test_traceless_field_recovers_radial_pairing(self):
        # <M x, J x> at unit points
        S = sk.SphereSasaki(2)
        x = S.random_point(np.random.default_rng(8), count=50)
        for X in mo.traceless_basis(2):
            K = nz.ConeField.from_automorphism(X)
            f = nz.nomizu_function(K)
            expected = np.einsum("ki,ki->k", x @ K.matrix.T, x @ K.J.T)
            assert np.max(np.abs(f.ambient(x) - expected)) <= 1e-9

    def test_radius_independence(self):
        x = unit_point(2, seed=9)
        for X in mo.algebra_basis(2):
            K = nz.ConeField.from_automorphism(X)
            assert nz.radial_independence_residual(K, x, radii=(0.7, 1.3)) <= 1e-9


class TestOperatorIdentities:
    def test_geodesic_sphere_diag_difference(self):
        L = im.geodesic_sphere(2)
        X = mo.traceless_basis(2)[0]
        res = nz.operator_identity_residuals(nz.ConeField.from_automorphism(X), L)
        for name, value in res.items():
            assert value <= 1e-7, name

    def test_torus_full_basis(self):
        L = im.clifford_torus()
        for X in mo.algebra_basis(2):
            res = nz.operator_identity_residuals(nz.ConeField.from_automorphism(X), L)
            assert res["frame_sum"] <= 1e-7, X.label
            assert res["div_constancy"] <= 1e-8, X.label

    def test_zero_field_residuals_vanish(self):
        L = im.geodesic_sphere(2)
        res = nz.operator_identity_residuals(nz.ConeField(np.zeros((6, 6)), 2, "zero"), L)
        assert all(v == 0.0 for v in res.values())

    def test_div_constancy_variance(self):
        S = sk.SphereSasaki(2)
        cone = sk.SphereCone(S)
        rng = np.random.default_rng(10)
        K = nz.ConeField.from_automorphism(mo.algebra_basis(2)[0])
        divs = [
            cone.divergence(lambda p: K.J @ K(p), rng.uniform(0.5, 2.0) * S.random_point(rng))
            for _ in range(50)
        ]
        assert np.var(divs) <= 1e-14

    def test_frame_sum_scales_with_radius(self):
        L = im.clifford_torus()
        K = nz.ConeField.from_automorphism(mo.algebra_basis(2)[4])
        res = nz.operator_identity_residuals(K, L, radii=(0.5, 1.0, 2.0))
        assert res["frame_sum"] <= 1e-7

    def test_frame_sum_invariant_under_frame_remixing(self):
        # the trace over the tangent space cannot see the frame choice
        rng = np.random.default_rng(23)
        Q, _ = np.linalg.qr(rng.standard_normal((2, 2)))
        L = im.clifford_torus()
        K = nz.ConeField.from_automorphism(mo.algebra_basis(2)[4])
        a = nz.operator_identity_residuals(K, L)["frame_sum"]
        b = nz.operator_identity_residuals(K, L.with_frame_mixer(Q))["frame_sum"]
        assert abs(a - b) <= 1e-8

    def test_non_legendrian_input_rejected(self):
        # latitude circle: an honest immersion that is not Legendrian
        def chart_map(u):
            t = u[..., 0]
            c = np.cos(0.4)
            s = np.sin(0.4)
            return np.stack(
                [c * np.cos(t), s * np.ones_like(t), c * np.sin(t), np.zeros_like(t)],
                axis=-1,
            )

        def jacobian(u):
            t = u[..., 0]
            c = np.cos(0.4)
            zeros = np.zeros_like(t)
            return np.stack([-c * np.sin(t), zeros, c * np.cos(t), zeros], axis=-1)[..., None]

        bad = im.LegendrianImmersion(
            "latitude-circle", 1, chart_map, jacobian, im.PeriodicGridDomain(1), 128
        )
        assert bad.legendrian_residual() > 1e-3
        K = nz.ConeField.from_automorphism(mo.algebra_basis(1)[0])
        with pytest.raises(PreconditionError):
            nz.operator_identity_residuals(K, bad)


class TestFamilyCoincidence:
    @pytest.mark.parametrize(
        "name", ["great-circle-s3", "geodesic-sphere-n2", "geodesic-sphere-n3", "clifford-torus-s5"]
    )
    def test_families_agree_pointwise(self, name):
        L = im.get_immersion(name)
        for X in mo.algebra_basis(L.n):
            res = nz.family_coincidence_residuals(X, L)
            assert res["vs_contact_plus_trace"] <= 1e-8, X.label
            assert res["vs_moment_family"] <= 1e-8, X.label

    def test_reeb_generator_both_families_vanish(self):
        L = im.geodesic_sphere(2)
        X = mo.reeb_generator(2)
        K = nz.ConeField.from_automorphism(X)
        u, _ = L.nodes()
        assert np.max(np.abs(nz.nomizu_function(K).ambient(L.points(u)))) <= 1e-9
        assert np.max(np.abs(mo.moment_function(L, X).on_chart(u))) <= 1e-12

    def test_traceless_diag_on_geodesic_sphere_needs_no_mean(self):
        # trace(J M) = 0 there, so the cone function equals the raw
        # contact pairing with no correction
        L = im.geodesic_sphere(2)
        X = mo.traceless_basis(2)[0]
        K = nz.ConeField.from_automorphism(X)
        u, _ = L.nodes()
        pts = L.points(u)
        S = L.ambient
        assert np.max(
            np.abs(nz.nomizu_function(K).ambient(pts) - S.eta(pts, X(pts)))
        ) <= 1e-10
