"""The standard contact structure of the round sphere and its flat cone.

Points of ``S^{2n+1}`` are unit vectors in ``R^{2n+2}`` with the complex
structure ``J`` acting as multiplication by ``i`` under the stacked
identification ``(x, y) <-> x + i y``.  The contact form is
``eta_x(v) = <Jx, v>``, the Reeb field is ``xi_x = Jx`` and ``Phi`` is
the tangential projection of ``J``.

Convention notes, pinned numerically on the sphere itself:

* the exterior derivative of a 1-form carries the 1/2 factor,
  ``d eta(V, W) = (V eta(W) - W eta(V) - eta([V, W])) / 2``, which makes
  ``d eta = g(Phi ., .)`` hold exactly;
* with that normalization the torsion identity reads
  ``N_Phi + 2 d eta (x) xi = 0``;
* metric compatibility is ``g(Phi v, Phi w) = g(v, w) - eta(v) eta(w)``
  (forced by ``Phi xi = 0``).
"""

import numpy as np

from . import riemannian as rm
from .config import FD_FIELD
from .errors import ChartError, InvalidSampleError


def complex_structure(n):
    """J on R^{2n+2} in the stacked layout: (x, y) -> (-y, x)."""
    eye = np.eye(n + 1)
    zero = np.zeros((n + 1, n + 1))
    return np.block([[zero, -eye], [eye, zero]])


class SphereSasaki:
    """Sasakian data of the unit sphere ``S^{2n+1}`` in ``R^{2n+2}``."""

    def __init__(self, n):
        self.n = int(n)
        self.dim = 2 * self.n + 1
        self.embed_dim = 2 * self.n + 2
        self.J = complex_structure(self.n)
        self.einstein_constant = 2.0 * self.n

    # -- pointwise evaluators (batched over leading axes) ------------------

    def apply_J(self, v):
        return np.asarray(v) @ self.J.T

    def eta(self, x, v):
        return np.einsum("...i,...i->...", self.apply_J(x), v)

    def reeb(self, x):
        return self.apply_J(x)

    def phi(self, x, v):
        jv = self.apply_J(v)
        return jv - np.einsum("...i,...i->...", jv, x)[..., None] * x

    def metric(self, x, v, w):
        return np.einsum("...i,...i->...", v, w)

    def project_tangent(self, x, v):
        return v - np.einsum("...i,...i->...", v, x)[..., None] * x

    # -- sampling -----------------------------------------------------------

    def random_point(self, rng, count=None):
        shape = (self.embed_dim,) if count is None else (count, self.embed_dim)
        x = rng.standard_normal(shape)
        return x / np.linalg.norm(x, axis=-1, keepdims=True)

    def random_tangent(self, rng, x):
        v = self.project_tangent(x, rng.standard_normal(x.shape))
        return v / np.linalg.norm(v, axis=-1, keepdims=True)

    def tangent_basis(self, x):
        """Orthonormal basis of T_x M with the Reeb vector first."""
        xi = self.reeb(x)
        # Householder map sending e1 to x gives a deterministic completion
        # of {x} to an orthonormal basis of the ambient space.
        e1 = np.zeros(self.embed_dim)
        e1[0] = 1.0
        w = x - e1
        nw = np.linalg.norm(w)
        if nw < 1e-12:
            H = np.eye(self.embed_dim)
        else:
            w = w / nw
            H = np.eye(self.embed_dim) - 2.0 * np.outer(w, w)
        cols = [H[:, k] for k in range(1, self.embed_dim)]
        # replace the column closest to xi and re-orthogonalize against xi
        basis = [xi]
        for c in cols:
            v = c - np.dot(c, xi) * xi
            for b in basis[1:]:
                v = v - np.dot(v, b) * b
            nv = np.linalg.norm(v)
            if nv > 1e-8:
                basis.append(v / nv)
            if len(basis) == self.dim:
                break
        return np.array(basis)

    def graph_chart(self, x):
        """Riemannian chart of the sphere centered at ``x`` (Reeb-adapted)."""
        x = np.asarray(x, dtype=float)
        if abs(np.linalg.norm(x) - 1.0) > 1e-8:
            raise ChartError("chart base point must lie on the unit sphere")
        basis = self.tangent_basis(x)
        return rm.sphere_graph_chart(x, basis.T)


# ---------------------------------------------------------------------------
# field extensions and first-order contact operations


def _extend(v, x):
    """Projected-constant extension of a tangent vector: V(p) = v - <v,p> p."""
    v = np.asarray(v, dtype=float)

    def field(p):
        return v - np.dot(v, p) * p

    return field


def _reeb_field(S):
    return lambda p: S.apply_J(p)


def _fd_dir(F, x, u, h=FD_FIELD):
    return (F(x + h * u) - F(x - h * u)) / (2.0 * h)


def _bracket(V, W, x, h=FD_FIELD):
    return _fd_dir(W, x, V(x), h) - _fd_dir(V, x, W(x), h)


def contact_two_form(S, V, W, x, h=FD_FIELD):
    """d eta (V, W) at x, with the 1/2 normalization."""
    f1 = _fd_dir(lambda p: np.dot(S.apply_J(p), W(p)), x, V(x), h)
    f2 = _fd_dir(lambda p: np.dot(S.apply_J(p), V(p)), x, W(x), h)
    lie = _bracket(V, W, x, h)
    return 0.5 * (f1 - f2 - np.dot(S.apply_J(x), lie))


def _phi_field(S, V):
    def field(p):
        jv = S.apply_J(V(p))
        return jv - (np.dot(jv, p) / np.dot(p, p)) * p

    return field


def nijenhuis(S, V, W, x, h=FD_FIELD):
    """Torsion N_Phi(V, W) at x via finite differences on extended fields."""
    pv, pw = _phi_field(S, V), _phi_field(S, W)
    t1 = S.phi(x, S.phi(x, _bracket(V, W, x, h)))
    t2 = _bracket(pv, pw, x, h)
    t3 = S.phi(x, _bracket(pv, W, x, h))
    t4 = S.phi(x, _bracket(V, pw, x, h))
    return t1 + t2 - t3 - t4


def sample_tangent_triples(S, count, seed=0):
    """Seeded (point, tangent, tangent) triples for the axiom suite."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        x = S.random_point(rng)
        out.append((x, S.random_tangent(rng, x), S.random_tangent(rng, x)))
    return out


def verify_sasaki_axioms(S, samples, h=FD_FIELD):
    """Max residual of each structure identity over the samples.

    Returns a dict with one entry per axiom.  Sample vectors must be
    tangent (``|<x, v>| <= 1e-8``) and points must be unit.
    """
    res = {
        "eta_reeb": 0.0,
        "reeb_contraction": 0.0,
        "phi_square": 0.0,
        "metric_compatibility": 0.0,
        "deta_phi": 0.0,
        "normality": 0.0,
    }
    for x, v, w in samples:
        if abs(np.linalg.norm(x) - 1.0) > 1e-12:
            raise InvalidSampleError("sample point is not on the unit sphere")
        for vec in (v, w):
            if abs(np.dot(vec, x)) > 1e-8:
                raise InvalidSampleError("sample vector is not tangent")
        xi = S.reeb(x)
        V, W = _extend(v, x), _extend(w, x)
        res["eta_reeb"] = max(res["eta_reeb"], abs(S.eta(x, xi) - 1.0))
        res["reeb_contraction"] = max(
            res["reeb_contraction"], abs(contact_two_form(S, _reeb_field(S), W, x, h))
        )
        res["phi_square"] = max(
            res["phi_square"],
            float(np.max(np.abs(S.phi(x, S.phi(x, v)) + v - S.eta(x, v) * xi))),
        )
        res["metric_compatibility"] = max(
            res["metric_compatibility"],
            abs(
                S.metric(x, S.phi(x, v), S.phi(x, w))
                - S.metric(x, v, w)
                + S.eta(x, v) * S.eta(x, w)
            ),
        )
        deta = contact_two_form(S, V, W, x, h)
        res["deta_phi"] = max(res["deta_phi"], abs(deta - S.metric(x, S.phi(x, v), w)))
        # factor 2 matches the 1/2 exterior-derivative normalization
        res["normality"] = max(
            res["normality"],
            float(np.max(np.abs(nijenhuis(S, V, W, x, h) + 2.0 * deta * xi))),
        )
    return res


def eta_einstein_residual(S, x, constant=None):
    """Entrywise residual of Ric = A g + (2n - A) eta (x) eta at ``x``.

    Evaluated over the Reeb-adapted tangent basis of the graph chart
    centered at ``x``, where the chart metric is the identity.
    """
    A = S.einstein_constant if constant is None else float(constant)
    chart = S.graph_chart(x)
    data = rm.riemann_ricci(chart, np.zeros(S.dim))
    g0 = np.eye(S.dim)
    eta_components = np.array(
        [S.eta(x, chart.tangent_basis[:, k]) for k in range(S.dim)]
    )
    target = A * g0 + (2.0 * S.n - A) * np.outer(eta_components, eta_components)
    return float(np.max(np.abs(data.ricci - target)))


# ---------------------------------------------------------------------------
# the flat cone


class SphereCone:
    """Kaehler cone over the round sphere, realized as ``R^{2n+2} - {0}``.

    Cone points ``(x, r)`` are identified with ``y = r x``; a vector
    tangent to the sphere factor at ``(x, r)`` corresponds to the ambient
    vector ``r v``.  The cone metric is the flat Euclidean one, so the
    Levi-Civita connection is the directional derivative and the
    curvature vanishes identically.
    """

    def __init__(self, base):
        self.base = base
        self.n = base.n
        self.J = base.J

    def point(self, x, r):
        return float(r) * np.asarray(x, dtype=float)

    def unit_radial(self, y):
        return y / np.linalg.norm(y)

    def metric(self, V, W):
        return float(np.dot(V, W))

    def nabla(self, field, y, v, h=FD_FIELD):
        """Flat covariant derivative of an ambient field along ``v``."""
        return (field(y + h * v) - field(y - h * v)) / (2.0 * h)

    def divergence(self, field, y, h=FD_FIELD):
        d = len(y)
        total = 0.0
        for i in range(d):
            e = np.zeros(d)
            e[i] = h
            total += (field(y + e)[i] - field(y - e)[i]) / (2.0 * h)
        return float(total)

    def ricci(self, y):
        d = len(y)
        return np.zeros((d, d))

    def restriction_residual(self, samples):
        """bar g at r = 1 restricted to sphere directions minus g."""
        worst = 0.0
        for x, v, w in samples:
            worst = max(worst, abs(self.metric(v, w) - self.base.metric(x, v, w)))
        return worst

    def connection_relation_residuals(self, samples, h=FD_FIELD):
        """The two radial-field identities of the cone connection.

        For tangent ``v`` at ``(x, r)``: ``nabla_v d_r = v / r`` and the
        derivative of the position field is the identity.
        """
        rad_unit = lambda y: y / np.linalg.norm(y)
        position = lambda y: y
        res_dr, res_id = 0.0, 0.0
        rng = np.random.default_rng(5)
        for x, v, _ in samples:
            r = rng.uniform(0.5, 2.0)
            y = self.point(x, r)
            vt = r * v  # ambient form of the sphere-tangent vector
            lhs = self.nabla(rad_unit, y, vt, h)
            res_dr = max(res_dr, float(np.max(np.abs(lhs - vt / r))))
            u = rng.standard_normal(len(y))
            lhs2 = self.nabla(position, y, u, h)
            res_id = max(res_id, float(np.max(np.abs(lhs2 - u))))
        return {"radial_gradient": res_dr, "position_identity": res_id}


def cone_ricci_flat(C, samples):
    """Max Ricci norm of the cone metric over cone-point samples."""
    worst = 0.0
    for x, r in samples:
        worst = max(worst, float(np.max(np.abs(C.ricci(C.point(x, r))))))
    return worst


def cone_ricci_flat_via_chart(S, samples):
    """Chart-based cross-check of cone flatness (slower, lower accuracy).

    The finer second-derivative step keeps the truncation error an order
    of magnitude under the 1e-5 cross-check tolerance down to r = 0.5.
    """
    worst = 0.0
    for x, r in samples:
        chart = rm.cone_chart(S.graph_chart(x))
        u = np.concatenate([np.zeros(S.dim), [float(r)]])
        data = rm.riemann_ricci(chart, u, h2=5e-4)
        worst = max(worst, float(np.max(np.abs(data.ricci))))
    return worst


def defective_cone_ricci(S, samples):
    """Negative control: Ricci norm of the wrong metric r^2 g + r^2 dr^2."""
    worst = 0.0
    for x, r in samples:
        chart = rm.scaled_cone_chart(S.graph_chart(x))
        u = np.concatenate([np.zeros(S.dim), [float(r)]])
        worst = max(worst, float(np.max(np.abs(rm.riemann_ricci(chart, u).ricci))))
    return worst
