"""The u(n+1) automorphism algebra and the contact moment map.

Generators are stored as real ``(2n+2) x (2n+2)`` matrices in the stacked
layout, i.e. the real form of a complex skew-Hermitian matrix: skew
matrices commuting with ``J``.  The induced linear vector field
``x -> U x`` is tangent to the sphere, Killing, and preserves the contact
form; the moment map pairs it with the Reeb direction,
``mu(x)(X) = <U x, J x> = eta_x(X_x)``.
"""

import numpy as np

from .config import FD_FIELD
from .errors import InvalidFieldError, InvalidPointError, QuadratureError
from .sasaki import SphereSasaki, _bracket, _extend, _fd_dir


class AutomorphismField:
    """A sphere automorphism generator as a linear vector field."""

    def __init__(self, generator, n, label=""):
        U = np.asarray(generator, dtype=float)
        d = 2 * n + 2
        if U.shape != (d, d):
            raise InvalidFieldError(f"generator must be {d}x{d}")
        J = SphereSasaki(n).J
        if np.max(np.abs(U + U.T)) > 1e-12 or np.max(np.abs(U @ J - J @ U)) > 1e-12:
            raise InvalidFieldError(
                "generator must be skew-symmetric and commute with J"
            )
        self.generator = U
        self.n = n
        self.label = label

    def __call__(self, points):
        return np.asarray(points) @ self.generator.T

    def __repr__(self):
        return f"AutomorphismField({self.label or 'unlabeled'}, n={self.n})"


def _real_form(A, B):
    """Real matrix of the complex matrix A + iB in the stacked layout."""
    return np.block([[A, -B], [B, A]])


def algebra_basis(n):
    """The (n+1)^2 standard generators of the automorphism algebra.

    Order: imaginary diagonals, then real skew pairs, then imaginary
    symmetric pairs, each in lexicographic index order.
    """
    if n < 1:
        raise InvalidFieldError("n must be >= 1")
    m = n + 1
    basis = []
    for k in range(m):
        B = np.zeros((m, m))
        B[k, k] = 1.0
        basis.append(AutomorphismField(_real_form(np.zeros((m, m)), B), n, f"i*E[{k+1},{k+1}]"))
    for k in range(m):
        for l in range(k + 1, m):
            A = np.zeros((m, m))
            A[k, l] = 1.0
            A[l, k] = -1.0
            basis.append(AutomorphismField(_real_form(A, np.zeros((m, m))), n, f"E[{k+1},{l+1}]-E[{l+1},{k+1}]"))
    for k in range(m):
        for l in range(k + 1, m):
            B = np.zeros((m, m))
            B[k, l] = 1.0
            B[l, k] = 1.0
            basis.append(AutomorphismField(_real_form(np.zeros((m, m)), B), n, f"i*(E[{k+1},{l+1}]+E[{l+1},{k+1}])"))
    return basis


def traceless_basis(n):
    """Basis of the traceless subalgebra (su-type): diagonal differences
    replace the diagonal generators."""
    m = n + 1
    basis = []
    for k in range(m - 1):
        B = np.zeros((m, m))
        B[k, k] = 1.0
        B[k + 1, k + 1] = -1.0
        basis.append(
            AutomorphismField(
                _real_form(np.zeros((m, m)), B), n, f"i*(E[{k+1},{k+1}]-E[{k+2},{k+2}])"
            )
        )
    return basis + algebra_basis(n)[m:]


def reeb_generator(n):
    """i * Id, the generator of the Reeb flow."""
    m = n + 1
    return AutomorphismField(_real_form(np.zeros((m, m)), np.eye(m)), n, "i*Id")


def moment(x, X):
    """Contact moment pairing ``<U x, J x>`` at a unit ambient point."""
    x = np.asarray(x, dtype=float)
    norms = np.linalg.norm(x, axis=-1)
    if np.max(np.abs(norms - 1.0)) > 1e-8:
        raise InvalidPointError("moment map requires unit points")
    S = SphereSasaki(X.n)
    return np.einsum("...i,...i->...", X(x), S.apply_J(x))


class MomentFunction:
    """The mean-free moment-map function of a generator along an immersion.

    ``ambient`` evaluates the radially constant extension at arbitrary
    nonzero ambient points; ``on_chart`` evaluates at chart coordinates.
    ``mean_value`` is the quadrature mean that was subtracted.
    """

    def __init__(self, immersion, generator, mean_value):
        self.immersion = immersion
        self.generator = generator
        self.mean_value = float(mean_value)

    def ambient(self, y):
        y = np.asarray(y, dtype=float)
        xhat = y / np.linalg.norm(y, axis=-1, keepdims=True)
        return moment(xhat, self.generator) - self.mean_value

    def on_chart(self, u):
        return self.ambient(self.immersion.points(u))

    def values(self, resolution=None):
        u, _ = self.immersion.nodes(resolution)
        return self.on_chart(u)


def moment_function(L, X, resolution=None):
    """Moment-map function on ``L`` with its quadrature mean removed."""
    vol = L.volume(resolution)
    if vol <= 0.0:
        raise QuadratureError("zero volume")
    raw = lambda u: moment(L.points(u), X)
    mean = L.integrate(raw, resolution) / vol
    return MomentFunction(L, X, mean)


def automorphism_residuals(S, X, samples, h=FD_FIELD):
    """Killing and contact-form Lie-derivative residuals of a generator."""
    killing, contact = 0.0, 0.0
    for x, v, w in samples:
        V, W = _extend(v, x), _extend(w, x)
        xv = _bracket(X, V, x, h)
        xw = _bracket(X, W, x, h)
        dg = _fd_dir(lambda p: np.dot(V(p), W(p)), x, X(x), h)
        killing = max(killing, abs(dg - np.dot(xv, w) - np.dot(v, xw)))
        de = _fd_dir(lambda p: np.dot(S.apply_J(p), V(p)), x, X(x), h)
        contact = max(contact, abs(de - np.dot(S.apply_J(x), xv)))
    return {"killing": killing, "contact_form": contact}
