"""Numerical defaults: finite-difference steps and residual thresholds.

Every threshold used by a suite lives here so that reports can echo
overrides.  Suites always report the measured residual next to the
threshold, never a bare pass/fail.
"""

from dataclasses import dataclass, fields


# Central-difference step sizes.  First derivatives tolerate a smaller
# step than second derivatives before roundoff dominates.
FD_FIRST = 1e-4
FD_SECOND = 1e-3
FD_FIELD = 1e-5       # derivatives of analytic ambient fields
FD_LAPLACIAN = 1e-2   # five-point second-derivative stencil on ambient lines

# Margin by which random sampling shrinks away from coordinate
# singularities (polar chart poles).  Quadrature nodes are interior by
# construction and do not use this.
POLE_MARGIN = 1e-2


@dataclass
class Tolerances:
    """Residual thresholds, keyed by the checks that consume them."""

    metric_symmetry: float = 1e-14
    metric_compatibility: float = 1e-6
    hessian_symmetry: float = 1e-8
    bianchi: float = 1e-5
    sasaki_axioms: float = 1e-7
    eta_einstein: float = 1e-5
    cone_ricci: float = 1e-8
    cone_ricci_chart: float = 1e-5
    cone_relations: float = 1e-8
    legendrian: float = 1e-8
    mean_curvature: float = 1e-6
    totally_geodesic: float = 1e-6
    frame_orthonormality: float = 1e-10
    chi_roundtrip: float = 1e-8
    killing: float = 1e-7
    mean_zero: float = 1e-8
    eigen_residual: float = 1e-5
    nomizu_algebra: float = 1e-8
    div_constancy: float = 1e-8
    frame_sum_identity: float = 1e-7
    radial_independence: float = 1e-9
    family_coincidence: float = 1e-8
    pipeline_agreement: float = 0.02
    cluster_accuracy: float = 0.02
    rayleigh: float = 0.01
    cluster_window: float = 0.05
    cluster_separation: float = 3.0
    zero_function: float = 1e-12

    def override(self, updates):
        """Return a copy with ``updates`` (name -> value) applied."""
        known = {f.name for f in fields(self)}
        bad = set(updates) - known
        if bad:
            raise KeyError(f"unknown tolerance name(s): {sorted(bad)}")
        merged = {f.name: getattr(self, f.name) for f in fields(self)}
        merged.update(updates)
        return Tolerances(**merged)

    def as_dict(self):
        return {f.name: getattr(self, f.name) for f in fields(self)}


DEFAULT_TOLERANCES = Tolerances()
