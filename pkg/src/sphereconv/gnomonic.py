"""Gnomonic (central) projection between an open hemisphere and its tangent
model hyperplane.

A chart fixes the pole u and a deterministic orthonormal basis of the
orthogonal hyperplane; the projection v -> v/<u,v> - u maps geodesics to
lines and carries spherically convex bodies in the hemisphere bijectively to
Euclidean convex bodies in the plane.
"""

from dataclasses import dataclass, field

import numpy as np

from .euclid import ConvexPolytope, SubspaceBasis, support
from .exceptions import (
    DimensionMismatchError,
    OutOfChartError,
    PreconditionError,
)
from .linalg import chart_plane_basis, gram_schmidt, unit
from .sphere import SpherePolytope, Subsphere, make_body, sph_support

CHART_EPS = 1e-12


@dataclass(frozen=True)
class HemisphereChart:
    """Pole u plus orthonormal plane basis (rows) of the model hyperplane."""

    u: np.ndarray
    plane_basis: np.ndarray = field(default=None)

    def __post_init__(self):
        u = unit(self.u)
        object.__setattr__(self, "u", u)
        if self.plane_basis is None:
            object.__setattr__(self, "plane_basis", chart_plane_basis(u))
        else:
            b = np.atleast_2d(np.asarray(self.plane_basis, dtype=float))
            d = u.shape[0]
            if b.shape != (d - 1, d):
                raise DimensionMismatchError("plane basis has wrong shape")
            stacked = np.vstack([u[None, :], b])
            if not np.allclose(stacked @ stacked.T, np.eye(d), atol=1e-12):
                raise PreconditionError("plane basis must be orthonormal to u")
            object.__setattr__(self, "plane_basis", b)

    @property
    def ambient_dim(self) -> int:
        return self.u.shape[0]

    @property
    def plane_dim(self) -> int:
        return self.u.shape[0] - 1


def gproj(chart: HemisphereChart, v) -> np.ndarray:
    """Project a hemisphere point to plane coordinates: v/<u,v> - u."""
    v = np.asarray(v, dtype=float)
    t = float(chart.u @ v)
    if t <= CHART_EPS:
        raise OutOfChartError("point is not in the open hemisphere of the pole")
    return chart.plane_basis @ (v / t - chart.u)


def gproj_inv(chart: HemisphereChart, x) -> np.ndarray:
    """Inverse projection: normalized u + x (ambient unit vector)."""
    x = np.asarray(x, dtype=float)
    y = chart.u + chart.plane_basis.T @ x
    return y / np.linalg.norm(y)


def map_body(chart: HemisphereChart, K: SpherePolytope) -> ConvexPolytope:
    """Gnomonic image of a body in the chart hemisphere.

    Generators map to the image's vertex candidates; extreme generators map
    to extreme vertices, so canonicalization only cleans up numerics.
    """
    if K.ambient_dim != chart.ambient_dim:
        raise DimensionMismatchError("chart and body ambient dimensions differ")
    return ConvexPolytope.from_points([gproj(chart, g) for g in K.generators])


def map_body_inv(chart: HemisphereChart, P: ConvexPolytope) -> SpherePolytope:
    """Spherical body whose gnomonic image is the given polytope."""
    if P.dim != chart.plane_dim:
        raise DimensionMismatchError("polytope does not live in the chart plane")
    return make_body([gproj_inv(chart, v) for v in P.vertices])


def subsphere_to_subspace(chart: HemisphereChart, S: Subsphere) -> SubspaceBasis:
    """Linear trace of a subsphere through the pole, in plane coordinates.

    span(S) must contain u; the result spans span(S) meet u-perp, so a
    k-sphere yields a k-dimensional subspace (the 0-sphere yields the empty
    basis, projection to the origin).
    """
    if S.ambient_dim != chart.ambient_dim:
        raise DimensionMismatchError("chart and subsphere ambient dimensions differ")
    if not S.spans_point(chart.u):
        raise PreconditionError("subsphere span must contain the chart pole")
    u = chart.u
    projected = [w - (u @ w) * u for w in S.basis]
    basis = gram_schmidt(projected)
    if basis.shape[0] != S.sphere_dim:
        raise PreconditionError("subsphere trace has unexpected dimension")
    coords = basis @ chart.plane_basis.T if basis.shape[0] else basis[:, : chart.plane_dim]
    return SubspaceBasis(ambient_dim=chart.plane_dim, basis=coords)


def support_bridge(chart: HemisphereChart, K: SpherePolytope, v):
    """Both routes to the support bridge at an equator direction v (ambient):
    Euclidean support of the chart image versus tan of the spherical support.
    Returns (euclidean, tan_spherical)."""
    v = np.asarray(v, dtype=float)
    if abs(float(v @ chart.u)) > 1e-9:
        raise PreconditionError("direction must lie on the chart equator")
    plane_dir = chart.plane_basis @ v
    lhs = support(map_body(chart, K), plane_dir)
    rhs = float(np.tan(sph_support(chart.u, K, v)))
    return lhs, rhs
