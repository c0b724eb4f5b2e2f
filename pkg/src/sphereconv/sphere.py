"""Proper convex bodies on the unit sphere, in generator representation.

A body is the intersection of the unit sphere with the convex cone spanned by
finitely many unit generators, together with a certified hemisphere witness:
a unit vector with strictly positive dot against every generator. Properness
(containment in an open hemisphere) is exactly the existence of such a
witness, and the margin-maximizing witness is the normalized min-norm point
of the generator hull.
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import (
    DegenerateError,
    DimensionMismatchError,
    ImproperBodyError,
    PreconditionError,
    UnsupportedDimensionError,
)
from .linalg import chart_plane_basis, direction_grid, gram_schmidt, slerp, unit
from .minnorm import cone_coefficients, min_norm_point

WITNESS_TOL = 1e-9
CONTAINS_TOL = 1e-9
CANON_CONE_TOL = 1e-10
ORTHO_TOL = 1e-12


def sph_dist(x, y) -> float:
    """Geodesic distance on the unit sphere."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    for v in (x, y):
        if abs(np.linalg.norm(v) - 1.0) > 1e-9:
            raise PreconditionError("sph_dist expects unit vectors")
    return float(np.arccos(np.clip(x @ y, -1.0, 1.0)))


def hemisphere_center(points: np.ndarray):
    """Margin-maximizing hemisphere witness for a finite set of unit points.

    Returns (u, margin) maximizing min_i <u, p_i>, or None when no open
    hemisphere contains the set. Duality: the min-norm point of the convex
    hull has norm equal to the best margin, and its direction attains it.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    p, _ = min_norm_point(pts)
    n = float(np.linalg.norm(p))
    if n <= WITNESS_TOL:
        return None
    u = p / n
    return u, float(np.min(pts @ u))


def _canonical_generators(gens: np.ndarray) -> np.ndarray:
    """Drop generators lying in the cone of the surviving others.

    Works for arbitrary ray sets (no hemisphere needed), one cone-membership
    test per ray; prefer _canonical_generators_in_chart when a witness is
    available.
    """
    # dedupe first: identical rays would knock each other out below
    key = np.round(gens / 1e-9)
    _, keep = np.unique(key, axis=0, return_index=True)
    gens = gens[np.sort(keep)]
    alive = list(range(gens.shape[0]))
    i = 0
    while i < len(alive):
        others = [j for j in alive if j != alive[i]]
        if not others:
            break
        _, resid = cone_coefficients(gens[alive[i]], gens[others])
        if resid <= CANON_CONE_TOL:
            alive.pop(i)
        else:
            i += 1
    return gens[alive]


def _canonical_generators_in_chart(gens: np.ndarray, u: np.ndarray) -> np.ndarray:
    """Extreme rays of cone(gens) given a hemisphere witness u.

    The gnomonic chart at u maps the cone structure to a convex hull in the
    plane exactly, so conic extremeness reduces to Euclidean extremeness of
    the images; much faster than pairwise cone tests for large sets.
    """
    from .euclid import canonicalize_vertices

    dots = gens @ u
    B = chart_plane_basis(u)
    pts = (gens / dots[:, None]) @ B.T
    idx = canonicalize_vertices(pts, _return_indices=True)
    return gens[np.sort(idx)]


@dataclass(frozen=True)
class SpherePolytope:
    """Spherically convex hull of unit generators, with hemisphere witness."""

    ambient_dim: int
    generators: np.ndarray
    center: np.ndarray

    def __post_init__(self):
        g = np.atleast_2d(np.asarray(self.generators, dtype=float))
        c = np.asarray(self.center, dtype=float)
        if self.ambient_dim < 3:
            raise UnsupportedDimensionError("ambient dimension must be at least 3")
        if g.shape[1] != self.ambient_dim or c.shape != (self.ambient_dim,):
            raise DimensionMismatchError("generator/center shapes do not match")
        if np.max(np.abs(np.linalg.norm(g, axis=1) - 1.0)) > 1e-9:
            raise ImproperBodyError("generators must be unit vectors")
        if abs(np.linalg.norm(c) - 1.0) > 1e-9:
            raise ImproperBodyError("center must be a unit vector")
        if float(np.min(g @ c)) <= WITNESS_TOL:
            raise ImproperBodyError("center does not certify an open hemisphere")
        object.__setattr__(self, "generators", g)
        object.__setattr__(self, "center", c)

    @property
    def margin(self) -> float:
        return float(np.min(self.generators @ self.center))


def make_body(points, center=None) -> SpherePolytope:
    """Build a proper body from points: normalize, certify, canonicalize.

    With no explicit center the margin-maximizing witness is used.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    nrm = np.linalg.norm(pts, axis=1)
    if np.any(nrm <= 1e-12):
        raise DegenerateError("zero vector among generators")
    pts = pts / nrm[:, None]
    if center is None:
        hc = hemisphere_center(pts)
        if hc is None:
            raise ImproperBodyError("points admit no open hemisphere")
        center = hc[0]
    else:
        center = unit(center)
        if float(np.min(pts @ center)) <= WITNESS_TOL:
            raise ImproperBodyError("given center does not certify the points")
    gens = _canonical_generators_in_chart(pts, center)
    return SpherePolytope(ambient_dim=pts.shape[1], generators=gens, center=center)


def contains(K: SpherePolytope, x, tol: float = CONTAINS_TOL) -> bool:
    """Membership of a unit point: nonnegative-combination feasibility."""
    x = np.asarray(x, dtype=float)
    _, resid = cone_coefficients(x, K.generators)
    return resid <= tol


def neg(K: SpherePolytope) -> SpherePolytope:
    return SpherePolytope(
        ambient_dim=K.ambient_dim, generators=-K.generators, center=-K.center
    )


def conv_union(K: SpherePolytope, L: SpherePolytope) -> SpherePolytope:
    """Spherical convex hull of the union; improper unions raise."""
    if K.ambient_dim != L.ambient_dim:
        raise DimensionMismatchError("bodies live in different ambient dimensions")
    return make_body(np.vstack([K.generators, L.generators]))


def body_equal(K: SpherePolytope, L: SpherePolytope, tol: float = 1e-9) -> bool:
    """Two-sided generator containment with angular slack.

    Canonicalized equal bodies share their generator set, so a chordal
    nearest-generator match decides most cases at full precision; the conic
    distance (which bottoms out near 3e-8 because of arccos conditioning)
    is only consulted when the vertex sets genuinely differ.
    """
    if K.ambient_dim != L.ambient_dim:
        return False
    for a, b in ((K, L), (L, K)):
        for g in a.generators:
            chordal = np.min(np.linalg.norm(b.generators - g, axis=1))
            if chordal <= tol:
                continue
            if point_body_distance(g, b) > tol:
                return False
    return True


# ---------------------------------------------------------------------------
# segments and support


def segment(u, w, alpha: float, beta: float) -> SpherePolytope:
    """Geodesic arc {u cos(t) + w sin(t) : t in [alpha, beta]} for unit u
    orthogonal to unit w, with -pi/2 < alpha <= beta < pi/2."""
    u = unit(u)
    w = unit(w)
    if abs(u @ w) > 1e-9:
        raise PreconditionError("segment axes must be orthogonal")
    if not (-np.pi / 2 < alpha <= beta < np.pi / 2):
        raise PreconditionError("angles must satisfy -pi/2 < alpha <= beta < pi/2")
    a = u * np.cos(alpha) + w * np.sin(alpha)
    b = u * np.cos(beta) + w * np.sin(beta)
    return make_body(np.vstack([a, b]))


def sph_support(u, K: SpherePolytope, v) -> float:
    """Spherical support of K at the pole u in equator direction v.

    Computed generator-wise as arctan(<v,g>/<u,g>) and maximized; requires
    every generator strictly inside the hemisphere at u and v orthogonal
    to u.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if abs(float(u @ v)) > 1e-9:
        raise PreconditionError("direction must be orthogonal to the pole")
    du = K.generators @ u
    if float(np.min(du)) <= 1e-12:
        raise PreconditionError("body is not inside the open hemisphere at u")
    return float(np.max(np.arctan2(K.generators @ v, du)))


def sph_support_many(u, K: SpherePolytope, dirs: np.ndarray) -> np.ndarray:
    du = K.generators @ np.asarray(u, dtype=float)
    if float(np.min(du)) <= 1e-12:
        raise PreconditionError("body is not inside the open hemisphere at u")
    num = np.asarray(dirs, dtype=float) @ K.generators.T
    return np.max(np.arctan2(num, du[None, :]), axis=1)


# ---------------------------------------------------------------------------
# subspheres and projection


@dataclass(frozen=True)
class Subsphere:
    """Great subsphere: intersection of the sphere with span(basis rows)."""

    ambient_dim: int
    basis: np.ndarray

    def __post_init__(self):
        b = np.atleast_2d(np.asarray(self.basis, dtype=float))
        if b.shape[1] != self.ambient_dim:
            raise DimensionMismatchError("basis does not match ambient dimension")
        if not (1 <= b.shape[0] <= self.ambient_dim):
            raise PreconditionError("subsphere span dimension out of range")
        if not np.allclose(b @ b.T, np.eye(b.shape[0]), atol=1e-12):
            raise PreconditionError("basis rows are not orthonormal")
        object.__setattr__(self, "basis", b)

    @property
    def sphere_dim(self) -> int:
        return self.basis.shape[0] - 1

    @classmethod
    def from_spanning(cls, vectors, ambient_dim: int) -> "Subsphere":
        basis = gram_schmidt([np.asarray(v, dtype=float) for v in vectors])
        return cls(ambient_dim=ambient_dim, basis=basis)

    def spans_point(self, x, tol: float = 1e-9) -> bool:
        x = np.asarray(x, dtype=float)
        resid = x - self.basis.T @ (self.basis @ x)
        return float(np.linalg.norm(resid)) <= tol


def sph_project(K: SpherePolytope, S: Subsphere) -> SpherePolytope:
    """Projection of K to the subsphere: radially normalized orthogonal
    projection of the generator cone onto span(S).

    Requires some hemisphere witness of K inside S. The output is rebuilt
    around the projected certified witness when that still certifies, else
    around the margin-maximizing center of the projected generators.
    """
    if S.ambient_dim != K.ambient_dim:
        raise DimensionMismatchError("subsphere ambient dimension mismatch")
    B = S.basis
    proj = K.generators @ B.T @ B
    nrm = np.linalg.norm(proj, axis=1)
    good = nrm > 1e-12
    if not np.any(good):
        raise PreconditionError("every generator projects to zero")
    gens = proj[good] / nrm[good, None]
    hc = hemisphere_center(gens)
    if hc is None:
        raise PreconditionError("projected generators admit no open hemisphere")
    center = None
    pc = B.T @ (B @ K.center)
    if np.linalg.norm(pc) > 1e-12:
        pc = pc / np.linalg.norm(pc)
        if float(np.min(gens @ pc)) > WITNESS_TOL:
            center = pc
    if center is None:
        center = hc[0]
    return SpherePolytope(
        ambient_dim=K.ambient_dim,
        generators=_canonical_generators(gens),
        center=center,
    )


# ---------------------------------------------------------------------------
# metrics


def point_body_distance(x, K: SpherePolytope) -> float:
    """Geodesic distance from unit x to the body, via cone projection.

    The nearest-point cone projection p satisfies <x,p> = |p|^2, so when p is
    nonzero the distance is arccos|p|; otherwise fall back to the sampled
    generator set (the body is then more than a quarter turn away).
    """
    x = np.asarray(x, dtype=float)
    coef, _ = cone_coefficients(x, K.generators)
    p = K.generators.T @ coef
    n = float(np.linalg.norm(p))
    if n > 1e-12:
        return float(np.arccos(np.clip(n, -1.0, 1.0)))
    return float(np.min([sph_dist(x, g) for g in K.generators]))


def boundary_samples(K: SpherePolytope, samples: int) -> np.ndarray:
    """Generators plus geodesic samples between generator pairs."""
    gens = K.generators
    m = gens.shape[0]
    out = [gens]
    if m >= 2 and samples > m:
        pairs = [(i, j) for i in range(m) for j in range(i + 1, m)]
        per = max(1, (samples - m) // len(pairs))
        ts = (np.arange(per) + 1.0) / (per + 1.0)
        for i, j in pairs:
            out.append(np.array([slerp(gens[i], gens[j], t) for t in ts]))
    return np.vstack(out)


def delta_s(K: SpherePolytope, L: SpherePolytope, samples: int = 4096) -> float:
    """Sampled spherical Hausdorff distance (a lower bound converging from
    below as `samples` grows)."""
    if K.ambient_dim != L.ambient_dim:
        raise DimensionMismatchError("bodies live in different ambient dimensions")
    d = 0.0
    for a, b in ((K, L), (L, K)):
        for x in boundary_samples(a, samples):
            d = max(d, point_body_distance(x, b))
    return d


def gamma_u(u, K: SpherePolytope, L: SpherePolytope, samples: int = 4096) -> float:
    """Uniform gap of the spherical supports at pole u over sampled equator
    directions."""
    u = unit(u)
    if K.ambient_dim != L.ambient_dim:
        raise DimensionMismatchError("bodies live in different ambient dimensions")
    for body in (K, L):
        if float(np.min(body.generators @ u)) <= 0:
            raise PreconditionError("bodies must lie in the open hemisphere at u")
    plane = chart_plane_basis(u)
    dirs = direction_grid(K.ambient_dim - 1, samples) @ plane
    hk = sph_support_many(u, K, dirs)
    hl = sph_support_many(u, L, dirs)
    return float(np.max(np.abs(hk - hl)))


# ---------------------------------------------------------------------------
# polarity via double description


def dual_cone_rays(generators: np.ndarray) -> np.ndarray:
    """Extreme rays of {y : <g, y> <= 0 for all generators g}.

    Incremental double description, starting from the signed standard basis
    (which generates all of R^d as a cone) and slicing one halfspace at a
    time. Intended for small dimension and modest generator counts.
    """
    G = np.atleast_2d(np.asarray(generators, dtype=float))
    d = G.shape[1]
    rays = np.vstack([np.eye(d), -np.eye(d)])
    for a in G:
        vals = rays @ a
        scale = max(1.0, float(np.max(np.abs(vals))))
        pos = rays[vals > 1e-12 * scale]
        zero = rays[np.abs(vals) <= 1e-12 * scale]
        negm = vals < -1e-12 * scale
        negr = rays[negm]
        combos = []
        for p in pos:
            ap = float(a @ p)
            for q in negr:
                w = ap * q - float(a @ q) * p
                n = np.linalg.norm(w)
                if n > 1e-12:
                    combos.append(w / n)
        parts = [arr for arr in (zero, negr) if arr.shape[0]]
        if combos:
            parts.append(np.array(combos))
        if not parts:
            return np.zeros((0, d))
        rays = np.vstack(parts)
        rays = _canonical_generators(rays) if rays.shape[0] > 1 else rays
    return rays


def sph_polar(K: SpherePolytope) -> SpherePolytope:
    """Spherical polar body: unit vectors with nonpositive dot against all
    of K, i.e. the dual cone of the generator cone met with the sphere.

    Exact path limited to ambient dimension 4; requires the generators to
    span the ambient space; the returned witness is the negated input
    witness, and a boundary witness raises DEGENERATE.
    """
    if K.ambient_dim > 4:
        raise UnsupportedDimensionError("exact polar limited to ambient dim <= 4")
    if np.linalg.matrix_rank(K.generators, tol=1e-10) < K.ambient_dim:
        raise DegenerateError("generators do not span the ambient space")
    rays = dual_cone_rays(K.generators)
    if rays.shape[0] == 0:
        raise DegenerateError("dual cone is trivial")
    c = -K.center
    if float(np.min(rays @ c)) <= WITNESS_TOL:
        raise DegenerateError("negated witness does not certify the polar body")
    return SpherePolytope(ambient_dim=K.ambient_dim, generators=rays, center=c)
