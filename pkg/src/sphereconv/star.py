"""Star sets, represented functionally by their radial maps.

A Euclidean radial map sends a unit direction to the reach of the set along
that ray; the minus-one-homogeneous extension handles arbitrary nonzero
arguments. The spherical analogue measures the geodesic reach from a
reference point, always strictly below a quarter turn. The tangent bridge
tan(rho_u) = rho(gnomonic image) carries one to the other.
"""

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.spatial import ConvexHull

from .euclid import ConvexPolytope, SubspaceBasis
from .exceptions import DomainError, GeometryError, PreconditionError
from .gnomonic import HemisphereChart, map_body
from .linalg import chart_plane_basis, direction_grid, unit
from .minnorm import dist_to_hull
from .randgen import random_subsphere_through, random_unit, trial_stream
from .sphere import SpherePolytope, Subsphere, contains, sph_support_many

MEMBERSHIP_TOL = 1e-12
BISECT_ITERS = 60


@dataclass(frozen=True)
class RadialMap:
    """Radial function of a Euclidean star set: unit direction -> reach >= 0."""

    dim: int
    fn: Callable[[np.ndarray], float]
    describe: str = ""

    def __call__(self, v) -> float:
        out = float(self.fn(np.asarray(v, dtype=float)))
        if out < 0:
            raise DomainError("radial values must be nonnegative")
        return out

    @classmethod
    def ball(cls, dim: int, radius: float = 1.0) -> "RadialMap":
        return cls(dim=dim, fn=lambda v: radius, describe=f"ball r={radius}")

    @classmethod
    def from_samples(cls, grid: np.ndarray, values: np.ndarray) -> "RadialMap":
        """Nearest-direction lookup over a sampled grid."""
        grid = np.atleast_2d(np.asarray(grid, dtype=float))
        values = np.asarray(values, dtype=float)

        def fn(v):
            return values[int(np.argmax(grid @ v))]

        return cls(dim=grid.shape[1], fn=fn, describe="sampled")


def radial(L: RadialMap, x) -> float:
    """Reach at an arbitrary nonzero point: minus-one-homogeneous extension."""
    x = np.asarray(x, dtype=float)
    n = float(np.linalg.norm(x))
    if n <= 1e-300:
        raise DomainError("radial map is undefined at the origin")
    return L(x / n) / n


def radial_from_polytope(K: ConvexPolytope) -> RadialMap:
    """Radial map of a polytope containing the origin, by facet arithmetic.

    The ray t v leaves through the facet a.x <= b minimizing b / (a.v) over
    facets with a.v > 0, so the value is exact. A membership bisection makes
    a serviceable independent oracle for this.
    """
    scale = float(np.max(np.linalg.norm(K.vertices, axis=1)))
    if dist_to_hull(np.zeros(K.dim), K.vertices) > 1e-9 * max(1.0, scale):
        raise PreconditionError("polytope must contain the origin")
    if K.dim == 1:
        lo, hi = float(np.min(K.vertices)), float(np.max(K.vertices))

        def fn(v):
            return hi / v[0] if v[0] > 0 else lo / v[0]

        return RadialMap(dim=1, fn=fn, describe="interval ray lengths")

    eqs = ConvexHull(K.vertices).equations
    normals = eqs[:, :-1]
    offsets = -eqs[:, -1]

    def fn(v):
        den = normals @ np.asarray(v, dtype=float)
        hit = den > 0.0
        return float(np.min(offsets[hit] / den[hit]))

    return RadialMap(dim=K.dim, fn=fn, describe="polytope facet ray lengths")


def radial_dual_value(K: ConvexPolytope, v, candidates: np.ndarray) -> float:
    """Second route to the polytope reach: min over outer-normal candidates w
    of h_K(w)/<v,w>, exact whenever the candidates cover the facet normals."""
    v = np.asarray(v, dtype=float)
    num = np.max(K.vertices @ candidates.T, axis=0)
    den = candidates @ v
    good = den > 1e-12
    if not np.any(good):
        raise DomainError("no candidate normal sees the direction")
    return float(np.min(num[good] / den[good]))


def radial_sum(K: RadialMap, L: RadialMap) -> RadialMap:
    if K.dim != L.dim:
        raise GeometryError("radial maps live in different dimensions")
    return RadialMap(dim=K.dim, fn=lambda v: K(v) + L(v), describe="radial sum")


def lp_radial_sum(p: float, K: RadialMap, L: RadialMap) -> RadialMap:
    if p <= 0:
        raise PreconditionError("p must be positive")
    if K.dim != L.dim:
        raise GeometryError("radial maps live in different dimensions")

    def fn(v):
        return float((K(v) ** p + L(v) ** p) ** (1.0 / p))

    return RadialMap(dim=K.dim, fn=fn, describe=f"l{p:g} radial sum")


def section(L: RadialMap, V: SubspaceBasis) -> RadialMap:
    """Section with a linear subspace, in V-coordinates."""
    if V.ambient_dim != L.dim:
        raise GeometryError("subspace ambient dimension mismatch")
    if V.dim == 0:
        raise PreconditionError("section target has no basis vectors")
    B = V.basis

    def fn(w):
        return L(B.T @ w)

    return RadialMap(dim=V.dim, fn=fn, describe="section")


def rotate(L: RadialMap, R: np.ndarray) -> RadialMap:
    R = np.asarray(R, dtype=float)
    if R.shape != (L.dim, L.dim):
        raise GeometryError("rotation shape mismatch")
    if not np.allclose(R @ R.T, np.eye(L.dim), atol=1e-12) or not np.isclose(
        np.linalg.det(R), 1.0, atol=1e-9
    ):
        raise PreconditionError("matrix is not a rotation")
    return RadialMap(dim=L.dim, fn=lambda v: L(R.T @ v), describe="rotated")


# ---------------------------------------------------------------------------
# spherical star maps


@dataclass(frozen=True)
class SphStarMap:
    """Geodesic reach from a reference point u, on equator directions.

    Values are asserted into [0, pi/2) at every evaluation.
    """

    u: np.ndarray
    fn: Callable[[np.ndarray], float]
    describe: str = ""

    def __post_init__(self):
        object.__setattr__(self, "u", unit(self.u))

    @property
    def ambient_dim(self) -> int:
        return self.u.shape[0]

    def __call__(self, v) -> float:
        out = float(self.fn(np.asarray(v, dtype=float)))
        if not (0.0 <= out < np.pi / 2):
            raise DomainError("spherical reach left [0, pi/2)")
        return out

    @classmethod
    def cap(cls, u, alpha: float) -> "SphStarMap":
        if not (0.0 <= alpha < np.pi / 2):
            raise PreconditionError("cap radius must lie in [0, pi/2)")
        return cls(u=u, fn=lambda v: alpha, describe=f"cap {alpha}")


def sph_radial(S: SphStarMap, v) -> float:
    """Evaluate the spherical reach at an equator direction."""
    v = np.asarray(v, dtype=float)
    if abs(float(v @ S.u)) > 1e-9:
        raise PreconditionError("direction must be orthogonal to the reference")
    return S(v)


def star_map_from_body(K: SpherePolytope, u) -> SphStarMap:
    """Reach map of a convex body containing u, inside u's open hemisphere.

    Bisection of arc membership; convexity makes the feasible angle set an
    interval starting at zero.
    """
    u = unit(u)
    if float(np.min(K.generators @ u)) <= 1e-12:
        raise PreconditionError("body must lie in the open hemisphere at u")
    if not contains(K, u):
        raise PreconditionError("reference point must belong to the body")

    def fn(v):
        lo, hi = 0.0, np.pi / 2
        for _ in range(BISECT_ITERS):
            mid = 0.5 * (lo + hi)
            p = u * np.cos(mid) + v * np.sin(mid)
            # residual floor for interior points is near machine epsilon, so
            # a tight tolerance keeps the located boundary within ~1e-12
            if contains(K, p, tol=MEMBERSHIP_TOL):
                lo = mid
            else:
                hi = mid
        return lo

    return SphStarMap(u=u, fn=fn, describe="body reach")


def star_bridge(chart: HemisphereChart, S: SphStarMap) -> RadialMap:
    """Radial map of the gnomonic image: tan of the spherical reach."""
    if not np.allclose(chart.u, S.u, atol=1e-12):
        raise PreconditionError("chart pole must match the reference point")
    B = chart.plane_basis

    def fn(w):
        return float(np.tan(S(B.T @ w)))

    return RadialMap(dim=chart.plane_dim, fn=fn, describe="bridged " + S.describe)


def star_bridge_inv(chart: HemisphereChart, R: RadialMap) -> SphStarMap:
    if R.dim != chart.plane_dim:
        raise GeometryError("radial map does not live in the chart plane")
    B = chart.plane_basis

    def fn(v):
        return float(np.arctan(R(B @ v)))

    return SphStarMap(u=chart.u, fn=fn, describe="bridged " + R.describe)


def sph_section(S: SphStarMap, sub: Subsphere) -> SphStarMap:
    """Restriction to a subsphere through the reference point, expressed in
    the subsphere's intrinsic coordinates."""
    if not sub.spans_point(S.u):
        raise PreconditionError("subsphere span must contain the reference point")
    if sub.sphere_dim < 1:
        raise PreconditionError("section needs a subsphere of dimension >= 1")
    W = sub.basis

    def fn(vp):
        return S.fn(W.T @ vp)

    return SphStarMap(u=W @ S.u, fn=fn, describe="sectioned " + S.describe)


def f_op(f: Callable[[float, float, float, float], float], K: SphStarMap, L: SphStarMap) -> SphStarMap:
    """Pointwise operation rho(v) = f(rho_K(-v), rho_K(v), rho_L(-v), rho_L(v))."""
    if not np.allclose(K.u, L.u, atol=1e-12):
        raise PreconditionError("operands must share the reference point")

    def fn(v):
        return float(f(K(-v), K(v), L(-v), L(v)))

    return SphStarMap(u=K.u, fn=fn, describe="f-op")


def transported_lp_f(p: float) -> Callable[[float, float, float, float], float]:
    """Pointwise combiner matching the bridged L_p radial sum."""
    if p <= 0:
        raise PreconditionError("p must be positive")

    def f(a, b, c, d):
        return float(np.arctan((np.tan(b) ** p + np.tan(d) ** p) ** (1.0 / p)))

    return f


def coordinate_skewed_op(K: SphStarMap, L: SphStarMap) -> SphStarMap:
    """Deliberately broken operation for falsification controls: modulates
    the combined reach by the direction's first coordinate in whatever space
    it is evaluated in, so restriction and combination do not commute."""
    if not np.allclose(K.u, L.u, atol=1e-12):
        raise PreconditionError("operands must share the reference point")

    def fn(v):
        base = 0.5 * (K.fn(v) + L.fn(v))
        out = base * (1.0 + 0.4 * float(v[0]))
        return float(np.clip(out, 0.0, np.pi / 2 - 1e-9))

    return SphStarMap(u=K.u, fn=fn, describe="coordinate-skewed")


def random_star_map(rng: np.random.Generator, ambient_dim: int, u=None) -> SphStarMap:
    """Smooth random reach map, strictly inside [0, pi/2)."""
    if u is None:
        u = random_unit(rng, ambient_dim)
    r1 = random_unit(rng, ambient_dim)
    r2 = random_unit(rng, ambient_dim)
    c0 = float(rng.uniform(0.1, 1.0))
    c1 = float(rng.uniform(0.0, 1.5))
    c2 = float(rng.uniform(0.0, 1.5))

    def fn(v):
        return float(np.arctan(c0 + c1 * (v @ r1) ** 2 + c2 * abs(v @ r2)))

    return SphStarMap(u=u, fn=fn, describe="random smooth")


def section_covariance_check(
    op: Callable[[SphStarMap, SphStarMap], SphStarMap],
    trials: int = 200,
    tol: float = 1e-9,
    seed: int = 0,
    ambient_dim: int = 3,
    samples: int = 64,
) -> dict:
    """Does restricting to a subsphere commute with the operation?

    Per trial: random reach maps sharing a reference point, a random
    subsphere through it, and a sampled comparison of restrict-then-combine
    against combine-then-restrict in the subsphere's intrinsic coordinates.
    """
    max_dev = 0.0
    violations = 0
    witness = None
    for t in range(trials):
        rng = trial_stream(seed, t)
        u = random_unit(rng, ambient_dim)
        K = random_star_map(rng, ambient_dim, u=u)
        L = random_star_map(rng, ambient_dim, u=u)
        k = int(rng.integers(1, ambient_dim - 1))
        sub = random_subsphere_through(rng, u, k)
        combined = op(K, L)
        restricted = op(sph_section(K, sub), sph_section(L, sub))
        up = sub.basis @ u
        dirs = direction_grid(k, samples) @ chart_plane_basis(up)
        dev = 0.0
        for vp in dirs:
            v_amb = sub.basis.T @ vp
            dev = max(dev, abs(combined(v_amb) - restricted(vp)))
        max_dev = max(max_dev, dev)
        if dev > tol:
            violations += 1
            if witness is None:
                witness = {"trial": t, "deviation": dev}
    return {
        "trials": trials,
        "tol": tol,
        "max_dev": max_dev,
        "violations": violations,
        "witness": witness,
        "seed": seed,
        "ambient_dim": ambient_dim,
    }


# ---------------------------------------------------------------------------
# polarity relations


def support_from_radial(R: RadialMap, v, candidates: np.ndarray) -> float:
    """Support value induced by a radial map: max over candidate directions w
    of rho(w) <w, v>. Exact when the candidates include the vertex directions
    of the underlying body."""
    v = np.asarray(v, dtype=float)
    vals = np.array([R(w) for w in candidates])
    return float(np.max(vals * (candidates @ v)))


def polar_relations_check(K: SpherePolytope, samples: int = 256) -> dict:
    """Gap report for the polarity identities at the body's own witness u:
    the quarter-turn relation h_u(K,.) + reach_{-u}(polar,.) = pi/2, and the
    chart-level identity between the polar of the image and the image of the
    polar."""
    from .euclid import polar_radial
    from .sphere import sph_polar

    u = K.center
    if not contains(K, u):
        raise PreconditionError("witness must belong to the body")
    Kp = sph_polar(K)
    chart_u = HemisphereChart(u)
    chart_mu = HemisphereChart(-u)
    plane_dirs = direction_grid(chart_u.plane_dim, samples)
    amb_dirs = plane_dirs @ chart_u.plane_basis

    h_vals = sph_support_many(u, K, amb_dirs)
    if float(np.min(h_vals)) <= 1e-12:
        raise PreconditionError(
            "witness must be interior to the body (positive reach all around)"
        )
    reach = star_map_from_body(Kp, -u)
    gap1 = 0.0
    for v, h in zip(amb_dirs, h_vals):
        gap1 = max(gap1, abs(h + reach(v) - np.pi / 2))

    pr = polar_radial(map_body(chart_u, K))
    mapped = radial_from_polytope(map_body(chart_mu, Kp))
    gap2 = 0.0
    for v in amb_dirs:
        lhs = pr(chart_u.plane_basis @ v)
        rhs = mapped(chart_mu.plane_basis @ v)
        gap2 = max(gap2, abs(lhs - rhs))
    return {"pi_half_gap": gap1, "chart_polar_gap": gap2, "samples": samples}
