"""Euclidean convex polytopes in vertex representation.

Everything downstream (gnomonic transport, covariance checks) funnels through
this module, so the vertex lists are kept canonical: deduplicated and reduced
to extreme points on construction. Coefficient polygons for M-addition and
the 4-argument support functionals live here too.
"""

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .exceptions import (
    DegenerateError,
    DimensionMismatchError,
    DomainError,
    PreconditionError,
    UnsupportedDimensionError,
)
from .linalg import direction_grid
from .minnorm import dist_to_hull, min_norm_point, project_to_hull

# Above this many points the pairwise Wolfe extremeness filter is quadratic
# pain; hand the set to qhull instead (selection only, values unchanged).
WOLFE_CANON_MAX = 48
CANON_DROP_TOL = 1e-10
BODY_EQ_TOL = 1e-9
ORIGIN_INTERIOR_TOL = 1e-9
ORIGIN_GRID = 4096


def _dedupe(points: np.ndarray, rel: float = 1e-9) -> np.ndarray:
    scale = max(1.0, float(np.max(np.abs(points))) if points.size else 1.0)
    key = np.round(points / (rel * scale))
    _, keep = np.unique(key, axis=0, return_index=True)
    return points[np.sort(keep)]


def _wolfe_extreme_filter(points: np.ndarray) -> np.ndarray:
    scale = max(1.0, float(np.max(np.abs(points))))
    alive = list(range(points.shape[0]))
    i = 0
    while i < len(alive):
        others = [j for j in alive if j != alive[i]]
        if not others:
            break
        if dist_to_hull(points[alive[i]], points[others]) <= CANON_DROP_TOL * scale:
            alive.pop(i)  # inside the hull of the survivors: not extreme
        else:
            i += 1
    return points[alive]


def _qhull_extreme(points: np.ndarray) -> np.ndarray:
    from scipy.spatial import ConvexHull, QhullError

    m, d = points.shape
    if d == 1:
        return points[[int(np.argmin(points[:, 0])), int(np.argmax(points[:, 0]))]]
    try:
        hull = ConvexHull(points)
        return points[np.sort(hull.vertices)]
    except QhullError:
        # flat set: reduce to its affine span and recurse
        center = points.mean(axis=0)
        shifted = points - center
        _, sv, vt = np.linalg.svd(shifted, full_matrices=False)
        scale = max(1.0, float(sv[0]) if sv.size else 1.0)
        rank = int(np.sum(sv > 1e-12 * scale))
        if rank == 0:
            return points[:1]
        reduced = shifted @ vt[:rank].T
        sel = canonicalize_vertices(reduced, _return_indices=True)
        return points[sel]


def canonicalize_vertices(points: np.ndarray, _return_indices: bool = False):
    """Reduce a point set to the extreme points of its convex hull.

    Small sets go through the Wolfe filter (each point tested against the
    hull of the current survivors); large sets through qhull with a rank
    fallback for degenerate inputs.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if pts.shape[0] == 0:
        raise DegenerateError("empty vertex set")
    pts0 = pts
    pts = _dedupe(pts)
    if pts.shape[0] <= 2:
        out = pts if pts.shape[0] == 1 else pts
    elif pts.shape[0] <= WOLFE_CANON_MAX:
        out = _wolfe_extreme_filter(pts)
    else:
        out = _qhull_extreme(pts)
    if not _return_indices:
        return out
    # map rows of `out` back to indices into the original array
    idx = []
    for row in out:
        d = np.sum((pts0 - row) ** 2, axis=1)
        idx.append(int(np.argmin(d)))
    return np.array(idx, dtype=int)


@dataclass(frozen=True)
class ConvexPolytope:
    """Convex body in R^dim, stored as its extreme points (rows)."""

    dim: int
    vertices: np.ndarray

    def __post_init__(self):
        v = np.atleast_2d(np.asarray(self.vertices, dtype=float))
        if self.dim < 1:
            raise DegenerateError("dimension must be a positive integer")
        if v.shape[0] < 1 or v.shape[1] != self.dim:
            raise DimensionMismatchError(
                f"vertex array of shape {v.shape} does not match dim {self.dim}"
            )
        if not np.all(np.isfinite(v)):
            raise DegenerateError("vertices must be finite")
        object.__setattr__(self, "vertices", v)

    @classmethod
    def from_points(cls, points) -> "ConvexPolytope":
        pts = canonicalize_vertices(points)
        return cls(dim=pts.shape[1], vertices=pts)

    @classmethod
    def cube(cls, dim: int) -> "ConvexPolytope":
        corners = np.array(
            [[(i >> b) & 1 for b in range(dim)] for i in range(2**dim)], dtype=float
        )
        return cls(dim=dim, vertices=corners)

    @classmethod
    def cross_polytope(cls, dim: int, radius: float = 1.0) -> "ConvexPolytope":
        eye = np.eye(dim)
        return cls(dim=dim, vertices=np.vstack([radius * eye, -radius * eye]))

    @classmethod
    def simplex(cls, dim: int) -> "ConvexPolytope":
        return cls(dim=dim, vertices=np.vstack([np.zeros(dim), np.eye(dim)]))


def support(K: ConvexPolytope, x) -> float:
    """Support function h_K(x) = max over vertices of <x, v>."""
    return float(np.max(K.vertices @ np.asarray(x, dtype=float)))


def support_many(K: ConvexPolytope, dirs: np.ndarray) -> np.ndarray:
    return np.max(np.asarray(dirs, dtype=float) @ K.vertices.T, axis=1)


def body_equal(K: ConvexPolytope, L: ConvexPolytope, tol: float = BODY_EQ_TOL) -> bool:
    """Two-sided vertex containment with slack."""
    if K.dim != L.dim:
        return False
    scale = max(
        1.0, float(np.max(np.abs(K.vertices))), float(np.max(np.abs(L.vertices)))
    )
    for a, b in ((K, L), (L, K)):
        for v in a.vertices:
            if dist_to_hull(v, b.vertices) > tol * scale:
                return False
    return True


def minkowski_sum(K: ConvexPolytope, L: ConvexPolytope) -> ConvexPolytope:
    if K.dim != L.dim:
        raise DimensionMismatchError("summands live in different dimensions")
    sums = (K.vertices[:, None, :] + L.vertices[None, :, :]).reshape(-1, K.dim)
    return ConvexPolytope.from_points(sums)


def hausdorff(K: ConvexPolytope, L: ConvexPolytope) -> float:
    """Exact Hausdorff distance: max vertex-to-body distance, both ways.

    Equals the sup-norm gap of the support functions.
    """
    if K.dim != L.dim:
        raise DimensionMismatchError("bodies live in different dimensions")
    d = 0.0
    for a, b in ((K, L), (L, K)):
        for v in a.vertices:
            d = max(d, dist_to_hull(v, b.vertices))
    return d


def gl_apply(A: np.ndarray, K: ConvexPolytope) -> ConvexPolytope:
    A = np.asarray(A, dtype=float)
    if A.shape != (K.dim, K.dim):
        raise DimensionMismatchError("matrix shape does not match body dimension")
    if abs(np.linalg.det(A)) <= 1e-12:
        raise DegenerateError("matrix is singular")
    return ConvexPolytope.from_points(K.vertices @ A.T)


def facet_normal_candidates(K: ConvexPolytope) -> np.ndarray:
    """Unit directions guaranteed to include every facet normal of K.

    Dimension 1 uses the two signs, dimension 2 the perpendiculars of vertex
    differences, dimension 3 cross products of difference pairs; both signs
    of each candidate are returned, deduplicated.
    """
    V = K.vertices
    if K.dim == 1:
        return np.array([[1.0], [-1.0]])
    diffs = []
    for i in range(V.shape[0]):
        for j in range(i + 1, V.shape[0]):
            d = V[j] - V[i]
            n = np.linalg.norm(d)
            if n > 1e-12:
                diffs.append(d / n)
    if K.dim == 2:
        cands = [np.array([-d[1], d[0]]) for d in diffs]
    elif K.dim == 3:
        cands = []
        for i in range(len(diffs)):
            for j in range(i + 1, len(diffs)):
                c = np.cross(diffs[i], diffs[j])
                if np.linalg.norm(c) > 1e-10:
                    cands.append(c)
    else:
        raise UnsupportedDimensionError(
            "facet normal candidates implemented for dimensions up to 3"
        )
    if not cands:
        raise DegenerateError("body has no facets in this dimension")
    arr = np.array(cands)
    arr /= np.linalg.norm(arr, axis=1, keepdims=True)
    arr = np.vstack([arr, -arr])
    # dedupe on a coarse key but return the unrounded unit vectors
    _, keep = np.unique(np.round(arr / 1e-9) * 1e-9, axis=0, return_index=True)
    return arr[np.sort(keep)]


# ---------------------------------------------------------------------------
# subspaces and projections


@dataclass(frozen=True)
class SubspaceBasis:
    """Orthonormal basis (rows) of a linear subspace of R^ambient_dim."""

    ambient_dim: int
    basis: np.ndarray

    def __post_init__(self):
        b = np.asarray(self.basis, dtype=float)
        if b.ndim != 2 or b.shape[1] != self.ambient_dim:
            b = b.reshape((-1, self.ambient_dim))
        if b.shape[0] > 0:
            gram = b @ b.T
            if not np.allclose(gram, np.eye(b.shape[0]), atol=1e-12):
                raise PreconditionError("basis rows are not orthonormal")
        object.__setattr__(self, "basis", b)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]


def project(K: ConvexPolytope, V: SubspaceBasis) -> ConvexPolytope:
    """Orthogonal projection of K onto span(V), in V-coordinates."""
    if V.ambient_dim != K.dim:
        raise DimensionMismatchError("subspace ambient dimension mismatch")
    if V.dim == 0:
        raise DegenerateError("projection target has no basis vectors")
    return ConvexPolytope.from_points(K.vertices @ V.basis.T)


# ---------------------------------------------------------------------------
# M-addition


@dataclass(frozen=True)
class QuadrantPolytope:
    """Convex coefficient polygon contained in one closed quadrant of R^2."""

    vertices: np.ndarray
    signs: tuple[int, int] = (1, 1)

    def __post_init__(self):
        v = np.atleast_2d(np.asarray(self.vertices, dtype=float))
        if v.shape[1] != 2 or v.shape[0] < 1:
            raise DimensionMismatchError("coefficient polygon must be points in R^2")
        if self.signs[0] not in (-1, 1) or self.signs[1] not in (-1, 1):
            raise PreconditionError("signs must be +-1")
        refl = v * np.array(self.signs, dtype=float)
        if np.min(refl) < -1e-12:
            raise PreconditionError("polygon leaves its declared quadrant")
        object.__setattr__(self, "vertices", canonicalize_vertices(v))

    @classmethod
    def from_points(cls, points) -> "QuadrantPolytope":
        v = np.atleast_2d(np.asarray(points, dtype=float))
        signs = []
        for c in range(2):
            col = v[:, c]
            if np.min(col) >= -1e-12:
                signs.append(1)
            elif np.max(col) <= 1e-12:
                signs.append(-1)
            else:
                raise PreconditionError("points straddle a coordinate axis")
        return cls(vertices=v, signs=(signs[0], signs[1]))

    def reflected(self) -> np.ndarray:
        """Vertices mapped into the nonnegative quadrant."""
        return self.vertices * np.array(self.signs, dtype=float)


def minkowski_m_set() -> QuadrantPolytope:
    return QuadrantPolytope(vertices=np.array([[1.0, 1.0]]))


def hull_m_set() -> QuadrantPolytope:
    return QuadrantPolytope(vertices=np.array([[1.0, 0.0], [0.0, 1.0]]))


def lp_m_set(p: float, tol: float) -> QuadrantPolytope:
    """Inner polygonal approximation of {(a,b) in [0,1]^2 : a^q + b^q <= 1},
    q the conjugate exponent of p.

    The boundary curve is sampled adaptively until every chord sits within
    `tol` of the curve (sagitta test at the parameter midpoint), which keeps
    the vertex count at the usual inscribed-polygon rate O(1/sqrt(tol)).
    The limits are covered by the explicit sets: p=1 by {(1,1)} and p=inf by
    the hull segment conv{(1,0),(0,1)}.
    """
    if not (1.0 < p < np.inf):
        raise PreconditionError("p must lie strictly between 1 and infinity")
    if tol <= 0:
        raise PreconditionError("tol must be positive")
    q = p / (p - 1.0)

    def curve(t: np.ndarray) -> np.ndarray:
        # a = cos(t)^(2/q), b = sin(t)^(2/q) parametrizes a^q + b^q = 1
        c, s = np.cos(t), np.sin(t)
        return np.column_stack([np.abs(c) ** (2.0 / q), np.abs(s) ** (2.0 / q)])

    ts = list(np.linspace(0.0, np.pi / 2.0, 9))
    done = False
    while not done:
        done = True
        refined = [ts[0]]
        for t0, t1 in zip(ts[:-1], ts[1:]):
            a, b = curve(np.array([t0]))[0], curve(np.array([t1]))[0]
            tm = 0.5 * (t0 + t1)
            mid = curve(np.array([tm]))[0]
            chord = b - a
            nrm = np.linalg.norm(chord)
            if nrm < 1e-15:
                sag = np.linalg.norm(mid - a)
            else:
                rel = mid - a
                sag = abs(chord[0] * rel[1] - chord[1] * rel[0]) / nrm
            if sag > tol:
                refined.append(tm)
                done = False
            refined.append(t1)
        ts = refined
        if len(ts) > 2_000_000:
            raise PreconditionError("tolerance too small for polygonal approximation")
    pts = curve(np.array(ts))
    pts = np.vstack([pts, [0.0, 0.0]])
    return QuadrantPolytope(vertices=pts)


def m_add(M: QuadrantPolytope, K: ConvexPolytope, L: ConvexPolytope) -> ConvexPolytope:
    """M-addition: hull of {a' v + b' w} over reflected coefficient vertices
    (a', b') and vertices v of e1*K, w of e2*L.

    Valid because the support function of the sum is the reflected polygon's
    support evaluated at the two operand supports, and all three maxima are
    attained at vertices.
    """
    if K.dim != L.dim:
        raise DimensionMismatchError("operands live in different dimensions")
    e1, e2 = M.signs
    kv = e1 * K.vertices
    lv = e2 * L.vertices
    ab = M.reflected()
    pts = (
        ab[:, None, None, 0:1] * kv[None, :, None, :]
        + ab[:, None, None, 1:2] * lv[None, None, :, :]
    ).reshape(-1, K.dim)
    return ConvexPolytope.from_points(pts)


def m_support(M: QuadrantPolytope, K: ConvexPolytope, L: ConvexPolytope, x) -> float:
    """Support-route value of the M-sum at direction x, never materializing
    the sum: max over reflected (a,b) of a h_{e1 K}(x) + b h_{e2 L}(x)."""
    if K.dim != L.dim:
        raise DimensionMismatchError("operands live in different dimensions")
    x = np.asarray(x, dtype=float)
    e1, e2 = M.signs
    h1 = float(np.max((e1 * K.vertices) @ x))
    h2 = float(np.max((e2 * L.vertices) @ x))
    ab = M.reflected()
    return float(np.max(ab[:, 0] * h1 + ab[:, 1] * h2))


# ---------------------------------------------------------------------------
# 4-argument support functionals


@dataclass(frozen=True)
class SupportFun4:
    """Support function of a closed convex subset of R^4, evaluated pointwise.

    `fn` returns a float or +inf outside the finiteness domain. `describe`
    is carried into reports.
    """

    fn: Callable[[float, float, float, float], float]
    describe: str = "custom"

    def __call__(self, a: float, b: float, c: float, d: float) -> float:
        return float(self.fn(a, b, c, d))

    @classmethod
    def from_points(cls, points) -> "SupportFun4":
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        if pts.shape[1] != 4:
            raise DimensionMismatchError("points must lie in R^4")

        def fn(a, b, c, d):
            return float(np.max(pts @ np.array([a, b, c, d])))

        return cls(fn=fn, describe="finite point set")

    @classmethod
    def lp_pair(cls, p: float) -> "SupportFun4":
        """Exact L_p combination of the two positive-argument slots: the
        support of {(0,s,0,t): s,t >= 0, |(s,t)|_q <= 1}."""
        if not (1.0 <= p < np.inf):
            raise PreconditionError("p must lie in [1, inf)")

        def fn(a, b, c, d):
            bb, dd = max(b, 0.0), max(d, 0.0)
            if p == 1.0:
                return bb + dd
            return float((bb**p + dd**p) ** (1.0 / p))

        return cls(fn=fn, describe=f"lp pair p={p}")

    def spot_check(self, rng: np.random.Generator, trials: int = 16) -> None:
        """Sanity-check positive homogeneity and subadditivity at random pairs."""
        for _ in range(trials):
            x = rng.standard_normal(4)
            y = rng.standard_normal(4)
            lam = float(rng.uniform(0.1, 3.0))
            fx, fy = self(*x), self(*y)
            fl = self(*(lam * x))
            if np.isfinite(fx):
                if not np.isclose(fl, lam * fx, rtol=1e-9, atol=1e-9):
                    raise DomainError("functional is not positively homogeneous")
            fs = self(*(x + y))
            if np.isfinite(fx) and np.isfinite(fy):
                if fs > fx + fy + 1e-9 * (1 + abs(fx) + abs(fy)):
                    raise DomainError("functional is not subadditive")


def m4_op(Mbar: SupportFun4, K: ConvexPolytope, L: ConvexPolytope, x) -> float:
    """Pointwise combined support at direction x:
    Mbar(h_{-K}(x), h_K(x), h_{-L}(x), h_L(x))."""
    if K.dim != L.dim:
        raise DimensionMismatchError("operands live in different dimensions")
    x = np.asarray(x, dtype=float)
    a = float(np.max(K.vertices @ (-x)))
    b = float(np.max(K.vertices @ x))
    c = float(np.max(L.vertices @ (-x)))
    d = float(np.max(L.vertices @ x))
    out = Mbar(a, b, c, d)
    if not np.isfinite(out):
        raise DomainError("support functional evaluated outside its domain")
    return out


# ---------------------------------------------------------------------------
# polarity


def origin_interior_margin(K: ConvexPolytope) -> float:
    """Cheap conservative estimate of min_v h_K(v) over unit directions.

    Samples a quasi-uniform grid plus normalized vertex differences; the body
    contains the origin in its interior iff the true minimum is positive.
    """
    dirs = [direction_grid(K.dim, ORIGIN_GRID)]
    m = K.vertices.shape[0]
    if m > 1:
        diffs = (K.vertices[:, None, :] - K.vertices[None, :, :]).reshape(-1, K.dim)
        nrm = np.linalg.norm(diffs, axis=1)
        good = nrm > 1e-12
        dirs.append(diffs[good] / nrm[good, None])
    dirs = np.vstack(dirs)
    return float(np.min(support_many(K, dirs)))


def polar_radial(K: ConvexPolytope):
    """Radial map of the polar body: direction v maps to 1 / h_K(v).

    Requires the origin in the interior of K (sampled check).
    """
    if origin_interior_margin(K) < ORIGIN_INTERIOR_TOL:
        raise PreconditionError("origin is not interior to the body")
    from .star import RadialMap

    verts = K.vertices

    def rho(v: np.ndarray) -> float:
        return 1.0 / float(np.max(verts @ v))

    return RadialMap(dim=K.dim, fn=rho, describe="polar of polytope")


def min_norm_vertex_weights(K: ConvexPolytope):
    """Min-norm point of the body and its convex vertex weights."""
    return min_norm_point(K.vertices)


def nearest_point(K: ConvexPolytope, x):
    """Nearest point of K to x."""
    p, _ = project_to_hull(np.asarray(x, dtype=float), K.vertices)
    return p
