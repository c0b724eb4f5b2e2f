"""Seeded random objects for the property harnesses.

Stream splitting rule: trial t of a run seeded with s draws from
PCG64(SeedSequence(s, spawn_key=(t,))). Every randomized check in this
package goes through these helpers, so a (seed, trial) pair pins down the
entire trial.
"""

import numpy as np

from .euclid import ConvexPolytope, QuadrantPolytope
from .linalg import gram_schmidt, unit
from .sphere import SpherePolytope, Subsphere, make_body

DEFAULT_GEN_COUNT = 5
DEFAULT_CAP_RADIUS = np.pi / 3


def stream(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


def trial_stream(seed: int, trial: int) -> np.random.Generator:
    return np.random.Generator(
        np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(trial,)))
    )


def random_unit(rng: np.random.Generator, dim: int) -> np.ndarray:
    return unit(rng.standard_normal(dim))


def random_cap_point(
    rng: np.random.Generator, center: np.ndarray, radius: float
) -> np.ndarray:
    """Uniform point of the spherical cap, by rejection from the sphere."""
    cos_r = np.cos(radius)
    for _ in range(100_000):
        x = random_unit(rng, center.shape[0])
        if x @ center >= cos_r:
            return x
    raise RuntimeError("cap rejection sampling stalled")


def random_sphere_body(
    rng: np.random.Generator,
    ambient_dim: int,
    m: int = DEFAULT_GEN_COUNT,
    cap_radius: float = DEFAULT_CAP_RADIUS,
    center: np.ndarray | None = None,
) -> SpherePolytope:
    """m generators drawn uniformly from a cap about `center` (or a uniform
    random center)."""
    if center is None:
        center = random_unit(rng, ambient_dim)
    pts = np.array([random_cap_point(rng, center, cap_radius) for _ in range(m)])
    return make_body(pts)


def random_subsphere_through(
    rng: np.random.Generator, point: np.ndarray, sphere_dim: int
) -> Subsphere:
    """Random great subsphere of the given dimension whose span contains the
    point."""
    d = point.shape[0]
    if not (0 <= sphere_dim <= d - 2):
        raise ValueError("sphere_dim out of range for a proper subsphere")
    while True:
        cand = [point] + [rng.standard_normal(d) for _ in range(sphere_dim)]
        basis = gram_schmidt(cand)
        if basis.shape[0] == sphere_dim + 1:
            return Subsphere(ambient_dim=d, basis=basis)


def random_euclid_body(
    rng: np.random.Generator, dim: int, m: int = 8, scale: float = 1.0
) -> ConvexPolytope:
    pts = scale * rng.standard_normal((m, dim))
    return ConvexPolytope.from_points(pts)


def random_euclid_body_with_origin(
    rng: np.random.Generator, dim: int, m: int = 8, scale: float = 1.0
) -> ConvexPolytope:
    """Random body whose interior contains the origin.

    A randomly rotated cross-polytope (radii >= scale/2) is always part of
    the vertex set, so the origin is interior by construction; the remaining
    directions are free draws.
    """
    q, _ = np.linalg.qr(rng.standard_normal((dim, dim)))
    dirs = np.vstack([q, -q])
    extra = m - dirs.shape[0]
    if extra > 0:
        more = rng.standard_normal((extra, dim))
        more /= np.linalg.norm(more, axis=1, keepdims=True)
        dirs = np.vstack([dirs, more])
    radii = rng.uniform(0.5, 1.5, size=dirs.shape[0]) * scale
    pts = dirs * radii[:, None]
    return ConvexPolytope.from_points(pts)


def random_quadrant_polygon(
    rng: np.random.Generator, max_vertices: int = 6
) -> QuadrantPolytope:
    """Random convex coefficient polygon in a random quadrant."""
    signs = (int(rng.choice([-1, 1])), int(rng.choice([-1, 1])))
    m = int(rng.integers(1, max_vertices + 1))
    pts = rng.uniform(0.0, 1.5, size=(m, 2)) * np.array(signs, dtype=float)
    return QuadrantPolytope(vertices=pts, signs=signs)
