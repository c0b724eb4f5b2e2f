"""Small shared numeric helpers: unit vectors, orthonormalization, direction grids."""

import numpy as np

from .exceptions import DegenerateError

GS_DROP_TOL = 1e-10


def unit(v: np.ndarray) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    n = np.linalg.norm(v)
    if n <= 1e-300:
        raise DegenerateError("cannot normalize a zero vector")
    return v / n


def gram_schmidt(vectors, drop_tol: float = GS_DROP_TOL) -> np.ndarray:
    """Orthonormalize `vectors` in order, dropping near-dependent entries.

    Classical Gram-Schmidt with one re-orthogonalization pass, which is enough
    at the conditioning this package sees. Returns an array of shape (k, d).
    """
    basis: list[np.ndarray] = []
    for v in vectors:
        w = np.asarray(v, dtype=float).copy()
        for _ in range(2):
            for b in basis:
                w -= (b @ w) * b
        n = np.linalg.norm(w)
        if n > drop_tol:
            basis.append(w / n)
    return np.array(basis) if basis else np.zeros((0, len(vectors[0])))


def chart_plane_basis(u: np.ndarray) -> np.ndarray:
    """Deterministic orthonormal basis of the hyperplane orthogonal to unit u.

    Seeded from the ambient standard basis with u prepended, so the same pole
    always produces the same chart coordinates.
    """
    d = u.shape[0]
    cand = [u] + [np.eye(d)[i] for i in range(d)]
    full = gram_schmidt(cand)
    if full.shape[0] != d:
        raise DegenerateError("chart pole did not yield a full basis")
    return full[1:]


def slerp(a: np.ndarray, b: np.ndarray, t: float) -> np.ndarray:
    """Point at parameter t on the unit-sphere geodesic from a to b."""
    dot = float(np.clip(a @ b, -1.0, 1.0))
    theta = np.arccos(dot)
    if theta < 1e-12:
        return unit((1 - t) * a + t * b)
    s = np.sin(theta)
    return (np.sin((1 - t) * theta) * a + np.sin(t * theta) * b) / s


_FALLBACK_SEED = 0x5F3E1A2B9C4D7E81


def direction_grid(dim: int, count: int) -> np.ndarray:
    """Quasi-uniform unit directions in R^dim, deterministic in (dim, count).

    dim 1 gives the two signs, dim 2 equally spaced angles, dim 3 a Fibonacci
    sphere; higher dimensions fall back to a fixed-seed Gaussian cloud, which
    is the standard stand-in when no lattice construction is available.
    """
    if dim < 1:
        raise DegenerateError("direction grid needs dim >= 1")
    if dim == 1:
        return np.array([[1.0], [-1.0]])
    if dim == 2:
        ang = 2.0 * np.pi * np.arange(count) / count
        return np.column_stack([np.cos(ang), np.sin(ang)])
    if dim == 3:
        # Fibonacci spiral: z strictly inside (-1, 1) to avoid pole clustering
        i = np.arange(count)
        z = 1.0 - (2.0 * i + 1.0) / count
        r = np.sqrt(np.maximum(0.0, 1.0 - z * z))
        golden = np.pi * (3.0 - np.sqrt(5.0))
        ang = golden * i
        return np.column_stack([r * np.cos(ang), r * np.sin(ang), z])
    rng = np.random.Generator(np.random.PCG64(_FALLBACK_SEED + dim))
    pts = rng.standard_normal((count, dim))
    return pts / np.linalg.norm(pts, axis=1, keepdims=True)
