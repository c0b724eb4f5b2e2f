"""Wolfe's min-norm-point algorithm over finite point sets, plus the
projection and membership helpers built on top of it.

The algorithm maintains a corral S of affinely independent points and
alternates a linear minimization step (grow S toward the best improving
point) with an affine min-norm step (shrink S until the affine minimizer has
all-positive barycentric weights). Terminates on the Wolfe criterion
min_p x.p >= |x|^2 - tol.
"""

import numpy as np

WOLFE_TOL = 1e-12
NNLS_DUAL_TOL = 1e-12


def nnls(A: np.ndarray, b: np.ndarray, tol: float = NNLS_DUAL_TOL, maxiter: int = 300):
    """Nonnegative least squares min |Ax - b| s.t. x >= 0, Lawson-Hanson style.

    scipy's rewritten nnls returns suboptimal solutions (and a wrong
    residual) on roughly 1% of small dense problems in the pinned version,
    which is fatal for cone-membership thresholds, so the active-set loop
    lives here. Terminates when dual feasibility max(A^T r) <= tol * |b|.
    """
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    n = A.shape[1]
    x = np.zeros(n)
    passive = np.zeros(n, dtype=bool)
    resid = b.copy()
    scale = max(1.0, float(np.linalg.norm(b)))
    for _ in range(maxiter):
        w = A.T @ resid
        w[passive] = -np.inf
        j = int(np.argmax(w)) if n else 0
        if n == 0 or w[j] <= tol * scale:
            break
        passive[j] = True
        while True:
            idx = np.flatnonzero(passive)
            z, *_ = np.linalg.lstsq(A[:, idx], b, rcond=None)
            if np.all(z > 0):
                x[:] = 0.0
                x[idx] = z
                break
            mask = z <= 0
            xi = x[idx]
            denom = xi[mask] - z[mask]
            denom[denom == 0] = 1e-300
            alpha = float(np.min(xi[mask] / denom))
            x[idx] = xi + alpha * (z - xi)
            passive[idx[x[idx] <= 1e-14]] = False
            x[x <= 1e-14] = 0.0
        resid = b - A @ x
    return x, float(np.linalg.norm(resid))


def _affine_min_norm(B: np.ndarray) -> np.ndarray:
    """Barycentric coordinates of the min-norm point of the affine hull of B."""
    k = B.shape[0]
    G = np.empty((k + 1, k + 1))
    G[:k, :k] = B @ B.T
    G[:k, k] = 1.0
    G[k, :k] = 1.0
    G[k, k] = 0.0
    rhs = np.zeros(k + 1)
    rhs[k] = 1.0
    try:
        sol = np.linalg.solve(G, rhs)
    except np.linalg.LinAlgError:
        sol = np.linalg.lstsq(G, rhs, rcond=None)[0]
    return sol[:k]


def min_norm_point(points: np.ndarray, tol: float = WOLFE_TOL):
    """Min-norm point of the convex hull of `points`.

    Parameters
    ----------
    points : (m, d) array
    tol : Wolfe termination tolerance, relative to the squared scale.

    Returns
    -------
    x : (d,) array, the minimizer.
    weights : (m,) array of convex coefficients with points.T @ weights = x.
    """
    P = np.atleast_2d(np.asarray(points, dtype=float))
    m, d = P.shape
    scale2 = max(1.0, float(np.max(np.sum(P * P, axis=1))))
    norms2 = np.sum(P * P, axis=1)
    i0 = int(np.argmin(norms2))
    idx = [i0]
    w = np.array([1.0])
    x = P[i0].copy()

    for _ in range(16 * m + 64):
        dots = P @ x
        j = int(np.argmin(dots))
        if dots[j] >= x @ x - tol * scale2:
            break
        if j in idx:
            break  # numerically stalled; x already optimal to working precision
        idx.append(j)
        w = np.append(w, 0.0)
        for _ in range(16 * m + 64):
            B = P[idx]
            v = _affine_min_norm(B)
            if np.all(v > 1e-14):
                w = v
                x = B.T @ v
                break
            # walk from w toward v until the first coefficient hits zero
            diff = w - v
            mask = diff > 1e-14
            theta = float(np.min(w[mask] / diff[mask]))
            theta = min(1.0, max(0.0, theta))
            w = (1 - theta) * w + theta * v
            w[w < 1e-14] = 0.0
            keep = w > 0.0
            if not np.any(keep):
                keep[int(np.argmax(v))] = True
                w[keep] = 1.0
            idx = [i for i, k in zip(idx, keep) if k]
            w = w[keep]
            w = w / np.sum(w)
            if len(idx) == 1:
                x = P[idx[0]].copy()
                w = np.array([1.0])
                break

    full = np.zeros(m)
    for i, wi in zip(idx, w):
        full[i] += wi
    return x, full


def project_to_hull(x: np.ndarray, points: np.ndarray, tol: float = WOLFE_TOL):
    """Nearest point of conv(points) to x, via min-norm on the shifted set."""
    x = np.asarray(x, dtype=float)
    p, w = min_norm_point(np.asarray(points, dtype=float) - x, tol=tol)
    return p + x, w


def dist_to_hull(x: np.ndarray, points: np.ndarray, tol: float = WOLFE_TOL) -> float:
    p, _ = project_to_hull(x, points, tol=tol)
    return float(np.linalg.norm(np.asarray(x, dtype=float) - p))


def cone_coefficients(x: np.ndarray, generators: np.ndarray):
    """Nonnegative least-squares fit of x against the generator rays.

    Returns (coefficients, residual). The residual is the Euclidean distance
    from x to the convex cone spanned by the generators.
    """
    A = np.asarray(generators, dtype=float).T
    coef, resid = nnls(A, np.asarray(x, dtype=float))
    return coef, float(resid)


def in_cone(x: np.ndarray, generators: np.ndarray, tol: float = 1e-9) -> bool:
    _, resid = cone_coefficients(x, generators)
    return resid <= tol
