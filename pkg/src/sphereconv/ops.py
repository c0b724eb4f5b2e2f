"""Binary operations on spherical bodies and the covariance harnesses.

An operation spec is either one of the closed-form cases (the four trivial
projections and the hull of the union, possibly negated) or a transported
Euclidean operation: map both bodies through a gnomonic chart, combine them
with an M-addition (or a 4-argument support functional), and map back.
Transported operations commute with projection to subspheres through the
chart pole; the full-covariance harness searches for the violations that
appear once the pole is allowed to move.
"""

import dataclasses
from dataclasses import dataclass

import numpy as np

from .euclid import (
    ConvexPolytope,
    QuadrantPolytope,
    SupportFun4,
    hull_m_set,
    lp_m_set,
    m4_op,
    m_add,
    minkowski_m_set,
    support_many,
)
from .exceptions import DomainError, GeometryError, ImproperBodyError
from .gnomonic import HemisphereChart, map_body, map_body_inv
from .linalg import chart_plane_basis, direction_grid
from .randgen import (
    random_cap_point,
    random_sphere_body,
    random_subsphere_through,
    random_unit,
    trial_stream,
)
from .sphere import (
    SpherePolytope,
    Subsphere,
    conv_union,
    hemisphere_center,
    neg,
    sph_project,
    sph_support_many,
)
from . import serialization

TRIVIAL_KINDS = ("trivial_k", "trivial_neg_k", "trivial_l", "trivial_neg_l")
KINDS = TRIVIAL_KINDS + ("conv_union", "neg_conv_union", "transport", "transport4")
DOMAIN_TOL = 1e-12
TRANSPORT4_GRID = 1024


@dataclass(frozen=True)
class SphereOp:
    """Spec of a binary operation on proper spherical bodies."""

    kind: str
    m: QuadrantPolytope | None = None
    mbar: SupportFun4 | None = None
    chart_center: np.ndarray | None = None  # None: margin center of the pair
    name: str = ""

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown operation kind {self.kind!r}")
        if self.kind == "transport" and self.m is None:
            raise DomainError("transport requires a coefficient polygon")
        if self.kind == "transport4" and self.mbar is None:
            raise DomainError("transport4 requires a support functional")
        if not self.name:
            object.__setattr__(self, "name", self.kind)

    def with_chart_center(self, u) -> "SphereOp":
        return dataclasses.replace(self, chart_center=np.asarray(u, dtype=float))


def trivial_k() -> SphereOp:
    return SphereOp(kind="trivial_k")


def trivial_neg_k() -> SphereOp:
    return SphereOp(kind="trivial_neg_k")


def trivial_l() -> SphereOp:
    return SphereOp(kind="trivial_l")


def trivial_neg_l() -> SphereOp:
    return SphereOp(kind="trivial_neg_l")


def conv_union_op() -> SphereOp:
    return SphereOp(kind="conv_union")


def neg_conv_union_op() -> SphereOp:
    return SphereOp(kind="neg_conv_union")


def transport(m: QuadrantPolytope, name: str = "transport") -> SphereOp:
    return SphereOp(kind="transport", m=m, name=name)


def transport_minkowski() -> SphereOp:
    return transport(minkowski_m_set(), name="transport_minkowski")


def transport_hull() -> SphereOp:
    return transport(hull_m_set(), name="transport_hull")


def transport_lp(p: float, tol: float = 1e-6) -> SphereOp:
    return transport(lp_m_set(p, tol), name=f"transport_l{p:g}")


def transport4(mbar: SupportFun4, name: str = "transport4") -> SphereOp:
    return SphereOp(kind="transport4", mbar=mbar, name=name)


def pair_center(K: SpherePolytope, L: SpherePolytope) -> np.ndarray:
    """Margin-maximizing hemisphere witness of the union of the generators."""
    hc = hemisphere_center(np.vstack([K.generators, L.generators]))
    if hc is None:
        raise ImproperBodyError("pair admits no common open hemisphere")
    return hc[0]


def _reconstruct_from_supports(dirs: np.ndarray, h: np.ndarray):
    """Polytope from sampled support values: recenter at the grid Steiner
    point, hull the touching points, report the self-assessed support gap."""
    n = dirs.shape[1]
    steiner = n * np.mean(h[:, None] * dirs, axis=0)
    shifted = h - dirs @ steiner
    pts = steiner[None, :] + shifted[:, None] * dirs
    body = ConvexPolytope.from_points(pts)
    tol = float(np.max(np.abs(support_many(body, dirs) - h)))
    return body, tol


def apply_report(op: SphereOp, K: SpherePolytope, L: SpherePolytope):
    """Apply the operation; returns (body, info dict)."""
    if K.ambient_dim != L.ambient_dim:
        raise GeometryError("operands live in different ambient dimensions")
    info: dict = {"op": op.name, "kind": op.kind}
    if op.kind == "trivial_k":
        return K, info
    if op.kind == "trivial_neg_k":
        return neg(K), info
    if op.kind == "trivial_l":
        return L, info
    if op.kind == "trivial_neg_l":
        return neg(L), info
    if op.kind == "conv_union":
        return conv_union(K, L), info
    if op.kind == "neg_conv_union":
        return neg(conv_union(K, L)), info

    u = op.chart_center if op.chart_center is not None else pair_center(K, L)
    chart = HemisphereChart(u)
    info["chart_center"] = [float(x) for x in chart.u]
    Kb = map_body(chart, K)
    Lb = map_body(chart, L)
    if op.kind == "transport":
        return map_body_inv(chart, m_add(op.m, Kb, Lb)), info
    dirs = direction_grid(chart.plane_dim, TRANSPORT4_GRID)
    h = np.array([m4_op(op.mbar, Kb, Lb, x) for x in dirs])
    body, tol = _reconstruct_from_supports(dirs, h)
    info["reconstruction_tol"] = tol
    return map_body_inv(chart, body), info


def apply(op: SphereOp, K: SpherePolytope, L: SpherePolytope) -> SpherePolytope:
    return apply_report(op, K, L)[0]


# ---------------------------------------------------------------------------
# the 4-argument hull functional


def hull_support_functional(a: float, b: float, c: float, d: float) -> float:
    """Combined support value that reproduces the hull of the union:
    max(b, d) on the domain a + b >= 0, c + d >= 0."""
    if a + b < -DOMAIN_TOL or c + d < -DOMAIN_TOL:
        raise DomainError("arguments violate the width constraints")
    return max(b, d)


def hull_support_fun4() -> SupportFun4:
    """Same functional packaged as a SupportFun4 (+inf outside the domain)."""

    def fn(a, b, c, d):
        if a + b < -DOMAIN_TOL or c + d < -DOMAIN_TOL:
            return np.inf
        return max(b, d)

    return SupportFun4(fn=fn, describe="hull of the union")


def conv_via_E(u, K: SpherePolytope, L: SpherePolytope, samples: int = 512) -> float:
    """Max gap between tan of the spherical support of the hull of the union
    and the 4-argument functional route through the chart at u."""
    chart = HemisphereChart(u)
    Kb = map_body(chart, K)
    Lb = map_body(chart, L)
    hull = conv_union(K, L)
    plane_dirs = direction_grid(chart.plane_dim, samples)
    amb_dirs = plane_dirs @ chart.plane_basis
    b = support_many(Kb, plane_dirs)
    a = support_many(Kb, -plane_dirs)
    d = support_many(Lb, plane_dirs)
    c = support_many(Lb, -plane_dirs)
    rhs = np.array(
        [hull_support_functional(ai, bi, ci, di) for ai, bi, ci, di in zip(a, b, c, d)]
    )
    lhs = np.tan(sph_support_many(chart.u, hull, amb_dirs))
    return float(np.max(np.abs(lhs - rhs)))


# ---------------------------------------------------------------------------
# covariance checking


def _intrinsic_gamma(
    S: Subsphere, A: SpherePolytope, B: SpherePolytope, samples: int = 512
) -> float:
    """Support gap between two bodies lying in the subsphere, measured in the
    subsphere's own coordinates at its margin-maximizing shared pole.
    Returns pi/2 when no shared pole exists."""
    W = S.basis
    ga = A.generators @ W.T
    gb = B.generators @ W.T
    # off-span mass means the bodies do not actually lie in S: treat as maximal
    if (
        np.max(np.abs(np.linalg.norm(ga, axis=1) - 1.0)) > 1e-6
        or np.max(np.abs(np.linalg.norm(gb, axis=1) - 1.0)) > 1e-6
    ):
        return float(np.pi / 2)
    ga /= np.linalg.norm(ga, axis=1, keepdims=True)
    gb /= np.linalg.norm(gb, axis=1, keepdims=True)
    if W.shape[0] == 1:
        # 0-sphere: a proper body is a single point at coordinate +1 or -1
        sa = set(np.sign(ga[:, 0]).tolist())
        sb = set(np.sign(gb[:, 0]).tolist())
        if len(sa) > 1 or len(sb) > 1:
            return float(np.pi / 2)
        return 0.0 if sa == sb else float(np.pi / 2)
    hc = hemisphere_center(np.vstack([ga, gb]))
    if hc is None:
        return float(np.pi / 2)
    w = hc[0]
    plane = chart_plane_basis(w)
    k = W.shape[0] - 1
    dirs = direction_grid(k, samples) @ plane
    ha = np.max(np.arctan2(dirs @ ga.T, (ga @ w)[None, :]), axis=1)
    hb = np.max(np.arctan2(dirs @ gb.T, (gb @ w)[None, :]), axis=1)
    return float(np.max(np.abs(ha - hb)))


U_RESTRICTED = "u_restricted"
FULL = "full"


def proj_covariance_check(
    op: SphereOp,
    mode: str = FULL,
    u=None,
    trials: int = 200,
    tol: float = 1e-8,
    seed: int = 0,
    ambient_dim: int = 3,
    samples: int = 512,
) -> dict:
    """Randomized projection-covariance check of (K|S)*(L|S) = (K*L)|S.

    u_restricted mode fixes the chart pole u, draws bodies inside its
    hemisphere and subspheres through u (any dimension, 0-spheres included).
    full mode draws a fresh pair hemisphere each trial, a witness point u'
    inside it, and a subsphere of dimension >= 1 through u'; transported
    operations then use the pair's own margin center, which is what exposes
    their chart dependence. Trial t draws from the (seed, t) stream.
    """
    if mode not in (U_RESTRICTED, FULL):
        raise GeometryError(f"unknown mode {mode!r}")
    d = ambient_dim
    if mode == U_RESTRICTED:
        u = np.asarray(u, dtype=float) if u is not None else np.eye(d)[d - 1]
    max_dev = 0.0
    violations = 0
    witness = None
    for t in range(trials):
        rng = trial_stream(seed, t)
        if mode == U_RESTRICTED:
            c = random_cap_point(rng, u, 0.3)
            K = random_sphere_body(rng, d, center=c)
            L = random_sphere_body(rng, d, center=c)
            k = int(rng.integers(0, d - 1))
            S = random_subsphere_through(rng, u, k)
            trial_op = (
                op.with_chart_center(u)
                if op.kind in ("transport", "transport4")
                else op
            )
        else:
            c = random_unit(rng, d)
            K = random_sphere_body(rng, d, center=c)
            L = random_sphere_body(rng, d, center=c)
            up = random_cap_point(rng, c, np.pi / 6 - 0.1)
            k = int(rng.integers(1, d - 1))
            S = random_subsphere_through(rng, up, k)
            trial_op = op
        lhs = rhs = None
        try:
            lhs = apply(trial_op, sph_project(K, S), sph_project(L, S))
            rhs = sph_project(apply(trial_op, K, L), S)
            dev = _intrinsic_gamma(S, lhs, rhs, samples=samples)
        except GeometryError as exc:
            dev = float(np.pi / 2)  # one side left the proper class: maximal
            failure = str(exc)
        max_dev = max(max_dev, dev)
        if dev > tol:
            violations += 1
            if witness is None or dev > witness["deviation"]:
                witness = {
                    "trial": t,
                    "deviation": dev,
                    "bodies": {
                        "K": serialization.sphere_body_record(K),
                        "L": serialization.sphere_body_record(L),
                    },
                    "subsphere": S.basis.tolist(),
                    "lhs": serialization.sphere_body_record(lhs)
                    if lhs is not None
                    else failure,
                    "rhs": serialization.sphere_body_record(rhs)
                    if rhs is not None
                    else failure,
                }
    return {
        "spec": op.name,
        "mode": mode,
        "trials": trials,
        "tol": tol,
        "max_dev": max_dev,
        "violations": violations,
        "witness": witness,
        "seed": seed,
        "ambient_dim": ambient_dim,
    }


# ---------------------------------------------------------------------------
# boundary-escape demo


def discontinuity_demo(eps_list=(0.2, 0.1, 0.05, 0.01), samples: int = 512) -> dict:
    """Hull of a fixed quarter arc with an arc closing on the half circle.

    The union's generator spread reaches pi - eps while the properness margin
    collapses like sin(eps/2), even though the moving arc converges to its
    limit: the hull escapes every uniformly-proper class.
    """
    from .sphere import delta_s, make_body, sph_dist

    u = np.array([0.0, 0.0, 1.0])
    v = np.array([1.0, 0.0, 0.0])
    K = make_body(np.vstack([-v, u]))
    L_limit = make_body(np.vstack([u, v]))
    rows = []
    for eps in eps_list:
        w = u * np.sin(eps) + v * np.cos(eps)
        L = make_body(np.vstack([u, w]))
        union = conv_union(K, L)
        g = union.generators
        ang = 0.0
        for i in range(g.shape[0]):
            for j in range(i + 1, g.shape[0]):
                ang = max(ang, sph_dist(g[i], g[j]))
        rows.append(
            {
                "eps": float(eps),
                "max_generator_angle": ang,
                "pi_minus_eps": float(np.pi - eps),
                "properness_margin": union.margin,
                "delta_s_to_limit": delta_s(L, L_limit, samples=samples),
            }
        )
    return {"rows": rows}
