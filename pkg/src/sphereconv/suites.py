"""Named verification suites behind `sphereconv check`.

Each suite runs a bundle of identity checks and returns a report dict:
one entry per assertion with its anchor identity string, the observed
deviation, the tolerance, and a pass flag. Reports are deterministic for a
fixed RunConfig; timestamps are attached only at write time.
"""

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import ops
from .euclid import (
    facet_normal_candidates,
    hausdorff,
    m_support,
    polar_radial,
    support_many,
)
from .exceptions import GeometryError
from .gnomonic import HemisphereChart, map_body, map_body_inv, subsphere_to_subspace
from .linalg import chart_plane_basis, direction_grid, unit
from .randgen import (
    random_cap_point,
    random_euclid_body,
    random_euclid_body_with_origin,
    random_quadrant_polygon,
    random_sphere_body,
    random_subsphere_through,
    random_unit,
    trial_stream,
)
from .sphere import (
    SpherePolytope,
    delta_s,
    gamma_u,
    make_body,
    segment,
    sph_dist,
    sph_polar,
    sph_support_many,
)
from .star import (
    coordinate_skewed_op,
    f_op,
    lp_radial_sum,
    polar_relations_check,
    radial_from_polytope,
    random_star_map,
    section,
    section_covariance_check,
    sph_section,
    star_bridge,
    support_from_radial,
    transported_lp_f,
)


@dataclass(frozen=True)
class RunConfig:
    """Knobs shared by every suite.

    trials/samples/tol left as None pick each suite's own defaults, so a
    single --tol does not get misapplied to assertions with unrelated scales.
    """

    seed: int = 0
    trials: Optional[int] = None
    samples: Optional[int] = None
    tol: Optional[float] = None
    ambient_dim: int = 3
    out: Optional[str] = None

    def __post_init__(self):
        if not (0 <= int(self.seed) < 2**64):
            raise ValueError("seed must fit in 64 unsigned bits")
        if self.trials is not None and self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.samples is not None and self.samples < 1:
            raise ValueError("samples must be >= 1")
        if self.tol is not None and not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.ambient_dim < 3:
            raise ValueError("ambient_dim must be >= 3")


def _entry(name: str, identity: str, observed: float, tol: float, passed=None) -> dict:
    if passed is None:
        passed = bool(observed <= tol)
    return {
        "name": name,
        "identity": identity,
        "observed": float(observed),
        "tol": float(tol),
        "passed": bool(passed),
    }


def _report(suite: str, cfg: RunConfig, assertions: list, **extra) -> dict:
    rep = {
        "suite": suite,
        "seed": cfg.seed,
        "ambient_dim": cfg.ambient_dim,
        "assertions": assertions,
        "passed": all(a["passed"] for a in assertions),
    }
    rep.update(extra)
    return rep


def _equator_dirs(rng: np.random.Generator, u: np.ndarray, count: int) -> np.ndarray:
    """Random unit directions orthogonal to u."""
    d = u.shape[0]
    g = rng.standard_normal((count, d))
    g -= np.outer(g @ u, u)
    norms = np.linalg.norm(g, axis=1)
    good = norms > 1e-9
    return g[good] / norms[good, None]


# ---------------------------------------------------------------------------
# bridge


def run_bridge(cfg: RunConfig) -> dict:
    trials = cfg.trials or 200
    samples = cfg.samples or 100
    tol = cfg.tol or 1e-9

    dev_bridge = 0.0
    dev_round = 0.0
    for t in range(trials):
        rng = trial_stream(cfg.seed, t)
        d = 3 if t % 2 == 0 else 4
        K = random_sphere_body(rng, d)
        u = K.center
        chart = HemisphereChart(u)
        img = map_body(chart, K)
        dirs = _equator_dirs(rng, u, samples)
        h_eu = support_many(img, dirs @ chart.plane_basis.T)
        h_sp = sph_support_many(u, K, dirs)
        dev_bridge = max(dev_bridge, float(np.max(np.abs(h_eu - np.tan(h_sp)))))

        back = map_body_inv(chart, img)
        # chordal set-to-set gap between generator clouds; avoids the
        # arccos measurement floor near zero
        cross = np.linalg.norm(
            K.generators[:, None, :] - back.generators[None, :, :], axis=2
        )
        gap = max(float(np.max(np.min(cross, axis=1))), float(np.max(np.min(cross, axis=0))))
        dev_round = max(dev_round, gap)

    dev_seg = 0.0
    for t in range(trials // 2):
        rng = trial_stream(cfg.seed, 10_000 + t)
        u = random_unit(rng, 3)
        w = unit(_equator_dirs(rng, u, 4)[0])
        z = unit(np.cross(u, w))
        a, b = np.sort(rng.uniform(-1.4, 1.4, size=2))
        s = rng.uniform(-1.2, 1.2)
        v = u * np.cos(s) + z * np.sin(s)
        arc = segment(u, w, a, b)
        h_plus = sph_support_many(v, arc, np.array([w]))[0]
        h_minus = sph_support_many(v, arc, np.array([-w]))[0]
        uv = float(u @ v)
        dev_seg = max(dev_seg, abs(np.tan(h_plus) - np.tan(b) / uv))
        dev_seg = max(dev_seg, abs(np.tan(h_minus) + np.tan(a) / uv))

    assertions = [
        _entry("gnomonic_support_bridge", "h(g_u(K), v) = tan h_u(K, v)", dev_bridge, tol),
        _entry("chart_round_trip", "g_u^{-1}(g_u(K)) = K", dev_round, 1e-9),
        _entry(
            "segment_support_values",
            "tan h_v(arc, w) = tan(b)/<u,v> and tan h_v(arc, -w) = -tan(a)/<u,v>",
            dev_seg,
            1e-10,
        ),
    ]
    return _report("bridge", cfg, assertions, trials=trials, samples=samples, tol=tol)


# ---------------------------------------------------------------------------
# M-addition


def _exact_m_registry(rng: np.random.Generator):
    from .euclid import hull_m_set, minkowski_m_set

    return [minkowski_m_set(), hull_m_set(), random_quadrant_polygon(rng)]


def run_madd(cfg: RunConfig) -> dict:
    from .euclid import lp_m_set, m_add, support, SupportFun4

    trials = cfg.trials or 100
    samples = cfg.samples or 100
    tol = cfg.tol or 1e-9

    dev_exact = 0.0
    for t in range(trials):
        rng = trial_stream(cfg.seed, t)
        dim = 2 if t % 2 == 0 else 3
        M = _exact_m_registry(rng)[t % 3]
        K = random_euclid_body(rng, dim)
        L = random_euclid_body(rng, dim)
        out = m_add(M, K, L)
        dirs = direction_grid(dim, samples)
        via_verts = support_many(out, dirs)
        via_law = np.array([m_support(M, K, L, x) for x in dirs])
        dev_exact = max(dev_exact, float(np.max(np.abs(via_verts - via_law))))

    M2 = lp_m_set(2.0, 1e-8)
    fun2 = SupportFun4.lp_pair(2.0)
    dev_lp_poly = 0.0
    dev_lp_exact = 0.0
    for t in range(max(1, trials // 4)):
        rng = trial_stream(cfg.seed, 20_000 + t)
        K = random_euclid_body_with_origin(rng, 2, m=3)
        L = random_euclid_body_with_origin(rng, 2, m=3)
        out = m_add(M2, K, L)
        dirs = direction_grid(2, samples)
        via_verts = support_many(out, dirs)
        via_law = np.array([m_support(M2, K, L, x) for x in dirs])
        dev_lp_poly = max(dev_lp_poly, float(np.max(np.abs(via_verts - via_law))))
        quads = np.stack(
            [
                support_many(K, -dirs),
                support_many(K, dirs),
                support_many(L, -dirs),
                support_many(L, dirs),
            ],
            axis=1,
        )
        exact = np.array([fun2(*q) for q in quads])
        dev_lp_exact = max(dev_lp_exact, float(np.max(np.abs(via_law - exact))))

    dev_e = 0.0
    for t in range(trials):
        rng = trial_stream(cfg.seed, 30_000 + t)
        c = random_unit(rng, 3)
        K = random_sphere_body(rng, 3, center=c)
        L = random_sphere_body(rng, 3, center=c)
        try:
            dev_e = max(dev_e, ops.conv_via_E(c, K, L, samples=512))
        except GeometryError:
            continue

    vecs = [((0, 1, 0, 1), 1.0), ((1, 0, 1, 0), 0.0), ((-1, 1, 1, -1), 1.0)]
    dev_vec = max(abs(ops.hull_support_functional(*v) - e) for v, e in vecs)

    assertions = [
        _entry(
            "m_addition_support_law",
            "h_{K (+)_M L}(x) = max_{(a,b) in M+} a h_{e1 K}(x) + b h_{e2 L}(x)",
            dev_exact,
            tol,
        ),
        _entry(
            "lp_polygon_two_routes",
            "vertex route equals support route for the inscribed lp polygon",
            dev_lp_poly,
            tol,
        ),
        _entry(
            "lp_polygon_vs_exact",
            "max_M+ (a h_K + b h_L) = (h_K^2 + h_L^2)^(1/2) on h >= 0",
            dev_lp_exact,
            1e-6,
        ),
        _entry(
            "hull_functional_identity",
            "h_E(h_K(-x), h_K(x), h_L(-x), h_L(x)) = h_{conv(K u L)}(x)",
            dev_e,
            tol,
        ),
        _entry(
            "hull_functional_vectors",
            "h_E(0,1,0,1)=1, h_E(1,0,1,0)=0, h_E(-1,1,1,-1)=1",
            dev_vec,
            1e-15,
        ),
    ]
    return _report("madd", cfg, assertions, trials=trials, samples=samples, tol=tol)


# ---------------------------------------------------------------------------
# covariance (u-restricted transports)


def run_covariance(cfg: RunConfig) -> dict:
    trials = cfg.trials or 200
    samples = cfg.samples or 512
    tol = cfg.tol or 1e-8
    # M-addition with a fixed coefficient set commutes with chart projection
    # exactly, so the l2 polygon fineness does not enter the commutation
    # defect; a coarse polygon keeps the 200-trial budget
    specs = [
        ops.transport_minkowski(),
        ops.transport_hull(),
        ops.transport_lp(2.0, tol=1e-4),
    ]
    assertions = []
    for op in specs:
        rep = ops.proj_covariance_check(
            op,
            mode=ops.U_RESTRICTED,
            trials=trials,
            tol=tol,
            seed=cfg.seed,
            ambient_dim=cfg.ambient_dim,
            samples=samples,
        )
        assertions.append(
            _entry(
                f"u_restricted_{op.name}",
                "(K|S) * (L|S) = (K * L)|S for subspheres S through u",
                rep["max_dev"],
                tol,
                passed=rep["violations"] == 0,
            )
        )
    return _report(
        "covariance", cfg, assertions, trials=trials, samples=samples, tol=tol
    )


# ---------------------------------------------------------------------------
# dichotomy (full covariance passes vs transported violations)


def run_dichotomy(cfg: RunConfig) -> dict:
    trials = cfg.trials or 200
    samples = cfg.samples or 512
    tol = cfg.tol or 1e-8
    passing = [
        ops.trivial_k(),
        ops.trivial_neg_k(),
        ops.trivial_l(),
        ops.trivial_neg_l(),
        ops.conv_union_op(),
        ops.neg_conv_union_op(),
    ]
    assertions = []
    for op in passing:
        rep = ops.proj_covariance_check(
            op,
            mode=ops.FULL,
            trials=trials,
            tol=tol,
            seed=cfg.seed,
            ambient_dim=cfg.ambient_dim,
            samples=samples,
        )
        assertions.append(
            _entry(
                f"full_covariance_{op.name}",
                "(K|S) * (L|S) = (K * L)|S for all subspheres S",
                rep["max_dev"],
                tol,
                passed=rep["violations"] == 0,
            )
        )
    # coarse polygon tolerance: the violations sit near 1e-1, so 1e-4 of
    # polygonization error cannot manufacture or mask one
    for op in (ops.transport_minkowski(), ops.transport_lp(2.0, tol=1e-4)):
        rep = ops.proj_covariance_check(
            op,
            mode=ops.FULL,
            trials=min(100, trials),
            tol=tol,
            seed=cfg.seed,
            ambient_dim=cfg.ambient_dim,
            samples=samples,
        )
        big = rep["witness"] is not None and rep["witness"]["deviation"] > 1e-3
        assertions.append(
            _entry(
                f"full_violation_{op.name}",
                "exists S: (K|S) * (L|S) != (K * L)|S with gap > 1e-3",
                rep["witness"]["deviation"] if rep["witness"] else 0.0,
                1e-3,
                passed=rep["violations"] >= 1 and big,
            )
        )
    return _report(
        "dichotomy", cfg, assertions, trials=trials, samples=samples, tol=tol
    )


# ---------------------------------------------------------------------------
# metrics


def run_metrics(cfg: RunConfig) -> dict:
    trials = cfg.trials or 50
    samples = cfg.samples or 4096

    dev_h = 0.0
    dev_low = 0.0
    dev_sym = 0.0
    for t in range(trials):
        rng = trial_stream(cfg.seed, t)
        dim = 2 if t % 2 == 0 else 3
        # vertex radii are bounded by construction, so diameters stay under 4.
        # the planar angle grid resolves large bodies; the sphere grid has a
        # ~0.04 covering radius, and the sup of |h_K - h_L| can decay linearly
        # away from its maximizer, so the gap scales with edge length: keep
        # the 3d draws small enough for the fixed sample count to resolve.
        scale = 1.3 if dim == 2 else 0.16
        K = random_euclid_body_with_origin(rng, dim, scale=scale)
        L = random_euclid_body_with_origin(rng, dim, scale=scale)
        dirs = direction_grid(dim, samples)
        sampled = float(np.max(np.abs(support_many(K, dirs) - support_many(L, dirs))))
        exact = hausdorff(K, L)
        dev_h = max(dev_h, exact - sampled)
        dev_low = max(dev_low, sampled - exact)
        dev_sym = max(dev_sym, abs(hausdorff(L, K) - exact))

    dev_g = 0.0
    for t in range(trials):
        rng = trial_stream(cfg.seed, 40_000 + t)
        u = random_unit(rng, 3)
        w = random_cap_point(rng, u, 1.2)
        A = make_body([u], center=u)
        B = make_body([w], center=w)
        got = gamma_u(u, A, B, samples=samples)
        dev_g = max(dev_g, abs(got - sph_dist(u, w)))

    dev_s = 0.0
    for t in range(trials // 2):
        rng = trial_stream(cfg.seed, 50_000 + t)
        K = random_sphere_body(rng, 3)
        L = random_sphere_body(rng, 3, center=K.center)
        # identity and symmetry hold at any sample density; a light grid
        # keeps the nnls-per-sample cost down
        dev_s = max(dev_s, delta_s(K, K, samples=512))
        dev_s = max(dev_s, abs(delta_s(K, L, samples=512) - delta_s(L, K, samples=512)))

    assertions = [
        _entry(
            "hausdorff_vs_sampled_sup",
            "delta(K, L) = sup_v |h(K,v) - h(L,v)|",
            dev_h,
            cfg.tol or 1e-2,
        ),
        _entry(
            "sampled_sup_lower_bound",
            "max over a direction grid of |h_K - h_L| <= delta(K, L)",
            dev_low,
            1e-12,
        ),
        _entry("hausdorff_symmetry", "delta(K, L) = delta(L, K)", dev_sym, 1e-12),
        _entry(
            "gamma_u_singletons",
            "gamma_u({a}, {b}) = d(a, b)",
            dev_g,
            1e-3,
        ),
        _entry(
            "delta_s_basic",
            "delta_s(K, K) = 0 and delta_s(K, L) = delta_s(L, K)",
            dev_s,
            # the arccos in the point distance floors out near 1.5e-8
            1e-7,
        ),
    ]
    return _report(
        "metrics", cfg, assertions, trials=trials, samples=samples, tol=cfg.tol or 1e-2
    )


# ---------------------------------------------------------------------------
# star sets


def run_star(cfg: RunConfig) -> dict:
    trials = cfg.trials or 200
    samples = cfg.samples or 64
    tol = cfg.tol or 1e-9

    assertions = []
    for p in (1.0, 2.0):
        f = transported_lp_f(p)
        rep = section_covariance_check(
            lambda K, L: f_op(f, K, L),
            trials=trials,
            tol=tol,
            seed=cfg.seed,
            ambient_dim=cfg.ambient_dim,
            samples=samples,
        )
        assertions.append(
            _entry(
                f"section_covariance_lp{p:g}",
                "restriction to subspheres through u commutes with the l_p reach sum",
                rep["max_dev"],
                tol,
                passed=rep["violations"] == 0,
            )
        )

    rep_bad = section_covariance_check(
        coordinate_skewed_op,
        trials=50,
        tol=tol,
        seed=cfg.seed,
        ambient_dim=cfg.ambient_dim,
        samples=samples,
    )
    assertions.append(
        _entry(
            "broken_op_falsified",
            "coordinate-skewed reach op fails section covariance",
            rep_bad["max_dev"],
            tol,
            passed=rep_bad["violations"] >= 1,
        )
    )

    dev_nat = 0.0
    for t in range(20):
        rng = trial_stream(cfg.seed, 60_000 + t)
        u = random_unit(rng, cfg.ambient_dim)
        S = random_star_map(rng, cfg.ambient_dim, u=u)
        k = int(rng.integers(1, cfg.ambient_dim - 1))
        sub = random_subsphere_through(rng, u, k)
        chart = HemisphereChart(u)
        lhs_map = star_bridge(HemisphereChart(sub.basis @ u), sph_section(S, sub))
        V = subsphere_to_subspace(chart, sub)
        rhs_map = section(star_bridge(chart, S), V)
        for v in _equator_dirs(rng, sub.basis @ u, 8) @ sub.basis:
            w1 = chart_plane_basis(sub.basis @ u) @ (sub.basis @ v)
            w2 = V.basis @ (chart.plane_basis @ v)
            dev_nat = max(dev_nat, abs(lhs_map(w1) - rhs_map(w2)))
    assertions.append(
        _entry(
            "bridge_naturality",
            "bridge of the section equals section of the bridge",
            dev_nat,
            1e-12,
        )
    )

    dev_assoc = 0.0
    rng = trial_stream(cfg.seed, 70_000)
    u = random_unit(rng, 3)
    A = random_star_map(rng, 3, u=u)
    B = random_star_map(rng, 3, u=u)
    C = random_star_map(rng, 3, u=u)
    RA, RB, RC = (star_bridge(HemisphereChart(u), X) for X in (A, B, C))
    grid2 = direction_grid(2, 64)
    for p in (1.0, 2.0, 3.0):
        left = lp_radial_sum(p, lp_radial_sum(p, RA, RB), RC)
        right = lp_radial_sum(p, RA, lp_radial_sum(p, RB, RC))
        comm1 = lp_radial_sum(p, RA, RB)
        comm2 = lp_radial_sum(p, RB, RA)
        for v in grid2:
            dev_assoc = max(dev_assoc, abs(left(v) - right(v)))
            dev_assoc = max(dev_assoc, abs(comm1(v) - comm2(v)))
    assertions.append(
        _entry(
            "lp_radial_sum_algebra",
            "(K +_p L) +_p M = K +_p (L +_p M) and K +_p L = L +_p K",
            dev_assoc,
            1e-12,
        )
    )

    dev_inv = 0.0
    for t in range(10):
        rng = trial_stream(cfg.seed, 80_000 + t)
        dim = 2 if t % 2 == 0 else 3
        K = random_euclid_body_with_origin(rng, dim)
        rho = radial_from_polytope(K)
        rho_polar = polar_radial(K)
        cands = facet_normal_candidates(K)
        for v in direction_grid(dim, 32):
            h_star = support_from_radial(rho_polar, v, cands)
            dev_inv = max(dev_inv, abs(1.0 / h_star - rho(v)))
    assertions.append(
        _entry(
            "polar_involution",
            "rho_{(K*)*} = rho_K for origin-interior K",
            dev_inv,
            1e-9,
        )
    )
    return _report("star", cfg, assertions, trials=trials, samples=samples, tol=tol)


# ---------------------------------------------------------------------------
# polarity


def _ring_body(m: int, theta: float) -> SpherePolytope:
    u = np.array([0.0, 0.0, 1.0])
    phis = 2 * np.pi * np.arange(m) / m
    gens = np.stack(
        [
            np.sin(theta) * np.cos(phis),
            np.sin(theta) * np.sin(phis),
            np.full(m, np.cos(theta)),
        ],
        axis=1,
    )
    return make_body(gens, center=u)


def run_polar(cfg: RunConfig) -> dict:
    samples = cfg.samples or 128
    tol = cfg.tol or 1e-9

    bodies = [make_body(np.eye(3))]
    rng = trial_stream(cfg.seed, 0)
    for _ in range(2):
        Q, _ = np.linalg.qr(rng.standard_normal((3, 3)))
        bodies.append(make_body(np.eye(3) @ Q.T))

    dev_quarter = 0.0
    dev_chart = 0.0
    for K in bodies:
        rep = polar_relations_check(K, samples=samples)
        dev_quarter = max(dev_quarter, rep["pi_half_gap"])
        dev_chart = max(dev_chart, rep["chart_polar_gap"])

    theta = 0.6
    excesses = {}
    dev_ring = 0.0
    for m in (8, 16, 32):
        ring = _ring_body(m, theta)
        pol = sph_polar(ring)
        angles = np.arccos(np.clip(pol.generators @ (-ring.center), -1, 1))
        excess = float(np.max(angles)) - (np.pi / 2 - theta)
        expected = theta - np.arctan(np.tan(theta) * np.cos(np.pi / m))
        excesses[m] = excess
        dev_ring = max(dev_ring, abs(excess - expected))
    ratio = max(excesses[16] / excesses[8], excesses[32] / excesses[16])

    assertions = [
        _entry(
            "quarter_turn_relation",
            "h_u(K, v) + rho_{-u}(K°, v) = pi/2",
            dev_quarter,
            tol,
        ),
        _entry(
            "chart_polar_identity",
            "g_u(K)* = g_{-u}(K°)",
            dev_chart,
            tol,
        ),
        _entry(
            "ring_polar_excess_value",
            "polar excess(m) = theta - arctan(tan(theta) cos(pi/m))",
            dev_ring,
            1e-9,
        ),
        _entry(
            "ring_polar_excess_halving",
            "excess(2m) <= excess(m) / 2",
            ratio,
            0.5,
        ),
    ]
    return _report("polar", cfg, assertions, samples=samples, tol=tol, trials=len(bodies))


# ---------------------------------------------------------------------------
# discontinuity


def run_discontinuity(cfg: RunConfig) -> dict:
    demo = ops.discontinuity_demo()
    rows = demo["rows"]
    dev_angle = max(abs(r["max_generator_angle"] - r["pi_minus_eps"]) for r in rows)
    margins = [r["properness_margin"] for r in rows]
    max_increase = max(b - a for a, b in zip(margins, margins[1:]))
    dists = [r["delta_s_to_limit"] for r in rows]
    dist_increase = max(b - a for a, b in zip(dists, dists[1:]))

    assertions = [
        _entry(
            "hull_angle_escape",
            "max angle(conv(K u L_eps)) = pi - eps",
            dev_angle,
            cfg.tol or 1e-12,
        ),
        _entry(
            "margin_collapse",
            "properness margin of conv(K u L_eps) -> 0 monotonically",
            margins[-1],
            0.01,
            passed=max_increase <= 0 and margins[-1] <= 0.01,
        ),
        _entry(
            "inputs_converge",
            "delta_s(L_eps, L_0) -> 0 monotonically",
            dists[-1],
            0.02,
            passed=dist_increase <= 0 and dists[-1] <= 0.02,
        ),
    ]
    return _report(
        "discontinuity",
        cfg,
        assertions,
        rows=rows,
        tol=cfg.tol or 1e-12,
        trials=len(rows),
    )


SUITES: dict = {
    "bridge": run_bridge,
    "madd": run_madd,
    "covariance": run_covariance,
    "dichotomy": run_dichotomy,
    "metrics": run_metrics,
    "star": run_star,
    "polar": run_polar,
    "discontinuity": run_discontinuity,
}


def run_suite(name: str, cfg: RunConfig) -> dict:
    if name not in SUITES:
        raise GeometryError(
            f"unknown suite {name!r}; known: {', '.join(sorted(SUITES))}"
        )
    return SUITES[name](cfg)
