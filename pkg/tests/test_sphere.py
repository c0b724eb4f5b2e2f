"""Spherical convex bodies: distances, supports, projections, polar."""

import numpy as np
import pytest

from sphereconv.exceptions import ImproperBodyError, PreconditionError
from sphereconv.linalg import direction_grid, slerp, unit
from sphereconv.randgen import (
    random_sphere_body,
    random_subsphere_through,
    random_unit,
    trial_stream,
)
from sphereconv.sphere import (
    SpherePolytope,
    Subsphere,
    body_equal,
    contains,
    conv_union,
    delta_s,
    gamma_u,
    hemisphere_center,
    make_body,
    neg,
    point_body_distance,
    segment,
    sph_dist,
    sph_polar,
    sph_project,
    sph_support,
)

E = np.eye(3)


def ring_directions(u, samples):
    """Unit vectors orthogonal to u, evenly spread."""
    u = unit(u)
    a = unit(np.cross(u, E[np.argmin(np.abs(u))]))
    b = np.cross(u, a)
    ts = np.linspace(0.0, 2 * np.pi, samples, endpoint=False)
    return np.outer(np.cos(ts), a) + np.outer(np.sin(ts), b)


def test_sph_dist_cases():
    u = unit([1.0, 2.0, -0.5])
    assert sph_dist(u, u) == 0.0
    assert sph_dist(u, -u) == pytest.approx(np.pi)
    assert sph_dist(E[0], E[1]) == pytest.approx(np.pi / 2)


def test_sph_dist_requires_unit():
    with pytest.raises(PreconditionError):
        sph_dist([2.0, 0.0, 0.0], E[0])


def test_hemisphere_center_singleton():
    got = hemisphere_center(np.array([E[0]]))
    assert got is not None
    c, margin = got
    assert c @ E[0] > 0.999
    assert margin == pytest.approx(1.0, abs=1e-9)


def test_hemisphere_center_antipodal_is_none():
    assert hemisphere_center(np.vstack([E[0], -E[0]])) is None


def test_hemisphere_center_cap_margin():
    # points on a cap of angular radius pi/4 about e3
    rng = trial_stream(20, 0)
    ts = rng.uniform(0.0, 2 * np.pi, size=24)
    r = np.pi / 4
    pts = np.stack(
        [np.sin(r) * np.cos(ts), np.sin(r) * np.sin(ts), np.full_like(ts, np.cos(r))],
        axis=1,
    )
    res = hemisphere_center(pts)
    assert res is not None
    c, _ = res
    got = float(np.min(pts @ c))
    assert got >= np.cos(np.pi / 4) - 1e-9
    # brute force over a dense candidate grid can do no better
    grid = direction_grid(3, 20000)
    best = float(np.max(np.min(pts @ grid.T, axis=0)))
    assert got >= best - 1e-6


def test_make_body_singleton():
    K = make_body([E[2]])
    assert K.generators.shape == (1, 3)
    assert np.allclose(K.generators[0], E[2])


def test_make_body_antipodal_improper():
    with pytest.raises(ImproperBodyError):
        make_body(np.vstack([E[1], -E[1]]))


def test_make_body_octant_triangle_all_extreme():
    pts = np.array([[0.9, 0.3, 0.2], [0.2, 0.9, 0.3], [0.3, 0.2, 0.9]])
    K = make_body(pts)
    assert K.generators.shape[0] == 3


def test_make_body_drops_conic_interior_points():
    mid = unit(unit([1.0, 0.1, 0.1]) + unit([0.1, 1.0, 0.1]))
    K = make_body(np.vstack([unit([1.0, 0.1, 0.1]), unit([0.1, 1.0, 0.1]), mid]))
    assert K.generators.shape[0] == 2


def test_margin_positive_and_certified():
    rng = trial_stream(21, 0)
    K = random_sphere_body(rng, 3)
    assert K.margin > 0
    assert np.min(K.generators @ K.center) == pytest.approx(K.margin, abs=1e-12)


def test_contains_generator_and_anticenter():
    rng = trial_stream(22, 0)
    K = random_sphere_body(rng, 3)
    for g in K.generators:
        assert contains(K, g)
    assert not contains(K, -K.center)


def test_contains_geodesic_midpoint():
    g1, g2 = unit([1.0, 0.2, 0.1]), unit([0.1, 1.0, 0.2])
    K = make_body(np.vstack([g1, g2]))
    assert contains(K, unit(g1 + g2))


def test_sph_project_fixed_when_inside():
    # body on the great circle z=0, projected onto that circle
    S = Subsphere.from_spanning(np.eye(3)[:2], ambient_dim=3)
    K = make_body([unit([1.0, 0.2, 0.0]), unit([1.0, -0.3, 0.0])])
    assert body_equal(sph_project(K, S), K)


def test_sph_project_single_ray_formula():
    w = unit([0.5, 0.4, 0.7])
    S = Subsphere.from_spanning(np.eye(3)[:2], ambient_dim=3)
    got = sph_project(make_body([w], center=unit([1.0, 0.1, 0.0])), S)
    assert np.allclose(got.generators[0], unit([0.5, 0.4, 0.0]), atol=1e-12)


def test_sph_project_zero_sphere():
    u = unit([0.3, -0.2, 0.93])
    S = Subsphere.from_spanning([u], ambient_dim=3)
    rng = trial_stream(23, 0)
    K = random_sphere_body(rng, 3, center=u)
    got = sph_project(K, S)
    assert got.generators.shape == (1, 3)
    assert np.allclose(got.generators[0], u, atol=1e-12)


def test_sph_project_idempotent():
    rng = trial_stream(24, 0)
    for _ in range(10):
        K = random_sphere_body(rng, 3)
        S = random_subsphere_through(rng, K.center, 1)
        once = sph_project(K, S)
        assert body_equal(sph_project(once, S), once)


def test_sph_project_tower():
    rng = trial_stream(25, 0)
    for _ in range(10):
        K = random_sphere_body(rng, 4)
        c = K.center
        S_small = random_subsphere_through(rng, c, 1)
        extra = rng.standard_normal(4)
        S_big = Subsphere.from_spanning(
            np.vstack([S_small.basis, extra]), ambient_dim=4
        )
        direct = sph_project(K, S_small)
        staged = sph_project(sph_project(K, S_big), S_small)
        assert body_equal(direct, staged, tol=1e-9)


def test_sph_support_singleton_pole_is_zero():
    u = unit([0.2, 0.1, 0.97])
    K = make_body([u])
    for v in ring_directions(u, 16):
        assert sph_support(u, K, v) == pytest.approx(0.0, abs=1e-12)


def test_sph_support_on_circle_reads_angle():
    u = E[2]
    v = E[0]
    for beta in (-1.2, -0.4, 0.0, 0.7, 1.3):
        w = u * np.cos(beta) + v * np.sin(beta)
        assert sph_support(u, make_body([w], center=u), v) == pytest.approx(
            beta, abs=1e-12
        )


def test_sph_support_requires_orthogonal_direction():
    K = make_body([E[2]])
    with pytest.raises(PreconditionError):
        sph_support(E[2], K, unit([0.1, 0.0, 1.0]))


def test_sph_support_monotone_under_conv_union():
    for t in range(20):
        rng = trial_stream(26, t)
        u = random_unit(rng, 3)
        K = random_sphere_body(rng, 3, center=u)
        L = random_sphere_body(rng, 3, center=u)
        KL = conv_union(K, L)
        for v in ring_directions(u, 32):
            assert sph_support(u, K, v) <= sph_support(u, KL, v) + 1e-12


def test_segment_degenerate_is_singleton():
    u, w = E[2], E[0]
    K = segment(u, w, 0.0, 0.0)
    assert K.generators.shape == (1, 3)
    assert np.allclose(K.generators[0], u)


def test_segment_range_validation():
    with pytest.raises(PreconditionError):
        segment(E[2], E[0], 0.5, 0.2)
    with pytest.raises(PreconditionError):
        segment(E[2], E[0], -np.pi / 2, 0.0)
    with pytest.raises(PreconditionError):
        segment(E[2], unit([0.5, 0.0, 1.0]), 0.0, 0.1)


def test_segment_support_formulas():
    # pole v tilted off u toward the axis orthogonal to the arc's plane keeps
    # w as a valid direction at v; the support endpoints then read
    # tan h_v(I, w) = tan(beta)/(u.v) and tan h_v(I, -w) = -tan(alpha)/(u.v)
    rng = trial_stream(27, 0)
    for _ in range(100):
        u = random_unit(rng, 3)
        w = unit(np.cross(u, random_unit(rng, 3)))
        z = np.cross(u, w)
        alpha, beta = np.sort(rng.uniform(-1.2, 1.2, size=2))
        arc = segment(u, w, alpha, beta)
        phi = rng.uniform(-1.2, 1.2)
        v = u * np.cos(phi) + z * np.sin(phi)
        got_plus = np.tan(sph_support(v, arc, w))
        got_minus = np.tan(sph_support(v, arc, -w))
        assert got_plus == pytest.approx(np.tan(beta) / (u @ v), abs=1e-10)
        assert got_minus == pytest.approx(-np.tan(alpha) / (u @ v), abs=1e-10)


def test_conv_union_idempotent_commutative():
    rng = trial_stream(28, 0)
    K = random_sphere_body(rng, 3)
    L = random_sphere_body(rng, 3, center=K.center)
    assert body_equal(conv_union(K, K), K)
    assert body_equal(conv_union(K, L), conv_union(L, K))


def test_conv_union_two_points_is_geodesic_segment():
    v, w = unit([1.0, 0.1, 0.0]), unit([0.2, 1.0, 0.1])
    K = conv_union(make_body([v]), make_body([w]))
    assert sorted(K.generators @ v, reverse=True)[0] == pytest.approx(1.0)
    assert K.generators.shape[0] == 2
    for t in (0.25, 0.5, 0.75):
        assert contains(K, slerp(v, w, t))


def test_conv_union_contains_all_generators():
    rng = trial_stream(29, 0)
    for _ in range(10):
        K = random_sphere_body(rng, 3)
        L = random_sphere_body(rng, 3, center=K.center)
        KL = conv_union(K, L)
        for g in np.vstack([K.generators, L.generators]):
            assert contains(KL, g)


def test_neg_is_antipodal_involution():
    rng = trial_stream(30, 0)
    K = random_sphere_body(rng, 3)
    NK = neg(K)
    assert np.allclose(NK.center, -K.center)
    assert body_equal(neg(NK), K)
    v = unit([0.4, -0.8, 0.45])
    assert body_equal(neg(make_body([v])), make_body([-v]))


def test_point_body_distance_cases():
    K = make_body([E[2]])
    assert point_body_distance(E[2], K) <= 1e-7
    x = unit([1.0, 0.0, 1.0])
    assert point_body_distance(x, K) == pytest.approx(np.pi / 4, abs=1e-9)


def test_delta_s_identity_and_singletons():
    rng = trial_stream(31, 0)
    K = random_sphere_body(rng, 3)
    assert delta_s(K, K, samples=256) <= 1e-7
    v, w = unit([1.0, 0.2, 0.1]), unit([0.3, 1.0, -0.2])
    got = delta_s(make_body([v]), make_body([w]), samples=64)
    assert got == pytest.approx(sph_dist(v, w), abs=1e-9)


def test_delta_s_symmetric():
    rng = trial_stream(32, 0)
    K = random_sphere_body(rng, 3)
    L = random_sphere_body(rng, 3, center=K.center)
    assert delta_s(K, L, samples=512) == pytest.approx(
        delta_s(L, K, samples=512), abs=1e-12
    )


def rotate_about(axis_a, axis_b, angle, pts):
    """Rotate pts by angle in the plane spanned by the orthonormal pair."""
    R = np.eye(3) + np.sin(angle) * (
        np.outer(axis_b, axis_a) - np.outer(axis_a, axis_b)
    ) + (np.cos(angle) - 1) * (np.outer(axis_a, axis_a) + np.outer(axis_b, axis_b))
    return pts @ R.T


def test_delta_s_rotated_cap_vs_dense_oracle():
    # vertices on a cap about e3, rotated by t in the (e3, e1) plane:
    # the sampled value must sit within 2e-2 of a 1e5-point brute force
    rng = trial_stream(33, 0)
    ts = rng.uniform(0.0, 2 * np.pi, size=8)
    r = 0.5
    pts = np.stack(
        [np.sin(r) * np.cos(ts), np.sin(r) * np.sin(ts), np.full_like(ts, np.cos(r))],
        axis=1,
    )
    t = 0.3
    K = make_body(pts)
    L = make_body(rotate_about(E[2], E[0], t, pts))
    got = delta_s(K, L, samples=4096)
    dense = direction_grid(3, 100000)
    onK = dense[[bool(contains(K, x, tol=1e-9)) for x in dense]]
    onL = dense[[bool(contains(L, x, tol=1e-9)) for x in dense]]
    brute = max(
        max(point_body_distance(x, L) for x in onK),
        max(point_body_distance(x, K) for x in onL),
    )
    assert abs(got - brute) <= 2e-2
    assert got <= t + 1e-9  # rotation by t moves nothing farther than t


def test_delta_s_triangle_inequality():
    rng = trial_stream(34, 0)
    for _ in range(5):
        c = random_unit(rng, 3)
        K = random_sphere_body(rng, 3, center=c)
        L = random_sphere_body(rng, 3, center=c)
        M = random_sphere_body(rng, 3, center=c)
        dKM = delta_s(K, M, samples=512)
        dKL = delta_s(K, L, samples=512)
        dLM = delta_s(L, M, samples=512)
        assert dKM <= dKL + dLM + 1e-2  # sampled lower bounds, slack for the gap


def test_gamma_u_identity_symmetry():
    rng = trial_stream(35, 0)
    u = random_unit(rng, 3)
    K = random_sphere_body(rng, 3, center=u)
    L = random_sphere_body(rng, 3, center=u)
    assert gamma_u(u, K, K, samples=256) == 0.0
    assert gamma_u(u, K, L, samples=512) == pytest.approx(
        gamma_u(u, L, K, samples=512), abs=1e-12
    )


def test_gamma_u_singleton_reads_distance():
    u = unit([0.1, 0.2, 0.97])
    w = unit([0.4, 0.1, 0.9])
    got = gamma_u(u, make_body([u]), make_body([w], center=u), samples=4096)
    want = sph_dist(u, w)
    assert got == pytest.approx(want, abs=1e-3)
    # brute-force ring: the max of |arctan((v.g)/(u.g))| is attained where v
    # aligns with the tangential part of w
    ring = ring_directions(u, 200000)
    brute = float(np.max(np.abs(np.arctan2(ring @ w, u @ w))))
    assert got == pytest.approx(brute, abs=1e-6)


def test_gamma_u_triangle_inequality():
    rng = trial_stream(36, 0)
    u = random_unit(rng, 3)
    K = random_sphere_body(rng, 3, center=u)
    L = random_sphere_body(rng, 3, center=u)
    M = random_sphere_body(rng, 3, center=u)
    dKM = gamma_u(u, K, M, samples=1024)
    dKL = gamma_u(u, K, L, samples=1024)
    dLM = gamma_u(u, L, M, samples=1024)
    assert dKM <= dKL + dLM + 1e-6


def test_sph_polar_orthant():
    K = make_body(E)
    P = sph_polar(K)
    want = -E
    for w in want:
        assert np.min(np.linalg.norm(P.generators - w, axis=1)) <= 1e-9
    assert P.generators.shape[0] == 3


def surrounding_body(rng, spread=0.5):
    """Full-dimensional body whose generator cone surrounds its witness."""
    u = random_unit(rng, 3)
    a = unit(np.cross(u, random_unit(rng, 3)))
    b = np.cross(u, a)
    gens = [unit(u + sa * spread * a + sb * spread * b)
            for sa in (-1.0, 1.0) for sb in (-1.0, 1.0)]
    gens.append(unit(u + rng.uniform(-spread, spread, size=3) * 0.5))
    return make_body(np.vstack(gens), center=u), u


def test_sph_polar_contained_in_opposite_hemisphere():
    rng = trial_stream(37, 0)
    for _ in range(10):
        K, u = surrounding_body(rng)
        P = sph_polar(K)
        assert np.all(P.generators @ (-u) > 0)


def test_sph_polar_involution():
    rng = trial_stream(38, 0)
    for _ in range(10):
        K, _ = surrounding_body(rng)
        PP = sph_polar(sph_polar(K))
        assert body_equal(PP, K, tol=1e-9)
