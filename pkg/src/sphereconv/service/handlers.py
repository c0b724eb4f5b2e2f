"""Request handlers shared by the HTTP app and the in-process CLI client.

Each handler takes a schema object and returns a schema object; geometry and
record errors propagate as GeometryError subclasses for the edges to map
(HTTP 422, CLI exit 3).
"""

import numpy as np

from .. import ops, serialization
from ..euclid import (
    ConvexPolytope,
    SubspaceBasis,
    hausdorff,
    hull_m_set,
    lp_m_set,
    m_add,
    minkowski_m_set,
    project,
)
from ..exceptions import (
    DimensionMismatchError,
    GeometryError,
    PreconditionError,
    RecordError,
)
from ..randgen import random_euclid_body, random_sphere_body, stream
from ..sphere import (
    SpherePolytope,
    Subsphere,
    conv_union,
    delta_s,
    gamma_u,
    point_body_distance,
    sph_project,
)
from ..star import RadialMap, SphStarMap, lp_radial_sum, radial_sum
from ..suites import RunConfig, run_suite
from . import schemas

DEFAULT_LP_TOL = 1e-6


def _unit_pole(values) -> np.ndarray:
    """Normalize a user-supplied pole; hand-typed decimals are rarely unit."""
    u = np.asarray(values, dtype=float)
    norm = float(np.linalg.norm(u))
    if norm < 1e-12:
        raise PreconditionError("pole must be a nonzero vector")
    return u / norm


def handle_gen(req: schemas.GenRequest) -> schemas.GenResponse:
    rng = stream(req.seed)
    if req.kind == "euclid":
        if req.shape == "cube":
            body = ConvexPolytope.cube(req.dim)
        elif req.shape == "cross":
            body = ConvexPolytope.cross_polytope(req.dim)
        elif req.shape == "simplex":
            body = ConvexPolytope.simplex(req.dim)
        else:
            body = random_euclid_body(rng, req.dim, m=req.m)
        record = serialization.euclid_body_record(body)
        params = {"shape": req.shape, "dim": req.dim, "m": req.m}
    elif req.kind == "sphere":
        body = random_sphere_body(
            rng, req.ambient_dim, m=req.m, cap_radius=req.cap_radius
        )
        record = serialization.sphere_body_record(body)
        params = {
            "ambient_dim": req.ambient_dim,
            "m": req.m,
            "cap_radius": req.cap_radius,
        }
    else:
        ball = RadialMap.ball(req.dim, req.radius)
        record = serialization.radial_record(ball, samples=req.samples)
        params = {"dim": req.dim, "radius": req.radius, "samples": req.samples}
    return schemas.GenResponse(
        record=serialization.jsonable(record),
        provenance={"kind": req.kind, "seed": req.seed, "params": params},
    )


def _split_op(op: str):
    """\"name\" or \"name:param\" -> (name, float param or None)."""
    if ":" in op:
        name, raw = op.split(":", 1)
        try:
            return name, float(raw)
        except ValueError as exc:
            raise RecordError(f"bad op parameter {raw!r}") from exc
    return op, None


_SPHERE_OPS = {
    "trivial_k": ops.trivial_k,
    "trivial_neg_k": ops.trivial_neg_k,
    "trivial_l": ops.trivial_l,
    "trivial_neg_l": ops.trivial_neg_l,
    "conv_union": ops.conv_union_op,
    "neg_conv_union": ops.neg_conv_union_op,
    "transport_minkowski": ops.transport_minkowski,
    "transport_hull": ops.transport_hull,
}


def _apply_sphere(req: schemas.ApplyRequest, K: SpherePolytope, L: SpherePolytope):
    name, param = _split_op(req.op)
    if name == "transport_lp":
        op = ops.transport_lp(param if param is not None else 2.0, tol=DEFAULT_LP_TOL)
    elif name in _SPHERE_OPS:
        if param is not None:
            raise RecordError(f"op {name!r} takes no parameter")
        op = _SPHERE_OPS[name]()
    else:
        raise RecordError(f"unknown sphere op {req.op!r}")
    if req.chart_center is not None:
        op = op.with_chart_center(_unit_pole(req.chart_center))
    out, info = ops.apply_report(op, K, L)
    resp = schemas.ApplyResponse(
        result=serialization.jsonable(serialization.sphere_body_record(out)),
        provenance=serialization.jsonable(info),
    )
    if op.kind in ("transport", "transport4"):
        hull = conv_union(K, L)
        gap = max(point_body_distance(g, hull) for g in out.generators)
        resp.contained_in_conv_union = bool(gap <= 1e-8)
        resp.containment_gap = float(gap)
    return resp


def _apply_euclid(req: schemas.ApplyRequest, K: ConvexPolytope, L: ConvexPolytope):
    name, param = _split_op(req.op)
    if name == "minkowski":
        M = minkowski_m_set()
    elif name == "hull":
        M = hull_m_set()
    elif name == "lp":
        M = lp_m_set(param if param is not None else 2.0, DEFAULT_LP_TOL)
    else:
        raise RecordError(f"unknown euclid op {req.op!r}")
    out = m_add(M, K, L)
    return schemas.ApplyResponse(
        result=serialization.jsonable(serialization.euclid_body_record(out)),
        provenance={"op": req.op, "space": "euclid"},
    )


def _apply_radial(req: schemas.ApplyRequest, K, L):
    name, param = _split_op(req.op)
    spherical = isinstance(K, SphStarMap)
    if spherical != isinstance(L, SphStarMap):
        raise DimensionMismatchError("cannot mix plane and sphere radial maps")
    if spherical:
        if not np.allclose(K.u, L.u, atol=1e-9):
            raise PreconditionError("spherical radial maps must share u")
        from ..star import f_op, transported_lp_f

        if name == "lp_radial_sum":
            out = f_op(transported_lp_f(param if param is not None else 1.0), K, L)
        else:
            raise RecordError(f"unknown spherical radial op {req.op!r}")
        record = serialization.sph_radial_record(out, samples=req.samples)
    else:
        if name == "radial_sum":
            out = radial_sum(K, L)
        elif name == "lp_radial_sum":
            out = lp_radial_sum(param if param is not None else 1.0, K, L)
        else:
            raise RecordError(f"unknown radial op {req.op!r}")
        record = serialization.radial_record(out, samples=req.samples)
    return schemas.ApplyResponse(
        result=serialization.jsonable(record),
        provenance={"op": req.op, "space": "radial"},
    )


def handle_apply(req: schemas.ApplyRequest) -> schemas.ApplyResponse:
    spaces = (req.k.get("space"), req.l.get("space"))
    if spaces[0] != spaces[1]:
        raise DimensionMismatchError(f"operand spaces differ: {spaces}")
    if spaces[0] == "sphere":
        return _apply_sphere(req, serialization.parse_body(req.k), serialization.parse_body(req.l))
    if spaces[0] == "euclid":
        return _apply_euclid(req, serialization.parse_body(req.k), serialization.parse_body(req.l))
    if spaces[0] == "radial":
        return _apply_radial(req, serialization.parse_radial(req.k), serialization.parse_radial(req.l))
    raise RecordError(f"unknown space {spaces[0]!r}")


def handle_project(req: schemas.ProjectRequest) -> schemas.ProjectResponse:
    body = serialization.parse_body(req.body)
    basis = np.asarray(req.basis, dtype=float)
    if isinstance(body, SpherePolytope):
        sub = Subsphere(ambient_dim=body.ambient_dim, basis=basis)
        out = sph_project(body, sub)
        record = serialization.sphere_body_record(out)
    else:
        V = SubspaceBasis(ambient_dim=body.dim, basis=basis)
        record = serialization.euclid_body_record(project(body, V))
    return schemas.ProjectResponse(result=serialization.jsonable(record))


def handle_metric(req: schemas.MetricRequest) -> schemas.MetricResponse:
    K = serialization.parse_body(req.k)
    L = serialization.parse_body(req.l)
    if req.metric == "hausdorff":
        if not isinstance(K, ConvexPolytope) or not isinstance(L, ConvexPolytope):
            raise PreconditionError("hausdorff expects euclid bodies")
        value = hausdorff(K, L)
    elif req.metric == "delta_s":
        if not isinstance(K, SpherePolytope) or not isinstance(L, SpherePolytope):
            raise PreconditionError("delta_s expects sphere bodies")
        value = delta_s(K, L, samples=req.samples)
    else:
        if req.u is None:
            raise PreconditionError("gamma_u needs the chart pole u")
        if not isinstance(K, SpherePolytope) or not isinstance(L, SpherePolytope):
            raise PreconditionError("gamma_u expects sphere bodies")
        value = gamma_u(_unit_pole(req.u), K, L, samples=req.samples)
    return schemas.MetricResponse(metric=req.metric, value=float(value))


def handle_check(req: schemas.CheckRequest) -> schemas.CheckResponse:
    cfg = RunConfig(
        seed=req.seed,
        trials=req.trials,
        samples=req.samples,
        tol=req.tol,
        ambient_dim=req.ambient_dim,
    )
    report = serialization.stamp_report(
        serialization.jsonable(run_suite(req.suite, cfg))
    )
    return schemas.CheckResponse(report=report, passed=bool(report["passed"]))


def handle_demo() -> schemas.DemoResponse:
    demo = ops.discontinuity_demo()
    return schemas.DemoResponse(rows=serialization.jsonable(demo["rows"]))
