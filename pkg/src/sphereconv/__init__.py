"""Convex bodies on the sphere and their Euclidean shadows.

Proper spherical bodies, gnomonic transport, M-addition of polytopes,
projection-covariance checks, star sets, and polarity, with a CLI and an
HTTP service on top.
"""

from .euclid import (
    ConvexPolytope,
    QuadrantPolytope,
    SubspaceBasis,
    SupportFun4,
    facet_normal_candidates,
    gl_apply,
    hausdorff,
    hull_m_set,
    lp_m_set,
    m4_op,
    m_add,
    m_support,
    minkowski_m_set,
    minkowski_sum,
    polar_radial,
    project,
    support,
    support_many,
)
from .exceptions import (
    DegenerateError,
    DimensionMismatchError,
    DomainError,
    GeometryError,
    ImproperBodyError,
    OutOfChartError,
    PreconditionError,
    RecordError,
    UnsupportedDimensionError,
)
from .gnomonic import (
    HemisphereChart,
    gproj,
    gproj_inv,
    map_body,
    map_body_inv,
    subsphere_to_subspace,
    support_bridge,
)
from .ops import (
    SphereOp,
    conv_union_op,
    conv_via_E,
    discontinuity_demo,
    hull_support_functional,
    proj_covariance_check,
    transport_hull,
    transport_lp,
    transport_minkowski,
    transport4,
)
from .sphere import (
    SpherePolytope,
    Subsphere,
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
    sph_support_many,
)
from .star import (
    RadialMap,
    SphStarMap,
    f_op,
    lp_radial_sum,
    polar_relations_check,
    radial_from_polytope,
    radial_sum,
    section,
    section_covariance_check,
    sph_radial,
    sph_section,
    star_bridge,
    star_bridge_inv,
    star_map_from_body,
)
from .suites import SUITES, RunConfig, run_suite

__version__ = "0.1.0"

__all__ = [
    "ConvexPolytope",
    "QuadrantPolytope",
    "SubspaceBasis",
    "SupportFun4",
    "SpherePolytope",
    "Subsphere",
    "HemisphereChart",
    "SphereOp",
    "RadialMap",
    "SphStarMap",
    "RunConfig",
    "SUITES",
    "GeometryError",
    "ImproperBodyError",
    "OutOfChartError",
    "PreconditionError",
    "DomainError",
    "UnsupportedDimensionError",
    "DegenerateError",
    "DimensionMismatchError",
    "RecordError",
    "support",
    "support_many",
    "minkowski_sum",
    "hausdorff",
    "project",
    "gl_apply",
    "m_add",
    "m_support",
    "m4_op",
    "minkowski_m_set",
    "hull_m_set",
    "lp_m_set",
    "polar_radial",
    "facet_normal_candidates",
    "make_body",
    "contains",
    "neg",
    "conv_union",
    "segment",
    "sph_dist",
    "sph_support",
    "sph_support_many",
    "sph_project",
    "sph_polar",
    "point_body_distance",
    "hemisphere_center",
    "delta_s",
    "gamma_u",
    "gproj",
    "gproj_inv",
    "map_body",
    "map_body_inv",
    "subsphere_to_subspace",
    "support_bridge",
    "conv_union_op",
    "transport_minkowski",
    "transport_hull",
    "transport_lp",
    "transport4",
    "proj_covariance_check",
    "conv_via_E",
    "hull_support_functional",
    "discontinuity_demo",
    "radial_sum",
    "lp_radial_sum",
    "section",
    "sph_radial",
    "sph_section",
    "star_bridge",
    "star_bridge_inv",
    "star_map_from_body",
    "radial_from_polytope",
    "f_op",
    "section_covariance_check",
    "polar_relations_check",
    "run_suite",
]
