"""Request/response models for the HTTP surface.

Body payloads travel as the JSON records defined in `serialization`; the
models validate the envelope and leave record-level validation to the
parsers, which raise typed errors mapped to 422 responses.
"""

import math
from typing import Literal, Optional

from pydantic import BaseModel, Field


class GenRequest(BaseModel):
    kind: Literal["euclid", "sphere", "star"]
    seed: int = Field(default=0, ge=0, lt=2**64)
    # euclid
    shape: Literal["cube", "cross", "simplex", "random"] = "random"
    dim: int = Field(default=3, ge=1)
    m: int = Field(default=5, ge=1)
    # sphere
    ambient_dim: int = Field(default=3, ge=3)
    cap_radius: float = Field(default=math.pi / 3, gt=0, lt=math.pi / 2)
    # star
    radius: float = Field(default=1.0, gt=0)
    samples: int = Field(default=64, ge=1)


class GenResponse(BaseModel):
    record: dict
    provenance: dict


class ApplyRequest(BaseModel):
    op: str
    k: dict
    l: dict
    chart_center: Optional[list[float]] = None
    samples: int = Field(default=64, ge=1)


class ApplyResponse(BaseModel):
    result: dict
    provenance: dict
    contained_in_conv_union: Optional[bool] = None
    containment_gap: Optional[float] = None


class ProjectRequest(BaseModel):
    body: dict
    basis: list[list[float]]


class ProjectResponse(BaseModel):
    result: dict


class MetricRequest(BaseModel):
    metric: Literal["hausdorff", "delta_s", "gamma_u"]
    k: dict
    l: dict
    u: Optional[list[float]] = None
    samples: int = Field(default=4096, ge=1)


class MetricResponse(BaseModel):
    metric: str
    value: float


class CheckRequest(BaseModel):
    suite: str
    seed: int = Field(default=0, ge=0, lt=2**64)
    trials: Optional[int] = Field(default=None, ge=1)
    samples: Optional[int] = Field(default=None, ge=1)
    tol: Optional[float] = Field(default=None, gt=0)
    ambient_dim: int = Field(default=3, ge=3)


class CheckResponse(BaseModel):
    report: dict
    passed: bool


class DemoResponse(BaseModel):
    rows: list[dict]


class ErrorRecord(BaseModel):
    error: str
    detail: str
