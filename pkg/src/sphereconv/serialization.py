"""JSON records for bodies, maps, charts, and run reports.

Record shapes:
  {"space": "euclid", "dim": n, "vertices": [[...], ...]}
  {"space": "sphere", "ambient_dim": n+1, "generators": [[...], ...], "center": [...]}
  {"space": "radial", "dim": n, "grid": [[...], ...], "values": [...]}
    (spherical variant additionally carries "u")

Numbers are plain IEEE-754 doubles in decimal. Reports are written with
sorted keys so identical runs produce identical bytes apart from the
timestamp field.
"""

import datetime
import json
from typing import Any, Union

import numpy as np

from .euclid import ConvexPolytope
from .exceptions import RecordError
from .gnomonic import HemisphereChart
from .linalg import chart_plane_basis, direction_grid
from .sphere import SpherePolytope, make_body
from .star import RadialMap, SphStarMap

DEFAULT_GRID = 4096


def jsonable(obj: Any) -> Any:
    """Recursively convert numpy scalars/arrays so json.dumps accepts them."""
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    if isinstance(obj, (np.integer, int)) and not isinstance(obj, bool):
        return int(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    return obj


def euclid_body_record(K: ConvexPolytope) -> dict:
    return {"space": "euclid", "dim": K.dim, "vertices": K.vertices.tolist()}


def sphere_body_record(K: SpherePolytope) -> dict:
    return {
        "space": "sphere",
        "ambient_dim": K.ambient_dim,
        "generators": K.generators.tolist(),
        "center": K.center.tolist(),
    }


def radial_record(R: RadialMap, samples: int = DEFAULT_GRID) -> dict:
    grid = direction_grid(R.dim, samples)
    values = [R(v) for v in grid]
    return {"space": "radial", "dim": R.dim, "grid": grid.tolist(), "values": values}


def sph_radial_record(S: SphStarMap, samples: int = DEFAULT_GRID) -> dict:
    grid = direction_grid(S.ambient_dim - 1, samples) @ chart_plane_basis(S.u)
    values = [S(v) for v in grid]
    return {
        "space": "radial",
        "dim": S.ambient_dim,
        "u": S.u.tolist(),
        "grid": grid.tolist(),
        "values": values,
    }


def chart_record(chart: HemisphereChart) -> dict:
    return {"u": chart.u.tolist(), "basis": chart.plane_basis.tolist()}


def _matrix(record: dict, key: str) -> np.ndarray:
    try:
        arr = np.asarray(record[key], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise RecordError(f"missing or non-numeric field {key!r}") from exc
    if not np.all(np.isfinite(arr)):
        raise RecordError(f"field {key!r} contains non-finite values")
    return arr


def parse_body(record: dict) -> Union[ConvexPolytope, SpherePolytope]:
    """Dispatch a body record on its \"space\" tag."""
    if not isinstance(record, dict):
        raise RecordError("body record must be a JSON object")
    space = record.get("space")
    if space == "euclid":
        verts = _matrix(record, "vertices")
        if verts.ndim != 2:
            raise RecordError("vertices must be a list of points")
        if "dim" in record and int(record["dim"]) != verts.shape[1]:
            raise RecordError("declared dim disagrees with vertex width")
        return ConvexPolytope.from_points(verts)
    if space == "sphere":
        gens = _matrix(record, "generators")
        if gens.ndim != 2:
            raise RecordError("generators must be a list of points")
        if "ambient_dim" in record and int(record["ambient_dim"]) != gens.shape[1]:
            raise RecordError("declared ambient_dim disagrees with generator width")
        center = _matrix(record, "center") if "center" in record else None
        return make_body(gens, center=center)
    raise RecordError(f"unknown body space {space!r}")


def parse_radial(record: dict) -> Union[RadialMap, SphStarMap]:
    """Rebuild a sampled radial map; the spherical variant carries \"u\"."""
    if not isinstance(record, dict) or record.get("space") != "radial":
        raise RecordError("not a radial record")
    grid = _matrix(record, "grid")
    values = _matrix(record, "values")
    if grid.ndim != 2 or values.ndim != 1 or grid.shape[0] != values.shape[0]:
        raise RecordError("grid and values shapes disagree")
    if "u" in record:
        u = _matrix(record, "u")
        base = RadialMap.from_samples(grid, values)
        return SphStarMap(u=u, fn=lambda v: base.fn(v), describe="sampled")
    return RadialMap.from_samples(grid, values)


def parse_chart(record: dict) -> HemisphereChart:
    if not isinstance(record, dict):
        raise RecordError("chart record must be a JSON object")
    u = _matrix(record, "u")
    basis = _matrix(record, "basis") if "basis" in record else None
    try:
        return HemisphereChart(u=u, plane_basis=basis)
    except ValueError as exc:
        raise RecordError(str(exc)) from exc


def dumps(obj: Any) -> str:
    return json.dumps(jsonable(obj), sort_keys=True, indent=2) + "\n"


def load_json(path: str) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise RecordError(f"cannot read JSON from {path}: {exc}") from exc


def dump_json(obj: Any, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj))


def stamp_report(report: dict) -> dict:
    """Attach the wall-clock timestamp; everything else stays deterministic."""
    out = dict(report)
    out["timestamp"] = datetime.datetime.now(datetime.timezone.utc).isoformat()
    return out
