"""Command-line client.

Runs in process by default; pass --url to talk to a running service
instead. Exit codes: 0 success, 2 suite assertion failure, 3 precondition
or I/O error (including bad usage).
"""

import argparse
import math
import os
import sys

from .exceptions import GeometryError
from .serialization import dump_json, dumps, load_json

DEFAULT_SEED = int(os.environ.get("SPHERECONV_SEED", "0"))

EXIT_OK = 0
EXIT_ASSERTION = 2
EXIT_PRECONDITION = 3


class _Parser(argparse.ArgumentParser):
    # usage errors are precondition errors, not assertion failures
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PRECONDITION, f"{self.prog}: error: {message}\n")


class _RemoteError(Exception):
    def __init__(self, record: dict):
        super().__init__(record.get("detail", "remote error"))
        self.record = record


def _floats(text: str):
    try:
        return [float(x) for x in text.split(",")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a comma-separated float list: {text!r}") from exc


def _emit(payload, out_path):
    if out_path:
        dump_json(payload, out_path)
    else:
        sys.stdout.write(dumps(payload))


def _load_record(path):
    """Load a body/map record, unwrapping gen/apply/project envelopes.

    Lets `gen --out k.json` feed straight into `apply`/`metric`/`project`
    without stripping the provenance wrapper by hand.
    """
    payload = load_json(path)
    if isinstance(payload, dict):
        for key in ("record", "result"):
            inner = payload.get(key)
            if isinstance(inner, dict) and "space" in inner:
                return inner
    return payload


def _remote(url: str, path: str, payload: dict) -> dict:
    import httpx

    resp = httpx.post(url.rstrip("/") + path, json=payload, timeout=600.0)
    if resp.status_code >= 400:
        try:
            record = resp.json()
        except ValueError:
            record = {"error": "HTTPError", "detail": resp.text}
        raise _RemoteError(record)
    return resp.json()


def _schemas_handlers():
    from .service import handlers, schemas

    return schemas, handlers


def cmd_gen(args) -> int:
    schemas, handlers = _schemas_handlers()
    req = schemas.GenRequest(
        kind=args.kind,
        seed=args.seed,
        shape=args.shape,
        dim=args.dim,
        m=args.m,
        ambient_dim=args.ambient_dim,
        cap_radius=args.cap_radius,
        radius=args.radius,
        samples=args.samples or 64,
    )
    if args.url:
        payload = _remote(args.url, "/gen", req.model_dump())
    else:
        payload = handlers.handle_gen(req).model_dump()
    _emit(payload, args.out)
    return EXIT_OK


def cmd_apply(args) -> int:
    schemas, handlers = _schemas_handlers()
    req = schemas.ApplyRequest(
        op=args.op,
        k=_load_record(args.k),
        l=_load_record(args.l),
        chart_center=args.chart_center,
        samples=args.samples or 64,
    )
    if args.url:
        payload = _remote(args.url, "/apply", req.model_dump())
    else:
        payload = handlers.handle_apply(req).model_dump()
    _emit(payload, args.out)
    return EXIT_OK


def cmd_project(args) -> int:
    schemas, handlers = _schemas_handlers()
    basis = load_json(args.basis)
    if isinstance(basis, dict):
        basis = basis.get("basis")
    req = schemas.ProjectRequest(body=_load_record(args.body), basis=basis)
    if args.url:
        payload = _remote(args.url, "/project", req.model_dump())
    else:
        payload = handlers.handle_project(req).model_dump()
    _emit(payload, args.out)
    return EXIT_OK


def cmd_metric(args) -> int:
    schemas, handlers = _schemas_handlers()
    req = schemas.MetricRequest(
        metric=args.metric,
        k=_load_record(args.k),
        l=_load_record(args.l),
        u=args.u,
        samples=args.samples or 4096,
    )
    if args.url:
        payload = _remote(args.url, "/metric", req.model_dump())
    else:
        payload = handlers.handle_metric(req).model_dump()
    _emit(payload, args.out)
    return EXIT_OK


def cmd_check(args) -> int:
    schemas, handlers = _schemas_handlers()
    req = schemas.CheckRequest(
        suite=args.suite,
        seed=args.seed,
        trials=args.trials,
        samples=args.samples,
        tol=args.tol,
        ambient_dim=args.ambient_dim,
    )
    if args.url:
        payload = _remote(args.url, "/check", req.model_dump())
    else:
        payload = handlers.handle_check(req).model_dump()
    report = payload["report"]
    for a in report.get("assertions", []):
        tag = "PASS" if a["passed"] else "FAIL"
        sys.stderr.write(
            f"[{tag}] {report['suite']}/{a['name']}: "
            f"observed={a['observed']:.3e} tol={a['tol']:.1e}\n"
        )
    _emit(report, args.out)
    return EXIT_OK if payload["passed"] else EXIT_ASSERTION


def cmd_demo(args) -> int:
    schemas, handlers = _schemas_handlers()
    if args.url:
        payload = _remote(args.url, "/demo", {})
    else:
        payload = handlers.handle_demo().model_dump()
    for row in payload["rows"]:
        sys.stderr.write(
            f"eps={row['eps']:<6g} max_angle={row['max_generator_angle']:.12f} "
            f"pi-eps={row['pi_minus_eps']:.12f} margin={row['properness_margin']:.6f} "
            f"delta_s={row['delta_s_to_limit']:.6f}\n"
        )
    _emit(payload, args.out)
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sphereconv", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seed=True):
        if seed:
            p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        p.add_argument("--samples", type=int, default=None)
        p.add_argument("--out", default=None, help="write JSON here instead of stdout")
        p.add_argument("--url", default=None, help="send the request to a running service")

    p = sub.add_parser("gen", help="generate a body or radial map")
    p.add_argument("kind", choices=["euclid", "sphere", "star"])
    p.add_argument("--shape", choices=["cube", "cross", "simplex", "random"], default="random")
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--m", type=int, default=5)
    p.add_argument("--ambient-dim", type=int, default=3)
    p.add_argument("--cap-radius", type=float, default=math.pi / 3)
    p.add_argument("--radius", type=float, default=1.0)
    common(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("apply", help="apply a binary operation to two body files")
    p.add_argument("op", help="e.g. conv_union, transport_minkowski, transport_lp:2, minkowski, lp:2, radial_sum")
    p.add_argument("k", help="path to the first body JSON")
    p.add_argument("l", help="path to the second body JSON")
    p.add_argument("--chart-center", type=_floats, default=None)
    common(p, seed=False)
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("project", help="project a body onto a subsphere/subspace")
    p.add_argument("body", help="path to the body JSON")
    p.add_argument("--basis", required=True, help="path to a JSON orthonormal basis (rows)")
    common(p, seed=False)
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("metric", help="distance between two bodies")
    p.add_argument("metric", choices=["hausdorff", "delta_s", "gamma_u"])
    p.add_argument("k")
    p.add_argument("l")
    p.add_argument("--u", type=_floats, default=None, help="chart pole for gamma_u")
    common(p, seed=False)
    p.set_defaults(func=cmd_metric)

    p = sub.add_parser("check", help="run a named verification suite")
    p.add_argument("suite")
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--ambient-dim", type=int, default=3)
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("demo", help="hull discontinuity demo table")
    common(p, seed=False)
    p.set_defaults(func=cmd_demo)

    p = sub.add_parser("serve", help="start the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8008)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _RemoteError as exc:
        sys.stdout.write(dumps(exc.record))
        return EXIT_PRECONDITION
    except GeometryError as exc:
        sys.stdout.write(dumps({"error": type(exc).__name__, "detail": str(exc)}))
        return EXIT_PRECONDITION
    except OSError as exc:
        sys.stdout.write(dumps({"error": "IOError", "detail": str(exc)}))
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
