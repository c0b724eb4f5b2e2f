"""FastAPI surface over the geometry core.

Every endpoint is a thin wrapper around a handler; geometry and record
errors come back as 422 with an ErrorRecord body.
"""

from fastapi import FastAPI
from fastapi.responses import JSONResponse

from ..exceptions import GeometryError
from . import handlers, schemas


def create_app() -> FastAPI:
    app = FastAPI(
        title="sphereconv",
        description="Convex bodies on the sphere: gnomonic transport, "
        "M-addition, projection-covariance checks.",
        version="0.1.0",
    )

    @app.exception_handler(GeometryError)
    async def geometry_error_handler(request, exc: GeometryError):
        record = schemas.ErrorRecord(error=type(exc).__name__, detail=str(exc))
        return JSONResponse(status_code=422, content=record.model_dump())

    @app.get("/health")
    async def health():
        return {"status": "ok"}

    @app.post("/gen", response_model=schemas.GenResponse)
    async def gen(req: schemas.GenRequest):
        return handlers.handle_gen(req)

    @app.post("/apply", response_model=schemas.ApplyResponse)
    async def apply(req: schemas.ApplyRequest):
        return handlers.handle_apply(req)

    @app.post("/project", response_model=schemas.ProjectResponse)
    async def project(req: schemas.ProjectRequest):
        return handlers.handle_project(req)

    @app.post("/metric", response_model=schemas.MetricResponse)
    async def metric(req: schemas.MetricRequest):
        return handlers.handle_metric(req)

    @app.post("/check", response_model=schemas.CheckResponse)
    async def check(req: schemas.CheckRequest):
        return handlers.handle_check(req)

    @app.post("/demo", response_model=schemas.DemoResponse)
    async def demo():
        return handlers.handle_demo()

    return app


app = create_app()
