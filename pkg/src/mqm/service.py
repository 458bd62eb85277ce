"""HTTP front for the report builders.

Run with: uvicorn mqm.service:app
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from . import __version__, reports
from .complexes import ModelError
from .graphs import GraphError
from .schemas import (
    BrooksRequest,
    CupRequest,
    DefectRequest,
    Health,
    Report,
    StaircaseRequest,
    WitnessRequest,
)
from .traces import WordError

_USER_ERRORS = (ModelError, GraphError, WordError, ValueError, KeyError, OSError)


def create_app() -> FastAPI:
    app = FastAPI(title="mqm", version=__version__)

    @app.get("/health", response_model=Health)
    def health() -> Health:
        return Health(status="ok", version=__version__)

    @app.post("/v1/brooks", response_model=Report)
    def brooks(req: BrooksRequest) -> dict:
        return _run(
            reports.run_brooks, req.model, req.segment, radius=req.radius, workers=req.workers
        )

    @app.post("/v1/defect", response_model=Report)
    def defect(req: DefectRequest) -> dict:
        return _run(
            reports.run_defect, req.model, req.segment, radius=req.radius, workers=req.workers
        )

    @app.post("/v1/cup", response_model=Report)
    def cup(req: CupRequest) -> dict:
        return _run(
            reports.run_cup,
            req.model,
            req.segment,
            req.segment2,
            radius=req.radius,
            window=req.window,
            workers=req.workers,
        )

    @app.post("/v1/witness", response_model=Report)
    def witness(req: WitnessRequest) -> dict:
        return _run(
            reports.run_witness,
            req.model,
            req.segment,
            segment2=req.segment2,
            gamma=req.gamma,
            f_names=req.f_names,
            powers=req.powers,
        )

    @app.post("/v1/staircase", response_model=Report)
    def staircase(req: StaircaseRequest) -> dict:
        return _run(reports.run_staircase, req.model, radius=req.radius, cap=req.cap)

    return app


def _run(fn, *args, **kwargs) -> dict:
    try:
        return fn(*args, **kwargs)
    except _USER_ERRORS as e:
        raise HTTPException(status_code=422, detail=str(e)) from e


app = create_app()
