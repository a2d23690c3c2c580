"""FastAPI wiring over the plain handlers."""
from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..errors import TrilabError
from . import handlers
from .models import (AppendixVerifyRequest, ChoreoRefineRequest,
                     ChoreoRefineResponse, ChoreoScanRequest,
                     ChoreoScanResponse, ClosedFormRequest, ClosedFormResponse,
                     HealthResponse, JetsRequest, JetsResponse,
                     RepulsiveCheckRequest, RepulsiveCheckResponse,
                     SimulateRequest, SimulateResponse, ThetaRequest,
                     ThetaResponse)

app = FastAPI(title="trilab", version=__version__,
              description="Three-body dynamics laboratory service")


def _wrap(handler, req):
    try:
        return handler(req)
    except (ValueError, TrilabError) as exc:
        raise HTTPException(status_code=422, detail=str(exc))


@app.get("/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return HealthResponse(status="ok", version=__version__)


@app.post("/simulate", response_model=SimulateResponse)
def simulate(req: SimulateRequest) -> SimulateResponse:
    return _wrap(handlers.handle_simulate, req)


@app.post("/jets", response_model=JetsResponse)
def jets_endpoint(req: JetsRequest) -> JetsResponse:
    return _wrap(handlers.handle_jets, req)


@app.post("/theta", response_model=ThetaResponse)
def theta(req: ThetaRequest) -> ThetaResponse:
    return _wrap(handlers.handle_theta, req)


@app.post("/closed-form", response_model=ClosedFormResponse)
def closed_form(req: ClosedFormRequest) -> ClosedFormResponse:
    return _wrap(handlers.handle_closed_form, req)


@app.post("/appendix-verify")
def appendix_verify(req: AppendixVerifyRequest) -> dict:
    return _wrap(handlers.handle_appendix_verify, req)


@app.post("/choreo/scan", response_model=ChoreoScanResponse)
def choreo_scan(req: ChoreoScanRequest) -> ChoreoScanResponse:
    return _wrap(handlers.handle_choreo_scan, req)


@app.post("/choreo/refine", response_model=ChoreoRefineResponse)
def choreo_refine(req: ChoreoRefineRequest) -> ChoreoRefineResponse:
    return _wrap(handlers.handle_choreo_refine, req)


@app.post("/repulsive-check", response_model=RepulsiveCheckResponse)
def repulsive_check(req: RepulsiveCheckRequest) -> RepulsiveCheckResponse:
    return _wrap(handlers.handle_repulsive_check, req)
