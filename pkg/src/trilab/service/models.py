"""Pydantic request/response models of the laboratory service."""
from __future__ import annotations

import math

from pydantic import BaseModel, Field, field_validator


class MassesModel(BaseModel):
    m1: float = 1.0
    m2: float = 1.0
    m3: float = 1.0

    @field_validator("m1", "m2", "m3")
    @classmethod
    def _positive(cls, v: float) -> float:
        if not v > 0:
            raise ValueError("masses must be strictly positive")
        return v

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.m1, self.m2, self.m3)


class IntegratorConfigModel(BaseModel):
    rel_tol: float = 1e-12
    abs_tol: float = 1e-14
    max_step: float | None = None
    collision_radius: float = 1e-8
    max_time: float | None = None


class CollisionEventModel(BaseModel):
    pair: tuple[int, int]
    time: float
    min_distance: float


class DiagnosticsModel(BaseModel):
    I: float
    K: float
    V: float
    E: float
    L: float


class SimulateRequest(BaseModel):
    alpha: float = Field(default=-1.0, description="potential exponent; 0 selects log r")
    masses: MassesModel = MassesModel()
    theta: float = 0.0
    t_end: float = 10.0
    config: IntegratorConfigModel = IntegratorConfigModel()


class SimulateResponse(BaseModel):
    termination: str
    t_final: float
    n_samples: int
    events: list[CollisionEventModel]
    initial: DiagnosticsModel
    inertia_deviation: float
    energy_drift_window: float
    max_angular_momentum_window: float
    csv: str


class JetsRequest(BaseModel):
    alpha: float = -1.0
    masses: MassesModel = MassesModel()
    theta: float | None = Field(default=None,
                                description="launch angle; omitted = equal-mass "
                                            "consistency angle at full precision")
    order: int = 6
    dps: int = 60

    @field_validator("order")
    @classmethod
    def _order(cls, v: int) -> int:
        if v < 2:
            raise ValueError("order must be >= 2")
        return v


class JetsResponse(BaseModel):
    law: str
    alpha: float
    masses: list[float]
    theta: float
    order: int
    values: list[str]
    zero_flags: list[bool]


class ThetaRequest(BaseModel):
    alpha: float = -1.0


class ThetaResponse(BaseModel):
    solution: str
    value: float | None
    angles: list[float]


class ClosedFormRequest(BaseModel):
    alpha: float = 2.0
    theta: float = 0.0
    t_end: float | None = None
    compare: bool = True
    config: IntegratorConfigModel = IntegratorConfigModel()

    @field_validator("alpha")
    @classmethod
    def _alpha(cls, v: float) -> float:
        if v not in (2.0, 4.0):
            raise ValueError("closed forms exist for alpha = 2 and alpha = 4 only")
        return v


class ClosedFormResponse(BaseModel):
    alpha: float
    theta: float
    termination: str
    collision: CollisionEventModel | None
    expected_collision_time: float
    collision_time_error: float | None
    max_position_error: float | None
    max_inertia_deviation: float
    csv: str


class AppendixVerifyRequest(BaseModel):
    digits: int = 40


class ChoreoScanRequest(BaseModel):
    alpha: float = -2.0
    theta_min: float = 0.0
    theta_max: float = math.pi / 2
    steps: int = 200
    horizon: float = 8.0
    rel_tol: float = 1e-10


class ScanBest(BaseModel):
    theta: float
    period: float | None
    residual: float


class ChoreoScanResponse(BaseModel):
    steps: int
    best: ScanBest | None
    csv: str


class ChoreoRefineRequest(BaseModel):
    theta: float
    period: float
    alpha: float = -2.0
    rel_tol: float = 1e-12


class ChoreoRefineResponse(BaseModel):
    converged: bool
    theta: float | None = None
    period: float | None = None
    residual: float | None = None
    fourfold: list[float] = []
    message: str = ""


class RepulsiveCheckRequest(BaseModel):
    alpha: float = -1.0
    masses: MassesModel = MassesModel()
    theta: float = 0.5
    state: list[float] | None = Field(default=None,
                                      description="12 floats x1,y1,..,vx3,vy3; "
                                                  "omitted = family state at theta")

    @field_validator("state")
    @classmethod
    def _state(cls, v):
        if v is not None and len(v) != 12:
            raise ValueError("state must hold exactly 12 numbers")
        return v


class RepulsiveCheckResponse(BaseModel):
    value: float
    positive: bool


class HealthResponse(BaseModel):
    status: str
    version: str
