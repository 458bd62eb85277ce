"""Request/response shapes for the HTTP service."""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field


class BrooksRequest(BaseModel):
    model: dict | str = Field(description="model spec object, or JSON text / server-local path")
    segment: str = Field(description="comma-separated word, e.g. 'a,b'")
    radius: int = Field(4, ge=1, le=6)
    workers: int = Field(1, ge=1, le=16)


class DefectRequest(BaseModel):
    model: dict | str
    segment: str
    radius: int = Field(2, ge=1, le=6)
    workers: int = Field(1, ge=1, le=16)


class CupRequest(BaseModel):
    model: dict | str
    segment: str
    segment2: str
    radius: int = Field(1, ge=1, le=3)
    window: int = Field(4, ge=1, le=8)
    workers: int = Field(1, ge=1, le=16)


class WitnessRequest(BaseModel):
    model: dict | str
    segment: str | None = None
    segment2: str | None = None
    gamma: str | None = None
    f_names: str | None = Field(None, description="comma-separated generators spanning F")
    powers: int = Field(10, ge=1, le=30)


class StaircaseRequest(BaseModel):
    model: dict | str
    radius: int = Field(2, ge=1, le=6)
    cap: int = Field(8, ge=1, le=32)


class Verdict(BaseModel):
    name: str
    ok: bool
    detail: str


class Report(BaseModel):
    """Envelope common to all commands; results stay command-specific."""

    model_config = ConfigDict(extra="allow")

    command: str
    package: dict
    model: dict
    params: dict
    config_hash: str
    sigma: dict
    verdicts: list[Verdict]
    incomplete: bool
    results: dict
    runtime_ms: int


class Health(BaseModel):
    status: str
    version: str
