"""HTTP service exposing the recovery toolkit.

Wraps the core package with JSON request/response models; domain errors map
to 422 responses carrying the error class and message.  Run with

    uvicorn orthobeltway.service:app
"""
from __future__ import annotations

from typing import Literal

import numpy as np
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, PlainTextResponse
from pydantic import BaseModel, Field

from . import __version__
from .demo import run_piccard_demo
from .errors import BeltwayError
from .experiment import ExperimentConfig, mc_sphere_experiment
from .invariants import InvariantEntry, InvariantSet, OrbitTriple, second_moment_invariants
from .recovery import (
    enumerate_orbits,
    orbit_count_bound,
    recover_distinct_weight_products,
    recover_unique,
)
from .signals import SparseSignal, orbit_equivalent
from .turnpike import difference_multiset, embed_half_circle, piccard_sets


class SignalModel(BaseModel):
    """Weighted point masses: weights[i] sits at points[i] in R^dim."""

    dim: int = Field(ge=1)
    weights: list[float]
    points: list[list[float]]

    @classmethod
    def from_signal(cls, signal: SparseSignal) -> "SignalModel":
        return cls(
            dim=signal.dim,
            weights=[float(w) for w in signal.weights],
            points=[[float(x) for x in p] for p in signal.points],
        )

    def to_signal(self) -> SparseSignal:
        points = np.asarray(self.points, dtype=float)
        if points.ndim != 2 or points.shape[1] != self.dim:
            raise BeltwayError("points must be a k x dim matrix")
        try:
            return SparseSignal(np.asarray(self.weights, dtype=float), points)
        except ValueError as exc:
            raise BeltwayError(str(exc)) from exc


class InvariantEntryModel(BaseModel):
    """One pair orbit: squared magnitudes a <= b, inner product c, weight product."""

    a: float
    b: float
    c: float
    wprod: float


class InvariantSetModel(BaseModel):
    k: int = Field(ge=1)
    entries: list[InvariantEntryModel]

    @classmethod
    def from_invariants(cls, inv: InvariantSet) -> "InvariantSetModel":
        return cls(
            k=inv.k,
            entries=[
                InvariantEntryModel(a=e.triple.a, b=e.triple.b, c=e.triple.c, wprod=e.wprod)
                for e in inv.entries
            ],
        )

    def to_invariants(self) -> InvariantSet:
        return InvariantSet(
            self.k,
            tuple(
                InvariantEntry(OrbitTriple(e.a, e.b, e.c), e.wprod)
                for e in self.entries
            ),
        )


class RecoverRequest(BaseModel):
    invariants: InvariantSetModel
    dim: int = Field(ge=1)


class EnumerateRequest(RecoverRequest):
    max_results: int = Field(default=128, ge=1)


class EnumerateResponse(BaseModel):
    orbits: list[SignalModel]
    bound: int
    truncated: bool
    sign_ambiguous: bool


class EquivalenceRequest(BaseModel):
    first: SignalModel
    second: SignalModel


class EquivalenceResponse(BaseModel):
    equivalent: bool


class BoundRequest(BaseModel):
    multiplicities: list[int] = Field(min_length=1)


class BoundResponse(BaseModel):
    bound: int


class EmbedRequest(BaseModel):
    values: list[float] = Field(min_length=1)
    scale: float | None = None


class DiffsRequest(BaseModel):
    values: list[float] = Field(min_length=1)


class DiffsResponse(BaseModel):
    differences: list[float]


class PiccardRequest(BaseModel):
    a: float
    b: float


class PiccardResponse(BaseModel):
    p: list[float]
    q: list[float]


class McSphereRequest(BaseModel):
    trials: int = Field(ge=1)
    seed: int = Field(ge=0)
    mode: Literal["every", "exists"] = "every"


class McSphereResponse(BaseModel):
    trials: int
    positives: int
    fraction: float
    mode: str
    seed: int


app = FastAPI(
    title="orthobeltway",
    version=__version__,
    description="Sparse-signal recovery from second moments over the orthogonal group",
)


@app.exception_handler(BeltwayError)
async def beltway_error_handler(_request: Request, exc: BeltwayError) -> JSONResponse:
    return JSONResponse(
        status_code=422,
        content={"error": type(exc).__name__, "detail": str(exc)},
    )


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/invariants", response_model=InvariantSetModel)
def invariants(signal: SignalModel) -> InvariantSetModel:
    return InvariantSetModel.from_invariants(
        second_moment_invariants(signal.to_signal())
    )


@app.post("/recover", response_model=SignalModel)
def recover(request: RecoverRequest) -> SignalModel:
    return SignalModel.from_signal(
        recover_unique(request.invariants.to_invariants(), request.dim)
    )


@app.post("/recover/distinct-weights", response_model=SignalModel)
def recover_by_weights(request: RecoverRequest) -> SignalModel:
    return SignalModel.from_signal(
        recover_distinct_weight_products(request.invariants.to_invariants(), request.dim)
    )


@app.post("/enumerate", response_model=EnumerateResponse)
def enumerate_all(request: EnumerateRequest) -> EnumerateResponse:
    result = enumerate_orbits(
        request.invariants.to_invariants(), request.dim, max_results=request.max_results
    )
    return EnumerateResponse(
        orbits=[SignalModel.from_signal(o) for o in result.orbits],
        bound=result.bound,
        truncated=result.truncated,
        sign_ambiguous=result.sign_ambiguous,
    )


@app.post("/bound", response_model=BoundResponse)
def bound(request: BoundRequest) -> BoundResponse:
    try:
        value = orbit_count_bound(request.multiplicities)
    except ValueError as exc:
        raise BeltwayError(str(exc)) from exc
    return BoundResponse(bound=value)


@app.post("/equivalent", response_model=EquivalenceResponse)
def equivalent(request: EquivalenceRequest) -> EquivalenceResponse:
    return EquivalenceResponse(
        equivalent=orbit_equivalent(request.first.to_signal(), request.second.to_signal())
    )


@app.post("/turnpike/embed", response_model=SignalModel)
def turnpike_embed(request: EmbedRequest) -> SignalModel:
    try:
        signal = embed_half_circle(request.values, request.scale)
    except ValueError as exc:
        raise BeltwayError(str(exc)) from exc
    return SignalModel.from_signal(signal)


@app.post("/turnpike/diffs", response_model=DiffsResponse)
def turnpike_diffs(request: DiffsRequest) -> DiffsResponse:
    try:
        diffs = difference_multiset(request.values)
    except ValueError as exc:
        raise BeltwayError(str(exc)) from exc
    return DiffsResponse(differences=[float(d) for d in diffs])


@app.post("/turnpike/piccard", response_model=PiccardResponse)
def turnpike_piccard(request: PiccardRequest) -> PiccardResponse:
    p, q = piccard_sets(request.a, request.b)
    return PiccardResponse(p=[float(v) for v in p], q=[float(v) for v in q])


@app.post("/experiments/mc-sphere", response_model=McSphereResponse)
def mc_sphere(request: McSphereRequest) -> McSphereResponse:
    report = mc_sphere_experiment(
        ExperimentConfig(trials=request.trials, seed=request.seed, mode=request.mode)
    )
    return McSphereResponse(
        trials=report.trials,
        positives=report.positives,
        fraction=report.fraction,
        mode=report.mode,
        seed=report.seed,
    )


@app.get("/demo/piccard", response_class=PlainTextResponse)
def demo_piccard() -> str:
    return run_piccard_demo()
