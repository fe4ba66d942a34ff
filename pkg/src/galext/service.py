"""HTTP service exposing the condensation pipeline.

Run with ``uvicorn galext.service:app``.  The CLI talks to these endpoints
when invoked with ``--server``.  Configuration problems map to HTTP 400,
mathematical failures during condensation to HTTP 422; a verify run always
returns 200 with the per-check statuses in the report body.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from .presets import PRESETS, ConfigError, RunConfig, resolve_preset, resolve_toml
from .verify import condense_report, run_suite, selftest

app = FastAPI(
    title="galext",
    description="Condense a symmetric subcategory inside a braided fusion"
                " category; enumerate, grade, and verify the result.",
)


class CondenseRequest(BaseModel):
    preset: str | None = None
    spec_toml: str | None = None
    backend: str | None = Field(default=None, pattern="^(exact|float)$")
    tol: float | None = None
    seed: int | None = None


class VerifyRequest(CondenseRequest):
    filter: str | None = None
    samples: int = 8


def _resolve(req: CondenseRequest) -> RunConfig:
    if bool(req.preset) == bool(req.spec_toml):
        raise ConfigError("provide exactly one of preset or spec_toml")
    if req.preset:
        return resolve_preset(req.preset, backend=req.backend,
                              tol=req.tol, seed=req.seed)
    return resolve_toml(req.spec_toml, backend=req.backend,
                        tol=req.tol, seed=req.seed)


@app.get("/presets")
def list_presets() -> dict:
    return {"presets": [
        {"name": p.name, "description": p.description,
         "default_backend": p.default_backend,
         "generators": list(p.generators)}
        for p in PRESETS.values()]}


@app.post("/condense")
def condense(req: CondenseRequest) -> dict:
    try:
        cfg = _resolve(req)
    except ConfigError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    try:
        return condense_report(cfg)
    except Exception as exc:
        raise HTTPException(status_code=422,
                            detail=f"{type(exc).__name__}: {exc}") from exc


@app.post("/verify")
def verify(req: VerifyRequest) -> dict:
    try:
        cfg = _resolve(req)
    except ConfigError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    return run_suite(cfg, name_filter=req.filter, samples=req.samples).to_dict()


@app.get("/selftest")
def run_selftest(backend: str = "float", tol: float = 1e-9,
                 seed: int = 0) -> dict:
    if backend not in ("exact", "float"):
        raise HTTPException(status_code=400,
                            detail="backend must be 'exact' or 'float'")
    return selftest(backend=backend, tol=tol, seed=seed).to_dict()


if __name__ == "__main__":
    import uvicorn

    uvicorn.run("galext.service:app", host="127.0.0.1", port=8000)
