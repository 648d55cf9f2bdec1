"""Read-only HTTP service over precomputed workspace artifacts.

Everything is computed before the first request; handlers only read
immutable in-memory documents, so concurrent requests are safe and
responses are byte-stable for a fixed workspace.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from starlette.exceptions import HTTPException as StarletteHTTPException

from .factors import factor_table_to_csv
from .workspace import Workspace, _sanitize

_UI_DIST = Path(__file__).resolve().parents[2] / "frontend" / "dist"


def _error(status: int, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": message})


def create_app(workspace: Workspace, ui_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="podium", docs_url=None, redoc_url=None)

    corpus = workspace.corpus()
    table = workspace.ensure_factors()
    report = workspace.ensure_analysis()
    embedding = workspace.ensure_embedding()

    summaries = [workspace.speech_summary(rec) for rec in corpus]
    details = {rec.id: workspace.speech_detail(rec.id) for rec in corpus}
    layouts = {rec.id: workspace.speech_layouts(rec.id) for rec in corpus}
    radars = {rec.id: workspace.radar_json(rec.id) for rec in corpus}
    strips = {}
    distributions = {}
    for entry in report.results:
        strips[entry.factor] = workspace.strip_layout_json(entry.factor)
        if entry.fit.converged:
            distributions[entry.factor] = workspace.distribution_json(entry.factor)
    from .ordinal import report_to_json
    analysis_doc = report_to_json(report)
    factors_json = _sanitize({
        "speech_ids": list(table.speech_ids),
        "factor_names": list(table.factor_names),
        "values": [[v for v in row] for row in table.values.tolist()],
    })
    factors_csv = factor_table_to_csv(table)

    @app.exception_handler(StarletteHTTPException)
    async def http_exception_handler(request: Request, exc: StarletteHTTPException):
        return _error(exc.status_code, str(exc.detail))

    @app.exception_handler(RequestValidationError)
    async def validation_handler(request: Request, exc: RequestValidationError):
        return _error(422, "invalid request parameters")

    @app.get("/api/speeches")
    def list_speeches(country: str | None = None, level: int | None = None):
        out = summaries
        if country is not None:
            out = [s for s in out if s["country"] == country.upper()]
        if level is not None:
            if level not in (1, 2, 3, 4, 5):
                return _error(422, f"level must be 1..5, got {level}")
            out = [s for s in out if s["level"] == level]
        return out

    @app.get("/api/speeches/{speech_id}")
    def speech_detail(speech_id: str):
        doc = details.get(speech_id)
        if doc is None:
            return _error(404, f"unknown speech {speech_id!r}")
        return doc

    @app.get("/api/factors")
    def factors(request: Request):
        accept = request.headers.get("accept", "")
        if "text/csv" in accept:
            return Response(content=factors_csv, media_type="text/csv")
        return factors_json

    @app.get("/api/analysis")
    def analysis():
        return analysis_doc

    @app.get("/api/analysis/{factor}/distribution")
    def factor_distribution(factor: str):
        doc = distributions.get(factor)
        if doc is None:
            if factor not in {e["factor"] for e in analysis_doc}:
                return _error(404, f"unknown factor {factor!r}")
            return _error(422, f"no converged fit for {factor!r}")
        return doc

    @app.get("/api/embedding")
    def get_embedding():
        return embedding

    @app.get("/api/radar/{speech_id}")
    def get_radar(speech_id: str):
        doc = radars.get(speech_id)
        if doc is None:
            return _error(404, f"unknown speech {speech_id!r}")
        return doc

    @app.get("/api/layout/factor-strip/{factor}")
    def get_strip(factor: str):
        doc = strips.get(factor)
        if doc is None:
            return _error(404, f"unknown factor {factor!r}")
        return doc

    @app.get("/api/layout/{kind}/{speech_id}")
    def get_layout(kind: str, speech_id: str):
        if kind not in ("spiral", "script", "type"):
            return _error(404, f"unknown layout kind {kind!r}")
        per_speech = layouts.get(speech_id)
        if per_speech is None:
            return _error(404, f"unknown speech {speech_id!r}")
        return per_speech[kind]

    ui_path = Path(ui_dir) if ui_dir else _UI_DIST
    if ui_path.is_dir():
        app.mount("/", StaticFiles(directory=str(ui_path), html=True), name="ui")

    return app
