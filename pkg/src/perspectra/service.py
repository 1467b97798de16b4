"""HTTP API: /search, /doc/{id}, /health, plus optional static UI under /ui."""

from __future__ import annotations

import json
from pathlib import Path

import uvicorn
from fastapi import FastAPI, Request
from fastapi.responses import Response
from fastapi.staticfiles import StaticFiles

from .corpus import Corpus
from .index import Index
from .pipeline import InvalidQueryError, PipelineConfig, render_json, search


def _json_response(payload: dict, status_code: int = 200) -> Response:
    return Response(
        content=json.dumps(payload, ensure_ascii=False, indent=2) + "\n",
        status_code=status_code,
        media_type="application/json",
    )


def _error(status_code: int, code: str, message: str) -> Response:
    return _json_response({"error": {"code": code, "message": message}}, status_code)


def create_app(corpus: Corpus, index: Index, config: PipelineConfig | None = None) -> FastAPI:
    config = config or PipelineConfig()
    app = FastAPI(title="perspectra", docs_url=None, redoc_url=None)

    @app.get("/health")
    def health() -> Response:
        return _json_response({"status": "ok"})

    @app.get("/search")
    def do_search(request: Request) -> Response:
        query_text = request.query_params.get("q", "")
        k_raw = request.query_params.get("k")
        run_config = config
        if k_raw is not None:
            try:
                k = int(k_raw)
            except ValueError:
                return _error(400, "bad_request", f"k must be an integer, got {k_raw!r}")
            try:
                run_config = PipelineConfig(**{**_config_dict(config), "k": k})
            except ValueError as exc:
                return _error(400, "bad_request", str(exc))
        try:
            response = search(query_text, corpus, index, run_config)
        except InvalidQueryError as exc:
            return _error(400, "invalid_query", str(exc))
        return Response(content=render_json(response), media_type="application/json")

    @app.get("/doc/{doc_id}")
    def get_doc(doc_id: str) -> Response:
        try:
            doc = corpus.get(doc_id)
        except KeyError:
            return _error(404, "not_found", f"unknown document id: {doc_id!r}")
        return _json_response({
            "id": doc.id,
            "url": doc.url,
            "title": doc.title,
            "body": doc.body,
            "source": {
                "name": doc.source.name,
                "kind": doc.source.kind,
                "domain": doc.source.domain,
                "trusted": doc.source.trusted,
            },
            "published": doc.published,
            "sentences": [list(span) for span in doc.sentences],
        })

    # explicit ui_dir wins; otherwise pick up a built frontend if present
    ui_dir = config.ui_dir or "frontend/dist"
    if Path(ui_dir).is_dir():
        app.mount("/ui", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app


def _config_dict(config: PipelineConfig) -> dict:
    from dataclasses import asdict

    return asdict(config)


def serve(corpus: Corpus, index: Index, config: PipelineConfig | None = None,
          addr: str = "127.0.0.1:8080") -> None:
    """Run the API until interrupted; uvicorn handles signal shutdown."""
    host, _, port_str = addr.rpartition(":")
    if not host or not port_str.isdigit():
        raise ValueError(f"addr must be host:port, got {addr!r}")
    app = create_app(corpus, index, config)
    uvicorn.run(app, host=host, port=int(port_str), log_level="info")
