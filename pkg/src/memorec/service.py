"""Stateless HTTP facade over a prebuilt, read-only corpus index."""

from __future__ import annotations

import json

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .corpus import CorpusIndex
from .encoder import EncodingScheme
from .engine import RecommendationQuery, Recommender
from .errors import MemorecError, UnknownContext
from .jsonmodel import parse_json_model


class ContextBody(BaseModel):
    kind: str = Field(pattern="^(class|package)$")
    name: str


class RecommendBody(BaseModel):
    model: dict
    scheme: str
    context: ContextBody
    k: int | None = None
    kContexts: int | None = None
    n: int | None = None


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(
        status_code=status, content={"error": {"code": code, "message": message}}
    )


def create_app(
    index: CorpusIndex,
    default_k: int = 5,
    default_k_contexts: int = 5,
    default_n: int = 10,
) -> FastAPI:
    app = FastAPI(title="memorec")
    recommenders = {
        scheme: Recommender(scheme, tuple(index.encoded[scheme]))
        for scheme in index.schemes
    }

    @app.exception_handler(Exception)
    async def on_unexpected(request: Request, exc: Exception) -> JSONResponse:
        return _error(500, "internal", str(exc))

    @app.get("/api/health")
    def health() -> dict:
        return {"status": "ok", "metamodels": index.size}

    @app.get("/api/corpus/stats")
    def stats() -> dict:
        return {
            "metamodels": index.size,
            "schemes": {
                scheme.value: {
                    "pairs": sum(len(e.pairs) for e in index.encoded[scheme]),
                    "items": len(index.graphs[scheme].doc_freq),
                }
                for scheme in index.schemes
            },
        }

    @app.post("/api/recommendations")
    def recommendations(body: RecommendBody):
        try:
            scheme = EncodingScheme(body.scheme)
        except ValueError:
            return _error(400, "bad_scheme", f"unknown scheme {body.scheme!r}")
        if scheme not in recommenders:
            return _error(400, "bad_scheme", f"scheme {scheme.value} not indexed")
        expected_kind = "class" if scheme.class_context else "package"
        if body.context.kind != expected_kind:
            return _error(
                400,
                "bad_context_kind",
                f"scheme {scheme.value} expects a {expected_kind} context",
            )
        try:
            model = parse_json_model(json.dumps(body.model).encode("utf-8"), "request")
        except MemorecError as exc:
            return _error(400, "bad_model", str(exc))
        query = RecommendationQuery(
            active_metamodel=model,
            scheme=scheme,
            active_context=body.context.name,
            k=body.k or default_k,
            k_contexts=body.kContexts or default_k_contexts,
            n=body.n if body.n is not None else default_n,
        )
        try:
            ranked = recommenders[scheme].recommend(query)
        except UnknownContext as exc:
            return _error(404, "unknown_context", str(exc))
        return {"entries": [{"item": item, "score": score} for item, score in ranked.entries]}

    return app
