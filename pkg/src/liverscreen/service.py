"""HTTP JSON API over a read-only model store.

Routes: GET /health, GET /models, POST /predict, GET /models/{id}/metrics.
Every 4xx body carries machine-readable error entries
({"field", "code", "message"}) that the screening UI maps to inline
messages. Models are loaded lazily from the store and cached; the store is
treated as read-only while serving.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .dataset import GENDER_FEMALE, GENDER_MALE, ilpd_schema
from .hybrid import predict_any
from .store import (
    IntegrityError,
    ModelNotFoundError,
    algorithm_tag,
    list_models,
    load_metrics,
    load_model,
)

LABEL_TEXT = {1: "liver patient", 2: "non-patient"}

_NUMERIC_BOUNDS_LOW = 0.0  # every biomarker and Age is a nonnegative amount


@dataclass(frozen=True)
class FieldError:
    field: str | None
    code: str
    message: str

    def to_payload(self) -> dict:
        return {"field": self.field, "code": self.code, "message": self.message}


def _error_response(status: int, errors: list[FieldError]) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"errors": [e.to_payload() for e in errors]},
    )


def validate_attributes(attributes: Any, required: tuple[str, ...]) -> tuple[dict[str, float], list[FieldError]]:
    """Check a raw attribute map against the schema and the model's needs.

    Returns (encoded values, errors); encoding turns Gender text into the
    internal 0/1 convention. Mirrors the client-side form rules exactly.
    """
    schema = ilpd_schema()
    known = set(schema.feature_names)
    errors: list[FieldError] = []
    values: dict[str, float] = {}

    if not isinstance(attributes, dict):
        return {}, [FieldError(None, "invalid_request", "attributes must be an object")]

    for name in attributes:
        if name not in known:
            errors.append(FieldError(name, "unknown_field", f"{name} is not an ILPD attribute"))

    for name in required:
        if name not in attributes or attributes[name] is None or attributes[name] == "":
            errors.append(FieldError(name, "missing", f"{name} is required"))

    for name, raw in attributes.items():
        if name not in known or raw is None or raw == "":
            continue
        if name == "Gender":
            if isinstance(raw, str) and raw.strip().lower() in ("male", "female"):
                values[name] = GENDER_MALE if raw.strip().lower() == "male" else GENDER_FEMALE
            else:
                errors.append(FieldError(name, "invalid_value", "Gender must be 'Male' or 'Female'"))
            continue
        try:
            v = float(raw)
        except (TypeError, ValueError):
            errors.append(FieldError(name, "invalid_type", f"{name} must be a number"))
            continue
        if v != v or v in (float("inf"), float("-inf")):
            errors.append(FieldError(name, "invalid_type", f"{name} must be finite"))
        elif v < _NUMERIC_BOUNDS_LOW:
            errors.append(FieldError(name, "out_of_range", f"{name} must be >= 0"))
        else:
            values[name] = v
    return values, errors


def create_app(store_path) -> FastAPI:
    app = FastAPI(title="liverscreen", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    model_cache: dict[str, object] = {}

    @app.exception_handler(RequestValidationError)
    async def malformed_request(request: Request, exc: RequestValidationError):
        return _error_response(400, [FieldError(None, "malformed_request", "request body is not valid JSON")])

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.get("/models")
    def models():
        return {"models": [e.to_payload() for e in list_models(store_path)]}

    @app.get("/models/{model_id}/metrics")
    def metrics(model_id: str):
        try:
            report = load_metrics(store_path, model_id)
        except ModelNotFoundError:
            return _error_response(404, [FieldError(None, "not_found", "no metrics for that model")])
        return {"model_id": model_id, "report": report.to_payload()}

    @app.post("/predict")
    async def predict(request: Request):
        try:
            body = await request.json()
        except ValueError:
            return _error_response(400, [FieldError(None, "malformed_request", "request body is not valid JSON")])
        if not isinstance(body, dict):
            return _error_response(400, [FieldError(None, "invalid_request", "body must be an object")])

        model_id = body.get("model_id")
        if not isinstance(model_id, str) or not model_id:
            return _error_response(400, [FieldError("model_id", "missing", "model_id is required")])
        try:
            model = model_cache.get(model_id)
            if model is None:
                model = load_model(store_path, model_id)
                model_cache[model_id] = model
        except ModelNotFoundError:
            return _error_response(404, [FieldError("model_id", "not_found", "unknown model")])
        except IntegrityError:
            return _error_response(500, [FieldError(None, "internal", "stored model failed verification")])

        values, errors = validate_attributes(body.get("attributes"), model.feature_names)
        if errors:
            return _error_response(400, errors)
        label, score = predict_any(model, values)
        return {
            "label": label,
            "label_text": LABEL_TEXT[label],
            "score": score,
            "model_id": model_id,
            "algorithm": algorithm_tag(model),
        }

    return app
