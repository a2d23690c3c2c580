"""Service layer: FastAPI app, handlers, request/response models."""

from . import handlers, models
from .app import app

__all__ = ["app", "handlers", "models"]
