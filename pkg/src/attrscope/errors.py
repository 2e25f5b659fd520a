"""Exception types raised by the engine.

Each error carries a short machine-readable ``code`` that the HTTP layer
maps onto its JSON error payload, so the same exceptions serve both the
API and the headless CLI.
"""

from __future__ import annotations


class EngineError(Exception):
    """Base class for all engine failures."""

    default_code = "internal_error"

    def __init__(self, message: str, *, code: str | None = None, detail=None):
        super().__init__(message)
        self.message = message
        self.code = code or self.default_code
        self.detail = detail

    def payload(self) -> dict:
        return {"code": self.code, "message": self.message, "detail": self.detail}


class ValidationError(EngineError):
    """Bad parameters or malformed input data."""

    default_code = "validation"


class UnknownImageError(EngineError):
    """An image id that does not exist in the loaded dataset."""

    default_code = "unknown_image"

    def __init__(self, image_id: str):
        super().__init__(f"unknown image id: {image_id!r}", detail={"id": image_id})
        self.image_id = image_id


class UnknownGroupError(EngineError):
    default_code = "unknown_group"

    def __init__(self, group_id: str):
        super().__init__(f"unknown group id: {group_id!r}", detail={"id": group_id})
        self.group_id = group_id


class EmbeddingNotReadyError(EngineError):
    """A request referenced an embedding that is still being computed."""

    default_code = "embedding_not_ready"


class NumericalFailureError(EngineError):
    """A numerical kernel produced non-finite values or failed to converge."""

    default_code = "numerical_failure"


class CalibrationError(NumericalFailureError):
    """Bandwidth bisection hit its step cap before reaching the target entropy."""

    default_code = "calibration_failed"

    def __init__(self, message: str, *, achieved_entropy: float):
        super().__init__(message, detail={"achieved_entropy": achieved_entropy})
        self.achieved_entropy = achieved_entropy


class DegenerateDataError(ValidationError):
    """Input data has no variation to project or cluster."""

    default_code = "degenerate_data"
