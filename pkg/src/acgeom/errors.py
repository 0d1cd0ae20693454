"""Structured exceptions for the acgeom engine.

Every error carries a short machine-readable ``code`` so the CLI can map
failures to exit status and callers can branch without string matching.
"""

from __future__ import annotations


class AcgeomError(Exception):
    """Base class for all engine errors."""

    code = "error"

    def __init__(self, message: str, **context):
        super().__init__(message)
        self.context = context


class ValidationError(AcgeomError):
    """Input data fails a structural precondition (shape, parity, J^2 != -I, ...)."""

    code = "validation"


class BackendError(AcgeomError):
    """Operation not representable in the requested scalar backend
    (e.g. a square root that is not rational on the exact backend)."""

    code = "backend"


class DimensionError(AcgeomError):
    """Operation undefined in this dimension (e.g. the conformal 1-form in
    dimension 2, or the four-way 2-form split outside dimension 4)."""

    code = "dimension"


class SingularError(AcgeomError):
    """A linear system that the construction requires to be solvable is
    singular or inconsistent."""

    code = "singular"


class SceneError(AcgeomError):
    """Scene file cannot be parsed or fails load-time validation."""

    code = "scene"
