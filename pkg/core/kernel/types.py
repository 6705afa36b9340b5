"""
Error types shared by every module and the command gateway.

Each error carries a stable code, a human-readable message and a details
dict; `to_dict()` produces the result-dict shape the runner returns.
"""

from __future__ import annotations

from typing import Any, Dict, Optional


ERROR_INVALID_INPUT = "INVALID_INPUT"
ERROR_USAGE = "USAGE"
ERROR_SIZE_CAP = "SIZE_CAP"
ERROR_INTERNAL = "INTERNAL"

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_SIZE_CAP = 3
EXIT_INTERNAL = 4


class AcmacError(Exception):
    """
    Base class for package errors.

    Attributes:
        - code: stable error code (e.g. 'INVALID_INPUT')
        - message: human-readable error message
        - details: additional structured information
    """

    code = ERROR_INTERNAL
    exit_code = EXIT_INTERNAL

    def __init__(self, message: str = "", details: Optional[Dict[str, Any]] = None) -> None:
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def to_dict(self) -> Dict[str, Any]:
        return {
            "code": self.code,
            "message": self.message,
            "details": self.details,
        }


class ValidationError(AcmacError):
    """Invalid probability law, channel, config or spec."""

    code = ERROR_INVALID_INPUT
    exit_code = EXIT_INPUT


class UsageError(AcmacError):
    """Contract misuse: overlapping axes, unknown delay, too short blocklength."""

    code = ERROR_USAGE
    exit_code = EXIT_INPUT


class CapacityError(AcmacError):
    """An exhaustive enumeration would exceed its size cap."""

    code = ERROR_SIZE_CAP
    exit_code = EXIT_SIZE_CAP

    def __init__(self, message: str, size: int, cap: int, details: Optional[Dict[str, Any]] = None) -> None:
        merged = {"size": int(size), "cap": int(cap)}
        merged.update(details or {})
        super().__init__(message, merged)
        self.size = int(size)
        self.cap = int(cap)


def error_from_pydantic(exc: Exception, what: str) -> ValidationError:
    """Wrap a pydantic ValidationError into the package's ValidationError."""
    errors = []
    for item in getattr(exc, "errors", lambda: [])():
        loc = ".".join(str(x) for x in item.get("loc", ()))
        errors.append({"loc": loc, "msg": item.get("msg", "")})
    first = errors[0] if errors else {"loc": "", "msg": str(exc)}
    where = f" at {first['loc']}" if first["loc"] else ""
    return ValidationError(f"invalid {what}{where}: {first['msg']}", {"errors": errors})
