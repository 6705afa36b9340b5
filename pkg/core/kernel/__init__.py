from .types import AcmacError, CapacityError, UsageError, ValidationError

__all__ = ["AcmacError", "ValidationError", "UsageError", "CapacityError"]
