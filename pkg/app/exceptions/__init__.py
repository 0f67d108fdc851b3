"""
커스텀 예외 처리 패키지
"""

from .base import ConfigError, DecoherenceError, InsufficientDataError, NumericalError
from .error_codes import ErrorCodes
from .handlers import (
    classify_exception,
    decoherence_exception_handler,
    error_body,
    http_exception_handler,
    value_error_handler,
)

__all__ = [
    "ConfigError",
    "DecoherenceError",
    "InsufficientDataError",
    "NumericalError",
    "ErrorCodes",
    "classify_exception",
    "decoherence_exception_handler",
    "error_body",
    "http_exception_handler",
    "value_error_handler",
]
