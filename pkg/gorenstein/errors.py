# -*- coding: utf-8 -*-
# File: gorenstein/errors.py

"""
Error hierarchy and error codes.
Every error raised on purpose by the package derives from GorensteinError and
carries the exit status the CLI reports for it.
"""

from typing import Any, Optional

from pydantic import BaseModel, Field


# Error codes and the process exit status attached to each
ERROR_CODES = {
    "INPUT_ERROR": 2,
    "CAPACITY_EXCEEDED": 3,
    "VERIFICATION_FAILED": 4,
    "CONFIGURATION_ERROR": 2,
}


class GorensteinError(Exception):
    code = "INPUT_ERROR"

    def __init__(self, message: str, data: Any = None):
        super().__init__(message)
        self.message = message
        self.data = data

    @property
    def exit_code(self) -> int:
        return ERROR_CODES[self.code]


class InputError(GorensteinError):
    code = "INPUT_ERROR"


class UnsupportedCoefficientError(InputError):
    """Binomial whose two coefficients are not c and -c."""


class CapacityError(GorensteinError):
    code = "CAPACITY_EXCEEDED"


class VerificationError(GorensteinError):
    code = "VERIFICATION_FAILED"


class ConfigurationError(GorensteinError):
    code = "CONFIGURATION_ERROR"


class ErrorReport(BaseModel):
    code: str = Field(..., description="Symbolic error code")
    exit_code: int = Field(..., description="Process exit status")
    message: str = Field(..., description="Error message")
    data: Optional[Any] = Field(None, description="Additional error data")


def create_error_report(exc: GorensteinError) -> ErrorReport:
    """Build the serializable report for an error raised by the package"""
    return ErrorReport(
        code=exc.code, exit_code=exc.exit_code, message=exc.message, data=exc.data
    )
