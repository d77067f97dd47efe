"""Custom exception classes for the engine and its command line."""

from typing import Optional


class YKHError(Exception):
    """Base exception for engine errors."""

    def __init__(self, message: str, exit_code: int = 1, error_code: Optional[str] = None):
        self.message = message
        self.exit_code = exit_code
        self.error_code = error_code
        super().__init__(message)


class BraidSyntaxError(YKHError):
    """Raised when braid text does not follow the word grammar."""

    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} (at position {position})", 1, "BRAID_SYNTAX")


class IndexOutOfRangeError(YKHError):
    """Raised when a generator index falls outside 1..n-1."""

    def __init__(self, message: str):
        super().__init__(message, 1, "INDEX_OUT_OF_RANGE")


class SingularExponentError(YKHError):
    """Raised when a singular letter carries a non-positive exponent."""

    def __init__(self, message: str):
        super().__init__(message, 1, "SINGULAR_EXPONENT")


class InvalidParameterError(YKHError):
    """Raised when d, D, a variable or a word kind is not acceptable."""

    def __init__(self, message: str):
        super().__init__(message, 1, "INVALID_PARAMETER")


class BasisTooLargeError(YKHError):
    """Raised when a basis enumeration would exceed the configured guard."""

    def __init__(self, message: str):
        super().__init__(message, 1, "BASIS_GUARD")


class ESystemVerificationError(YKHError):
    """Raised when a constructed E-system solution fails verification."""

    def __init__(self, message: str, failing_m: int):
        self.failing_m = failing_m
        super().__init__(message, 2, "ESYSTEM_VERIFICATION")


class UnsupportedKindError(YKHError):
    """Raised when an operation is not defined for an invariant kind."""

    def __init__(self, message: str):
        super().__init__(message, 1, "UNSUPPORTED_KIND")


class SeriesExpansionError(YKHError):
    """Raised when a value cannot be expanded around h = 0."""

    def __init__(self, message: str):
        super().__init__(message, 1, "PARITY_OBSTRUCTION")


class CatalogError(YKHError):
    """Raised when a catalog file is malformed or has duplicate names."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message, 1, "CATALOG")


class CacheCorruptionError(YKHError):
    """Raised when a cache record cannot be read back."""

    def __init__(self, message: str):
        super().__init__(message, 1, "CACHE_CORRUPT")


class PropertyCheckError(YKHError):
    """Raised when a verification suite finds a violated contract."""

    def __init__(self, message: str):
        super().__init__(message, 2, "PROPERTY_CHECK")
