"""Utility modules for the engine."""

from .config import Settings
from .exceptions import YKHError

__all__ = ["Settings", "YKHError"]
