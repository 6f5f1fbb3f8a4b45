"""Utility functions for dihedrants."""

from .formatters import (
    OrderFormatter,
    format_bytes,
    format_duration,
    format_extent,
    format_order,
    format_tokens,
)

__all__ = [
    "OrderFormatter",
    "format_order",
    "format_bytes",
    "format_extent",
    "format_tokens",
    "format_duration",
]
