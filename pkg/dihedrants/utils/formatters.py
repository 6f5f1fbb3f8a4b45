"""Utilities for formatting data."""

from typing import List, Optional, Sequence, Tuple

from ..core.graph import INFINITE, Extent


class OrderFormatter:
    """Format group orders and memory sizes in human-readable form."""

    # Orders up to this many digits are printed in full
    MAX_DIGITS = 12

    # Memory units from bytes to gigabytes
    UNITS: List[Tuple[float, str]] = [
        (1, "B"),
        (1024, "KB"),
        (1024 * 1024, "MB"),
        (1024 * 1024 * 1024, "GB"),
    ]

    @classmethod
    def format_order(cls, order: int) -> str:
        """Group order with thousands separators, or in scientific form when huge.

        Args:
            order: A positive integer

        Returns:
            e.g. "1,320" or "2.43e+18"
        """
        if order < 0:
            raise ValueError("Order cannot be negative")
        if len(str(order)) <= cls.MAX_DIGITS:
            return f"{order:,}"
        return f"{float(order):.2e}"

    @classmethod
    def format_bytes(cls, size: int, precision: int = 1) -> str:
        if size < 0:
            raise ValueError("Size cannot be negative")
        if size == 0:
            return f"0.0 {cls.UNITS[0][1]}"
        for threshold, unit in reversed(cls.UNITS):
            if size >= threshold:
                return f"{size / threshold:.{precision}f} {unit}"
        return f"{size} B"


def format_order(order: int) -> str:
    """Convenience function for formatting group orders."""
    return OrderFormatter.format_order(order)


def format_bytes(size: int, precision: int = 1) -> str:
    return OrderFormatter.format_bytes(size, precision)


def format_extent(value: Optional[Extent]) -> str:
    """Girth or diameter; ``inf`` for forests and disconnected graphs."""
    if value is None or value == INFINITE:
        return "inf"
    return str(value)


def format_tokens(tokens: Sequence[str]) -> str:
    return "{" + ", ".join(tokens) + "}"


def format_duration(seconds: float) -> str:
    """Format seconds as ``"0.42s"``, ``"3m 05s"`` or ``"1h 02m"``."""
    if seconds < 60:
        return f"{seconds:.2f}s"
    minutes, secs = divmod(int(seconds), 60)
    if minutes < 60:
        return f"{minutes}m {secs:02d}s"
    hours, minutes = divmod(minutes, 60)
    return f"{hours}h {minutes:02d}m"


def yes_no(flag: Optional[bool]) -> str:
    if flag is None:
        return "-"
    return "yes" if flag else "no"
