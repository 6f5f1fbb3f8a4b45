"""User interface components for dihedrants"""

from .formatters import TableFormatter
from .styles import BLUE, CLASS_STYLES, CYAN, DIM_0, FG_0, FG_1, GREEN, MAGENTA, ORANGE, RED, YELLOW

__all__ = [
    "TableFormatter",
    "CLASS_STYLES",
    "DIM_0",
    "FG_0",
    "FG_1",
    "YELLOW",
    "ORANGE",
    "RED",
    "MAGENTA",
    "BLUE",
    "CYAN",
    "GREEN",
]
