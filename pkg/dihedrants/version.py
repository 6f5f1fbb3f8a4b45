"""Version information for dihedrants."""

__version__ = "0.1.0"  # Single source of truth for version
