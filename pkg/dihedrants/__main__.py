"""Main entry point for the dihedrants package."""

from .cli import main

if __name__ == "__main__":
    main()
