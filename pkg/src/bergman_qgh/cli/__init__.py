"""Command-line interface and the symbol grammar."""

from .grammar import parse_symbol
from .main import RunConfig, main, run

__all__ = ["parse_symbol", "run", "main", "RunConfig"]
