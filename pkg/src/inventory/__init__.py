"""Inventory sequences: iterating S -> [S] + mu(S) on finite multisets."""

from .dynamics import orbit, step
from .multiset import Multiset, NotationError, format_notation, parse_notation

__all__ = ["Multiset", "NotationError", "format_notation", "orbit", "parse_notation", "step"]
__version__ = "0.1.0"
