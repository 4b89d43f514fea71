"""Utilities."""

__all__ = ("within_bounds",)

from wabc.utils.funcs import within_bounds
