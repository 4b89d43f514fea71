"""Format connectors."""

__all__: tuple[str, ...] = ()

from wabc._connect import formats  # noqa: F401
