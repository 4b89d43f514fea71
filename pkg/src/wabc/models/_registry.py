"""Model registry, addressable by name."""

from __future__ import annotations

__all__: tuple[str, ...] = ()

from typing import TYPE_CHECKING, Any, TypeVar

if TYPE_CHECKING:
    from wabc.models._base import GenerativeModel

M = TypeVar("M", bound="type[GenerativeModel]")

MODEL_REGISTRY: dict[str, type[GenerativeModel]] = {}


def register_model(cls: M) -> M:
    """Class decorator adding a model to :data:`MODEL_REGISTRY`."""
    if cls.name in MODEL_REGISTRY:
        msg = f"model {cls.name!r} is already registered"
        raise ValueError(msg)
    MODEL_REGISTRY[cls.name] = cls
    return cls


def get_model(name: str, /, **options: Any) -> GenerativeModel:
    """Instantiate the registered model ``name`` with ``options``.

    Raises
    ------
    ValueError
        If no model of that name is registered.

    Examples
    --------
    >>> get_model("ar1").param_space.names
    ('phi', 'log_sigma')
    """
    try:
        cls = MODEL_REGISTRY[name]
    except KeyError:
        msg = f"unknown model {name!r}; known: {sorted(MODEL_REGISTRY)}"
        raise ValueError(msg) from None
    return cls(**options)
