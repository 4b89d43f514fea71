"""Parameter spaces."""

__all__ = (
    "ParamSpace",
    "Interval",
    "Unbounded",
    "Support",
    "ParameterSupportError",
)

from wabc.params._bounds import Interval, Support, Unbounded
from wabc.params._space import ParameterSupportError, ParamSpace
