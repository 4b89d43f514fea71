"""Time series and their point-cloud embeddings."""

__all__ = (
    "Series",
    "EmbeddingSpec",
    "curve_embed",
    "aspect_ratio_lambda",
    "delay_embed",
    "residual_reconstruct",
    "embed",
    "RESIDUAL_REGISTRY",
)

from wabc.timeseries._embed import (
    EmbeddingSpec,
    aspect_ratio_lambda,
    curve_embed,
    delay_embed,
    embed,
)
from wabc.timeseries._residual import RESIDUAL_REGISTRY, residual_reconstruct
from wabc.timeseries._series import Series
