"""Distribution helpers shared by priors and models."""

__all__: tuple[str, ...] = ()
