"""Reproducible random streams.

Every random draw in the library comes from a :class:`RandomStream`, which is
addressed by a root seed and a tuple of integers (purpose, step, particle
index, ...). The same address always yields the same draws, and distinct
addresses yield independent streams, so parallel execution order never
changes a result.
"""

from __future__ import annotations

__all__ = ("RandomStream", "as_generator")

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from wabc.setup_package import DEFAULT_SEED

if TYPE_CHECKING:
    from wabc.typing import StreamId


@dataclass(frozen=True, slots=True)
class RandomStream:
    """An addressable, counter-based random stream.

    Parameters
    ----------
    seed : int
        Root seed, a non-negative integer below ``2**64``.
    stream_id : tuple[int, ...]
        Address of the stream below the root seed.

    Examples
    --------
    >>> a = RandomStream(1, (4, 0, 7)).generator().standard_normal(3)
    >>> b = RandomStream(1, (4, 0, 7)).generator().standard_normal(3)
    >>> bool((a == b).all())
    True
    """

    seed: int = DEFAULT_SEED
    stream_id: StreamId = ()

    def __post_init__(self) -> None:
        if not 0 <= self.seed < 2**64:
            msg = f"seed must be a 64-bit unsigned integer, got {self.seed}"
            raise ValueError(msg)
        if any(i < 0 for i in self.stream_id):
            msg = f"stream_id entries must be non-negative, got {self.stream_id}"
            raise ValueError(msg)
        object.__setattr__(self, "stream_id", tuple(int(i) for i in self.stream_id))

    def child(self, *ids: int) -> RandomStream:
        """Return the stream addressed by ``stream_id + ids``."""
        return RandomStream(self.seed, (*self.stream_id, *ids))

    def seed_sequence(self) -> np.random.SeedSequence:
        """The :class:`numpy.random.SeedSequence` behind this stream."""
        return np.random.SeedSequence(self.seed, spawn_key=self.stream_id)

    def generator(self) -> np.random.Generator:
        """A fresh generator positioned at the start of the stream."""
        return np.random.Generator(np.random.PCG64(self.seed_sequence()))


def as_generator(
    rng: RandomStream | np.random.Generator | int | None,
) -> np.random.Generator:
    """Coerce ``rng`` to a :class:`numpy.random.Generator`.

    Generators are passed through unchanged so a caller can chain several
    draws on one stream.
    """
    if isinstance(rng, np.random.Generator):
        return rng
    if isinstance(rng, RandomStream):
        return rng.generator()
    return RandomStream(DEFAULT_SEED if rng is None else rng).generator()
