"""Run configuration files."""

from __future__ import annotations

__all__: tuple[str, ...] = ()

from collections.abc import Iterator
from contextlib import contextmanager
from dataclasses import KW_ONLY, asdict, dataclass, field, fields
import hashlib
import json
import os
from pathlib import Path
import re
from typing import TYPE_CHECKING, Any

from wabc.metric import GroundMetric
from wabc.models import get_model
from wabc.reference import MhConfig
from wabc.setup_package import DEFAULT_SEED, WORKERS_ENV
from wabc.smc import DistanceSpec, SmcConfig
from wabc.timeseries import EmbeddingSpec

if TYPE_CHECKING:
    from wabc.models import GenerativeModel


class ConfigError(ValueError):
    """Raised for invalid command-line input or configuration files."""

    def __init__(self, message: str, *, line: int | None = None) -> None:
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


@contextmanager
def config_errors(context: str = "") -> Iterator[None]:
    """Re-raise input errors as :class:`ConfigError`."""
    try:
        yield
    except ConfigError:
        raise
    except (ValueError, KeyError, TypeError, OSError) as err:
        prefix = f"{context}: " if context else ""
        raise ConfigError(f"{prefix}{err}") from err


def resolve_workers(workers: int | None) -> int:
    """``workers``, else the ``WABC_WORKERS`` variable, else 1."""
    if workers is None:
        raw = os.environ.get(WORKERS_ENV, "1")
        try:
            workers = int(raw)
        except ValueError:
            msg = f"{WORKERS_ENV} must be an integer, got {raw!r}"
            raise ConfigError(msg) from None
    if workers < 1:
        msg = f"workers must be >= 1, got {workers}"
        raise ConfigError(msg)
    return workers


def parse_floats(text: str, what: str = "value") -> tuple[float, ...]:
    """Parse comma-separated reals.

    Examples
    --------
    >>> parse_floats("3,1,2,0.5")
    (3.0, 1.0, 2.0, 0.5)
    """
    try:
        return tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        msg = f"{what} must be comma-separated reals, got {text!r}"
        raise ConfigError(msg) from None


def _line_of(text: str, key: str) -> int | None:
    match = re.search(rf'"{re.escape(key)}"\s*:', text)
    return None if match is None else text.count("\n", 0, match.start()) + 1


_SERIES_EMBEDDINGS = ("curve", "delay", "residual")


@dataclass(frozen=True)
class RunConfig:
    """Contents of a JSON run configuration.

    Keys mirror the fields; unknown keys are errors. Observed data come from
    ``data`` (a CSV file) or are simulated at ``theta_true`` with ``n``
    observations.
    """

    model: str
    _: KW_ONLY
    model_options: dict[str, Any] = field(default_factory=dict)
    constrain_to_data: bool = False
    data: str | None = None
    theta_true: tuple[float, ...] | None = None
    n: int | None = None
    method: str = "wasserstein"
    embedding: dict[str, Any] | None = None
    metric: dict[str, Any] = field(default_factory=dict)
    subsample: int | None = None
    summary: str | None = None
    zeta: float | None = None
    bandwidth: float | None = None
    bits: int | None = None
    max_sweeps: int | None = None
    smc: dict[str, Any] = field(default_factory=dict)
    two_stage: dict[str, Any] | None = None
    mh: dict[str, Any] = field(default_factory=dict)
    output: str = "out"
    seed: int = DEFAULT_SEED

    def __post_init__(self) -> None:
        if self.data is None and (self.theta_true is None or self.n is None):
            msg = "give either 'data' or both 'theta_true' and 'n'"
            raise ConfigError(msg)
        if self.theta_true is not None:
            theta = tuple(float(v) for v in self.theta_true)
            object.__setattr__(self, "theta_true", theta)
        with config_errors("model"):
            model = self.build_model()
        dim = model.param_space.dim
        if self.theta_true is not None and len(self.theta_true) != dim:
            msg = (
                f"theta_true has {len(self.theta_true)} entries, model "
                f"{self.model!r} has {model.param_space.dim} parameters"
            )
            raise ConfigError(msg)
        with config_errors("distance"):
            spec = self.distance_spec(model)
        if spec.embedding.kind in _SERIES_EMBEDDINGS and model.output != "series":
            msg = (
                f"embedding {spec.embedding.kind!r} needs a time-series model; "
                f"{self.model!r} produces {model.output} data"
            )
            raise ConfigError(msg)
        with config_errors("smc"):
            self.smc_config(1)
        if self.two_stage is not None:
            unknown = set(self.two_stage) - {"summary", "budget"}
            if unknown or "summary" not in self.two_stage:
                msg = "two_stage needs a 'summary' and optionally a 'budget'"
                raise ConfigError(msg)

    @classmethod
    def from_json(cls, path: str | Path) -> RunConfig:
        """Read and validate a configuration file.

        Raises
        ------
        ConfigError
            With the line number of a syntax error or unknown key.
        """
        text = Path(path).read_text()
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as err:
            raise ConfigError(err.msg, line=err.lineno) from None
        if not isinstance(raw, dict):
            msg = "the configuration must be a JSON object"
            raise ConfigError(msg)
        known = {f.name for f in fields(cls)}
        for key in raw:
            if key not in known:
                msg = f"unknown key {key!r}"
                raise ConfigError(msg, line=_line_of(text, key))
        if "model" not in raw:
            msg = "missing key 'model'"
            raise ConfigError(msg)
        with config_errors():
            return cls(**raw)

    def as_dict(self) -> dict[str, Any]:
        return asdict(self)

    def digest(self) -> str:
        """SHA-256 of the canonical JSON form."""
        canonical = json.dumps(self.as_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode()).hexdigest()

    def build_model(self, observed: Any = None) -> GenerativeModel:
        """The configured model, constrained by ``observed`` if requested."""
        model = get_model(self.model, **self.model_options)
        if self.constrain_to_data:
            constrained = getattr(type(model), "constrained", None)
            if constrained is None:
                msg = f"model {self.model!r} has no data constraint"
                raise ConfigError(msg)
            if observed is not None:
                model = constrained(observed)
        return model

    def distance_spec(self, model: GenerativeModel) -> DistanceSpec:
        """The configured distance, using the model's default embedding."""
        embedding = (
            model.embedding_default
            if self.embedding is None
            else EmbeddingSpec(**_tuple_lists(self.embedding))
        )
        extra: dict[str, Any] = {
            k: getattr(self, k)
            for k in ("subsample", "summary", "zeta", "bandwidth", "bits", "max_sweeps")
            if getattr(self, k) is not None
        }
        return DistanceSpec(
            self.method,  # type: ignore[arg-type]
            embedding=embedding,
            metric=GroundMetric(**self.metric),
            **extra,
        )

    def smc_config(self, workers: int) -> SmcConfig:
        return SmcConfig(**self.smc, seed=self.seed, workers=workers)

    def stage_two_config(self, workers: int) -> SmcConfig:
        opts = dict(self.smc)
        if self.two_stage and "budget" in self.two_stage:
            opts["budget"] = self.two_stage["budget"]
        return SmcConfig(**opts, seed=self.seed, workers=workers)

    def mh_config(self, workers: int) -> MhConfig:
        return MhConfig(**self.mh, seed=self.seed, workers=workers)


def _tuple_lists(options: dict[str, Any]) -> dict[str, Any]:
    return {k: tuple(v) if isinstance(v, list) else v for k, v in options.items()}
