"""Subcommand implementations.

Each command validates its inputs inside :func:`config_errors`, so bad input
surfaces as :class:`ConfigError`, then does its work and writes its outputs.
"""

from __future__ import annotations

__all__: tuple[str, ...] = ()

import json
import logging
import math
from pathlib import Path
import time
from typing import TYPE_CHECKING, Any

import numpy as np
from scipy.stats import spearmanr

from wabc._cloud import PointCloud
from wabc._connect.formats import read_table, write_table
from wabc.cli._config import ConfigError, RunConfig, config_errors, resolve_workers
from wabc.models import get_model
from wabc.random import RandomStream
from wabc.reference import cloud_w1, metropolis_hastings
from wabc.setup_package import StreamPurpose
from wabc.smc import DistanceFunction, DistanceSpec, particle_table, run, run_two_stage
from wabc.timeseries import Series

if TYPE_CHECKING:
    from collections.abc import Sequence

    from wabc.models import GenerativeModel
    from wabc.smc import SmcResult, SmcState
    from wabc.typing import FloatArray

logger = logging.getLogger(__name__)

# columns of particle and chain files that are not parameters
AUX_COLUMNS = frozenset({"dist", "primary", "iteration", "logpost"})
BENCH_METHODS = ("wasserstein", "hilbert", "swap", "sinkhorn", "mmd", "euclidean")


#####################################################################
# Files


def read_data(path: str | Path) -> PointCloud | Series:
    """Read a data file; a leading ``t`` column marks a series."""
    names, _ = read_table(path)
    if names[0] == "t":
        return Series.from_format(path, "csv")
    return PointCloud.from_format(path, "csv")


def write_data(data: PointCloud | Series, path: str | Path) -> Path:
    return data.to_format("csv", path=path)  # type: ignore[no-any-return]


def json_float(value: float) -> float | None:
    """``value``, or ``None`` where JSON has no number for it."""
    return value if math.isfinite(value) else None


def write_json(record: dict[str, Any], path: str | Path) -> Path:
    path = Path(path)
    path.write_text(json.dumps(record, indent=2, sort_keys=True) + "\n")
    return path


def read_parameter_cloud(path: str | Path) -> PointCloud:
    """Parameter columns of a particle or chain file."""
    names, array = read_table(path)
    keep = [i for i, name in enumerate(names) if name not in AUX_COLUMNS]
    if not keep:
        msg = f"{path} has no parameter columns"
        raise ValueError(msg)
    return PointCloud(array[:, keep], names=tuple(names[i] for i in keep))


def _write_population(path: Path, state: SmcState, names: Sequence[str]) -> Path:
    return write_table(path, particle_table(state), (*names, "dist"))


def _write_result(out: Path, result: SmcResult, model: GenerativeModel) -> None:
    out.mkdir(parents=True, exist_ok=True)
    names = model.param_space.names
    _write_population(out / "particles.csv", result.state, names)
    trace_names, trace = result.trace.as_table()
    write_table(out / "trace.csv", trace, trace_names)
    if result.history:
        hist = out / "history"
        hist.mkdir(exist_ok=True)
        for state in result.history:
            _write_population(hist / f"step_{state.step:04d}.csv", state, names)


#####################################################################
# Observed data


def observed_data(cfg: RunConfig) -> tuple[PointCloud | Series, GenerativeModel]:
    """Observed data of a run and the model, constrained to it if requested.

    Without a data file the data are simulated at ``theta_true`` on the
    ``DATA`` stream of the run seed.
    """
    if cfg.data is not None:
        with config_errors("data"):
            observed = read_data(cfg.data)
        return observed, cfg.build_model(observed)
    model = cfg.build_model()
    stream = RandomStream(cfg.seed, (StreamPurpose.DATA,))
    with config_errors("theta_true"):
        theta = cfg.theta_true or ()
        observed = model.simulate(theta, cfg.n or 0, stream)
    if cfg.constrain_to_data:
        model = cfg.build_model(observed)
    return observed, model


#####################################################################
# Commands


def cmd_simulate(
    model: str,
    theta: Sequence[float],
    n: int,
    out: str | Path,
    *,
    seed: int,
    options: dict[str, Any] | None = None,
) -> Path:
    """Simulate one data set and write it as CSV."""
    with config_errors("simulate"):
        gm = get_model(model, **(options or {}))
        if len(theta) != gm.param_space.dim:
            msg = (
                f"model {model!r} takes {gm.param_space.dim} parameters "
                f"{gm.param_space.names}, got {len(theta)}"
            )
            raise ConfigError(msg)
        data = gm.simulate(theta, n, RandomStream(seed, (StreamPurpose.DATA,)))
    path = write_data(data, out)
    logger.info("wrote %d observations to %s", len(data), path)
    return path


def cmd_distance(
    x: str | Path,
    y: str | Path,
    spec: DistanceSpec,
    *,
    theta: Sequence[float] | None = None,
    seed: int,
    record: str | Path | None = None,
) -> float:
    """Distance between two data files; optionally write a JSON record."""
    with config_errors("distance"):
        dx, dy = read_data(x), read_data(y)
        distance = DistanceFunction(spec, dx)
    gen = RandomStream(seed, (StreamPurpose.SUBSAMPLE,)).generator()
    with config_errors("distance"):
        value = distance(dy, None if theta is None else np.asarray(theta), gen)
    if record is not None:
        write_json(
            {
                "method": spec.method,
                "embedding": spec.embedding.kind,
                "metric": spec.metric.kind,
                "p": spec.metric.p,
                "x": str(x),
                "y": str(y),
                "value": value,
            },
            record,
        )
    return value


def cmd_smc(
    config: str | Path,
    *,
    workers: int | None = None,
    output: str | Path | None = None,
) -> dict[str, Any]:
    """Run the sampler described by a configuration file.

    Writes ``particles.csv``, ``trace.csv`` and ``meta.json`` (plus
    ``history/`` with ``keep_history``) to the output directory. A two-stage
    run writes the first stage to ``stage1/``.
    """
    with config_errors("config"):
        cfg = RunConfig.from_json(config)
        smc_config = cfg.smc_config(resolve_workers(workers))
    observed, model = observed_data(cfg)
    with config_errors("distance"):
        spec = cfg.distance_spec(model)
    out = Path(output or cfg.output)
    out.mkdir(parents=True, exist_ok=True)
    write_data(observed, out / "observed.csv")

    start = time.perf_counter()
    result = run(model, observed, spec, smc_config)
    meta: dict[str, Any] = {}
    if cfg.two_stage is not None:
        _write_result(out / "stage1", result, model)
        meta["stage1_simulations"] = int(result.trace.simulations[-1])
        meta["stage1_epsilon"] = json_float(result.state.epsilon)
        result = run_two_stage(
            result,
            model,
            observed,
            spec,
            cfg.two_stage["summary"],
            cfg.stage_two_config(smc_config.workers),
        )
    _write_result(out, result, model)

    meta |= {
        "config_sha256": cfg.digest(),
        "model": cfg.model,
        "method": spec.method,
        "seed": cfg.seed,
        "n_particles": len(result.state),
        "steps": len(result.trace),
        "simulations": int(result.trace.simulations[-1]),
        "epsilon": json_float(result.state.epsilon),
        "unique": result.state.unique_count,
        "wall_time": time.perf_counter() - start,
    }
    write_json(meta, out / "meta.json")
    return meta


def cmd_mh(
    config: str | Path,
    *,
    workers: int | None = None,
    output: str | Path | None = None,
) -> dict[str, Any]:
    """Reference posterior by random-walk Metropolis-Hastings.

    Writes ``chain.csv`` (iteration, parameters, log-posterior) and
    ``mh_meta.json``.
    """
    with config_errors("config"):
        cfg = RunConfig.from_json(config)
        mh_config = cfg.mh_config(resolve_workers(workers))
    observed, model = observed_data(cfg)
    if not model.has_loglik:
        msg = f"model {cfg.model!r} has no tractable likelihood"
        raise ConfigError(msg)
    out = Path(output or cfg.output)
    out.mkdir(parents=True, exist_ok=True)

    start = time.perf_counter()
    result = metropolis_hastings(model, observed, mh_config)
    chain_names, chain = result.as_table()
    write_table(out / "chain.csv", chain, chain_names)
    meta = {
        "config_sha256": cfg.digest(),
        "model": cfg.model,
        "seed": cfg.seed,
        "draws": int(result.samples.shape[0]),
        "acceptance": list(result.acceptance),
        "wall_time": time.perf_counter() - start,
    }
    write_json(meta, out / "mh_meta.json")
    return meta


def _aligned(particles: PointCloud, reference: PointCloud) -> PointCloud:
    """Reference columns in the particle column order."""
    if set(particles.names) <= set(reference.names):
        idx = [reference.names.index(name) for name in particles.names]
        return PointCloud(reference.points[:, idx], names=particles.names)
    if particles.d != reference.d:
        msg = (
            f"particle columns {particles.names} do not match reference "
            f"columns {reference.names}"
        )
        raise ValueError(msg)
    return reference


def _trend(simulations: FloatArray, values: FloatArray) -> float:
    if values.size < 2 or np.ptp(values) == 0:  # noqa: PLR2004
        return 0.0
    rho, _ = spearmanr(simulations, values)
    return float(rho) if math.isfinite(rho) else 0.0


def cmd_evaluate(
    reference: str | Path,
    particles: str | Path | None = None,
    *,
    trace_dir: str | Path | None = None,
    seed: int,
    out: str | Path | None = None,
) -> dict[str, Any]:
    """W1 between particle clouds and reference draws.

    With ``particles`` the report holds one value. With ``trace_dir`` (the
    output of a run with ``keep_history``) every stored population is
    compared, and the report gives the rank correlation between cumulative
    simulations and W1; a decreasing trend is negative.
    """
    if (particles is None) == (trace_dir is None):
        msg = "give either a particle file or --trace-dir"
        raise ConfigError(msg)
    rng = RandomStream(seed)
    with config_errors("reference"):
        ref = read_parameter_cloud(reference)

    if particles is not None:
        with config_errors("particles"):
            cloud = read_parameter_cloud(particles)
            ref = _aligned(cloud, ref)
        value = cloud_w1(cloud, ref, rng)
        report: dict[str, Any] = {"particles": str(particles), "w1": value}
        logger.info("W1 = %.6g", value)
    else:
        tdir = Path(trace_dir)  # type: ignore[arg-type]
        with config_errors("trace"):
            snapshots = sorted((tdir / "history").glob("step_*.csv"))
            if not snapshots:
                msg = f"{tdir} holds no history/step_*.csv snapshots"
                raise ConfigError(msg)
            names, trace = read_table(tdir / "trace.csv")
            steps = trace[:, names.index("step")].astype(int)
            sims = dict(zip(steps.tolist(), trace[:, names.index("simulations")]))
        rows = []
        for path in snapshots:
            step = int(path.stem.split("_")[1])
            cloud = read_parameter_cloud(path)
            value = cloud_w1(cloud, _aligned(cloud, ref), rng.child(step))
            rows.append((step, sims.get(step, math.nan), value))
            logger.info("step %d: W1 = %.6g", step, value)
        table = np.array(rows, dtype=float)
        trend = _trend(table[:, 1], table[:, 2])
        report = {
            "trace_dir": str(tdir),
            "steps": table[:, 0].astype(int).tolist(),
            "simulations": [json_float(s) for s in table[:, 1].tolist()],
            "w1": table[:, 2].tolist(),
            "rank_correlation": trend,
            "decreasing": bool(trend < 0),
        }
        if out is not None:
            write_table(out, table, ("step", "simulations", "w1"))
    report["reference"] = str(reference)
    return report


def cmd_bench(
    method: str,
    sizes: Sequence[int],
    d: int,
    *,
    repetitions: int,
    seed: int,
    out: str | Path,
) -> FloatArray:
    """Median wall time of one distance evaluation per cloud size.

    Writes ``n, seconds, ratio`` rows, where ``ratio`` is the time relative
    to the previous size; a doubling grid gives per-doubling ratios.
    """
    with config_errors("bench"):
        if method not in BENCH_METHODS:
            msg = f"method must be one of {BENCH_METHODS}, got {method!r}"
            raise ConfigError(msg)
        if not sizes:
            msg = "the size grid is empty"
            raise ConfigError(msg)
        if d < 1 or repetitions < 1 or min(sizes) < 1:
            msg = "sizes, d and repetitions must be positive"
            raise ConfigError(msg)
        spec = DistanceSpec(method)  # type: ignore[arg-type]

    rows = []
    previous = math.nan
    for n in sorted(sizes):
        gen = RandomStream(seed, (StreamPurpose.DATA, n)).generator()
        x = PointCloud(gen.standard_normal((n, d)))
        y = PointCloud(gen.standard_normal((n, d)))
        distance = DistanceFunction(spec, x)
        times = []
        for _ in range(repetitions):
            tic = time.perf_counter()
            distance(y)
            times.append(time.perf_counter() - tic)
        seconds = float(np.median(times))
        rows.append((n, seconds, seconds / previous))
        previous = seconds
        logger.info("%s n=%d: %.4g s", method, n, seconds)
    table = np.array(rows, dtype=float)
    write_table(out, table, ("n", "seconds", "ratio"))
    return table
