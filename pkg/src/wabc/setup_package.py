"""Package Setup."""

__all__: tuple[str, ...] = ()

from typing import Final

DEFAULT_SEED: Final = 20190901

# Output formatting. 17 significant digits round-trips a float64.
FLOAT_FMT: Final = "%.17g"
CSV_DELIMITER: Final = ","

# Parallelism
WORKERS_ENV: Final = "WABC_WORKERS"

# Transport defaults
HILBERT_BITS: Final = 16
HILBERT_MAX_INDEX_BITS: Final = 128
HILBERT_BOX_MARGIN: Final = 1e-9
SWAP_MAX_SWEEPS: Final = 100
SWAP_IMPROVEMENT_TOL: Final = 1e-12
SINKHORN_TOL: Final = 1e-9
SINKHORN_MAX_ITER: Final = 10_000
SINKHORN_ZETA_FACTOR: Final = 0.05
BRUTE_FORCE_MAX_N: Final = 9

# SMC defaults
SMC_N_PARTICLES: Final = 2048
SMC_ALPHA: Final = 0.5
SMC_HITS: Final = 2
SMC_MIX_COMPONENTS: Final = 5
SMC_TRIAL_CAP: Final = 10_000
EM_MAX_ITER: Final = 50
EM_REL_TOL: Final = 1e-8
COV_JITTER: Final = 1e-8
SMC_BUDGET: Final = 100_000
MIXTURE_FALLBACK_SCALE: Final = 0.01
INIT_RETRIES: Final = 1

# Metropolis-Hastings defaults
MH_PILOT_ITERATIONS: Final = 2000
MH_INIT_ATTEMPTS: Final = 100
MH_PILOT_SCALE: Final = 0.01


class StreamPurpose:
    """First entry of a random stream id, naming what the draws are for."""

    DATA: Final = 0
    INIT: Final = 1
    RESAMPLE: Final = 2
    MIXTURE: Final = 3
    KERNEL: Final = 4
    SUBSAMPLE: Final = 5
    MH: Final = 6
    PILOT: Final = 7
    REFERENCE: Final = 8
