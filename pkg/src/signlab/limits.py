"""Size caps for expensive operations, overridable via environment variables.

Every cap can be raised or lowered by exporting ``SIGNLAB_<NAME>`` with an
integer value, e.g. ``SIGNLAB_DP_SUM_CAP=2000000``.
"""
import os

_DEFAULTS = {
    "DP_SUM_CAP": 1_000_000,       # max sum of |coefficients| for spectrum DP
    "FOURIER_Q_CAP": 10_000_000,   # max modulus for cosine-sum evaluation
    "PROFILE_Q_CAP": 1_000_000,    # max modulus for a materialized profile
    "MITM_N_CAP": 44,              # max dimension for meet-in-the-middle
    "PLAIN_N_CAP": 4,              # max dimension for plain census
    "SYMMETRIC_N_CAP": 6,          # max dimension for reduced census (7 via opt-in)
    "MC_N_CAP": 40,                # max dimension for Monte Carlo estimation
    "PAIR_N_CAP": 24,              # max dimension for exact pair-event probability
    "ENUM_N_CAP": 4,               # max dimension for full hyperplane enumeration
}


def cap(name: str) -> int:
    """Return the active value of a named cap (env override wins)."""
    raw = os.environ.get(f"SIGNLAB_{name}")
    if raw is not None:
        return int(raw)
    return _DEFAULTS[name]
