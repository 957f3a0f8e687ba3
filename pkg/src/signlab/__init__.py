"""signlab: exact and Monte Carlo laboratory for singularity of sign matrices."""

__version__ = "0.1.0"

from .core import (  # noqa: F401
    MAX_DIMENSION,
    NormalVector,
    Seed,
    SignMatrix,
    SignVector,
    WordStream,
    det_exact,
    draw_screen_primes,
    is_singular_fast,
    normal_from_rows,
    random_sign_matrix,
    random_sign_vector,
)
from .errors import (  # noqa: F401
    AliasError,
    CrossCheckError,
    DependentRows,
    LimitExceeded,
    RetryExhausted,
    SignLabError,
)
