"""Dictionary learning for blind one-bit compressed sensing.

Alternates binary iterative hard thresholding (sparse recovery with the
dictionary fixed) with a sigmoid-smoothed steepest-descent update of the
dictionary rows (sparse codes fixed).
"""

from onebit_dl.errors import NumericDivergenceError, NumericError, ParameterError, RankError

__version__ = "0.1.0"

__all__ = [
    "NumericDivergenceError",
    "NumericError",
    "ParameterError",
    "RankError",
]
