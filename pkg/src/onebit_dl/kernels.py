"""Smooth surrogates for the sign and mismatch-indicator functions.

The S-shaped surrogate of ``sign`` is ``S(x) = (1 - e^-x) / (1 + e^-x)``
(equal to ``tanh(x / 2)``). All kernels are evaluated through
``e = exp(-|x|)`` so they stay finite and accurate for any finite input.
"""

import enum

import numpy as np

from onebit_dl.model import sign


class IndicatorVariant(enum.Enum):
    L1 = "l1"
    L2 = "l2"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        return cls(str(value).lower())


def _split(x):
    x = np.asarray(x, dtype=float)
    return np.sign(x), np.exp(-np.abs(x)), -np.expm1(-np.abs(x))


def s_shape(x):
    sgn, e, one_minus_e = _split(x)
    return sgn * one_minus_e / (1.0 + e)


def s_shape_deriv(x):
    """``S'(x) = 2 e^-x / (1 + e^-x)^2``, an even, strictly positive function."""
    _, e, _ = _split(x)
    return 2.0 * e / (1.0 + e) ** 2


def s_shape_second(x):
    """``S''(x) = -2 e^-x (1 - e^-x) / (1 + e^-x)^3``; odd, negative for x > 0."""
    sgn, e, one_minus_e = _split(x)
    return -sgn * 2.0 * e * one_minus_e / (1.0 + e) ** 3


def indicator(variant, x):
    x = np.asarray(x, dtype=float)
    if IndicatorVariant.parse(variant) is IndicatorVariant.L1:
        return np.abs(x)
    return x * x


def indicator_deriv(variant, x):
    """Derivative of the indicator; the L1 branch uses the +1 subgradient at 0."""
    x = np.asarray(x, dtype=float)
    if IndicatorVariant.parse(variant) is IndicatorVariant.L1:
        return sign(x)
    return 2.0 * x


def curvature_term(x, y):
    """Per-sample curvature ``S''(x) (S(x) - y) + S'(x)^2`` of ``(y - S(x))^2 / 2``.

    This is the summand of the diagonal second derivative of the squared
    cost. It is not positive everywhere: with ``y = +1`` it turns negative
    for ``x < -ln 2``, and with ``y = -1`` for ``x > ln 2``.
    """
    y = np.asarray(y, dtype=float)
    return s_shape_second(x) * (s_shape(x) - y) + s_shape_deriv(x) ** 2
