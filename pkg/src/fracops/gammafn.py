"""Real-argument Gamma function and its reciprocal.

Every operator coefficient in this package is a ratio of Gamma values, so
this module is kept self-contained and deliberately strict about poles:
``gamma`` raises at non-positive integers while ``reciprocal_gamma`` returns
an exact 0.0 there, which is what makes vanishing operator coefficients
(e.g. derivatives of power functions with integer exponents) come out clean.
"""

from __future__ import annotations

import math

from .errors import DomainError, PoleError

__all__ = ["POLE_TOL", "gamma", "reciprocal_gamma", "is_pole"]

# Classification tolerance for "z is a non-positive integer".  Operator
# exponents like alpha - j + 1 arrive through floating-point arithmetic and
# must reliably hit the vanishing-coefficient convention.
POLE_TOL = 1e-12

# gamma(z) overflows double precision above this argument.
_OVERFLOW_Z = 171.62437695630272

# Lanczos coefficients, g = 607/128, 15 terms (Godfrey's table).  Relative
# error of the evaluated sum is a few 1e-16 over the positive real axis.
_LANCZOS_G = 4.7421875
_LANCZOS_C = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)
_SQRT_2PI = 2.5066282746310002
_EXP_MINUS_G = math.exp(-_LANCZOS_G)


def is_pole(z: float) -> bool:
    """True when z sits within POLE_TOL of a non-positive integer."""
    if z > 0.5:
        return False
    k = round(z)
    return k <= 0 and abs(z - k) <= POLE_TOL


def _sinpi(x: float) -> float:
    # sin(pi*x) with the argument reduced exactly: x - round(x) is an exact
    # float operation, so accuracy near integers is not lost to pi*x rounding.
    n = round(x)
    r = x - n
    s = math.sin(math.pi * r)
    return -s if n % 2 else s


def _lanczos_sum(x: float) -> float:
    # Partial-fraction form of the Lanczos series, evaluated at x = z - 1.
    s = _LANCZOS_C[0]
    for k in range(1, len(_LANCZOS_C)):
        s += _LANCZOS_C[k] / (x + k)
    return s


def _gamma_positive(z: float) -> float:
    # z >= 0.5.  Split the prefix power in half so intermediates stay finite
    # up to the true overflow threshold (~171.62).
    x = z - 1.0
    t = x + (_LANCZOS_G + 0.5)
    half = math.pow(t / math.e, 0.5 * (z - 0.5))
    s = _lanczos_sum(x)
    return (_SQRT_2PI * _EXP_MINUS_G * s * half) * half


def gamma(z: float) -> float:
    """Gamma(z) for real z, accurate to ~1e-14 relative on [-170, 170].

    Raises PoleError at non-positive integers (within POLE_TOL) and
    OverflowError where the result exceeds double range.
    """
    z = float(z)
    if not math.isfinite(z):
        raise DomainError(f"gamma argument must be finite, got {z}")
    if is_pole(z):
        raise PoleError(f"gamma pole at z = {z}")
    if z > _OVERFLOW_Z:
        raise OverflowError(f"gamma({z}) exceeds double-precision range")
    if z >= 0.5:
        value = _gamma_positive(z)
    else:
        # Reflection: gamma(z) = pi / (sin(pi z) * gamma(1 - z)).
        value = math.pi / (_sinpi(z) * _gamma_positive(1.0 - z))
    if math.isinf(value):
        raise OverflowError(f"gamma({z}) exceeds double-precision range")
    return value


def reciprocal_gamma(z: float) -> float:
    """1/Gamma(z); exactly 0.0 at the poles of Gamma (entire, never raises)."""
    z = float(z)
    if not math.isfinite(z):
        raise DomainError(f"reciprocal_gamma argument must be finite, got {z}")
    if is_pole(z):
        return 0.0
    if z > _OVERFLOW_Z:
        return 0.0
    return 1.0 / gamma(z)
