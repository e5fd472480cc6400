"""Numeric backend: fractional operators on uniformly sampled functions.

Discretizations mirror the operator definitions structurally: the fractional
derivative is an ordinary difference stencil applied to a fractional
integral, and the Hilfer derivative is the literal three-stage composition.
Outputs are validated against the exact monomial backend (see
:func:`convergence_study` and the law-verification harness).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import DomainError
from .gammafn import gamma
from .monomial import (
    FracOrder,
    HilferSpec,
    MonomialSeries,
    OrderLike,
    _as_order,
    evaluate_many,
    frac_derivative_hilfer,
    frac_derivative_rl,
    frac_integral,
)

__all__ = [
    "GridFunction",
    "SchemeConfig",
    "DEFAULT_SCHEME",
    "rl_integral_grid",
    "classical_derivative_grid",
    "rl_derivative_grid",
    "hilfer_derivative_grid",
    "convergence_study",
]

SCHEMES = ("product-trapezoid", "product-rectangle")

# Relative errors at or below this level are floating-point floor, not
# discretization error; observed convergence orders are meaningless there.
ORDER_FLOOR = 1e-12


@dataclass
class GridFunction:
    """Samples of a function at the N+1 uniform nodes t_j = a + j*h.

    ``reliable`` marks nodes whose values are trustworthy; derivative
    operators flag the base node (and its neighborhood, for outputs that are
    analytically singular there) instead of emitting NaNs.
    """

    a: float
    b: float
    values: np.ndarray
    reliable: np.ndarray = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.ndim != 1 or self.values.size < 5:
            raise DomainError("grid needs at least N = 4 intervals (5 nodes)")
        if not (math.isfinite(self.a) and math.isfinite(self.b) and self.b > self.a):
            raise DomainError(f"invalid interval [{self.a}, {self.b}]")
        if not np.all(np.isfinite(self.values)):
            raise DomainError("grid values must be finite")
        if self.reliable is None:
            self.reliable = np.ones(self.values.size, dtype=bool)
        else:
            self.reliable = np.asarray(self.reliable, dtype=bool)
            if self.reliable.shape != self.values.shape:
                raise DomainError("reliability mask must match the values")

    @property
    def n_intervals(self) -> int:
        return self.values.size - 1

    @property
    def h(self) -> float:
        return (self.b - self.a) / self.n_intervals

    @property
    def ts(self) -> np.ndarray:
        return np.linspace(self.a, self.b, self.values.size)

    def copy(self) -> "GridFunction":
        return GridFunction(self.a, self.b, self.values.copy(), self.reliable.copy())

    @classmethod
    def sample(cls, y: MonomialSeries, a: float, b: float, n: int) -> "GridFunction":
        """Sample an exact series at n+1 uniform nodes on [a, b]."""
        ts = np.linspace(float(a), float(b), int(n) + 1)
        return cls(float(a), float(b), evaluate_many(y, ts))


@dataclass(frozen=True)
class SchemeConfig:
    """Quadrature scheme and difference stencil used by the grid operators."""

    scheme: str = "product-trapezoid"
    stencil: str = "three-point"

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise DomainError(f"unknown scheme {self.scheme!r}; choose from {SCHEMES}")
        if self.stencil != "three-point":
            raise DomainError(f"unknown stencil {self.stencil!r}")


DEFAULT_SCHEME = SchemeConfig()


def rl_integral_grid(
    y: GridFunction, alpha: OrderLike, cfg: SchemeConfig = DEFAULT_SCHEME
) -> GridFunction:
    """Fractional integral of order alpha >= 0 on the grid.

    The product-trapezoid default integrates the piecewise-linear
    interpolant of y exactly against the kernel; node 0 is exactly 0, the
    discrete form of the initial-value vanishing law.  Order 0 is the
    identity.  Reliability flags pass through unchanged.
    """
    alpha = _as_order(alpha).alpha
    if alpha == 0.0:
        return y.copy()
    if cfg.scheme == "product-trapezoid":
        scale = y.h**alpha / gamma(alpha + 2.0)
        out = _kernels.apply_product_trapezoid(y.values, alpha, scale)
    else:
        scale = y.h**alpha / gamma(alpha + 1.0)
        out = _kernels.apply_product_rectangle(y.values, alpha, scale)
    return GridFunction(y.a, y.b, out, y.reliable.copy())


def classical_derivative_grid(y: GridFunction) -> GridFunction:
    """First derivative: central differences inside, one-sided 3-point stencils
    at the endpoints (all second order).

    Node 0 is flagged unreliable: it sits at the base point where fractional
    outputs are generally non-smooth, which is exactly where the quadratic
    assumption behind the stencil breaks down.
    """
    v, h = y.values, y.h
    out = np.empty_like(v)
    out[1:-1] = (v[2:] - v[:-2]) / (2.0 * h)
    out[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h)
    out[-1] = (3.0 * v[-1] - 4.0 * v[-2] + v[-3]) / (2.0 * h)

    r = y.reliable
    rel = np.empty_like(r)
    rel[1:-1] = r[:-2] & r[1:-1] & r[2:]
    rel[0] = False
    rel[-1] = r[-3] & r[-2] & r[-1]
    return GridFunction(y.a, y.b, out, rel)


def _flag_singular_base(out: GridFunction, y_in: GridFunction) -> GridFunction:
    # A nonzero sample at the base point makes the fractional derivative
    # behave like (t-a)^{-alpha} there; mark the first 2h as untrustworthy.
    scale = max(1.0, float(np.max(np.abs(y_in.values))))
    if abs(float(y_in.values[0])) > 1e-12 * scale:
        out.reliable[out.ts - out.a <= 2.0 * out.h * (1.0 + 1e-12)] = False
    return out


def rl_derivative_grid(
    y: GridFunction, order: OrderLike, cfg: SchemeConfig = DEFAULT_SCHEME
) -> GridFunction:
    """Riemann-Liouville derivative on the grid: D applied to I^{1-alpha}."""
    order = _as_order(order)
    if not 0.0 < order.alpha <= 1.0:
        raise DomainError(f"grid derivative order must lie in (0, 1], got {order.alpha}")
    out = classical_derivative_grid(rl_integral_grid(y, 1.0 - order.alpha, cfg))
    return _flag_singular_base(out, y)


def hilfer_derivative_grid(
    y: GridFunction, spec: HilferSpec, cfg: SchemeConfig = DEFAULT_SCHEME
) -> GridFunction:
    """Hilfer derivative on the grid: I^outer o D o I^inner, literally.

    With type 0 the outer stage is the identity, so the code path (and
    output, bitwise) coincides with :func:`rl_derivative_grid`.
    """
    stage = rl_integral_grid(y, spec.inner, cfg)
    stage = classical_derivative_grid(stage)
    stage = rl_integral_grid(stage, spec.outer, cfg)
    return _flag_singular_base(stage, y)


def _exact_reference(y: MonomialSeries, op: str, alpha: float, beta: float | None):
    if op == "integral":
        return frac_integral(y, alpha)
    if op == "rl":
        return frac_derivative_rl(y, alpha)
    if op == "hilfer":
        if beta is None:
            raise DomainError("hilfer needs a type parameter beta")
        return frac_derivative_hilfer(y, HilferSpec(alpha, beta))
    if op == "caputo":
        return frac_derivative_hilfer(y, HilferSpec(alpha, 1.0))
    raise DomainError(f"unknown operator {op!r}")


def _grid_apply(gf: GridFunction, op: str, alpha: float, beta: float | None, cfg):
    if op == "integral":
        return rl_integral_grid(gf, alpha, cfg)
    if op == "rl":
        return rl_derivative_grid(gf, alpha, cfg)
    if op == "hilfer":
        return hilfer_derivative_grid(gf, HilferSpec(alpha, beta), cfg)
    if op == "caputo":
        return hilfer_derivative_grid(gf, HilferSpec(alpha, 1.0), cfg)
    raise DomainError(f"unknown operator {op!r}")


def interior_relative_error(
    num: GridFunction, exact: MonomialSeries, margin: float = 0.1
) -> float:
    """Sup-norm error against an exact series on t >= a + margin*(b-a),
    normalized by the exact sup there (endpoint singularities excluded)."""
    ts = num.ts
    cut = num.a + margin * (num.b - num.a)
    mask = ts >= cut - 1e-12
    ref = evaluate_many(exact, ts[mask])
    scale = float(np.max(np.abs(ref)))
    diff = float(np.max(np.abs(num.values[mask] - ref)))
    return diff / scale if scale > 0.0 else diff


def convergence_study(
    y: MonomialSeries,
    op: str,
    ns: list[int],
    *,
    alpha: float,
    beta: float | None = None,
    b: float = 1.0,
    cfg: SchemeConfig = DEFAULT_SCHEME,
) -> list[tuple[int, float, float | None]]:
    """Grid refinement study against the exact backend.

    Returns one (N, max interior relative error, observed order) row per
    grid; the order entry is None on the coarsest grid and +inf once the
    error reaches the floating-point floor (``ORDER_FLOOR``), where ratios of
    successive errors stop measuring discretization order.
    """
    if len(ns) < 1 or any(n < 8 for n in ns):
        raise DomainError("grid sizes must each be >= 8")
    if any(n2 <= n1 for n1, n2 in zip(ns, ns[1:])):
        raise DomainError("grid sizes must be strictly increasing")
    exact = _exact_reference(y, op, float(alpha), beta)
    rows: list[tuple[int, float, float | None]] = []
    prev_err: float | None = None
    for n in ns:
        gf = GridFunction.sample(y, y.base, b, n)
        num = _grid_apply(gf, op, float(alpha), beta, cfg)
        err = interior_relative_error(num, exact)
        order: float | None = None
        if prev_err is not None:
            if err <= ORDER_FLOOR:
                order = math.inf
            else:
                order = math.log2(prev_err / err)
        rows.append((n, err, order))
        prev_err = err
    return rows
