"""Exact fractional calculus on finite sums of shifted power functions.

All operators act in closed form on series ``sum_k c_k (t - a)^{mu_k}``
through Gamma-function ratios:

    I^alpha: c (t-a)^mu  ->  c * G(mu+1)/G(mu+alpha+1) * (t-a)^{mu+alpha}
    D^alpha: c (t-a)^mu  ->  c * G(mu+1)/G(mu-alpha+1) * (t-a)^{mu-alpha}

with 1/G evaluated as an exact zero at its poles, so terms whose image
exponent lands on a negative integer offset vanish cleanly.  This is the
backend on which operator identities can be checked to near machine
precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import DomainError, SingularityError
from .gammafn import POLE_TOL, gamma, reciprocal_gamma

__all__ = [
    "MERGE_TOL",
    "DROP_TOL",
    "Monomial",
    "MonomialSeries",
    "FracOrder",
    "HilferSpec",
    "frac_integral",
    "classical_derivative",
    "frac_derivative_rl",
    "frac_derivative_rl_composed",
    "frac_derivative_hilfer",
    "frac_derivative_caputo",
    "frac_diffint",
    "boundary_term",
    "evaluate",
    "evaluate_many",
    "coefficient_residual",
]

# Exponents closer than MERGE_TOL collapse into one term; after merging,
# coefficients below DROP_TOL relative to the largest one are dropped.
# Compositions like I^a o D o I^b produce floating-point exponent drift that
# must not create spurious near-duplicate terms.
MERGE_TOL = 1e-12
DROP_TOL = 1e-14


@dataclass(frozen=True)
class Monomial:
    """One term c * (t - a)^mu.  mu > -1 keeps fractional integrals convergent."""

    coeff: float
    exponent: float

    def __post_init__(self):
        if not (math.isfinite(self.coeff) and math.isfinite(self.exponent)):
            raise DomainError("monomial coefficient and exponent must be finite")
        if self.exponent <= -1.0:
            raise DomainError(
                f"monomial exponent must exceed -1, got {self.exponent}"
            )


@dataclass(frozen=True)
class MonomialSeries:
    """Canonical finite sum of shifted power functions anchored at ``base``.

    Terms are sorted by strictly increasing exponent, exponents are distinct
    up to MERGE_TOL, and no stored coefficient is zero.  Build instances via
    :meth:`make`, which canonicalizes arbitrary term lists.
    """

    base: float
    terms: tuple[Monomial, ...] = ()

    def __post_init__(self):
        if not math.isfinite(self.base):
            raise DomainError("series base must be finite")

    @classmethod
    def make(
        cls,
        base: float,
        terms: Iterable[Union[Monomial, tuple[float, float]]] = (),
    ) -> "MonomialSeries":
        """Canonicalize (sort, merge nearby exponents, drop negligible terms)."""
        items: list[tuple[float, float]] = []
        for t in terms:
            if isinstance(t, Monomial):
                items.append((t.coeff, t.exponent))
            else:
                c, e = t
                items.append((float(c), float(e)))
        items.sort(key=lambda ce: ce[1])

        merged: list[tuple[float, float]] = []
        for c, e in items:
            if merged and e - merged[-1][1] <= MERGE_TOL:
                pc, pe = merged[-1]
                # keep the exponent of the dominant contributor
                merged[-1] = (pc + c, pe if abs(pc) >= abs(c) else e)
            else:
                merged.append((c, e))

        cmax = max((abs(c) for c, _ in merged), default=0.0)
        floor = DROP_TOL * (cmax if cmax > 0.0 else 1.0)
        kept = tuple(Monomial(c, e) for c, e in merged if abs(c) > floor)
        return cls(float(base), kept)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def coefficient_scale(self) -> float:
        """Largest coefficient magnitude (0.0 for the zero series)."""
        return max((abs(m.coeff) for m in self.terms), default=0.0)

    def scaled(self, factor: float) -> "MonomialSeries":
        return MonomialSeries.make(
            self.base, [(factor * m.coeff, m.exponent) for m in self.terms]
        )

    def _check_same_base(self, other: "MonomialSeries"):
        if self.base != other.base:
            raise DomainError(
                f"series bases differ: {self.base} vs {other.base}"
            )

    def __add__(self, other: "MonomialSeries") -> "MonomialSeries":
        self._check_same_base(other)
        return MonomialSeries.make(self.base, self.terms + other.terms)

    def __neg__(self) -> "MonomialSeries":
        return self.scaled(-1.0)

    def __sub__(self, other: "MonomialSeries") -> "MonomialSeries":
        self._check_same_base(other)
        return MonomialSeries.make(
            self.base,
            list(self.terms) + [(-m.coeff, m.exponent) for m in other.terms],
        )


@dataclass(frozen=True)
class FracOrder:
    """Positive real order alpha with the integer n satisfying n-1 < alpha <= n.

    alpha = 0 is admitted with n = 0 and means the identity operator for both
    the fractional integral and derivative; the Hilfer composition produces
    genuine order-0 stages at its type endpoints, so the zero order needs a
    well-defined meaning.
    """

    alpha: float
    n: int = field(init=False)

    def __post_init__(self):
        a = float(self.alpha)
        if not math.isfinite(a) or a < 0.0:
            raise DomainError(f"fractional order must be >= 0, got {self.alpha}")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "n", math.ceil(a))


@dataclass(frozen=True)
class HilferSpec:
    """Order/type pair (alpha, beta) with the derived composite orders.

    outer = beta*(1-alpha) and inner = (1-beta)*(1-alpha) are the orders of
    the two integral stages in I^outer o D o I^inner; gamma_order is computed
    as alpha + outer so the identity gamma_order = alpha + outer holds exactly
    in floating point.
    """

    alpha: float
    beta: float

    def __post_init__(self):
        a, b = float(self.alpha), float(self.beta)
        if not (math.isfinite(a) and 0.0 < a <= 1.0):
            raise DomainError(f"Hilfer order must lie in (0, 1], got {self.alpha}")
        if not (math.isfinite(b) and 0.0 <= b <= 1.0):
            raise DomainError(f"Hilfer type must lie in [0, 1], got {self.beta}")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)

    @property
    def outer(self) -> float:
        return self.beta * (1.0 - self.alpha)

    @property
    def inner(self) -> float:
        return (1.0 - self.beta) * (1.0 - self.alpha)

    @property
    def gamma_order(self) -> float:
        return self.alpha + self.outer


OrderLike = Union[FracOrder, float, int]


def _as_order(order: OrderLike) -> FracOrder:
    if isinstance(order, FracOrder):
        return order
    return FracOrder(float(order))


def _integral_ratio(mu: float, alpha: float) -> float:
    # G(mu+1)/G(mu+alpha+1); mu > -1 and alpha >= 0 keep both arguments off
    # the poles.
    return gamma(mu + 1.0) * reciprocal_gamma(mu + alpha + 1.0)


def _derivative_ratio(mu: float, alpha: float) -> float:
    # G(mu+1)/G(mu-alpha+1), an exact 0.0 when mu - alpha + 1 hits a pole.
    return gamma(mu + 1.0) * reciprocal_gamma(mu - alpha + 1.0)


def frac_integral(y: MonomialSeries, order: OrderLike) -> MonomialSeries:
    """Fractional integral of order alpha >= 0 from the series base point.

    Closed form per term: c (t-a)^mu -> c * G(mu+1)/G(mu+alpha+1) *
    (t-a)^{mu+alpha}.  Order 0 returns ``y`` unchanged.
    """
    alpha = _as_order(order).alpha
    if alpha == 0.0:
        return y
    out = []
    for m in y.terms:
        out.append((m.coeff * _integral_ratio(m.exponent, alpha), m.exponent + alpha))
    return MonomialSeries.make(y.base, out)


def classical_derivative(y: MonomialSeries, n: int) -> MonomialSeries:
    """n-th ordinary derivative, term-wise power rule.

    Terms whose exponent is an integer in [0, n-1] (within POLE_TOL) vanish
    exactly.
    """
    if not isinstance(n, int) or n < 0:
        raise DomainError(f"derivative order must be a non-negative integer, got {n}")
    if n == 0:
        return y
    out = []
    for m in y.terms:
        mu = m.exponent
        k = round(mu)
        if 0 <= k <= n - 1 and abs(mu - k) <= POLE_TOL:
            continue
        factor = 1.0
        for i in range(n):
            factor *= mu - i
        out.append((m.coeff * factor, mu - n))
    return MonomialSeries.make(y.base, out)


def frac_derivative_rl(y: MonomialSeries, order: OrderLike) -> MonomialSeries:
    """Riemann-Liouville fractional derivative of order alpha >= 0.

    Closed form per term: c (t-a)^mu -> c * G(mu+1)/G(mu-alpha+1) *
    (t-a)^{mu-alpha}, with the coefficient vanishing exactly when
    mu - alpha is a negative integer (reciprocal-Gamma-at-pole convention).
    Agrees with :func:`frac_derivative_rl_composed` to ~1e-15 relative.
    """
    alpha = _as_order(order).alpha
    if alpha == 0.0:
        return y
    out = []
    for m in y.terms:
        w = m.coeff * _derivative_ratio(m.exponent, alpha)
        if w == 0.0:
            continue
        out.append((w, m.exponent - alpha))
    return MonomialSeries.make(y.base, out)


def frac_derivative_rl_composed(y: MonomialSeries, order: OrderLike) -> MonomialSeries:
    """Riemann-Liouville derivative via its definition D^n I^{n-alpha}."""
    order = _as_order(order)
    if order.alpha == 0.0:
        return y
    return classical_derivative(frac_integral(y, order.n - order.alpha), order.n)


def frac_derivative_hilfer(y: MonomialSeries, spec: HilferSpec) -> MonomialSeries:
    """Hilfer derivative: the literal composition I^outer o D o I^inner.

    The three stages are evaluated in exactly that order with no algebraic
    shortcut, so results genuinely exercise the interpolated definition
    rather than assuming its collapse to the Riemann-Liouville form.
    Requires a continuous input (all exponents >= 0).
    """
    if y.terms and y.terms[0].exponent < -MERGE_TOL:
        raise DomainError(
            "Hilfer derivative requires a continuous input (exponents >= 0)"
        )
    stage = frac_integral(y, spec.inner)
    stage = classical_derivative(stage, 1)
    return frac_integral(stage, spec.outer)


def frac_derivative_caputo(y: MonomialSeries, order: OrderLike) -> MonomialSeries:
    """Caputo derivative, the type-1 endpoint of the Hilfer family."""
    alpha = _as_order(order).alpha
    if not 0.0 < alpha <= 1.0:
        raise DomainError(f"Caputo order must lie in (0, 1], got {alpha}")
    return frac_derivative_hilfer(y, HilferSpec(alpha, 1.0))


def frac_diffint(y: MonomialSeries, sigma: float) -> MonomialSeries:
    """Signed-order operator: D^sigma for sigma >= 0, I^{-sigma} for sigma < 0."""
    sigma = float(sigma)
    if sigma >= 0.0:
        return frac_derivative_rl(y, sigma)
    return frac_integral(y, -sigma)


def boundary_term(
    y: MonomialSeries, alpha_L: float, beta_L: float, j: int
) -> MonomialSeries:
    """j-th initial-value correction term of the I^alpha o D^beta expansion.

    Returns ``[D^{beta-j} y](a) / G(alpha-j+1) * (t-a)^{alpha-j}`` as a
    one-term series, where D of negative order means the corresponding
    integral.  The result is the zero series whenever the initial value
    vanishes (guaranteed for continuous y and positive inner order) or when
    alpha - j + 1 is a Gamma pole.
    """
    if not isinstance(j, int) or j < 1:
        raise DomainError(f"boundary index j must be a positive integer, got {j}")
    alpha_L, beta_L = float(alpha_L), float(beta_L)
    if not (math.isfinite(alpha_L) and math.isfinite(beta_L)):
        raise DomainError("boundary orders must be finite")
    inner = frac_diffint(y, beta_L - j)
    value = evaluate(inner, y.base)
    coeff = value * reciprocal_gamma(alpha_L - j + 1.0)
    if coeff == 0.0:
        return MonomialSeries.make(y.base, ())
    return MonomialSeries.make(y.base, [(coeff, alpha_L - j)])


def evaluate(y: MonomialSeries, t: float) -> float:
    """Point evaluation sum_k c_k (t - a)^{mu_k}.

    At t = a, exponents within MERGE_TOL of zero contribute their
    coefficient, positive exponents contribute nothing, and negative
    exponents raise SingularityError.
    """
    x = float(t) - y.base
    if x < 0.0:
        raise DomainError(f"evaluation point {t} lies left of the base {y.base}")
    if x == 0.0:
        total = 0.0
        for m in y.terms:
            if m.exponent < -MERGE_TOL:
                raise SingularityError(
                    f"series is singular at its base point (exponent {m.exponent})"
                )
            if abs(m.exponent) <= MERGE_TOL:
                total += m.coeff
        return total
    return math.fsum(m.coeff * math.pow(x, m.exponent) for m in y.terms)


def evaluate_many(y: MonomialSeries, ts) -> np.ndarray:
    """Vectorized :func:`evaluate` over an array of points."""
    ts = np.asarray(ts, dtype=np.float64)
    x = ts - y.base
    if np.any(x < 0.0):
        raise DomainError("evaluation points must not lie left of the base")
    has_base = bool(np.any(x == 0.0))
    out = np.zeros_like(x)
    for m in y.terms:
        if abs(m.exponent) <= MERGE_TOL:
            out += m.coeff
        elif m.exponent < 0.0 and has_base:
            raise SingularityError(
                f"series is singular at its base point (exponent {m.exponent})"
            )
        else:
            out += m.coeff * np.power(x, m.exponent)
    return out


def coefficient_residual(lhs: MonomialSeries, rhs: MonomialSeries) -> float:
    """Coefficient-wise gap between two series, relative to their scale.

    The series are subtracted (merging exponents within MERGE_TOL) and the
    largest surviving coefficient is normalized by the larger of the two
    input coefficient scales.  Zero means the series agree term by term.
    """
    lhs._check_same_base(rhs)
    diff = lhs - rhs
    denom = max(lhs.coefficient_scale, rhs.coefficient_scale)
    if denom == 0.0:
        return diff.coefficient_scale
    return diff.coefficient_scale / denom
