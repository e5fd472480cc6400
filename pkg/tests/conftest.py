"""Shared test fixtures and independent numerical oracles.

The oracles here deliberately avoid the package's own evaluation paths:
``gamma_quadrature`` integrates the defining integral directly and
``rl_integral_quadrature`` integrates the weakly singular convolution kernel
directly, both with composite Gauss-Legendre rules after a substitution that
removes the endpoint singularity.
"""

import numpy as np
import pytest

from fracops import MonomialSeries, evaluate


def gauss_panels(lo, hi, panels, nodes=48):
    """Composite Gauss-Legendre nodes/weights on [lo, hi]."""
    x, w = np.polynomial.legendre.leggauss(nodes)
    edges = np.linspace(lo, hi, panels + 1)
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    xs = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    ws = (half[:, None] * w[None, :]).ravel()
    return xs, ws


def gamma_quadrature(z, upper=38.0, panels=96):
    """Gamma(z) from its defining integral, z >= 0.5.

    Substituting t = u^2 gives 2 * int_0^inf u^{2z-1} e^{-u^2} du, which is
    smooth at 0 for z >= 0.5; the tail beyond ``upper`` is below 1e-300.
    """
    u, w = gauss_panels(0.0, upper, panels)
    f = 2.0 * u ** (2.0 * z - 1.0) * np.exp(-u * u)
    return float(np.dot(w, f))


def rl_integral_quadrature(y: MonomialSeries, alpha: float, t: float, panels=64):
    """Direct quadrature of the fractional-integral convolution at one point.

    Substituting s = t - u^2 removes the (t-s)^{alpha-1} endpoint
    singularity:  int_a^t (t-s)^{alpha-1} y(s) ds
                = 2 * int_0^sqrt(t-a) u^{2*alpha-1} y(t-u^2) du.
    Valid for alpha >= 0.5 and y continuous on [a, t].
    """
    span = t - y.base
    u, w = gauss_panels(0.0, np.sqrt(span), panels)
    ys = np.array([evaluate(y, t - uu * uu) for uu in u])
    integrand = 2.0 * u ** (2.0 * alpha - 1.0) * ys
    return float(np.dot(w, integrand)) / gamma_quadrature(max(alpha, 0.5))


def series(*terms, base=0.0) -> MonomialSeries:
    """Shorthand: series((c1, m1), (c2, m2), ...)."""
    return MonomialSeries.make(base, terms)


def assert_series_close(got: MonomialSeries, want: MonomialSeries, tol=1e-12):
    from fracops import coefficient_residual

    res = coefficient_residual(got, want)
    assert res <= tol, (
        f"series differ (residual {res:.3e} > {tol:.0e}):\n"
        f"  got : {[(m.coeff, m.exponent) for m in got.terms]}\n"
        f"  want: {[(m.coeff, m.exponent) for m in want.terms]}"
    )


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
