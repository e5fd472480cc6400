"""Property harness: randomized verification of the operator laws.

Six laws are checked over seeded random monomial series and orders, on the
exact backend (plus a grid cross-check for the coincidence law):

* ``com``            - the fractional integral of a continuous function
                       vanishes at the base point, with the quantitative
                       envelope max|y| * (t-a)^alpha / Gamma(alpha+1).
* ``com1``           - D^alpha I^beta y = D^{alpha-beta} y for alpha >= beta.
* ``com2``           - I^alpha D^beta y = D^{beta-alpha} y minus the
                       initial-value boundary term, including a designated
                       batch where that term is nonzero.
* ``proposition``    - the Hilfer derivative equals the Riemann-Liouville
                       derivative on continuous inputs (type < 1).
* ``proof-chain``    - the five intermediate expressions that reduce the
                       Hilfer composition to the Riemann-Liouville form agree
                       pairwise, step by step.
* ``caputo-endpoint``- at type = 1 the Hilfer derivative is the Caputo one:
                       it differs from Riemann-Liouville by exactly
                       y(a) * (t-a)^{-alpha} / Gamma(1-alpha).

Draw ranges keep every hypothesis satisfied by construction (exponents >= 1
make all the required derivatives exist and be integrable); reports are
bit-identical for identical configurations.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import DomainError
from .gammafn import gamma, reciprocal_gamma
from .grid import GridFunction, hilfer_derivative_grid, interior_relative_error
from .monomial import (
    MERGE_TOL,
    HilferSpec,
    MonomialSeries,
    boundary_term,
    coefficient_residual,
    evaluate,
    frac_derivative_hilfer,
    frac_derivative_rl,
    frac_diffint,
    frac_integral,
)
from .polyspec import format_spec

__all__ = [
    "LAW_IDS",
    "DrawConfig",
    "LawReport",
    "proof_chain_steps",
    "check_com",
    "check_com1",
    "check_com2",
    "check_proposition",
    "check_proof_chain",
    "check_caputo_endpoint",
    "run_laws",
]

LAW_IDS = ("com", "com1", "com2", "proposition", "proof-chain", "caputo-endpoint")

EXACT_TOL = 1e-10          # exact-backend residual tolerance for all laws
GRID_TOL = 2e-2            # interior grid-vs-exact tolerance (N = 256)
ORDER_IDENTITY_TOL = 1e-15 # 1 - (1-b)(1-a) == a + b - a*b, per float pair
_GRID_DRAWS = 10
_GRID_N = 256


@dataclass(frozen=True)
class DrawConfig:
    """Deterministic draw specification for the law harness."""

    seed: int = 42
    draws: int = 1000
    exponent_range: tuple[float, float] = (1.0, 4.0)
    coeff_range: tuple[float, float] = (-10.0, 10.0)
    terms_range: tuple[int, int] = (1, 4)
    alpha_range: tuple[float, float] = (0.01, 0.99)
    beta_range: tuple[float, float] = (0.0, 0.99)

    def __post_init__(self):
        if not isinstance(self.seed, int) or self.seed < 0:
            raise DomainError(f"seed must be a non-negative integer, got {self.seed}")
        if not isinstance(self.draws, int) or self.draws < 1:
            raise DomainError(f"draw count must be >= 1, got {self.draws}")
        for name, (lo, hi) in (
            ("exponent_range", self.exponent_range),
            ("coeff_range", self.coeff_range),
            ("alpha_range", self.alpha_range),
            ("beta_range", self.beta_range),
        ):
            if not lo < hi:
                raise DomainError(f"{name} must be increasing, got ({lo}, {hi})")
        if self.exponent_range[0] < 1.0:
            raise DomainError("exponents below 1 break the laws' integrability hypotheses")
        if not 1 <= self.terms_range[0] <= self.terms_range[1]:
            raise DomainError(f"bad terms_range {self.terms_range}")
        if not 0.0 < self.alpha_range[0] < self.alpha_range[1] < 1.0:
            raise DomainError("alpha range must sit strictly inside (0, 1)")
        if not 0.0 <= self.beta_range[0] < self.beta_range[1] < 1.0:
            raise DomainError("beta range must sit inside [0, 1)")


@dataclass(frozen=True)
class LawReport:
    """Outcome of one law over a batch of draws."""

    law: str
    seed: int
    draws: int
    max_residual: float
    tolerance: float
    verdict: str
    witnesses: tuple[dict, ...] = ()

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_json_dict(self) -> dict:
        return {
            "report_version": 1,
            "law": self.law,
            "seed": self.seed,
            "draws": self.draws,
            "max_residual": self.max_residual,
            "tolerance": self.tolerance,
            "verdict": self.verdict,
            "witnesses": list(self.witnesses),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, indent=2) + "\n"


class _Collector:
    """Accumulates the primary residual plus any auxiliary-check failures."""

    def __init__(self, tolerance: float):
        self.tolerance = tolerance
        self.max_residual = 0.0
        self.failures: list[dict] = []

    def primary(self, residual: float, alpha, beta, series: MonomialSeries):
        self.max_residual = max(self.max_residual, residual)
        if residual > self.tolerance:
            self._witness(residual, alpha, beta, series)

    def auxiliary(self, ok: bool, residual: float, alpha, beta, series: MonomialSeries):
        if not ok:
            self._witness(residual, alpha, beta, series)

    def _witness(self, residual: float, alpha, beta, series: MonomialSeries):
        if len(self.failures) < 10:
            self.failures.append(
                {
                    "alpha": alpha,
                    "beta": beta,
                    "series": format_spec(series),
                    "residual": residual,
                }
            )

    def report(self, law: str, cfg: DrawConfig) -> LawReport:
        ok = self.max_residual <= self.tolerance and not self.failures
        return LawReport(
            law=law,
            seed=cfg.seed,
            draws=cfg.draws,
            max_residual=self.max_residual,
            tolerance=self.tolerance,
            verdict="pass" if ok else "fail",
            witnesses=tuple(self.failures),
        )


def _draw_series(rng: np.random.Generator, cfg: DrawConfig, with_constant=False) -> MonomialSeries:
    k = int(rng.integers(cfg.terms_range[0], cfg.terms_range[1] + 1))
    exps = rng.uniform(*cfg.exponent_range, size=k)
    coeffs = rng.uniform(*cfg.coeff_range, size=k)
    terms = list(zip(coeffs, exps))
    if with_constant:
        # keep the constant well away from zero so its image is observable
        c0 = rng.uniform(0.5, 10.0) * (1.0 if rng.random() < 0.5 else -1.0)
        terms.append((c0, 0.0))
    return MonomialSeries.make(0.0, terms)


def _strip_constant(y: MonomialSeries) -> MonomialSeries:
    return MonomialSeries.make(
        y.base, [(m.coeff, m.exponent) for m in y.terms if abs(m.exponent) > MERGE_TOL]
    )


def check_com(cfg: DrawConfig) -> LawReport:
    """Initial-value vanishing: I^alpha y tends to 0 at the base point.

    Primary residual: |I^alpha y| evaluated exactly at the base (0 in exact
    arithmetic).  Auxiliary checks per draw: the decay ratio
    |I^alpha y(a+eps)| / eps^alpha stays within 5% of the envelope constant
    sum|c_k| / Gamma(alpha+1), and the value at eps = 1e-6 is below 1e-3.
    """
    rng = np.random.default_rng(cfg.seed)
    col = _Collector(EXACT_TOL)
    for _ in range(cfg.draws):
        y = _draw_series(rng, cfg)
        alpha = float(rng.uniform(*cfg.alpha_range))
        iy = frac_integral(y, alpha)

        col.primary(abs(evaluate(iy, y.base)), alpha, None, y)

        envelope = sum(abs(m.coeff) for m in y.terms) / gamma(alpha + 1.0)
        worst_ratio = 0.0
        for eps in (1e-2, 1e-4, 1e-6):
            value = evaluate(iy, y.base + eps)
            worst_ratio = max(worst_ratio, abs(value) / eps**alpha)
            if eps == 1e-6:
                col.auxiliary(abs(value) <= 1e-3, abs(value), alpha, None, y)
        col.auxiliary(worst_ratio <= 1.05 * envelope, worst_ratio, alpha, None, y)
    return col.report("com", cfg)


def check_com1(cfg: DrawConfig) -> LawReport:
    """Composition D^alpha I^beta y = D^{alpha-beta} y for alpha >= beta >= 0.

    Every 8th draw pins beta = alpha (the left side must reproduce y) or
    beta = 0 (both sides are the same derivative).
    """
    rng = np.random.default_rng(cfg.seed)
    col = _Collector(EXACT_TOL)
    for i in range(cfg.draws):
        y = _draw_series(rng, cfg)
        alpha = float(rng.uniform(*cfg.alpha_range))
        beta = float(rng.uniform(0.0, alpha))
        if i % 8 == 0:
            beta = alpha
        elif i % 8 == 4:
            beta = 0.0
        lhs = frac_derivative_rl(frac_integral(y, beta), alpha)
        rhs = frac_diffint(y, alpha - beta)
        col.primary(coefficient_residual(lhs, rhs), alpha, beta, y)
    return col.report("com1", cfg)


def check_com2(cfg: DrawConfig) -> LawReport:
    """Composition I^alpha D^beta y = D^{beta-alpha} y - boundary term.

    Three deterministic batches share the draw budget: the generic one
    (exponents >= 1, where the boundary term provably vanishes), a batch
    with constant terms and beta < 1 (exercising singular intermediate
    series), and the designated nonzero-boundary batch at beta = 1, where
    the correction term y(a) (t-a)^{alpha-1} / Gamma(alpha) must be present
    and must reconcile the two sides.
    """
    rng = np.random.default_rng(cfg.seed)
    col = _Collector(EXACT_TOL)
    for i in range(cfg.draws):
        kind = i % 10
        alpha_l = float(rng.uniform(*cfg.alpha_range))
        if kind == 3:
            y = _draw_series(rng, cfg, with_constant=True)
            beta_l = 1.0
        elif kind == 7:
            y = _draw_series(rng, cfg, with_constant=True)
            beta_l = float(rng.uniform(*cfg.alpha_range))
        else:
            y = _draw_series(rng, cfg)
            beta_l = float(rng.uniform(*cfg.alpha_range))

        corr = boundary_term(y, alpha_l, beta_l, 1)
        lhs = frac_integral(frac_derivative_rl(y, beta_l), alpha_l)
        rhs = frac_diffint(y, beta_l - alpha_l) - corr
        col.primary(coefficient_residual(lhs, rhs), alpha_l, beta_l, y)

        if kind == 3:
            # the whole point of this batch: a live correction term
            col.auxiliary(not corr.is_zero, 0.0, alpha_l, beta_l, y)
        else:
            col.auxiliary(corr.is_zero, corr.coefficient_scale, alpha_l, beta_l, y)
    return col.report("com2", cfg)


def check_proposition(cfg: DrawConfig) -> LawReport:
    """Coincidence law: the Hilfer derivative equals the Riemann-Liouville one.

    Exact-backend residual on every draw; the first 10 draws are also run
    through the grid backend at N = 256 and must agree with the exact result
    to GRID_TOL on the interior.
    """
    rng = np.random.default_rng(cfg.seed)
    col = _Collector(EXACT_TOL)
    for i in range(cfg.draws):
        y = _draw_series(rng, cfg)
        alpha = float(rng.uniform(*cfg.alpha_range))
        beta = float(rng.uniform(*cfg.beta_range))
        if i % 16 == 0:
            beta = 0.0
        spec = HilferSpec(alpha, beta)
        hil = frac_derivative_hilfer(y, spec)
        rl = frac_derivative_rl(y, alpha)
        col.primary(coefficient_residual(hil, rl), alpha, beta, y)

        if i < _GRID_DRAWS:
            gf = GridFunction.sample(y, 0.0, 1.0, _GRID_N)
            num = hilfer_derivative_grid(gf, spec)
            grid_res = interior_relative_error(num, hil)
            col.auxiliary(grid_res <= GRID_TOL, grid_res, alpha, beta, y)
    return col.report("proposition", cfg)


def proof_chain_steps(y: MonomialSeries, spec: HilferSpec):
    """Materialize the five expressions reducing Hilfer to Riemann-Liouville.

    (i)   I^outer D I^inner y              (the defining composition)
    (ii)  I^outer D^{1-inner} y            (inner pair composed)
    (iii) I^outer D^{alpha+outer} y        (same order, rewritten)
    (iv)  D^alpha y - boundary term        (outer pair expanded)
    (v)   D^alpha y                        (boundary term vanishes)
    """
    rl = frac_derivative_rl(y, spec.alpha)
    step1 = frac_derivative_hilfer(y, spec)
    step2 = frac_integral(frac_derivative_rl(y, 1.0 - spec.inner), spec.outer)
    step3 = frac_integral(frac_derivative_rl(y, spec.gamma_order), spec.outer)
    step4 = rl - boundary_term(y, spec.outer, spec.gamma_order, 1)
    step5 = rl
    return (step1, step2, step3, step4, step5)


def check_proof_chain(cfg: DrawConfig) -> LawReport:
    """Pairwise agreement of consecutive proof-chain steps over random draws.

    Also sweeps 10^5 random (alpha, beta) pairs through the order identity
    1 - (1-beta)(1-alpha) = alpha + beta - alpha*beta, which must hold to
    1e-15 as evaluated in floating point.
    """
    rng = np.random.default_rng(cfg.seed)
    col = _Collector(EXACT_TOL)
    for _ in range(cfg.draws):
        y = _draw_series(rng, cfg)
        alpha = float(rng.uniform(*cfg.alpha_range))
        beta = float(rng.uniform(*cfg.beta_range))
        spec = HilferSpec(alpha, beta)
        steps = proof_chain_steps(y, spec)
        worst = max(
            coefficient_residual(s1, s2) for s1, s2 in zip(steps, steps[1:])
        )
        col.primary(worst, alpha, beta, y)

        drift = abs((1.0 - (1.0 - beta) * (1.0 - alpha)) - spec.gamma_order)
        col.auxiliary(drift <= ORDER_IDENTITY_TOL, drift, alpha, beta, y)

    a = rng.uniform(0.0, 1.0, size=100_000)
    b = rng.uniform(0.0, 1.0, size=100_000)
    drift = np.abs((1.0 - (1.0 - b) * (1.0 - a)) - (a + b - a * b))
    worst_pair = int(np.argmax(drift))
    col.auxiliary(
        float(np.max(drift)) <= ORDER_IDENTITY_TOL,
        float(np.max(drift)),
        float(a[worst_pair]),
        float(b[worst_pair]),
        MonomialSeries.make(0.0, ()),
    )
    return col.report("proof-chain", cfg)


def check_caputo_endpoint(cfg: DrawConfig) -> LawReport:
    """Type-1 endpoint: Hilfer minus Riemann-Liouville is exactly
    -y(a) (t-a)^{-alpha} / Gamma(1-alpha).

    Every draw contains a constant term; the law additionally checks the
    'iff' direction: stripping the constant restores equality with the
    Riemann-Liouville derivative, keeping it breaks equality.
    """
    rng = np.random.default_rng(cfg.seed)
    col = _Collector(EXACT_TOL)
    for _ in range(cfg.draws):
        y = _draw_series(rng, cfg, with_constant=True)
        alpha = float(rng.uniform(*cfg.alpha_range))
        hil = frac_derivative_hilfer(y, HilferSpec(alpha, 1.0))
        rl = frac_derivative_rl(y, alpha)
        gap = MonomialSeries.make(
            y.base, [(evaluate(y, y.base) * reciprocal_gamma(1.0 - alpha), -alpha)]
        )
        col.primary(coefficient_residual(hil, rl - gap), alpha, 1.0, y)

        # equality with RL holds iff the constant term is absent
        col.auxiliary(
            coefficient_residual(hil, rl) > EXACT_TOL,
            coefficient_residual(hil, rl),
            alpha,
            1.0,
            y,
        )
        y0 = _strip_constant(y)
        res0 = coefficient_residual(
            frac_derivative_hilfer(y0, HilferSpec(alpha, 1.0)),
            frac_derivative_rl(y0, alpha),
        )
        col.auxiliary(res0 <= EXACT_TOL, res0, alpha, 1.0, y0)
    return col.report("caputo-endpoint", cfg)


_CHECKS: dict[str, Callable[[DrawConfig], LawReport]] = {
    "com": check_com,
    "com1": check_com1,
    "com2": check_com2,
    "proposition": check_proposition,
    "proof-chain": check_proof_chain,
    "caputo-endpoint": check_caputo_endpoint,
}


def run_laws(cfg: DrawConfig, laws: Optional[list[str]] = None) -> dict[str, LawReport]:
    """Run a subset of the laws (all six by default) under one configuration."""
    selected = list(LAW_IDS) if laws is None else list(laws)
    unknown = [l for l in selected if l not in _CHECKS]
    if unknown:
        raise DomainError(f"unknown laws: {unknown}; valid ids are {LAW_IDS}")
    return {law: _CHECKS[law](cfg) for law in selected}
