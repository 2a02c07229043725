"""Pairwise error probabilities, the BER union bound, and diversity slopes.

The exact per-user PEP averages the conditional pairwise decision
probability over the ordered Rayleigh gain of that user. Two equivalent
routes are provided: the term-wise T1/T2 quadrature expansion and direct
averaging of the conditional PEP against the order-statistics density; the
alpha = 1 (Laplacian) and alpha = 2 (Gaussian) closed forms serve as
independent cross-checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .channel import OrderStatsTerm, order_terms, ordered_pdf
from .ggd import GGNoiseModel, lambda0
from .noma import ErrorEvent, SystemConfig, build_error_event, enumerate_error_events
from .specfun import (
    DomainError,
    QuadratureSpec,
    erfcx,
    integrate_semi_infinite,
    ln_gamma,
    lower_incomplete_gamma_reg,
    upper_incomplete_gamma_reg,
)

__all__ = [
    "DecisionNoise",
    "PepResult",
    "ClosedFormTerm",
    "MeijerOracleSpec",
    "DiversityEstimate",
    "UnionBoundResult",
    "NumericFailure",
    "conditional_pep",
    "pep_exact",
    "pep_direct",
    "pep_closed_form",
    "union_bound",
    "diversity_order",
    "canonical_event",
]


class NumericFailure(RuntimeError):
    """A numeric pipeline stage produced an unusable value."""


@dataclass(frozen=True)
class DecisionNoise:
    """Scale and variance of the pairwise decision variable at gain h."""

    lambda_sub: float
    sigma_N2: float

    @classmethod
    def from_event(cls, event: ErrorEvent, h: float) -> "DecisionNoise":
        if h <= 0.0:
            raise DomainError(f"gain must be positive, got {h!r}")
        amp = event.config.amplitude(event.l)
        dc = abs(event.delta_check)
        lam0 = lambda0(event.config.noise_alpha)
        return cls(
            lambda_sub=math.sqrt(lam0) / (math.sqrt(2.0) * amp * h * dc),
            sigma_N2=2.0 * amp * amp * h * h * dc * dc,
        )


@dataclass(frozen=True)
class PepResult:
    """Analytic PEP with per-order-statistics-term diagnostics.

    terms holds (OrderStatsTerm, T1, T2) triples; the headline value equals
    A_l/(2 Gamma(1/alpha)) * sum_i C(l-1,i) (-1)^i [T1 + (-1)^mu T2] up to
    floating-point noise (the value itself is computed in a
    cancellation-resistant arrangement).
    """

    value: float
    terms: tuple
    method: str


@dataclass(frozen=True)
class ClosedFormTerm:
    """Dimensionless argument of the closed-form bracket for one term."""

    tau: float

    def __post_init__(self):
        if self.tau < 0.0:
            raise DomainError(f"tau must be >= 0, got {self.tau!r}")


@dataclass(frozen=True)
class MeijerOracleSpec:
    """Bookkeeping for the Meijer-G identity order: smallest k with
    k * alpha / 2 integer. Documents the closed-form oracle cases; the
    general Meijer form is never evaluated numerically."""

    k: int
    t: int

    @classmethod
    def for_alpha(cls, alpha: float) -> "MeijerOracleSpec":
        frac = Fraction(alpha).limit_denominator(10**6)
        if abs(float(frac) - alpha) > 1e-12:
            raise DomainError(f"no small rational k*alpha/2 for alpha={alpha!r}")
        p, q = frac.numerator, frac.denominator
        k = 2 * q // math.gcd(p, 2 * q)
        return cls(k=k, t=k * p // (2 * q))


@dataclass(frozen=True)
class DiversityEstimate:
    """Negative log-log slope of a PEP curve over an SNR window (dB)."""

    d_s: float
    snr_window: tuple


@dataclass(frozen=True)
class UnionBoundResult:
    """BER union bound with its per-hypothesis-pair contributions.

    contributions holds (x_l, x_check, bit_errors, pair_probability); p_ub
    reconstructs as (1/q) * sum over pairs of Pr(x_l) * bit_errors * pair
    probability with uniform Pr(x_l).
    """

    p_ub: float
    q: int
    contributions: tuple


def _integrate_rel(f, quad: QuadratureSpec):
    """Quadrature driven by relative error: PEP values span hundreds of
    orders of magnitude, so the default absolute floor would otherwise let
    tiny probabilities converge to noise."""
    spec = QuadratureSpec(
        abs_tol=min(quad.abs_tol, 1e-280),
        rel_tol=quad.rel_tol,
        max_subdivisions=quad.max_subdivisions,
    )
    return integrate_semi_infinite(f, spec)


def _kappa(event: ErrorEvent, lam0: float) -> float:
    """Decay scale of the conditional PEP in the gain: the incomplete-gamma
    argument at gain w is (kappa * w)^alpha."""
    amp = event.config.amplitude(event.l)
    return (
        math.sqrt(lam0)
        * abs(event.upsilon)
        / (math.sqrt(2.0) * amp * abs(event.delta_check))
    )


def conditional_pep(event: ErrorEvent, model: GGNoiseModel, h: float) -> float:
    """Pairwise error probability conditioned on channel gain h.

    Equals [Gamma(1/a) + (-1)^mu * gamma(1/a, (lambda h^2 |upsilon|)^a)] /
    (2 Gamma(1/a)); the constructive branch is evaluated through the upper
    regularized gamma so deep tails keep relative accuracy.
    """
    if h < 0.0:
        raise DomainError(f"gain must be >= 0, got {h!r}")
    inv_a = 1.0 / model.alpha
    z = (_kappa(event, model.lambda0) * h) ** model.alpha
    if event.mu:
        return 0.5 * upper_incomplete_gamma_reg(inv_a, z)
    return 0.5 * (1.0 + lower_incomplete_gamma_reg(inv_a, z))


def _t2_term(alpha: float, kappa: float, delta: int, quad: QuadratureSpec) -> float:
    """T2 for one order-statistics term:
    (alpha kappa / delta) * int_0^inf exp(-(kappa w)^alpha - delta w^2 / 2) dw.
    """

    def integrand(w: float) -> float:
        return math.exp(-((kappa * w) ** alpha) - 0.5 * delta * w * w)

    val, _ = _integrate_rel(integrand, quad)
    return alpha * kappa / delta * val


def _constructive_value(
    event: ErrorEvent, alpha: float, kappa: float, quad: QuadratureSpec
) -> float:
    """Unconditional PEP of a constructive (mu = 1) event via the combined
    nonnegative integrand.

    Summing T1 - T2 over the alternating order-statistics terms cancels to
    l-th order at high SNR; folding the sum into the integrand first gives
    A_l/(2 Gamma(1/a)) * alpha kappa * int exp(-(kappa w)^a) B(w) dw with
    B(w) = int_0^W u^(l-1) (1-u)^(L-l) du, W = 1 - exp(-w^2/2), which has no
    cancellation at any SNR.
    """
    L, l = event.L, event.l
    m = L - l  # (1-u)^m exponent, a small nonnegative integer
    coeffs = [math.comb(m, j) * (-1.0) ** j / (l + j) for j in range(m + 1)]

    def integrand(w: float) -> float:
        big_w = -math.expm1(-0.5 * w * w)
        beta = 0.0
        wp = big_w**l
        for j in range(m + 1):
            beta += coeffs[j] * wp
            wp *= big_w
        return math.exp(-((kappa * w) ** alpha)) * beta

    val, _ = _integrate_rel(integrand, quad)
    a_l = order_terms(L, l)[0].a_l
    return a_l / (2.0 * math.exp(ln_gamma(1.0 / alpha))) * alpha * kappa * val


def pep_exact(
    event: ErrorEvent,
    model: GGNoiseModel,
    quad: QuadratureSpec = QuadratureSpec(),
) -> PepResult:
    """Unconditional PEP by the term-wise T1/T2 quadrature expansion."""
    alpha = model.alpha
    kappa = _kappa(event, model.lambda0)
    gamma_inv_a = math.exp(ln_gamma(1.0 / alpha))
    terms = order_terms(event.L, event.l)
    diagnostics = []
    acc = 0.0
    for term in terms:
        t1 = gamma_inv_a / term.delta
        t2 = _t2_term(alpha, kappa, term.delta, quad)
        diagnostics.append((term, t1, t2))
        sign = (-1.0) ** term.i * math.comb(event.l - 1, term.i)
        acc += sign * (t1 + (-1.0) ** event.mu * t2)
    if event.mu:
        value = _constructive_value(event, alpha, kappa, quad)
    else:
        value = terms[0].a_l / (2.0 * gamma_inv_a) * acc
    return PepResult(value=value, terms=tuple(diagnostics), method="quadrature")


def pep_direct(
    event: ErrorEvent,
    model: GGNoiseModel,
    quad: QuadratureSpec = QuadratureSpec(),
) -> PepResult:
    """Unconditional PEP by direct averaging of the conditional PEP over the
    ordered-gain density. Independent of the T1/T2 route; also the stable
    choice for very high SNR curves."""

    def integrand(w: float) -> float:
        return conditional_pep(event, model, w) * ordered_pdf(event.L, event.l, w)

    val, _ = _integrate_rel(integrand, quad)
    return PepResult(value=val, terms=(), method="direct")


def tau_term(event: ErrorEvent, term: OrderStatsTerm, alpha: float) -> ClosedFormTerm:
    lam0 = lambda0(alpha)
    amp2 = event.a_l * event.gamma_bar * term.delta
    return ClosedFormTerm(
        tau=math.sqrt(lam0)
        * abs(event.upsilon)
        / (2.0 * math.sqrt(amp2) * abs(event.delta_check))
    )


def _laplace_tail(tau):
    """1 - sqrt(pi) tau erfcx(tau), accurate for all tau >= 0.

    Beyond tau = 6 the direct form loses digits to the 1 - (1 - eps)
    subtraction, so the asymptotic series is summed to its smallest term.
    Accepts and preserves extended-precision input.
    """
    if tau <= 6.0:
        return type(tau)(1.0 - math.sqrt(math.pi) * float(tau) * erfcx(float(tau)))
    inv2t2 = 1.0 / (2.0 * tau * tau)
    term = inv2t2
    total = term
    for n in range(2, 80):
        new = term * (2 * n - 1) * inv2t2
        if new >= term:
            break
        term = new
        total += -term if n % 2 == 0 else term
    return total


def _gauss_tail(tau):
    """1 - 2 tau / sqrt(4 tau^2 + 1), in the subtraction-free arrangement."""
    root = np.sqrt(4.0 * tau * tau + 1.0)
    return 1.0 / (root * (root + 2.0 * tau))


def pep_closed_form(event: ErrorEvent, alpha: float) -> PepResult:
    """Closed-form PEP for Laplacian (alpha = 1) or Gaussian (alpha = 2) noise.

    alpha = 1 bracket: 1 + (-1)^mu sqrt(pi) tau exp(tau^2) erfc(tau);
    alpha = 2 bracket: 1 + (-1)^mu 2 tau / sqrt(4 tau^2 + 1);
    both use scaled/subtraction-free evaluations so large tau (high SNR)
    neither overflows nor loses the bracket's small residual. The bracket
    sum is accumulated in extended precision: constructive high-SNR values
    sit many digits below the individual brackets.
    """
    if alpha not in (1, 2, 1.0, 2.0):
        raise DomainError(f"closed forms exist for alpha in {{1, 2}}, got {alpha!r}")
    alpha = float(alpha)
    gamma_inv_a = math.exp(ln_gamma(1.0 / alpha))
    lam0 = lambda0(alpha)
    terms = order_terms(event.L, event.l)
    diagnostics = []
    acc = np.longdouble(0.0)
    base = (
        np.longdouble(lam0)
        * np.longdouble(event.upsilon) ** 2
        / (
            np.longdouble(4.0)
            * np.longdouble(event.a_l)
            * np.longdouble(event.gamma_bar)
            * np.longdouble(event.delta_check) ** 2
        )
    )
    for term in terms:
        tau = np.sqrt(base / term.delta)
        if alpha == 1.0:
            tail = _laplace_tail(tau)
            grow = 1.0 - tail
        else:
            tail = _gauss_tail(tau)
            grow = 2.0 * tau / np.sqrt(4.0 * tau * tau + 1.0)
        bracket = tail if event.mu else 1.0 + grow
        t2 = gamma_inv_a * float(bracket - 1.0) * (-1.0) ** event.mu / term.delta
        diagnostics.append((term, gamma_inv_a / term.delta, t2))
        acc += (-1.0) ** term.i * math.comb(event.l - 1, term.i) * bracket / term.delta
    value = float(terms[0].a_l / 2.0 * acc)
    method = "closed_alpha1" if alpha == 1.0 else "closed_alpha2"
    return PepResult(value=value, terms=tuple(diagnostics), method=method)


def _bit_errors(config: SystemConfig, x: float, x_check: float) -> int:
    """Hamming distance between natural-binary labels of the two symbols
    (indices in the ascending constellation)."""
    i = config.constellation.index(x)
    j = config.constellation.index(x_check)
    return (i ^ j).bit_count()


def union_bound(
    config: SystemConfig,
    model: GGNoiseModel,
    l: int,
    quad: QuadratureSpec = QuadratureSpec(),
    pep_fn: Callable[..., PepResult] | None = None,
) -> UnionBoundResult:
    """BER union bound for user l under uniform symbol probabilities.

    Each hypothesis-pair probability is the uniform average of the exact PEP
    over interferer and SIC-layer assignments; q is bits per symbol.
    """
    phi = config.constellation
    q = len(phi).bit_length() - 1
    if 2**q != len(phi):
        raise DomainError("union bound needs a power-of-two constellation size")
    if pep_fn is None:
        pep_fn = lambda ev: pep_exact(ev, model, quad)  # noqa: E731
    pair_prob: dict = {}
    for ev, weight in enumerate_error_events(config, l):
        key = (ev.x_l, ev.x_check_l)
        pair_prob[key] = pair_prob.get(key, 0.0) + weight * pep_fn(ev).value
    contributions = tuple(
        (x, x_check, _bit_errors(config, x, x_check), prob)
        for (x, x_check), prob in sorted(pair_prob.items())
    )
    pr_x = 1.0 / len(phi)
    p_ub = sum(pr_x * e * prob for _, _, e, prob in contributions) / q
    return UnionBoundResult(p_ub=p_ub, q=q, contributions=contributions)


def diversity_order(
    pep_curve: Mapping[float, float], window: Sequence[float]
) -> DiversityEstimate:
    """Diversity slope -d log Pr / d log gamma_bar between two SNR points.

    pep_curve maps SNR in dB to PEP values; window is the (low, high) dB pair
    to difference over.
    """
    lo_db, hi_db = float(window[0]), float(window[1])
    if not lo_db < hi_db:
        raise DomainError(f"window must be increasing, got {window!r}")
    for point in (lo_db, hi_db):
        if point not in pep_curve:
            raise DomainError(f"window point {point} dB missing from curve")
    p_lo, p_hi = pep_curve[lo_db], pep_curve[hi_db]
    if not (p_lo > 0.0 and p_hi > 0.0):
        raise NumericFailure(
            f"non-positive PEP in window: {p_lo!r} at {lo_db} dB, {p_hi!r} at {hi_db} dB"
        )
    log_gamma_ratio = (hi_db - lo_db) / 10.0 * math.log(10.0)
    d_s = -(math.log(p_hi) - math.log(p_lo)) / log_gamma_ratio
    return DiversityEstimate(d_s=d_s, snr_window=(lo_db, hi_db))


def canonical_event(config: SystemConfig, l: int) -> ErrorEvent:
    """Reference per-user PEP scenario: every user transmits the largest
    symbol, SIC below user l is perfect, and the wrong hypothesis is the
    smallest symbol. Used for per-user PEP/diversity curves."""
    hi = config.constellation[-1]
    return build_error_event(
        config,
        l,
        x_l=hi,
        x_check_l=config.constellation[0],
        sic_detected=(hi,) * (l - 1),
        interferers=(hi,) * (config.L - l),
    )
