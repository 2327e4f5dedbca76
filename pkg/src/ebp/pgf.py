"""Probability generating functions, criticality, and extinction probability.

The PGF of an offspring distribution is I(x) = sum_i theta_i x^i. Its
derivative at 1 is the basic reproductive number R0; the eventual
extinction probability is the minimal fixed point of I on [0, 1], which is
1 exactly when R0 <= 1 and strictly less than 1 otherwise.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import AssumptionViolated, ConvergenceFailure, DomainError
from .offspring import OffspringDistribution, ensure_no_tail

CRITICALITY_EPS = 1e-9
FIXED_POINT_TOL = 1e-14
RESIDUAL_TOL = 1e-12
MAX_ITERATIONS = 10**6


class Criticality(enum.Enum):
    SUBCRITICAL = "subcritical"
    CRITICAL = "critical"
    SUPERCRITICAL = "supercritical"


@dataclass(frozen=True)
class CriticalityClass:
    """Regime of the process together with the R0 that determined it."""

    kind: Criticality
    r0: float


@dataclass(frozen=True)
class ExtinctionResult:
    """Eventual extinction probability with solver diagnostics."""

    pi: float
    criticality: CriticalityClass
    iterations: int
    residual: float


def pgf_eval(dist: OffspringDistribution, x: float) -> float:
    """Evaluate I(x) over the explicit support (Horner, highest index first).

    For x in [0, 1] the true value lies in [returned, returned + tail_mass].
    """
    if not -1.0 <= x <= 1.0:
        raise DomainError(f"PGF argument must satisfy |x| <= 1 (got {x!r})")
    acc = 0.0
    probs = dist.probs
    for i in range(dist.support_size - 1, -1, -1):
        acc = acc * x + probs[i]
    return float(acc)


def pgf_derivative(dist: OffspringDistribution, x: float, order: int = 1) -> float:
    """Order-k derivative of the PGF power series at x, exact on the support."""
    if not -1.0 <= x <= 1.0:
        raise DomainError(f"PGF argument must satisfy |x| <= 1 (got {x!r})")
    if int(order) != order or order < 1:
        raise DomainError("derivative order must be a positive integer")
    order = int(order)
    n = dist.support_size
    if order >= n:
        return 0.0
    probs = dist.probs
    acc = 0.0
    for i in range(n - 1, order - 1, -1):
        coef = probs[i]
        for k in range(order):
            coef *= i - k
        acc = acc * x + coef
    return float(acc)


def classify(dist: OffspringDistribution) -> CriticalityClass:
    """Sub/critical/supercritical by R0 = I'(1), with a 1e-9 tolerance band."""
    r0 = pgf_derivative(dist, 1.0, 1)
    if r0 > 1.0 + CRITICALITY_EPS:
        kind = Criticality.SUPERCRITICAL
    elif r0 < 1.0 - CRITICALITY_EPS:
        kind = Criticality.SUBCRITICAL
    else:
        kind = Criticality.CRITICAL
    return CriticalityClass(kind, r0)


def _check_theta0(dist: OffspringDistribution) -> None:
    t0 = dist.theta0
    if not 0.0 < t0 < 1.0:
        raise AssumptionViolated(
            f"extinction analysis requires 0 < theta_0 < 1 (got {t0!r})"
        )


def extinction_probability(dist: OffspringDistribution) -> ExtinctionResult:
    """Minimal fixed point of I on [0, 1].

    Sub/critical distributions return pi = 1 exactly by classification.
    Supercritical ones iterate pi <- I(pi) from 0 (monotone convergence to
    the minimal fixed point), then polish the root of I(x) - x by
    bisection; the returned residual |I(pi) - pi| is at most 1e-12.
    """
    ensure_no_tail(dist)
    _check_theta0(dist)
    crit = classify(dist)
    if crit.kind is not Criticality.SUPERCRITICAL:
        residual = abs(pgf_eval(dist, 1.0) - 1.0)
        return ExtinctionResult(1.0, crit, 0, residual)

    x = 0.0
    iterations = 0
    converged = False
    while iterations < MAX_ITERATIONS:
        fx = pgf_eval(dist, x)
        iterations += 1
        if abs(fx - x) < FIXED_POINT_TOL:
            x = fx
            converged = True
            break
        x = fx
    if not converged:
        raise ConvergenceFailure(
            f"fixed-point iteration did not converge in {MAX_ITERATIONS} steps",
            residual=abs(pgf_eval(dist, x) - x),
        )

    # Bracket the root of g(t) = I(t) - t around the last iterate and bisect.
    lo = x
    step = 1e-12
    while lo > 0.0 and pgf_eval(dist, lo) - lo < 0.0:
        lo = max(0.0, lo - step)
        step *= 4.0
    hi = x
    step = 1e-12
    while True:
        cand = hi + step
        if cand >= 1.0:
            cand = 0.5 * (hi + 1.0)
        hi = cand
        iterations += 1
        if pgf_eval(dist, hi) - hi < 0.0:
            break
        step *= 4.0
        if 1.0 - hi < 1e-15:
            break
    for _ in range(200):
        if hi - lo <= 5e-16 * max(1.0, hi):
            break
        mid = 0.5 * (lo + hi)
        iterations += 1
        if pgf_eval(dist, mid) - mid >= 0.0:
            lo = mid
        else:
            hi = mid
    pi = 0.5 * (lo + hi)
    residual = abs(pgf_eval(dist, pi) - pi)
    if residual > RESIDUAL_TOL:
        raise ConvergenceFailure(
            f"fixed-point residual {residual!r} exceeds {RESIDUAL_TOL}",
            residual=residual,
        )
    return ExtinctionResult(pi, crit, iterations, residual)


def extinction_after_n(dist: OffspringDistribution, n: int) -> float:
    """pi_n, the probability of extinction by generation n: the n-fold
    composition of I applied to 0."""
    ensure_no_tail(dist)
    if int(n) != n or n < 0:
        raise DomainError("generation count must be a non-negative integer")
    x = 0.0
    for _ in range(int(n)):
        x = pgf_eval(dist, x)
    return x


def extinction_probability_multi(dist: OffspringDistribution, initial: int) -> float:
    """Extinction probability starting from `initial` independent cases:
    pi ** initial."""
    if int(initial) != initial or initial < 1:
        raise DomainError("initial population must be a positive integer")
    return extinction_probability(dist).pi ** int(initial)


def abel_limit_check(dist: OffspringDistribution, epsilons) -> list[float]:
    """Deviations |I(1 - eps) - sum(probs)| for a decreasing epsilon grid.

    As eps decreases toward 0 the deviations must not increase: the power
    series converges to its coefficient sum at the left edge of 1.
    """
    eps = [float(e) for e in epsilons]
    if not eps:
        raise DomainError("epsilons must be non-empty")
    for e in eps:
        if not 0.0 < e < 1.0:
            raise DomainError(f"epsilons must lie in (0, 1) (got {e!r})")
    for a, b in zip(eps, eps[1:]):
        if b >= a:
            raise DomainError("epsilons must be strictly decreasing")
    target = math.fsum(dist.probs.tolist())
    return [abs(pgf_eval(dist, 1.0 - e) - target) for e in eps]
