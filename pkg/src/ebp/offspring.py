"""Secondary-infection (offspring) distributions and their transforms.

An OffspringDistribution is a finite probability vector over counts of
secondary infections, with any mass beyond the explicit support tracked in
an explicit tail bucket instead of being silently dropped. Construction
routes: normalizing raw weights, or integrating a gamma density over unit
cells. Vaccination enters either as binomial thinning of an existing
distribution or by discretizing a gamma with smaller parameters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from .errors import (
    EmptySupport,
    InvalidParams,
    NegativeWeight,
    NonFinite,
    TailMassPresent,
)

NORMALIZATION_ATOL = 1e-12


@dataclass(frozen=True, eq=False)
class OffspringDistribution:
    """Finite-support law of the number of secondary infections.

    probs[i] is the probability of producing exactly i new infections;
    tail_mass is the probability of counts beyond the explicit support.
    probs + tail_mass must sum to 1 within 1e-12. Instances are immutable
    (the probability array is write-protected) and safe to share across
    threads.
    """

    probs: np.ndarray
    tail_mass: float = 0.0

    def __post_init__(self):
        arr = np.array(self.probs, dtype=np.float64, copy=True)
        if arr.ndim != 1 or arr.size == 0:
            raise EmptySupport("probs must be a non-empty 1-d sequence")
        if not np.all(np.isfinite(arr)) or not math.isfinite(self.tail_mass):
            raise NonFinite("probabilities must be finite")
        if np.any(arr < 0.0):
            raise NegativeWeight("probabilities must be non-negative")
        tail = float(self.tail_mass)
        if tail < 0.0:
            raise NegativeWeight("tail_mass must be non-negative")
        total = math.fsum(arr.tolist()) + tail
        if abs(total - 1.0) > NORMALIZATION_ATOL:
            raise InvalidParams(
                f"probs + tail_mass must sum to 1 (got {total!r})"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "probs", arr)
        object.__setattr__(self, "tail_mass", tail)

    @property
    def support_size(self) -> int:
        return int(self.probs.shape[0])

    @property
    def theta0(self) -> float:
        """Probability of producing no secondary infection."""
        return float(self.probs[0])


@dataclass(frozen=True)
class GammaParams:
    """Gamma density parameters: shape alpha, scale T, mean = shape*scale."""

    shape: float
    scale: float

    def __post_init__(self):
        if not (math.isfinite(self.shape) and math.isfinite(self.scale)):
            raise NonFinite("gamma parameters must be finite")
        if self.shape <= 0.0 or self.scale <= 0.0:
            raise InvalidParams("gamma shape and scale must be positive")

    def mean(self) -> float:
        return self.shape * self.scale


@dataclass(frozen=True)
class VaccinationPolicy:
    """Each potential secondary infection is independently blocked with
    probability block_prob (coverage times efficacy)."""

    block_prob: float

    def __post_init__(self):
        if not math.isfinite(self.block_prob):
            raise NonFinite("block_prob must be finite")
        if not 0.0 <= self.block_prob <= 1.0:
            raise InvalidParams("block_prob must lie in [0, 1]")


def ensure_no_tail(dist: OffspringDistribution) -> None:
    """Raise TailMassPresent unless the distribution is exactly finite."""
    if dist.tail_mass != 0.0:
        raise TailMassPresent(
            f"operation requires tail_mass = 0 (got {dist.tail_mass!r}); "
            "use truncate_tail() first"
        )


def from_probabilities(weights) -> OffspringDistribution:
    """Normalize non-negative weights into a distribution with no tail."""
    arr = np.array(weights, dtype=np.float64)
    if arr.ndim != 1 or arr.size == 0:
        raise EmptySupport("weights must be a non-empty 1-d sequence")
    if not np.all(np.isfinite(arr)):
        raise NonFinite("weights must be finite")
    if np.any(arr < 0.0):
        raise NegativeWeight("weights must be non-negative")
    total = math.fsum(arr.tolist())
    if total <= 0.0:
        raise EmptySupport("at least one weight must be positive")
    return OffspringDistribution(arr / total, 0.0)


def truncate_tail(dist: OffspringDistribution) -> OffspringDistribution:
    """Fold the tail away by renormalizing over the explicit support."""
    if dist.tail_mass == 0.0:
        return dist
    return from_probabilities(dist.probs)


def discretize_gamma(params: GammaParams, max_count: int) -> OffspringDistribution:
    """Turn a gamma density into a discrete offspring law by cell integration.

    probs[i] = integral of the gamma(shape, scale) density over [i, i+1)
    for i = 0 .. max_count-1; the remaining upper tail is kept as
    tail_mass, so the result is an exact probability law.
    """
    if int(max_count) != max_count or max_count < 1:
        raise InvalidParams("max_count must be a positive integer")
    max_count = int(max_count)
    edges = np.arange(max_count + 1, dtype=np.float64) / params.scale
    cdf = special.gammainc(params.shape, edges)
    probs = np.diff(cdf)
    np.clip(probs, 0.0, None, out=probs)
    tail = max(0.0, 1.0 - math.fsum(probs.tolist()))
    return OffspringDistribution(probs, tail)


def thin(dist: OffspringDistribution, policy: VaccinationPolicy) -> OffspringDistribution:
    """Binomial thinning: block each secondary infection with prob phi.

    theta'_k = sum_{n>=k} theta_n * C(n,k) * (1-phi)^k * phi^(n-k).
    The thinned mean is exactly (1-phi) times the original mean, and the
    thinned PGF satisfies I_phi(x) = I(phi + (1-phi)*x).
    """
    ensure_no_tail(dist)
    phi = policy.block_prob
    if phi == 0.0:
        return dist
    n = dist.support_size
    if phi == 1.0:
        out = np.zeros(n)
        out[0] = 1.0
        return OffspringDistribution(out, 0.0)
    keep = 1.0 - phi
    out = np.zeros(n)
    out[0] = dist.probs[0]
    # row m holds the Binomial(m, keep) pmf, built by the Pascal recurrence
    row = np.array([1.0])
    for m in range(1, n):
        nxt = np.empty(m + 1)
        nxt[0] = row[0] * phi
        nxt[m] = row[m - 1] * keep
        if m > 1:
            nxt[1:m] = row[1:m] * phi + row[0 : m - 1] * keep
        row = nxt
        pm = dist.probs[m]
        if pm != 0.0:
            out[: m + 1] += pm * row
    return OffspringDistribution(out, 0.0)


def mean(dist: OffspringDistribution) -> float:
    """Mean secondary infections over the explicit support.

    A lower bound on the true mean whenever tail_mass > 0.
    """
    idx = np.arange(dist.support_size, dtype=np.float64)
    return float(idx @ dist.probs)


def variance(dist: OffspringDistribution) -> float:
    """Variance of the secondary-infection count (explicit support only)."""
    idx = np.arange(dist.support_size, dtype=np.float64)
    m = float(idx @ dist.probs)
    second = float((idx * idx) @ dist.probs)
    return second - m * m
