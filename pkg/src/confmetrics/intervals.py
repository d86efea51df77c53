"""Highest-density intervals over finite metric distributions.

The interval is narrowed greedily from both ends of the sorted support:
whichever endpoint carries less probability is dropped, as long as the mass
dropped so far stays below alpha.  On a probability tie the upper endpoint
is dropped.  The surviving endpoints bound an interval holding at least
(1 - alpha) of the mass.

For strongly multimodal distributions a union of disjoint intervals could be
shorter than the single contiguous interval returned here; this module
always returns one interval.
"""

from __future__ import annotations

from dataclasses import dataclass

from .distribution import DiscreteDistribution

__all__ = ["HdiInterval", "hdi"]


@dataclass(frozen=True)
class HdiInterval:
    """A (1 - alpha) highest-density interval with its actual coverage."""

    lower: float
    upper: float
    alpha: float
    covered_mass: float

    def __contains__(self, value: float) -> bool:
        return self.lower <= value <= self.upper


def hdi(d: DiscreteDistribution, alpha: float) -> HdiInterval:
    """Greedy two-pointer highest-density interval of a finite distribution.

    The covered mass is always at least 1 - alpha because an endpoint is
    only dropped while the discarded tails stay strictly below alpha.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie strictly between 0 and 1, got {alpha!r}")
    values = d.float_values
    probs = d.probabilities
    lo = 0
    hi = len(probs) - 1
    tail = 0.0
    while True:
        p_lo = probs[lo]
        p_hi = probs[hi]
        if p_lo < p_hi:
            if tail + p_lo < alpha:
                tail += p_lo
                lo += 1
            else:
                break
        else:
            if tail + p_hi < alpha:
                tail += p_hi
                hi -= 1
            else:
                break
    covered = float(probs[lo : hi + 1].sum())
    return HdiInterval(
        lower=float(values[lo]),
        upper=float(values[hi]),
        alpha=alpha,
        covered_mass=covered,
    )
