"""Deterministic point sampling over a coordinate box.

A small 64-bit linear congruential generator (Knuth's MMIX multiplier) keeps
runs reproducible across platforms without dragging in global RNG state; the
uniform deviate takes the top 53 bits, so every value is an exactly
representable double in [0, 1).

Samplers avoid known bad coordinate values (singular loci of the metric) by
redrawing the offending coordinate until it clears a margin, and callers may
additionally reject whole points (for example when the assembled metric turns
out numerically singular) by pulling more points from the stream.
"""

from __future__ import annotations

import numpy as np

_A = 6364136223846793005
_C = 1442695040888963407
_MASK = (1 << 64) - 1

AVOID_MARGIN = 0.1
_MAX_REDRAWS = 1000


class LCG:
    """64-bit LCG; uniform() yields doubles in [0, 1)."""

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (_A * self.state + _C) & _MASK
        return self.state

    def uniform(self) -> float:
        return (self.next_u64() >> 11) * (2.0 ** -53)

    def uniform_in(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.uniform()


def draw_point(rng: LCG, bounds, avoid=(), margin: float = AVOID_MARGIN):
    """One point in the box, redrawing coordinates near avoided values.

    ``bounds`` is a sequence of (lo, hi) pairs, ``avoid`` a sequence of
    (coordinate index, value) pairs.  A coordinate is redrawn while it lies
    within ``margin`` of any avoided value for its index; if the box is so
    tight that this never clears, a ValueError explains which coordinate.
    """
    out = np.empty(len(bounds))
    for i, (lo, hi) in enumerate(bounds):
        bad = [v for j, v in avoid if j == i]
        for _ in range(_MAX_REDRAWS):
            x = rng.uniform_in(lo, hi)
            if all(abs(x - v) >= margin for v in bad):
                out[i] = x
                break
        else:
            raise ValueError(
                "could not sample coordinate %d away from singular values %s "
                "within bounds [%g, %g]" % (i, bad, lo, hi))
    return out


def sample_points(bounds, count: int, seed: int, avoid=(),
                  margin: float = AVOID_MARGIN) -> np.ndarray:
    rng = LCG(seed)
    return np.array([draw_point(rng, bounds, avoid, margin)
                     for _ in range(count)])
