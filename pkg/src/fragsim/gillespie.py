"""Event-driven sampler for the fragmentation depth census.

Fragments of equal depth are exchangeable and each splits at rate q^depth,
so the vector of per-depth counts is itself Markov: the total rate is
R = sum_d counts[d] * q^d, waiting times are exponential with rate R, and
the splitting depth is chosen proportionally to counts[d] * q^d. One split
at depth d removes one fragment there and adds k at depth d+1, which
conserves total mass exactly (counts[d] * k^-d sums to 1 in integer
arithmetic over the common denominator k^max_depth).

Sampling contract: one uniform for the inverse-CDF waiting time and one for
the depth choice per event, consumed in that order from the replica stream,
so runs are bit-reproducible given a SeedSpec. Continuous event times make
ties measure-zero; if equal floats ever occur, events keep draw order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .budget import ensure_within_budget
from .errors import DomainError
from .params import ModelParams
from .predictors import smallest_depth_center
from .seeds import SeedSpec

_UNIFORM_BLOCK = 8192
# Exact total-rate refresh period; the incremental rate drifts by O(eps) per
# event, which is harmless but unbounded over millions of events.
_RATE_REFRESH = 4096


@dataclass(frozen=True)
class DepthCensus:
    """Final per-depth counts with first/last existence times per depth.

    last_seen holds only depths that went extinct before the horizon; a depth
    still occupied at the end has no entry.
    """

    time: float
    counts: dict[int, int]
    first_seen: dict[int, float]
    last_seen: dict[int, float]


@dataclass(frozen=True)
class GillespieTrajectory:
    """Jump-time records of the extreme occupied depths.

    times[i] is the instant at which (m, M) changed to
    (min_depths[i], max_depths[i]); records are right-continuous.
    """

    t_end: float
    times: np.ndarray
    min_depths: np.ndarray
    max_depths: np.ndarray
    census: DepthCensus

    def value_at(self, t: float) -> tuple[int, int]:
        if not (0.0 <= t <= self.t_end):
            raise DomainError(f"t={t!r} outside the simulated horizon")
        i = int(np.searchsorted(self.times, t, side="right")) - 1
        return int(self.min_depths[i]), int(self.max_depths[i])


def _projected_bytes(params: ModelParams, t_end: float) -> int:
    # Projection: terminal fragment count is at most k**(deepest depth), and
    # the deepest depth tracks the smallest-fragment predictor.
    if t_end <= math.e * 1.01:
        return 1024
    depth = max(1, math.ceil(smallest_depth_center(params, t_end)) + 1)
    return 8 * params.k ** min(depth, 64)


def gillespie_run(
    params: ModelParams, t_end: float, seed: SeedSpec, on_event=None
) -> GillespieTrajectory:
    """Exact continuous-time simulation of the depth census up to t_end.

    on_event, when given, is called as on_event(t, counts) with the live
    counts list after every event; inspection only, must not mutate.
    """
    if not (math.isfinite(t_end) and t_end > 0.0):
        raise DomainError(f"t_end must be a positive real, got {t_end!r}")
    ensure_within_budget(
        _projected_bytes(params, t_end), f"gillespie run to t={t_end}"
    )
    k, q = params.k, params.q
    rng = seed.rng()

    counts = [1]
    qpow = [1.0]
    weights = [1.0]
    total_rate = 1.0
    m_cur = 0
    max_cur = 0
    t = 0.0

    times = [0.0]
    mins = [0]
    maxs = [0]
    first_seen = {0: 0.0}
    last_seen: dict[int, float] = {}

    block = rng.random(_UNIFORM_BLOCK)
    pos = 0
    events = 0
    log = math.log

    while True:
        if pos + 2 > _UNIFORM_BLOCK:
            block = rng.random(_UNIFORM_BLOCK)
            pos = 0
        u_time = block[pos]
        u_depth = block[pos + 1]
        pos += 2

        dt = -log(1.0 - u_time) / total_rate
        t_next = t + dt
        if t_next > t_end:
            break
        t = t_next

        # Depth choice proportional to counts[d] * q^d, scanned from the top.
        x = u_depth * total_rate
        d = m_cur
        acc = weights[d]
        while acc < x and d < max_cur:
            d += 1
            acc += weights[d]

        counts[d] -= 1
        weights[d] = counts[d] * qpow[d]
        child = d + 1
        if child > max_cur:
            counts.append(0)
            qpow.append(qpow[d] * q)
            weights.append(0.0)
        if counts[child] == 0:
            first_seen[child] = t
        counts[child] += k
        weights[child] = counts[child] * qpow[child]
        total_rate += k * qpow[child] - qpow[d]

        changed = False
        if child > max_cur:
            max_cur = child
            changed = True
        if counts[d] == 0:
            last_seen[d] = t
            if d == m_cur:
                while counts[m_cur] == 0:
                    m_cur += 1
                changed = True
        if changed:
            times.append(t)
            mins.append(m_cur)
            maxs.append(max_cur)

        if on_event is not None:
            on_event(t, counts)

        events += 1
        if events % _RATE_REFRESH == 0:
            total_rate = math.fsum(weights[m_cur : max_cur + 1])

    census = DepthCensus(
        time=t_end,
        counts={d: c for d, c in enumerate(counts) if c > 0},
        first_seen=dict(first_seen),
        last_seen=dict(last_seen),
    )
    return GillespieTrajectory(
        t_end=t_end,
        times=np.asarray(times, dtype=float),
        min_depths=np.asarray(mins, dtype=np.int64),
        max_depths=np.asarray(maxs, dtype=np.int64),
        census=census,
    )
