#-
# Copyright (c) 2026 The pulsal developers
# All rights reserved.
#

"""
Pulse-domain addition.

Each operand pulse certifies one threshold area accumulated since the
previous pulse of the same train. The adder assumes the area of each
inter-pulse interval accrues at a constant rate, sweeps the merged timeline
of all operands and fires a pulse whenever the summed area reaches one
threshold, carrying the excess over to the next interval.
"""

import logging
import numpy as np

from collections import namedtuple
from fractions import Fraction

from sortedcontainers import SortedSet

from pulsal.core.error import ConfigError, PreconditionError
from pulsal.encoder.ifc import quantize_times
from pulsal.pulse.model import Polarity, PulseTrain, as_fraction
from pulsal.pulse.ops import validate, strip_refractory, restore_refractory

logger = logging.getLogger(__name__)

__all__ = ("RateSegment", "AdderState", "AdderResult", "IntervalAdder",
           "ChargingAdder", "add_n", "identity", "rate_segments",
           "brute_force_sum", "ADDER_MODELS")

RateSegment = namedtuple("RateSegment", ["start", "end", "rates"])
RateSegment.__doc__ = """
Interval (start, end] of the merged timeline with the signed area rate
of each operand, in thresholds per second.
"""

AdderResult = namedtuple("AdderResult", ["train", "final_excess",
                                         "max_excess", "intervals",
                                         "collisions"])
AdderResult.__doc__ = """
Outcome of an addition: the sum train, the excess area left at the end of
the window (not fired), the largest excess magnitude seen after any
interval, the number of timeline intervals and the quantizer collisions.
"""


def identity():
    """The neutral train E: no pulses, zero area."""
    return PulseTrain()


class AdderState:
    """Signed excess-area accumulator of a sweep, in units of theta."""

    def __init__(self, zero=0):
        self.excess = zero
        """Area carried over to the next interval, |excess| < 1."""

        self.max_excess = abs(zero)
        """Largest |excess| after a processed interval."""

        self.emitted = []
        """Pulses fired so far as (time, polarity) tuples."""

    def fire(self, time, polarity):
        self.emitted.append((time, polarity))
        self.excess = 0 * self.excess

    def close_interval(self):
        self.max_excess = max(self.max_excess, abs(self.excess))


def _timeline(trains, exact):
    timeline = SortedSet()
    for train in trains:
        if exact:
            timeline.update(train.times)
        else:
            timeline.update(float(t) for t in train.seconds)
    return list(timeline)


class IntervalAdder:
    """
    N-ary adder with linear area growth inside every interval.

    Exact-time operands are swept with rational arithmetic, so every
    algebraic identity holds exactly. Clocked operands are swept in float
    with an area tolerance and the output times are quantized to the
    finest operand clock.

    :param trains: operand pulse trains, sharing the origin
    :param tau: refractory period removed from the operands and added
    back to the output
    :param tolerance: area tolerance (units of theta) of the float sweep
    """

    model = "linear"

    def __init__(self, trains, tau=0, tolerance=1e-9):
        self.trains = list(trains)
        for i, train in enumerate(self.trains):
            violations = validate(train)
            if violations:
                raise PreconditionError(
                    "Operand {} is not a valid train: {}".format(
                        i, violations[0].message))
        self.tau = as_fraction(tau)
        self.exact = all(t.exact for t in self.trains)
        self.tolerance = tolerance
        clocks = [t.clock for t in self.trains if not t.exact]
        self.clock = min(clocks) if clocks else None
        if len(set(clocks)) > 1:
            logger.warning("Operands use different clocks, output uses %s",
                           self.clock)

    @property
    def rational(self):
        """True when the sweep runs in rational arithmetic."""
        return self.exact

    def operand_rate(self, polarity, duration):
        """Area rate of an operand interval of the given duration."""
        if self.rational:
            return Fraction(int(polarity)) / duration
        return int(polarity) / float(duration)

    def segments(self, trains=None):
        """
        Split the merged timeline in :class:`RateSegment`.

        Within (start, end] every operand contributes the rate of its
        enclosing inter-pulse interval, the one closed by its next pulse at
        or after end, and 0 after its last pulse.
        """
        trains = self.trains if trains is None else trains
        rational = self.rational
        timeline = _timeline(trains, rational)
        zero = Fraction(0) if rational else 0.0
        operands = []
        for train in trains:
            times = train.times if rational else [float(t) for t in
                                                  train.seconds]
            operands.append((times, [int(p) for p in train.polarities]))
        cursors = [0] * len(operands)
        segments = []
        start = zero
        for end in timeline:
            rates = []
            for i, (times, pols) in enumerate(operands):
                k = cursors[i]
                while k < len(times) and times[k] < end:
                    k += 1
                cursors[i] = k
                if k < len(times):
                    prev = times[k - 1] if k > 0 else zero
                    rates.append(self.operand_rate(pols[k], times[k] - prev))
                else:
                    rates.append(zero)
            segments.append(RateSegment(start, end, tuple(rates)))
            start = end
        return segments

    def advance(self, state, start, end, rate):
        """
        Accumulate area at a constant rate over (start, end], firing a
        pulse each time the accumulator reaches +1 or -1.
        """
        if rate == 0:
            return
        target = 1 if rate > 0 else -1
        tol = 0 if self.rational else self.tolerance
        cur = start
        while target * (state.excess + rate * (end - cur)) >= 1 - tol:
            fire_at = min(cur + (target - state.excess) / rate, end)
            state.fire(fire_at, target)
            cur = fire_at
        state.excess += rate * (end - cur)

    def _build_output(self, emitted):
        times = [t for t, _ in emitted]
        polarities = [p for _, p in emitted]
        if self.rational:
            train = PulseTrain(times, polarities)
        else:
            train = PulseTrain.from_seconds(times, polarities)
        if self.tau:
            train = restore_refractory(train, self.tau)
        collisions = 0
        if self.clock is not None:
            train, collisions = quantize_times(train, self.clock)
        return train, collisions

    def run(self):
        """
        Sweep the operands.

        :return: :class:`AdderResult`
        """
        trains = self.trains
        if self.tau:
            trains = [strip_refractory(t, self.tau) for t in trains]
        state = AdderState(Fraction(0) if self.rational else 0.0)
        segments = self.segments(trains)
        for segment in segments:
            self.advance(state, segment.start, segment.end,
                         sum(segment.rates))
            state.close_interval()
        train, collisions = self._build_output(state.emitted)
        if state.excess:
            logger.debug("Discarded final excess area %s", state.excess)
        return AdderResult(train, state.excess, state.max_excess,
                           len(segments), collisions)


class ChargingAdder(IntervalAdder):
    """
    N-ary adder following the leaky charging law of the converter.

    Every operand interval is decoded into the constant input that makes a
    leaky integrator reach the threshold in exactly that interval,
    c = p alpha theta / (1 - e^{-alpha D}). The summed input re-fires a
    leaky integrator with y(t) = R/alpha + (y0 - R/alpha) e^{-alpha (t - t0)}.
    With alpha = 0 this is the linear interval adder.

    :param alpha: leak factor of the operand converters (1/s)
    """

    model = "charging"

    def __init__(self, trains, alpha, tau=0, tolerance=1e-9):
        super().__init__(trains, tau=tau, tolerance=tolerance)
        alpha = float(alpha)
        if not alpha >= 0:
            raise ConfigError("alpha must be non-negative, got %s" % alpha)
        self.alpha = alpha

    @property
    def rational(self):
        return self.exact and self.alpha == 0

    def operand_rate(self, polarity, duration):
        if self.alpha == 0:
            return super().operand_rate(polarity, duration)
        return (int(polarity) * self.alpha /
                -np.expm1(-self.alpha * float(duration)))

    def advance(self, state, start, end, rate):
        if self.alpha == 0:
            return super().advance(state, start, end, rate)
        alpha = self.alpha
        level = rate / alpha
        target = 1 if level > 0 else -1
        cur = start
        while True:
            y_end = level + (state.excess - level) * np.exp(
                -alpha * (end - cur))
            if target * y_end < 1 - self.tolerance:
                state.excess = y_end
                return
            ratio = (state.excess - level) / (target - level) \
                if target != level else 0
            if ratio >= 1:
                fire_at = min(cur + np.log(ratio) / alpha, end)
            else:
                fire_at = end
            state.fire(fire_at, target)
            cur = fire_at


ADDER_MODELS = {
    IntervalAdder.model: IntervalAdder,
    ChargingAdder.model: ChargingAdder,
}


def rate_segments(trains):
    """Timeline segments of a linear sweep over the given trains."""
    return IntervalAdder(trains).segments()


def add_n(trains, tau=0, model="linear", alpha=0.0):
    """
    Add pulse trains in the pulse domain.

    :param trains: iterable of :class:`PulseTrain`
    :param tau: refractory period of the converters
    :param model: "linear" for the interval adder, "charging" for the
    leaky charging adder
    :param alpha: leak factor used by the charging adder
    :return: the sum :class:`PulseTrain`
    """
    if model == IntervalAdder.model:
        adder = IntervalAdder(trains, tau=tau)
    elif model == ChargingAdder.model:
        adder = ChargingAdder(trains, alpha, tau=tau)
    else:
        raise ConfigError("Unknown adder model %s" % model)
    return adder.run().train


def _area_at(train, x):
    """
    Signed area of one operand accumulated by the times x: whole pulses
    plus the linear share of the interval in progress.
    """
    times = np.asarray(train.seconds, dtype=float)
    polarities = np.asarray(train.polarities, dtype=float)
    starts = np.concatenate(([0.0], times[:-1]))
    whole = np.concatenate(([0.0], np.cumsum(polarities)))
    k = np.searchsorted(times, x, side="right")
    area = whole[k]
    pending = k < len(times)
    j = k[pending]
    area[pending] += polarities[j] * (x[pending] - starts[j]) / \
        (times[j] - starts[j])
    return area


def brute_force_sum(trains, step, tolerance=1e-9):
    """
    Dense-grid reference for :func:`add_n`.

    The area of every operand is evaluated at the edges of a uniform grid,
    each edge independently, so that no rounding accumulates along the
    grid and the area reached at the last pulse is a whole number. Pulses
    are fired where the summed area minus the fired pulses crosses +1 or
    -1, interpolated linearly inside the cell.

    :param trains: operand trains
    :param step: grid step in seconds
    :return: exact-time :class:`PulseTrain` with float-derived times
    """
    trains = list(trains)
    if not step > 0:
        raise ConfigError("Grid step must be positive")
    horizon = max([float(t.seconds[-1]) for t in trains if len(t)],
                  default=0.0)
    if horizon <= 0:
        return PulseTrain()
    n = int(np.ceil(horizon / step))
    edges = np.minimum(np.arange(n + 1) * step, horizon)
    widths = np.diff(edges)
    area = np.zeros(n + 1)
    for train in trains:
        if len(train):
            area += _area_at(train, edges)
    increments = np.diff(area)
    noise = 64 * np.finfo(float).eps * max(1.0, float(np.max(np.abs(area))))
    sign = np.where(np.abs(increments) > noise, np.sign(increments), 0.0)
    bounds = np.concatenate(([0], np.flatnonzero(np.diff(sign)) + 1, [n]))

    offset = 0
    fired_t = []
    fired_p = []
    for a, b in zip(bounds[:-1], bounds[1:]):
        direction = int(sign[a])
        if direction == 0:
            continue
        # monotone non-decreasing within the run
        run = direction * area[a:b + 1]
        while True:
            level = direction * offset + 1
            j = np.searchsorted(run, level - tolerance, side="left")
            if j >= len(run):
                break
            if j == 0:
                t = edges[a]
            else:
                cell = a + j - 1
                lag = (level - run[j - 1]) / abs(increments[cell])
                t = edges[cell] + min(max(lag, 0.0), 1.0) * widths[cell]
            fired_t.append(t)
            fired_p.append(Polarity(direction))
            offset += direction
    return PulseTrain.from_seconds(fired_t, fired_p)
