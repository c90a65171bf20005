#-
# Copyright (c) 2026 The pulsal developers
# All rights reserved.
#

"""
Seeded generators of exact-time pulse trains for the randomized algebra
checks.

Pulse times are distinct multiples of 1/denominator seconds drawn from a
:class:`numpy.random.Generator`, so every generated train is exact and a
run is reproducible from its seed.
"""

import logging
import math
import numpy as np

from fractions import Fraction

from pulsal.core.error import ConfigError
from pulsal.pulse.model import Polarity, PulseTrain

logger = logging.getLogger(__name__)

__all__ = ("random_times", "random_train", "corollary_operands",
           "SHAPED_CONFIGURATIONS", "DENOMINATOR")

DENOMINATOR = 1000
"""Default time resolution: pulse times are multiples of 1/DENOMINATOR."""


def random_times(rng, count, low, high, denominator=DENOMINATOR):
    """
    Draw count distinct sorted times in the open interval (low, high).

    :param low: lower bound (Fraction)
    :param high: upper bound (Fraction)
    """
    low = Fraction(low)
    high = Fraction(high)
    first = math.floor(low * denominator) + 1
    last = math.ceil(high * denominator) - 1
    if last - first + 1 < count:
        raise ConfigError("Can not fit {} pulses in ({}, {})".format(
            count, low, high))
    picks = rng.choice(last - first + 1, size=count, replace=False)
    return [Fraction(int(first + p), denominator) for p in sorted(picks)]


def random_train(rng, count, low=0, high=1, polarity=None,
                 denominator=DENOMINATOR):
    """
    Random exact-time train with pulses in (low, high).

    :param polarity: polarity of every pulse, random polarities if None
    """
    times = random_times(rng, count, low, high, denominator)
    if polarity is None:
        polarities = rng.choice([-1, 1], size=count)
    else:
        polarities = [polarity] * count
    return PulseTrain(times, polarities)


def _with_polarity(times, polarity):
    return PulseTrain(times, [polarity] * len(times))


def _single_addend(rng, polarity, max_pulses, denominator):
    m = int(rng.integers(1, max_pulses))
    augend = random_times(rng, m, 0, 1, denominator)
    d1 = augend[-1] + Fraction(int(rng.integers(0, denominator)),
                               denominator)
    return (_with_polarity(augend, polarity), _with_polarity([d1], polarity),
            (m + 1, 0) if polarity > 0 else (0, m + 1))


def _interleaved(rng, polarity, max_pulses, denominator):
    m = int(rng.integers(1, max_pulses))
    n = int(rng.integers(1, max_pulses - m + 1))
    augend = random_times(rng, m, 0, 1, denominator)
    low = augend[-2] if m > 1 else Fraction(0)
    resolution = denominator * (n + 1)
    # (u_{m-1}, u_m], u_m itself is allowed
    addend = random_times(rng, n, low,
                          augend[-1] + Fraction(1, resolution), resolution)
    total = m + n
    return (_with_polarity(augend, polarity), _with_polarity(addend, polarity),
            (total, 0) if polarity > 0 else (0, total))


def _single_opposite_addend(rng, polarity, max_pulses, denominator):
    m = int(rng.integers(2, max_pulses + 1))
    augend = random_times(rng, m, 0, 1, denominator)
    d1 = augend[-1] + Fraction(int(rng.integers(1, denominator)),
                               denominator)
    expected = (m - 1, 0) if polarity > 0 else (0, m - 1)
    return (_with_polarity(augend, polarity),
            _with_polarity([d1], -polarity), expected)


def _split_negative_addend(rng, polarity, max_pulses, denominator):
    m = int(rng.integers(1, max_pulses - 2))
    n = int(rng.integers(2, max_pulses - m))
    augend = random_times(rng, m + 1, 0, 1, denominator)
    resolution = denominator * (n + 1)
    # [u_m, u_{m+1}], both ends allowed
    step = Fraction(1, resolution)
    addend = random_times(rng, n, augend[-2] - step, augend[-1] + step,
                          resolution)
    return (_with_polarity(augend, Polarity.POSITIVE),
            _with_polarity(addend, Polarity.NEGATIVE), (m - 1, n - 2))


SHAPED_CONFIGURATIONS = {
    "single-addend": lambda rng, k, d: _single_addend(rng, 1, k, d),
    "single-addend-negative": lambda rng, k, d: _single_addend(rng, -1, k, d),
    "interleaved-positive": lambda rng, k, d: _interleaved(rng, 1, k, d),
    "interleaved-negative": lambda rng, k, d: _interleaved(rng, -1, k, d),
    "single-negative-addend":
        lambda rng, k, d: _single_opposite_addend(rng, 1, k, d),
    "single-positive-addend":
        lambda rng, k, d: _single_opposite_addend(rng, -1, k, d),
    "split-negative-addend":
        lambda rng, k, d: _split_negative_addend(rng, 1, k, d),
}
"""Generators of operand pairs shaped like the count-law configurations."""


def corollary_operands(rng, configuration, max_pulses=20,
                       denominator=DENOMINATOR):
    """
    Random operands in one of the configurations with a known sum count.

    :return: tuple (augend, addend, (positive, negative)) with the pulse
    counts the sum must have
    """
    try:
        generate = SHAPED_CONFIGURATIONS[configuration]
    except KeyError:
        raise ConfigError("Unknown configuration %s" % configuration)
    return generate(rng, max_pulses, denominator)
