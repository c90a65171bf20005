#-
# Copyright (c) 2026 The pulsal developers
# All rights reserved.
#

import logging

from collections import namedtuple

from sortedcontainers import SortedSet

from pulsal.core.error import PreconditionError
from pulsal.pulse.model import PulseTrain, as_fraction

logger = logging.getLogger(__name__)

__all__ = ("Violation", "validate", "negate", "merge_timeline",
           "strip_refractory", "restore_refractory")

NON_INCREASING = "non-increasing times"
BELOW_REFRACTORY = "gap below refractory"

Violation = namedtuple("Violation", ["kind", "index", "message"])
Violation.__doc__ = """
Invariant violation found by :func:`validate`.
The index is the position of the offending pulse.
"""


def validate(train, params=None):
    """
    Check the ordering invariants of a pulse train.

    :param train: the train to check
    :type train: :class:`PulseTrain`
    :param params: converter parameters, their refractory period is used
    when given, otherwise the one declared by the train
    :type params: :class:`IfcParams`
    :return: list of :class:`Violation`, empty when the train is valid
    """
    if params is not None:
        tau = params.tau
    else:
        tau = train.tau or 0
    violations = []
    times = train.times
    if times and times[0] <= 0:
        violations.append(Violation(
            NON_INCREASING, 0,
            "first pulse at {} is not after the origin".format(times[0])))
    for k in range(1, len(times)):
        gap = times[k] - times[k - 1]
        if gap <= 0:
            violations.append(Violation(
                NON_INCREASING, k,
                "pulse {} at {} does not follow {}".format(
                    k, times[k], times[k - 1])))
        elif gap < tau:
            violations.append(Violation(
                BELOW_REFRACTORY, k,
                "pulse {} gap {} is below tau={}".format(k, gap, tau)))
    if violations:
        logger.debug("Train has %d violations", len(violations))
    return violations


def negate(train):
    """
    Additive inverse: same times, every polarity flipped.
    """
    return train.replace(polarities=[-p for p in train.polarities])


def merge_timeline(trains):
    """
    Sorted union of the pulse times of all the trains.

    :param trains: iterable of :class:`PulseTrain`
    :return: list of distinct exact times, strictly increasing
    """
    timeline = SortedSet()
    for train in trains:
        timeline.update(train.times)
    return list(timeline)


def _shift(train, tau, direction):
    if not tau:
        return train
    tau = as_fraction(tau)
    times = [t + direction * k * tau for k, t in enumerate(train.times)]
    if train.exact:
        return PulseTrain(times, train.polarities, tau=train.tau)
    if (tau / train.clock).denominator == 1:
        return PulseTrain.from_seconds(times, train.polarities,
                                       clock=train.clock, tau=train.tau)
    # tau is not a whole number of ticks
    return PulseTrain(times, train.polarities, tau=train.tau)


def strip_refractory(train, tau):
    """
    Remove the refractory hold from a train.

    The integrator is held for tau after each pulse, so the k-th pulse
    (counting from 0) has spent k*tau in hold: it moves to t_k - k*tau.

    :raises PreconditionError: if a gap is not longer than tau
    """
    tau = as_fraction(tau)
    times = train.times
    for k in range(1, len(times)):
        if times[k] - times[k - 1] <= tau:
            raise PreconditionError(
                "Gap before pulse {} is not longer than tau={}".format(k, tau))
    return _shift(train, tau, -1)


def restore_refractory(train, tau):
    """
    Inverse of :func:`strip_refractory`, the k-th pulse moves to t_k + k*tau.
    """
    return _shift(train, tau, 1)
