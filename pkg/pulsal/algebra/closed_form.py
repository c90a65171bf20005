#-
# Copyright (c) 2026 The pulsal developers
# All rights reserved.
#

"""
Closed-form sums for special operand configurations, used as oracles for
the interval adder, and the pulse counts predicted for the configurations
where the adder output is known in advance.

Notation: the augend has pulses at u_1 < ... < u_m with intervals
A_k = u_k - u_{k-1}, the addend has pulses at d_1 < ... < d_n with
B_k = d_k - d_{k-1}; u_0 = d_0 = 0 is the common origin.
"""

import logging

from collections import namedtuple
from fractions import Fraction

from pulsal.core.error import PreconditionError
from pulsal.pulse.model import Polarity, PulseTrain
from pulsal.pulse.ops import validate

logger = logging.getLogger(__name__)

__all__ = ("add_pair_closed_form", "subtract_closed_form",
           "corollary_counts", "CountPrediction", "CONFIGURATIONS")

CountPrediction = namedtuple("CountPrediction",
                             ["configuration", "positive", "negative"])


def _all(train, polarity):
    return len(train) > 0 and all(p == polarity for p in train.polarities)


def _ends_after(augend, addend):
    """Single addend pulse at or after the last augend pulse."""
    return len(addend) == 1 and augend.times[-1] <= addend.times[0]


def _check_valid(*trains):
    for train in trains:
        violations = validate(train)
        if violations:
            raise PreconditionError(violations[0].message)


def add_pair_closed_form(augend, addend):
    """
    Sum of m positive augend pulses and a single positive addend pulse at
    d_1 >= u_m.

    T_k = u_{k-1} + (d_1 - u_{k-1}) A_k / (B_1 + A_k) for k = 1..m and
    T_{m+1} = d_1.

    :raises PreconditionError: if the operands are not in this
    configuration
    """
    _check_valid(augend, addend)
    if not (_all(augend, Polarity.POSITIVE) and
            _all(addend, Polarity.POSITIVE) and
            _ends_after(augend, addend)):
        raise PreconditionError(
            "Expected positive augend and one positive addend pulse "
            "after the last augend pulse")
    u = (Fraction(0),) + tuple(augend.times)
    d1 = addend.times[0]
    b1 = d1
    times = []
    for k in range(1, len(u)):
        a_k = u[k] - u[k - 1]
        times.append(u[k - 1] + (d1 - u[k - 1]) * a_k / (b1 + a_k))
    times.append(d1)
    return PulseTrain(times)


def subtract_closed_form(augend, addend):
    """
    Sum of m positive augend pulses and a single negative addend pulse at
    d_1 >= u_m, which leaves m - 1 positive pulses.

    T_k = u_k + (A_1 + ... + A_k) A_{k+1} / (B_1 - A_{k+1}) for
    k = 1..m-1.

    :raises PreconditionError: if the operands are not in this
    configuration
    """
    _check_valid(augend, addend)
    if not (_all(augend, Polarity.POSITIVE) and
            _all(addend, Polarity.NEGATIVE) and
            _ends_after(augend, addend)):
        raise PreconditionError(
            "Expected positive augend and one negative addend pulse "
            "after the last augend pulse")
    u = (Fraction(0),) + tuple(augend.times)
    b1 = addend.times[0]
    times = []
    for k in range(1, len(u) - 1):
        a_next = u[k + 1] - u[k]
        # sum of A_1..A_k telescopes to u_k
        times.append(u[k] + u[k] * a_next / (b1 - a_next))
    return PulseTrain(times)


def _single_addend(polarity):
    def match(augend, addend):
        if _all(augend, polarity) and _all(addend, polarity) and \
           _ends_after(augend, addend):
            return len(augend) + 1
        return None
    return match


def _single_augend(polarity):
    def match(augend, addend):
        return _single_addend(polarity)(addend, augend)
    return match


def _interleaved(polarity):
    """Addend pulses between the last two augend pulses."""
    def match(augend, addend):
        if not (_all(augend, polarity) and _all(addend, polarity)):
            return None
        u = augend.times
        d = addend.times
        if len(u) >= 2 and not u[-2] < d[0]:
            return None
        if d[-1] <= u[-1]:
            return len(augend) + len(addend)
        return None
    return match


def _match_single_negative_addend(augend, addend):
    if _all(augend, Polarity.POSITIVE) and \
       _all(addend, Polarity.NEGATIVE) and _ends_after(augend, addend):
        return len(augend) - 1
    return None


def _match_single_positive_addend(augend, addend):
    if _all(augend, Polarity.NEGATIVE) and \
       _all(addend, Polarity.POSITIVE) and _ends_after(augend, addend):
        return len(augend) - 1
    return None


def _match_split_negative_addend(augend, addend):
    """
    Augend with m + 1 positive pulses, n >= 2 negative addend pulses
    between u_m and u_{m+1}.
    """
    if not (_all(augend, Polarity.POSITIVE) and
            _all(addend, Polarity.NEGATIVE)):
        return None
    if len(augend) < 2 or len(addend) < 2:
        return None
    u = augend.times
    d = addend.times
    if u[-2] <= d[0] and d[-1] <= u[-1]:
        return len(augend) - 2, len(addend) - 2
    return None


def _positive(match):
    def counts(augend, addend):
        n = match(augend, addend)
        return None if n is None else (n, 0)
    return counts


def _negative(match):
    def counts(augend, addend):
        n = match(augend, addend)
        return None if n is None else (0, n)
    return counts


CONFIGURATIONS = (
    ("single-addend", _positive(_single_addend(Polarity.POSITIVE))),
    ("single-augend", _positive(_single_augend(Polarity.POSITIVE))),
    ("single-addend-negative", _negative(_single_addend(Polarity.NEGATIVE))),
    ("single-augend-negative", _negative(_single_augend(Polarity.NEGATIVE))),
    ("interleaved-positive", _positive(_interleaved(Polarity.POSITIVE))),
    ("interleaved-negative", _negative(_interleaved(Polarity.NEGATIVE))),
    ("single-negative-addend", _positive(_match_single_negative_addend)),
    ("single-positive-addend", _negative(_match_single_positive_addend)),
    ("split-negative-addend", _match_split_negative_addend),
)
"""Recognised operand configurations and their count predictors."""


def corollary_counts(augend, addend):
    """
    Predict the (positive, negative) pulse counts of augend + addend.

    The configurations are tried with the operands in the given order
    first, then swapped.

    :return: :class:`CountPrediction`
    :raises PreconditionError: "not applicable" if the operands match no
    known configuration
    """
    _check_valid(augend, addend)
    for first, second in ((augend, addend), (addend, augend)):
        for name, predict in CONFIGURATIONS:
            counts = predict(first, second)
            if counts is not None:
                logger.debug("Operands match configuration %s", name)
                return CountPrediction(name, *counts)
    raise PreconditionError("not applicable")
