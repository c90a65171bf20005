#-
# Copyright (c) 2026 The pulsal developers
# All rights reserved.
#

"""
Pulse train model.

A pulse train is an ordered sequence of timed +1/-1 events sharing the
origin t=0, the instant at which every integrator is reset. Times are kept
exact: either as :class:`fractions.Fraction` seconds (exact-time mode) or as
integer counts of a rational clock quantum (clocked mode).
"""

import logging
import numpy as np

from collections import namedtuple
from enum import IntEnum
from fractions import Fraction
from numbers import Integral, Rational

from cached_property import cached_property

from pulsal.core.error import TrainValidationError, ConfigError

logger = logging.getLogger(__name__)

__all__ = ("Polarity", "Pulse", "PulseTrain", "IfcParams", "as_fraction")


def as_fraction(value):
    """
    Convert a time value to an exact Fraction.

    Floats are converted through their shortest decimal representation so
    that 1e-6 becomes 1/1000000 rather than the binary approximation.
    """
    if isinstance(value, Integral):
        return Fraction(int(value))
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, (float, np.floating)):
        if not np.isfinite(value):
            raise TrainValidationError("Non-finite time %s" % value)
        return Fraction(repr(float(value)))
    return Fraction(str(value))


class Polarity(IntEnum):
    NEGATIVE = -1
    POSITIVE = 1


class Pulse(namedtuple("Pulse", ["time", "polarity"])):
    """A single event: time in seconds and polarity."""

    __slots__ = ()

    def __new__(cls, time, polarity):
        if time < 0:
            raise TrainValidationError("Negative pulse time %s" % time)
        try:
            polarity = Polarity(polarity)
        except ValueError:
            raise TrainValidationError("Invalid polarity %s" % polarity)
        return super().__new__(cls, time, polarity)


class PulseTrain:
    """
    Immutable sequence of pulses.

    :param values: pulse times in seconds (clock is None) or integer
    clock ticks (clock given)
    :param polarities: polarity of each pulse, all positive if omitted
    :param clock: time-stamping quantum in seconds, None for exact times
    :param tau: declared refractory period in seconds
    """

    def __init__(self, values=(), polarities=None, clock=None, tau=None):
        if clock is not None:
            clock = as_fraction(clock)
            if clock <= 0:
                raise TrainValidationError("Clock quantum must be positive")
            for v in values:
                if not isinstance(v, Integral):
                    raise TrainValidationError(
                        "Clocked trains require integer ticks, got %r" % (v,))
            values = tuple(int(v) for v in values)
        else:
            values = tuple(as_fraction(v) for v in values)

        if polarities is None:
            polarities = (Polarity.POSITIVE,) * len(values)
        if len(polarities) != len(values):
            raise TrainValidationError(
                "Got %d times and %d polarities" % (len(values),
                                                    len(polarities)))
        for v in values:
            if v < 0:
                raise TrainValidationError("Negative pulse time %s" % v)
        try:
            polarities = tuple(Polarity(int(p)) for p in polarities)
        except ValueError as e:
            raise TrainValidationError("Invalid polarity: %s" % e)

        self._values = values
        """Pulse times or ticks"""

        self._polarities = polarities
        """Pulse polarities"""

        self.clock = clock
        """Time-stamping quantum (Fraction seconds) or None"""

        self.tau = None if tau is None else as_fraction(tau)
        """Declared refractory period (Fraction seconds) or None"""

    @classmethod
    def from_seconds(cls, times, polarities=None, clock=None, tau=None):
        """
        Build a train from times in seconds, rounding each time to the
        nearest tick when a clock quantum is given.
        """
        times = [as_fraction(t) for t in times]
        if clock is None:
            return cls(times, polarities, tau=tau)
        clock = as_fraction(clock)
        ticks = [round(t / clock) for t in times]
        return cls(ticks, polarities, clock=clock, tau=tau)

    @property
    def exact(self):
        """True in exact-time mode."""
        return self.clock is None

    @property
    def ticks(self):
        """Integer ticks of a clocked train, None in exact-time mode."""
        return None if self.exact else self._values

    @cached_property
    def times(self):
        """Exact pulse times in seconds."""
        if self.exact:
            return self._values
        return tuple(tick * self.clock for tick in self._values)

    @cached_property
    def seconds(self):
        """Pulse times as float seconds."""
        if self.exact:
            arr = np.array([float(t) for t in self._values], dtype=float)
        else:
            arr = np.array(self._values, dtype=float) * float(self.clock)
        arr.setflags(write=False)
        return arr

    @cached_property
    def polarities(self):
        arr = np.array(self._polarities, dtype=int)
        arr.setflags(write=False)
        return arr

    @cached_property
    def intervals(self):
        """Inter-pulse durations D_k, the first measured from the origin."""
        prev = Fraction(0)
        result = []
        for t in self.times:
            result.append(t - prev)
            prev = t
        return tuple(result)

    @property
    def last_time(self):
        """Time of the last pulse, 0 for the empty train."""
        return self.times[-1] if self._values else Fraction(0)

    def counts(self):
        """Return the number of (positive, negative) pulses."""
        pos = sum(1 for p in self._polarities if p > 0)
        return (pos, len(self._polarities) - pos)

    def area(self):
        """Signed area in units of theta, the sum of polarities."""
        return sum(int(p) for p in self._polarities)

    def replace(self, **kwargs):
        """Copy of the train with some of the constructor arguments changed."""
        args = {"values": self._values, "polarities": self._polarities,
                "clock": self.clock, "tau": self.tau}
        args.update(kwargs)
        return PulseTrain(**args)

    def __iter__(self):
        for t, p in zip(self.times, self._polarities):
            yield Pulse(t, p)

    def __len__(self):
        return len(self._values)

    def __getitem__(self, index):
        return Pulse(self.times[index], self._polarities[index])

    def __eq__(self, other):
        if not isinstance(other, PulseTrain):
            return NotImplemented
        return (self.times == other.times and
                self._polarities == other._polarities)

    def __hash__(self):
        return hash((self.times, self._polarities))

    def __repr__(self):
        pulses = ", ".join("({}, {:+d})".format(t, int(p))
                           for t, p in zip(self.times, self._polarities))
        mode = "exact" if self.exact else "clock={}".format(self.clock)
        return "<PulseTrain {} [{}]>".format(mode, pulses)


class IfcParams:
    """
    Parameters of an integrate-and-fire converter.

    :param theta: threshold area in volt-seconds
    :param alpha: leak factor of the exponential kernel (1/s)
    :param tau: refractory period in seconds
    :param clock: time-stamping quantum in seconds, None for exact times
    """

    def __init__(self, theta, alpha=0, tau=0, clock=None):
        theta = float(theta)
        alpha = float(alpha)
        if not (np.isfinite(theta) and theta > 0):
            raise ConfigError("theta must be positive, got %s" % theta)
        if not (np.isfinite(alpha) and alpha >= 0):
            raise ConfigError("alpha must be non-negative, got %s" % alpha)
        tau = as_fraction(tau)
        if tau < 0:
            raise ConfigError("tau must be non-negative, got %s" % tau)
        if clock is not None:
            clock = as_fraction(clock)
            if clock <= 0:
                raise ConfigError("clock must be positive, got %s" % clock)

        self.theta = theta
        """Threshold (volt-seconds)"""

        self.alpha = alpha
        """Leak factor (1/s)"""

        self.tau = tau
        """Refractory period (Fraction seconds)"""

        self.clock = clock
        """Time-stamping quantum (Fraction seconds) or None"""

    @property
    def exact(self):
        return self.clock is None

    def replace(self, **kwargs):
        args = {"theta": self.theta, "alpha": self.alpha, "tau": self.tau,
                "clock": self.clock}
        args.update(kwargs)
        return IfcParams(**args)

    def header(self):
        """Header fields of a pulse-train file."""
        return {
            "clock_seconds": None if self.clock is None else str(self.clock),
            "theta": self.theta,
            "alpha": self.alpha,
            "tau": str(self.tau),
        }

    def __eq__(self, other):
        if not isinstance(other, IfcParams):
            return NotImplemented
        return ((self.theta, self.alpha, self.tau, self.clock) ==
                (other.theta, other.alpha, other.tau, other.clock))

    def __repr__(self):
        return "<IfcParams theta={} alpha={} tau={} clock={}>".format(
            self.theta, self.alpha, self.tau, self.clock)
