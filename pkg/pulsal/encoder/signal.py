#-
# Copyright (c) 2026 The pulsal developers
# All rights reserved.
#

"""
Analog signal sources fed to the integrate-and-fire encoder.
"""

import logging
import numpy as np

from pulsal.core.error import SignalError

logger = logging.getLogger(__name__)

__all__ = ("SignalSource", "ConstantSignal", "SinusoidSignal",
           "SampledSignal", "SumSignal")


class SignalSource:
    """
    Base class of signals defined over the window [0, duration].

    Subclasses implement :meth:`_evaluate` on numpy arrays of times.
    """

    kind = "analytic"

    def __init__(self, duration):
        duration = float(duration)
        if not (np.isfinite(duration) and duration > 0):
            raise SignalError("Signal duration must be positive, got %s" %
                              duration)
        self.duration = duration
        """Length of the signal window in seconds."""

    def _evaluate(self, t):
        raise NotImplementedError("Abstract method")

    def evaluate(self, t):
        """
        Evaluate the signal at the given times (vectorized).

        :raises SignalError: if the signal is not finite at some point
        """
        t = np.asarray(t, dtype=float)
        values = np.asarray(self._evaluate(t), dtype=float)
        if values.shape != t.shape:
            values = np.broadcast_to(values, t.shape).copy()
        if not np.all(np.isfinite(values)):
            raise SignalError("Non-finite signal values in %s" % self)
        return values

    def grid(self, rate, end=None):
        """Uniform time grid on [0, end] at the given sample rate."""
        end = self.duration if end is None else min(end, self.duration)
        n = int(np.floor(end * rate + 1e-9)) + 1
        return np.arange(n) / rate

    def sample(self, rate, end=None):
        """
        Sample the signal on a uniform grid.

        :return: tuple (times, values)
        """
        t = self.grid(rate, end)
        return t, self.evaluate(t)


class ConstantSignal(SignalSource):
    """Constant level in volts."""

    def __init__(self, value, duration):
        super().__init__(duration)
        self.value = float(value)
        if not np.isfinite(self.value):
            raise SignalError("Non-finite constant %s" % value)

    def _evaluate(self, t):
        return np.full_like(t, self.value)

    def __repr__(self):
        return "<ConstantSignal {} V, {} s>".format(self.value, self.duration)


class SinusoidSignal(SignalSource):
    """amplitude * sin(2 pi frequency t + phase)"""

    def __init__(self, amplitude, frequency, phase=0.0, duration=1.0):
        super().__init__(duration)
        self.amplitude = float(amplitude)
        self.frequency = float(frequency)
        self.phase = float(phase)
        if not np.all(np.isfinite([self.amplitude, self.frequency,
                                   self.phase])):
            raise SignalError("Non-finite sinusoid parameters")

    def _evaluate(self, t):
        return self.amplitude * np.sin(
            2 * np.pi * self.frequency * t + self.phase)

    def __repr__(self):
        return "<SinusoidSignal {} V, {} Hz, {} rad, {} s>".format(
            self.amplitude, self.frequency, self.phase, self.duration)


class SampledSignal(SignalSource):
    """
    Uniformly sampled signal, linearly interpolated between samples.
    Sample k is taken at k / rate and the window covers len(values) / rate
    seconds, the last value is held to the end of the window.
    """

    kind = "uniform-samples"

    def __init__(self, values, rate):
        values = np.array(values, dtype=float)
        rate = float(rate)
        if values.ndim != 1 or len(values) == 0:
            raise SignalError("Sampled signal needs a 1-D array of samples")
        if not (np.isfinite(rate) and rate > 0):
            raise SignalError("Sample rate must be positive, got %s" % rate)
        if not np.all(np.isfinite(values)):
            raise SignalError("Non-finite sample values")
        super().__init__(len(values) / rate)
        self.values = values
        self.values.setflags(write=False)
        self.rate = rate

    def _evaluate(self, t):
        sample_times = np.arange(len(self.values)) / self.rate
        return np.interp(t, sample_times, self.values)

    def __repr__(self):
        return "<SampledSignal {} samples at {} Hz>".format(
            len(self.values), self.rate)


class SumSignal(SignalSource):
    """Pointwise sum of signals, defined on their common window."""

    def __init__(self, parts):
        parts = list(parts)
        if not parts:
            raise SignalError("Empty signal sum")
        super().__init__(min(p.duration for p in parts))
        self.parts = parts

    def _evaluate(self, t):
        return sum(p.evaluate(t) for p in self.parts)

    def __repr__(self):
        return "<SumSignal {}>".format(" + ".join(repr(p)
                                                  for p in self.parts))
