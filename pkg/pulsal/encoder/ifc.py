#-
# Copyright (c) 2026 The pulsal developers
# All rights reserved.
#

"""
Integrate-and-fire converter simulation.

The converter integrates the input against the leaky kernel
e^{alpha (s - t_k)}: between pulses the state y follows dy/dt = f - alpha y.
A pulse of polarity p is fired when y reaches p * theta, then the
integrator is reset to 0 and held there for the refractory period tau.
"""

import logging
import numpy as np

from collections import namedtuple
from fractions import Fraction

from scipy.integrate import cumulative_trapezoid
from scipy.optimize import bisect

from pulsal.core.error import ConfigError
from pulsal.pulse.model import Polarity, PulseTrain, as_fraction

logger = logging.getLogger(__name__)

__all__ = ("EncoderConfig", "IFCEncoder", "QuantizedTrain", "encode",
           "verify_area_constraint", "quantize_times")

QuantizedTrain = namedtuple("QuantizedTrain", ["train", "collisions"])

_REFINE_NODES, _REFINE_WEIGHTS = np.polynomial.legendre.leggauss(8)
_CHECK_NODES, _CHECK_WEIGHTS = np.polynomial.legendre.leggauss(16)

# bound on alpha * block length, keeps the kernel weights finite
_MAX_LEAK_EXPONENT = 30.0
_MIN_BLOCK = 64
_MAX_BLOCK = 2 ** 20
_CHECK_CHUNK = 2 ** 15


class EncoderConfig:
    """
    Numerical settings of the encoder.

    :param oversampling: integration grid steps per base step
    :param base_step: declared base step of the integration grid (s)
    :param tolerance: crossing refinement tolerance (s)
    """

    def __init__(self, oversampling=1, base_step=1e-6, tolerance=1e-12):
        if int(oversampling) != oversampling or oversampling < 1:
            raise ConfigError("oversampling must be an integer >= 1")
        if not base_step > 0:
            raise ConfigError("base_step must be positive")
        if not tolerance > 0:
            raise ConfigError("tolerance must be positive")
        self.oversampling = int(oversampling)
        self.base_step = float(base_step)
        self.tolerance = float(tolerance)

    @property
    def step(self):
        """Integration grid step in seconds."""
        return self.base_step / self.oversampling

    def __repr__(self):
        return "<EncoderConfig oversampling={} base_step={} tol={}>".format(
            self.oversampling, self.base_step, self.tolerance)


def _rationalize(t, tolerance):
    """Simplest fraction within 10 * tolerance of t."""
    exact = Fraction(t)
    bound = Fraction(10 * tolerance)
    for digits in range(1, 13):
        candidate = exact.limit_denominator(10 ** digits)
        if abs(candidate - exact) <= bound:
            return candidate
    return as_fraction(t)


def _leaky_integral(signal, a, b, alpha, t_ref, nodes, weights):
    """Gauss-Legendre estimate of int_a^b f(s) e^{alpha (s - t_ref)} ds."""
    half = (b - a) / 2
    s = (a + b) / 2 + half * nodes
    return half * np.dot(weights,
                         signal.evaluate(s) * np.exp(alpha * (s - t_ref)))


class IFCEncoder:
    """
    Integrate-and-fire encoder.

    The leaky integral is evaluated with the trapezoidal rule on a uniform
    grid anchored at the last reset, in blocks sized after the last
    inter-pulse interval. The first grid point where |y| >= theta
    brackets the crossing, which is refined by bisection on a
    Gauss-Legendre evaluation of the state inside the grid step.

    :param params: converter parameters
    :type params: :class:`pulsal.pulse.IfcParams`
    :param config: numerical settings
    :type config: :class:`EncoderConfig`
    """

    def __init__(self, params, config=None):
        self.params = params
        self.config = config or EncoderConfig()

        self.raw_times = []
        """Crossing times of the last encode() before quantization."""

        self.collisions = 0
        """Quantizer collisions of the last encode()."""

    def _block_steps(self, last_ipi, previous):
        dt = self.config.step
        if previous is not None:
            n = 2 * previous
        elif last_ipi is not None:
            n = int(2 * last_ipi / dt)
        else:
            n = 4096
        n = max(_MIN_BLOCK, min(n, _MAX_BLOCK))
        if self.params.alpha > 0:
            n = min(n, max(1, int(_MAX_LEAK_EXPONENT /
                                  (self.params.alpha * dt))))
        return n

    def _state(self, signal, a, ya, t):
        """Integrator state at t given the state ya at a."""
        alpha = self.params.alpha
        integral = _leaky_integral(signal, a, t, alpha, a, _REFINE_NODES,
                                   _REFINE_WEIGHTS)
        return np.exp(-alpha * (t - a)) * (ya + integral)

    def _refine(self, signal, a, ya, b, yb, polarity):
        target = polarity * self.params.theta
        linear = a + (b - a) * (target - ya) / (yb - ya)

        def residual(t):
            return self._state(signal, a, ya, t) - target

        hb = residual(b)
        if hb == 0:
            return b
        if (ya - target) * hb > 0:
            # quadrature and grid disagree at the grid point
            return linear
        return bisect(residual, a, b, xtol=self.config.tolerance)

    def encode(self, signal):
        """
        Encode a signal into a pulse train.

        :param signal: the input signal
        :type signal: :class:`pulsal.encoder.SignalSource`
        :return: the pulse train, exact-time or clocked like the params
        :raises SignalError: if the signal has non-finite values
        """
        theta = self.params.theta
        alpha = self.params.alpha
        tau = float(self.params.tau)
        dt = self.config.step
        end = signal.duration
        exact = self.params.exact

        times = []
        polarities = []
        anchor = 0.0
        y_anchor = 0.0
        last_pulse = 0.0
        last_ipi = None
        steps = None
        while anchor < end:
            steps = self._block_steps(last_ipi, steps)
            n_max = int((end - anchor) / dt)
            if n_max <= steps:
                t = anchor + dt * np.arange(n_max + 1)
                if t[-1] < end:
                    t = np.append(t, end)
            else:
                t = anchor + dt * np.arange(steps + 1)
            if len(t) < 2:
                break
            weight = np.exp(alpha * (t - anchor))
            area = cumulative_trapezoid(signal.evaluate(t) * weight, t,
                                        initial=0)
            y = (y_anchor + area) / weight
            hit = np.flatnonzero(np.abs(y[1:]) >= theta)
            if hit.size == 0:
                anchor, y_anchor = t[-1], y[-1]
                continue
            j = hit[0] + 1
            polarity = Polarity.POSITIVE if y[j] > 0 else Polarity.NEGATIVE
            tk = self._refine(signal, t[j - 1], y[j - 1], t[j], y[j],
                              polarity)
            if exact:
                tk_exact = _rationalize(tk, self.config.tolerance)
                times.append(tk_exact)
                tk = float(tk_exact)
            else:
                times.append(tk)
            polarities.append(polarity)
            last_ipi = tk - last_pulse
            last_pulse = tk
            anchor = tk + tau
            y_anchor = 0.0
            steps = None

        self.raw_times = [float(t) for t in times]
        if not times:
            logger.info("No pulses for %s (theta=%g, alpha=%g)", signal,
                        theta, alpha)
        train = PulseTrain.from_seconds(times, polarities,
                                        tau=self.params.tau)
        self.collisions = 0
        if not exact:
            train, self.collisions = quantize_times(train, self.params.clock)
            train = train.replace(tau=self.params.tau)
        logger.debug("Encoded %s into %d pulses", signal, len(train))
        return train


def encode(signal, params, config=None):
    """
    Encode a signal with an integrate-and-fire converter.

    :param signal: the input signal
    :param params: converter parameters
    :param config: numerical settings, defaults to :class:`EncoderConfig`
    :return: :class:`pulsal.pulse.PulseTrain`
    """
    return IFCEncoder(params, config).encode(signal)


def _checked_integral(signal, a, b, alpha, t_ref, step):
    """Composite 16-node Gauss-Legendre with panels of at most one step."""
    if b <= a:
        return 0.0
    n = max(1, int(np.ceil((b - a) / step)))
    h = (b - a) / n
    total = 0.0
    for start in range(0, n, _CHECK_CHUNK):
        lo = a + h * np.arange(start, min(n, start + _CHECK_CHUNK))
        s = lo[:, None] + (h / 2) * (1 + _CHECK_NODES[None, :])
        values = signal.evaluate(s.ravel()).reshape(s.shape)
        values = values * np.exp(alpha * (s - t_ref))
        total += (h / 2) * np.sum(values @ _CHECK_WEIGHTS)
    return total


def verify_area_constraint(train, signal, params, config=None):
    """
    Measure how well a train satisfies the area constraint.

    For every interval the leaky integral of the signal is compared to
    p_k * theta. The first interval starts at the origin, the following
    ones tau after the previous pulse.

    :return: max absolute residual as a fraction of theta, 0 for an
    empty train
    """
    config = config or EncoderConfig()
    theta = params.theta
    tau = float(params.tau)
    times = train.seconds
    residual = 0.0
    start = 0.0
    for tk, p in zip(times, train.polarities):
        area = _checked_integral(signal, start, tk, params.alpha, tk,
                                 config.step)
        residual = max(residual, abs(area - p * theta) / theta)
        start = tk + tau
    return residual


def quantize_times(train, clock):
    """
    Round pulse times to the nearest tick of the time-stamping clock.

    A pulse rounded onto the tick of the previous one is pushed to the
    following tick and counted as a collision.

    :return: :class:`QuantizedTrain` with the clocked train and the
    number of collisions
    """
    clock = as_fraction(clock)
    if clock <= 0:
        raise ConfigError("clock must be positive, got %s" % clock)
    ticks = []
    collisions = 0
    for t in train.times:
        tick = round(t / clock)
        if ticks and tick <= ticks[-1]:
            tick = ticks[-1] + 1
            collisions += 1
        ticks.append(tick)
    if collisions:
        logger.info("Quantizer collisions: %d", collisions)
    quantized = PulseTrain(ticks, train.polarities, clock=clock,
                           tau=train.tau)
    return QuantizedTrain(quantized, collisions)
