#-
# Copyright (c) 2026 The pulsal developers
# All rights reserved.
#

import bisect
import logging
import numpy as np

from collections import OrderedDict, namedtuple
from fractions import Fraction

from pulsal.core.error import GridMismatchError, PreconditionError, \
    SignalError

logger = logging.getLogger(__name__)

__all__ = ("snr", "SnrPair", "MetricsRecord", "pulse_density_ratio",
           "pulses_per_interval", "SNR_CAP_DB")

SNR_CAP_DB = 200.0
"""Value reported for an SNR with zero or negative noise power."""

SnrPair = namedtuple("SnrPair", ["power_db", "error_db", "power_saturated",
                                 "error_saturated"])
SnrPair.__doc__ = """
Signal to noise ratios of a reconstruction.

power_db uses the power difference P_ds - P_rs as the noise power,
error_db the power of the error signal.
"""


def _ratio_db(signal_power, noise_power, cap):
    if noise_power <= 0:
        return cap, True
    value = 10 * np.log10(signal_power / noise_power)
    if value >= cap:
        return cap, True
    return float(value), False


def snr(desired, reconstructed, cap=SNR_CAP_DB):
    """
    Compare a reconstruction to the desired signal.

    :param desired: desired samples
    :param reconstructed: reconstructed samples on the same grid
    :param cap: saturation value in dB
    :return: :class:`SnrPair`
    :raises GridMismatchError: if the sample arrays differ in shape
    :raises SignalError: if the desired signal has zero power
    """
    desired = np.asarray(desired, dtype=float)
    reconstructed = np.asarray(reconstructed, dtype=float)
    if desired.shape != reconstructed.shape:
        raise GridMismatchError("Grid mismatch: {} vs {} samples".format(
            desired.shape, reconstructed.shape))
    if desired.size == 0:
        raise SignalError("Empty signal")
    p_ds = float(np.mean(desired ** 2))
    if p_ds == 0:
        raise SignalError("Desired signal has zero power")
    p_rs = float(np.mean(reconstructed ** 2))
    p_err = float(np.mean((desired - reconstructed) ** 2))
    power, power_sat = _ratio_db(p_ds, p_ds - p_rs, cap)
    error, error_sat = _ratio_db(p_ds, p_err, cap)
    if abs(power - error) > 10:
        logger.info("SNR formulas disagree: power difference %.2f dB, "
                    "error power %.2f dB", power, error)
    return SnrPair(power, error, power_sat, error_sat)


def pulses_per_interval(output, reference, horizon=None):
    """
    Count the output pulses in each half-open interval (t_{k-1}, t_k] of
    a reference train, t_0 being the origin.

    :param output: counted train
    :param reference: train whose pulses delimit the intervals
    :param horizon: only intervals ending at or before this time are
    counted, defaults to the last reference pulse
    :return: int array, one count per interval
    """
    times = output.times
    limit = None if horizon is None else Fraction(horizon)
    counts = []
    prev = 0
    for t in reference.times:
        if limit is not None and t > limit:
            break
        upto = bisect.bisect_right(times, t)
        counts.append(upto - prev)
        prev = upto
    return np.array(counts, dtype=int)


def pulse_density_ratio(train, signal, fraction=0.1, rate=1e5, end=None):
    """
    Pulse density where the signal is weakest relative to the global
    density.

    The band is made of the grid points holding the given fraction of the
    lowest |amplitude| values; a pulse belongs to the band when its
    nearest grid point does.

    :param train: pulse train of the signal
    :param signal: :class:`pulsal.encoder.SignalSource`
    :param end: end of the measurement window, defaults to the signal
    duration
    :return: band density / global density
    :raises PreconditionError: if the window holds no pulse
    """
    if not 0 < fraction < 1:
        raise PreconditionError("Band fraction must be in (0, 1)")
    end = signal.duration if end is None else min(end, signal.duration)
    grid = signal.grid(rate, end)
    magnitude = np.abs(signal.evaluate(grid))
    band = magnitude <= np.quantile(magnitude, fraction)
    times = np.asarray(train.seconds)
    times = times[times <= end]
    if len(times) == 0:
        raise PreconditionError("No pulse in the measurement window")
    nearest = np.clip(np.rint(times * rate).astype(int), 0, len(grid) - 1)
    band_time = np.count_nonzero(band) / len(grid) * end
    band_density = np.count_nonzero(band[nearest]) / band_time
    return float(band_density / (len(times) / end))


class MetricsRecord:
    """
    Metrics of one experiment point.

    SNR fields are None for experiments without a reconstruction; any
    SNR value is finite, infinite results are capped and flagged as
    saturated.

    :param experiment: experiment id
    :param parameters: mapping of the parameter values of the point
    :param snr_pair: :class:`SnrPair` or None
    :param counts: (positive, negative) pulse counts of the output train
    :param sup_error: max absolute reconstruction error or None
    :param runtime: wall time of the point in seconds
    :param extra: experiment specific values
    :param artifacts: pulse trains and reconstructions written next to
    the metrics, never part of the table
    """

    def __init__(self, experiment, parameters, snr_pair=None, counts=(0, 0),
                 sup_error=None, runtime=0.0, extra=None, artifacts=None):
        self.experiment = experiment
        self.parameters = OrderedDict(parameters)
        if snr_pair is not None:
            for value in snr_pair[:2]:
                if not np.isfinite(value):
                    raise SignalError("Non-finite SNR %s" % value)
        self.snr = snr_pair
        self.positive_pulses, self.negative_pulses = counts
        self.sup_error = sup_error
        self.runtime = runtime
        self.extra = OrderedDict(extra or {})
        self.artifacts = OrderedDict(artifacts or {})

    @property
    def snr_power_db(self):
        return None if self.snr is None else self.snr.power_db

    @property
    def snr_error_db(self):
        return None if self.snr is None else self.snr.error_db

    def as_row(self):
        """Flat row of the long-format metrics table."""
        row = OrderedDict(experiment=self.experiment)
        row.update(self.parameters)
        row["snr_power_db"] = self.snr_power_db
        row["snr_error_db"] = self.snr_error_db
        row["snr_power_saturated"] = (None if self.snr is None else
                                      self.snr.power_saturated)
        row["snr_error_saturated"] = (None if self.snr is None else
                                      self.snr.error_saturated)
        row["positive_pulses"] = self.positive_pulses
        row["negative_pulses"] = self.negative_pulses
        row["sup_error"] = self.sup_error
        row["runtime"] = self.runtime
        for key, value in self.extra.items():
            if np.isscalar(value) or value is None:
                row[key] = value
        return row

    def as_dict(self):
        """JSON-friendly record, extra values included."""
        record = self.as_row()
        record["parameters"] = OrderedDict(
            (k, _jsonable(v)) for k, v in self.parameters.items())
        record["extra"] = OrderedDict(
            (k, _jsonable(v)) for k, v in self.extra.items())
        return OrderedDict((k, _jsonable(v)) for k, v in record.items())

    def reproducible_fields(self):
        """Every field except the runtime."""
        record = self.as_dict()
        del record["runtime"]
        return record

    def __repr__(self):
        return "<MetricsRecord {} {} snr={}>".format(
            self.experiment, dict(self.parameters), self.snr)


def _jsonable(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, (list, tuple, np.ndarray)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return OrderedDict((k, _jsonable(v)) for k, v in value.items())
    return value
