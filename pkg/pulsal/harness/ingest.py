#-
# Copyright (c) 2026 The pulsal developers
# All rights reserved.
#

"""
Sampled signal files: CSV tables of (time, value) rows and WAV audio.
"""

import logging
import os
import numpy as np
import pandas as pd

from scipy.io import wavfile

from pulsal.core.error import ConfigError, SignalError, SignalFormatError
from pulsal.encoder.signal import SampledSignal

logger = logging.getLogger(__name__)

__all__ = ("SignalFileParser", "ingest_signal", "SIGNAL_FORMATS")

SIGNAL_FORMATS = ("csv", "wav")

# relative jitter of the CSV sample spacing accepted as uniform
UNIFORM_TOLERANCE = 1e-6


class SignalFileParser:
    """
    Load a uniformly sampled signal.

    CSV files have a ``time,value`` header; a file with a single ``value``
    column needs the sample rate. WAV samples are scaled to volts by the
    full-scale voltage, the voltage of the largest representable sample.

    :param path: path of the file
    :param fmt: "csv" or "wav", guessed from the extension if None
    :param full_scale: full-scale voltage, required for WAV files
    :param rate: sample rate of single-column CSV files (Hz)
    """

    def __init__(self, path, fmt=None, full_scale=None, rate=None):
        self.path = path
        if fmt is None:
            fmt = os.path.splitext(path)[1].lstrip(".").lower()
        if fmt not in SIGNAL_FORMATS:
            raise ConfigError("Unknown signal format {} for {}".format(
                fmt, path))
        self.fmt = fmt
        self.full_scale = full_scale
        self.rate = rate

    def _parse_csv(self):
        try:
            df = pd.read_csv(self.path, comment="#", skipinitialspace=True)
        except (ValueError, pd.errors.ParserError) as e:
            raise SignalFormatError("{}: {}".format(self.path, e))
        df.columns = [str(c).strip().lower() for c in df.columns]
        if "value" not in df.columns:
            raise SignalFormatError("{}: missing value column".format(
                self.path))
        try:
            values = df["value"].astype(float).to_numpy()
        except ValueError as e:
            raise SignalFormatError("{}: {}".format(self.path, e))
        if "time" in df.columns:
            times = df["time"].astype(float).to_numpy()
            if len(times) < 2:
                raise SignalFormatError("{}: need at least two samples".format(
                    self.path))
            steps = np.diff(times)
            step = (times[-1] - times[0]) / (len(times) - 1)
            if not step > 0 or \
               np.max(np.abs(steps - step)) > UNIFORM_TOLERANCE * step:
                raise SignalFormatError("{}: non-uniform sampling".format(
                    self.path))
            if abs(times[0]) > UNIFORM_TOLERANCE * step:
                raise SignalFormatError("{}: first sample must be at t=0"
                                        .format(self.path))
            rate = 1 / step
        elif self.rate is not None:
            rate = self.rate
        else:
            raise SignalFormatError("{}: no time column and no sample rate"
                                    .format(self.path))
        return values, rate

    def _parse_wav(self):
        if self.full_scale is None:
            raise ConfigError("WAV input needs the full-scale voltage")
        try:
            rate, data = wavfile.read(self.path)
        except ValueError as e:
            raise SignalFormatError("{}: {}".format(self.path, e))
        if data.ndim != 1:
            raise SignalFormatError("{}: expected a mono file, got {} "
                                    "channels".format(self.path,
                                                      data.shape[1]))
        if np.issubdtype(data.dtype, np.floating):
            scale = 1.0
            values = data.astype(float)
        elif data.dtype == np.uint8:
            scale = 128.0
            values = data.astype(float) - 128
        else:
            scale = float(np.iinfo(data.dtype).max) + 1
            values = data.astype(float)
        return values / scale * float(self.full_scale), rate

    def parse(self):
        """
        :return: :class:`pulsal.encoder.SampledSignal`
        :raises SignalFormatError: if the file can not be parsed
        """
        if self.fmt == "csv":
            values, rate = self._parse_csv()
        else:
            values, rate = self._parse_wav()
        try:
            signal = SampledSignal(values, rate)
        except SignalError as e:
            raise SignalFormatError("{}: {}".format(self.path, e))
        logger.debug("Loaded %s from %s", signal, self.path)
        return signal


def ingest_signal(path, fmt=None, full_scale=None, rate=None):
    """Load a sampled signal file, see :class:`SignalFileParser`."""
    return SignalFileParser(path, fmt, full_scale, rate).parse()
