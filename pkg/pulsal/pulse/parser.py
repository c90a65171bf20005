#-
# Copyright (c) 2026 The pulsal developers
# All rights reserved.
#

"""
Pulse-train files.

Two encodings are supported. The plain-text encoding starts with a header
line of ``key=value`` pairs followed by one ``tick polarity`` row per pulse::

    clock_seconds=1/1000000 theta=0.001 alpha=40 tau=0
    1021 1
    2042 1

The JSON-lines encoding has a header object followed by one record per
pulse, ``{"tick": 1021, "polarity": 1}``. Exact-time files declare
``clock_seconds=none`` and give rational ``time`` values ("8/3") instead
of ticks.
"""

import io
import json
import logging
import pandas as pd

from pulsal.core.error import SignalFormatError, PulsalError
from pulsal.pulse.model import PulseTrain, IfcParams, as_fraction

logger = logging.getLogger(__name__)

__all__ = ("PulseTrainFileParser", "write_pulse_train")

HEADER_KEYS = ("clock_seconds", "theta", "alpha", "tau")


class PulseTrainFileParser:
    """
    Parse a pulse-train file in text or JSON-lines format.

    :param path: path of the file
    :type path: str
    """

    def __init__(self, path):
        self.path = path
        """Path of the pulse-train file."""

        self.header = None
        """Parsed header fields."""

    def _parse_header(self, fields):
        missing = [k for k in HEADER_KEYS if k not in fields]
        if missing:
            raise SignalFormatError("{}: missing header fields {}".format(
                self.path, ", ".join(missing)))
        clock = fields["clock_seconds"]
        if clock is None or str(clock).strip().lower() in ("none", ""):
            clock = None
        try:
            params = IfcParams(theta=fields["theta"], alpha=fields["alpha"],
                               tau=fields["tau"], clock=clock)
        except (PulsalError, ValueError, ZeroDivisionError) as e:
            raise SignalFormatError("{}: bad header: {}".format(self.path, e))
        self.header = fields
        return params

    def _parse_text(self, header_line, body):
        fields = {}
        for item in header_line.split():
            key, sep, value = item.partition("=")
            if not sep:
                raise SignalFormatError("{}: malformed header item {}".format(
                    self.path, item))
            fields[key.strip()] = value.strip()
        params = self._parse_header(fields)
        col = "time" if params.exact else "tick"
        if not body.strip():
            return params, pd.DataFrame({col: [], "polarity": []})
        df = pd.read_csv(io.StringIO(body), sep=r"\s+", header=None,
                         names=[col, "polarity"], comment="#",
                         dtype={col: str, "polarity": str})
        return params, df

    def _parse_jsonl(self, header_line, body):
        try:
            fields = json.loads(header_line)
        except ValueError as e:
            raise SignalFormatError("{}: bad header: {}".format(self.path, e))
        params = self._parse_header(fields)
        col = "time" if params.exact else "tick"
        if not body.strip():
            return params, pd.DataFrame({col: [], "polarity": []})
        df = pd.read_json(io.StringIO(body), lines=True, dtype=False,
                          convert_dates=False)
        if col not in df.columns or "polarity" not in df.columns:
            raise SignalFormatError("{}: records need {} and polarity".format(
                self.path, col))
        return params, df

    def parse(self):
        """
        Read the file.

        :return: tuple (train, params)
        :raises SignalFormatError: if the file is malformed
        """
        with open(self.path, "r") as fd:
            content = fd.read()
        lines = content.lstrip().split("\n", 1)
        header_line = lines[0].strip()
        body = lines[1] if len(lines) > 1 else ""
        if not header_line:
            raise SignalFormatError("{}: empty file".format(self.path))
        try:
            if header_line.startswith("{"):
                params, df = self._parse_jsonl(header_line, body)
            else:
                params, df = self._parse_text(header_line, body)
            polarities = [int(p) for p in df["polarity"]]
            if params.exact:
                values = [as_fraction(t) for t in df["time"]]
            else:
                values = [int(t) for t in df["tick"]]
            train = PulseTrain(values, polarities, clock=params.clock,
                               tau=params.tau)
        except SignalFormatError:
            raise
        except (PulsalError, ValueError, TypeError, ZeroDivisionError) as e:
            raise SignalFormatError("{}: {}".format(self.path, e))
        logger.debug("Parsed %d pulses from %s", len(train), self.path)
        return train, params


def write_pulse_train(path, train, params, fmt="text"):
    """
    Write a pulse train file readable by :class:`PulseTrainFileParser`.

    The clock quantum is the one of the train, the other header fields
    come from the converter parameters.

    :param fmt: "text" or "jsonl"
    """
    header = params.header()
    header["clock_seconds"] = None if train.exact else str(train.clock)
    if train.exact:
        col, values = "time", [str(t) for t in train.times]
    else:
        col, values = "tick", list(train.ticks)
    df = pd.DataFrame({col: values,
                       "polarity": [int(p) for p in train.polarities]},
                      columns=[col, "polarity"])
    with open(path, "w") as fd:
        if fmt == "text":
            fd.write(" ".join("{}={}".format(k, "none" if v is None else v)
                              for k, v in header.items()) + "\n")
            if len(df):
                df.to_csv(fd, sep=" ", header=False, index=False)
        elif fmt == "jsonl":
            fd.write(json.dumps(header) + "\n")
            if len(df):
                records = df.to_json(orient="records", lines=True)
                fd.write(records.rstrip("\n") + "\n")
        else:
            raise ValueError("Unknown pulse-train format %s" % fmt)
    logger.debug("Wrote %d pulses to %s", len(train), path)
