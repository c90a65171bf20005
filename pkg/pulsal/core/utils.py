#-
# Copyright (c) 2026 The pulsal developers
# All rights reserved.
#

import logging
import sys
import time

__all__ = ("ProgressPrinter", "ProgressTimer")

logger = logging.getLogger(__name__)


class ProgressPrinter:
    """
    Terminal counter of the completed points of a run.

    Nothing is printed unless the module logger is enabled for the given
    level, so that quiet runs and tests stay silent.

    :param total: number of points of the run
    :param desc: label printed before the counter
    :param level: log level enabling the output
    :param stream: output stream, stdout by default
    """

    def __init__(self, total, desc="Progress", level=logging.INFO,
                 stream=None):
        self.total = total
        self.desc = desc
        self.level = level
        self.stream = stream or sys.stdout
        self.done = 0

    @property
    def enabled(self):
        return self.total > 0 and logger.isEnabledFor(self.level)

    def advance(self, step=1):
        self.done = min(self.done + step, self.total)
        if not self.enabled:
            return
        self.stream.write("\r%s %d/%d [%d%%]" % (
            self.desc, self.done, self.total, 100 * self.done // self.total))
        self.stream.flush()

    def finish(self):
        if self.enabled:
            self.stream.write("\n")
            self.stream.flush()


class ProgressTimer:
    """
    Context manager logging the wall time of a block.
    The elapsed seconds are available as :attr:`elapsed` on exit.
    """

    def __init__(self, msg="", logger_inst=None):
        self.msg = msg
        self.logger = logger_inst or logger
        self.elapsed = None
        self._start = None

    def __enter__(self):
        self.logger.debug("%s started", self.msg)
        self._start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc_value, traceback):
        self.elapsed = time.perf_counter() - self._start
        if exc_type is None:
            self.logger.info("%s done in %.3fs", self.msg, self.elapsed)
        else:
            self.logger.info("%s failed after %.3fs", self.msg, self.elapsed)
