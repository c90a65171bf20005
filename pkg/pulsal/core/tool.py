#-
# Copyright (c) 2026 The pulsal developers
# All rights reserved.
#

import sys
import os
import json
import logging
import cProfile

from fractions import Fraction

from pulsal.core.driver import TaskDriver, Option, TaskDriverArgumentParser
from pulsal.core.error import PulsalError, UsageError

__all__ = ("BaseToolTaskDriver", "run_driver_tool", "run_tool_main",
           "file_path_validator", "positive_float_validator",
           "non_negative_float_validator", "seconds_validator",
           "float_list_validator")

logger = logging.getLogger(__name__)


def file_path_validator(value):
    """
    Validate input parameter of argparse argument.
    Accept a file path.
    """
    return os.path.abspath(os.path.expanduser(value))


def positive_float_validator(value):
    """
    Validate input parameter of argparse argument.
    Accept a finite float > 0.
    """
    n = float(value)
    if not n > 0 or n == float("inf"):
        raise ValueError("Expected a positive number, got %s" % value)
    return n


def non_negative_float_validator(value):
    """
    Validate input parameter of argparse argument.
    Accept a finite float >= 0.
    """
    n = float(value)
    if not n >= 0 or n == float("inf"):
        raise ValueError("Expected a non-negative number, got %s" % value)
    return n


def seconds_validator(value):
    """
    Validate a time value in seconds.
    Accepts decimals, exponents and ratios ("1e-6", "8/3") and returns
    an exact :class:`fractions.Fraction` >= 0.
    """
    try:
        t = Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError):
        raise ValueError("Invalid time value %s" % value)
    if t < 0:
        raise ValueError("Time must be non-negative, got %s" % value)
    return t


def float_list_validator(value):
    """
    Validate a comma separated list of positive floats, returned sorted.
    """
    if isinstance(value, (list, tuple)):
        items = value
    else:
        items = [v for v in str(value).replace(",", " ").split() if v]
    values = sorted(positive_float_validator(v) for v in items)
    if not values:
        raise ValueError("Empty value list")
    return values


class BaseToolTaskDriver(TaskDriver):
    """Base taskdriver that handles logging configuration and profiling"""
    verbose = Option(action="store_true", help="Show debug output")
    profile = Option(action="store_true", help="Enable profiling")
    logfile = Option(help="Log output file")

    def __init__(self, **kwargs):
        super().__init__(**kwargs)

        verbose = self.config.verbose and not self.config.profile
        logging.basicConfig(
            level=logging.DEBUG if verbose else logging.INFO,
            filename=self.config.logfile)

        if self.config.profile:
            run_method = self.run
            def profiling_run():
                pr = cProfile.Profile()
                try:
                    return pr.runcall(run_method)
                finally:
                    pr.create_stats()
                    pr.print_stats(sort="cumulative")
            self.run = profiling_run


def _find_config_file(argv):
    """Extract the --config file from the command line, if any."""
    peek = TaskDriverArgumentParser(add_help=False)
    peek.add_argument("--config", "--config-file", dest="config_file")
    known, _ = peek.parse_known_args(argv)
    return known.config_file


def run_driver_tool(task, argv=None, extra_args=tuple()):
    """
    Run a TaskDriver as a CLI tool

    When the command line names a ``--config`` file its values become the
    parser defaults before the command line is parsed.

    :param task: the task driver
    :type task: :class:`TaskDriver`
    :param argv: argument list
    :type argv: iterable
    :return: the task instance after run()
    """
    if argv is None:
        argv = sys.argv[1:]
    parser = TaskDriverArgumentParser(description=task.description)
    task.make_config(parser)
    config_file = _find_config_file(argv)
    if config_file:
        parser.apply_config_file(file_path_validator(config_file))
    args = parser.parse_args(args=argv)
    task_inst = task(*extra_args, config=args)
    task_inst.run()
    return task_inst


def run_tool_main(task, argv=None, stream=None):
    """
    Console script wrapper around :func:`run_driver_tool`.

    Failures, command line errors included, are logged and reported as a
    JSON record on stderr. Command line errors exit with status 2 like
    argparse does.

    :return: the process exit status
    """
    stream = stream or sys.stderr
    try:
        run_driver_tool(task, argv)
    except (PulsalError, OSError, ValueError) as e:
        logger.error("%s failed: %s", task.__name__, e)
        record = {"status": "error", "error": type(e).__name__,
                  "message": str(e)}
        stream.write(json.dumps(record) + "\n")
        return 2 if isinstance(e, UsageError) else 1
    return 0
