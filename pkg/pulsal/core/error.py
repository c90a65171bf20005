#-
# Copyright (c) 2026 The pulsal developers
# All rights reserved.
#

__all__ = ("PulsalError", "TrainValidationError", "PreconditionError",
           "SignalError", "SignalFormatError", "GridMismatchError",
           "UnknownExperimentError", "ConfigError", "UsageError")


class PulsalError(RuntimeError):
    """Base class of all pulsal errors."""
    pass


class TrainValidationError(PulsalError):
    """
    A pulse train can not be constructed, e.g. a pulse has a negative
    time or a polarity other than +1 or -1.
    """
    pass


class PreconditionError(PulsalError):
    """An operation is called on inputs outside its hypotheses."""
    pass


class SignalError(PulsalError):
    """Invalid signal definition or non-finite signal values."""
    pass


class SignalFormatError(PulsalError):
    """A signal or pulse-train file can not be parsed."""
    pass


class GridMismatchError(PulsalError):
    """Two sampled signals are compared on different grids."""
    pass


class UnknownExperimentError(PulsalError):
    """The requested experiment is not registered."""
    pass


class ConfigError(PulsalError):
    """Invalid configuration file or option value."""
    pass


class UsageError(ConfigError):
    """Malformed command line, raised in place of the argparse exit."""
    pass
