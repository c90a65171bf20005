#-
# Copyright (c) 2026 The pulsal developers
# All rights reserved.
#

"""
Command line drivers of the pulsal tool.

The top level :class:`PulsalDriver` holds the converter options shared by
every subcommand and hands itself to the selected subcommand driver.
"""

import json
import logging
import os

from collections import OrderedDict

from pulsal.algebra import ADDER_MODELS, ChargingAdder, IntervalAdder
from pulsal.core import (
    ConfigurableComponent, TaskDriver, BaseToolTaskDriver, Argument, Option,
    NestedConfig, ProxyConfig, SubCommand, file_path_validator,
    positive_float_validator, non_negative_float_validator,
    seconds_validator, float_list_validator)
from pulsal.core.error import ConfigError
from pulsal.core.utils import ProgressTimer
from pulsal.encoder import (
    ConstantSignal, EncoderConfig, SinusoidSignal, encode,
    verify_area_constraint)
from pulsal.harness.experiments import (
    EXPERIMENTS, ExperimentConfig, Sweep, run_experiment)
from pulsal.harness.ingest import ingest_signal
from pulsal.pulse import PulseTrainFileParser, IfcParams, write_pulse_train
from pulsal.reconstruction import Reconstructor

logger = logging.getLogger(__name__)

__all__ = ("PulsalDriver", "EncodeDriver", "AddDriver", "ReconstructDriver",
           "ExperimentDriver", "SolverOptions", "signal_from_spec")

TRAIN_FORMATS = ("text", "jsonl")


def signal_from_spec(spec, duration=None, fmt=None, full_scale=None,
                     rate=None):
    """
    Build a signal from a command line description.

    ``constant:<volts>`` and ``sine:<amplitude>:<frequency>[:<phase>]``
    describe generators lasting duration seconds; anything else is the
    path of a CSV or WAV file.
    """
    kind, _, args = spec.partition(":")
    if kind in ("constant", "sine"):
        if duration is None:
            raise ConfigError("Generated signals need a duration")
        try:
            values = [float(v) for v in args.split(":") if v]
        except ValueError:
            raise ConfigError("Bad signal description %s" % spec)
        if kind == "constant" and len(values) == 1:
            return ConstantSignal(values[0], duration)
        if kind == "sine" and len(values) in (2, 3):
            return SinusoidSignal(*values, duration=duration)
        raise ConfigError("Bad signal description %s" % spec)
    return ingest_signal(file_path_validator(spec), fmt, full_scale, rate)


def signal_file_options():
    """Options of the signal files given in place of a generator."""
    return ProxyConfig(
        signal_format=Option(choices=("csv", "wav"), default=None,
                             help="Signal file format, from the extension "
                             "by default"),
        full_scale=Option(type=positive_float_validator, default=None,
                          help="Full-scale voltage of WAV files"),
        sample_rate=Option(type=positive_float_validator, default=None,
                           help="Sample rate of single-column CSV files "
                           "(Hz)"))


def config_signal(config, spec, duration):
    return signal_from_spec(spec, duration, config.signal_format,
                            config.full_scale, config.sample_rate)


class SolverOptions(ConfigurableComponent):
    """Settings of the windowed regression recovery."""

    basis_factor = Option(type=positive_float_validator, default=2.0,
                          help="Knot spacing in median inter-pulse "
                          "intervals")
    window_pulses = Option(type=int, default=1024,
                           help="Window length in median inter-pulse "
                           "intervals")
    workers = Option(type=int, default=1, help="Solver threads")
    smoothing = Option(type=non_negative_float_validator, default=1e-6,
                       help="Relative weight of the spline bending penalty")

    def reconstructor(self):
        return Reconstructor(self.config.basis_factor,
                             self.config.window_pulses, self.config.workers,
                             self.config.smoothing)


class EncodeDriver(TaskDriver):
    description = "Encode a signal into a pulse train."

    signal = Argument(
        help="constant:<volts>, sine:<amplitude>:<hz>[:<phase>] or the "
        "path of a CSV/WAV file")
    duration = Option(type=positive_float_validator, default=1.0,
                      help="Duration of generated signals (s)")
    signal_file = signal_file_options()
    oversampling = Option(type=int, default=1,
                          help="Integration grid steps per microsecond")
    output = Option(default="encoded.txt", help="Pulse train file name")
    train_format = Option(choices=TRAIN_FORMATS, default="text",
                          help="Pulse train file format")

    def __init__(self, tool, **kwargs):
        super().__init__(**kwargs)
        self.tool = tool

    def run(self):
        params = self.tool.params()
        signal = config_signal(self.config, self.config.signal,
                               self.config.duration)
        encoder = EncoderConfig(oversampling=self.config.oversampling)
        with ProgressTimer("Encode %s" % signal, logger):
            train = encode(signal, params, encoder)
        residual = verify_area_constraint(train, signal, params, encoder)
        path = self.tool.output_path(self.config.output)
        write_pulse_train(path, train, params, self.config.train_format)
        logger.info("Wrote %d pulses to %s, area residual %.3g theta",
                    len(train), path, residual)


class AddDriver(TaskDriver):
    description = "Add pulse trains in the pulse domain."

    trains = Argument(nargs="+", type=file_path_validator,
                      help="Operand pulse train files")
    model = Option(choices=tuple(ADDER_MODELS), default="linear",
                   help="Area growth model of the adder")
    output = Option(default="sum.txt", help="Sum pulse train file name")
    train_format = Option(choices=TRAIN_FORMATS, default="text",
                          help="Pulse train file format")

    def __init__(self, tool, **kwargs):
        super().__init__(**kwargs)
        self.tool = tool

    def run(self):
        if len(self.config.trains) < 2:
            raise ConfigError("Addition needs at least two pulse trains, "
                              "got %d" % len(self.config.trains))
        operands = []
        params = None
        for path in self.config.trains:
            train, file_params = PulseTrainFileParser(path).parse()
            if params is not None and \
                    file_params.replace(clock=params.clock) != params:
                raise ConfigError(
                    "Converter parameters of %s (%s) differ from those of "
                    "the first operand (%s)" % (path, file_params, params))
            operands.append(train)
            params = params or file_params
        if self.config.model == ChargingAdder.model:
            adder = ChargingAdder(operands, params.alpha, tau=params.tau)
        else:
            adder = IntervalAdder(operands, tau=params.tau)
        params = params.replace(clock=adder.clock)
        with ProgressTimer("Add %d trains" % len(operands), logger):
            result = adder.run()
        path = self.tool.output_path(self.config.output)
        write_pulse_train(path, result.train, params,
                          self.config.train_format)
        diagnostics = OrderedDict([
            ("model", adder.model),
            ("operands", [len(t) for t in operands]),
            ("pulses", len(result.train)),
            ("final_excess", float(result.final_excess)),
            ("max_excess", float(result.max_excess)),
            ("intervals", result.intervals),
            ("collisions", result.collisions),
        ])
        self.tool.write_json(self.config.output + ".json", diagnostics)
        logger.info("Wrote %d pulses to %s", len(result.train), path)


class ReconstructDriver(TaskDriver):
    description = "Reconstruct the signal encoded by a pulse train."

    train = Argument(type=file_path_validator, help="Pulse train file")
    rate = Option(type=positive_float_validator, default=1e5,
                  help="Sample rate of the reconstruction grid (Hz)")
    solver = NestedConfig(SolverOptions)
    reference = Option(default=None,
                       help="Reference signal for the sup error, same "
                       "syntax as the encode signal")
    duration = Option(type=positive_float_validator, default=None,
                      help="Duration of a generated reference (s)")
    signal_file = signal_file_options()
    output = Option(default="reconstruction.csv",
                    help="Reconstruction file name")

    def __init__(self, tool, **kwargs):
        super().__init__(**kwargs)
        self.tool = tool
        self.solver = SolverOptions(config=self.config.solver)

    def run(self):
        train, params = PulseTrainFileParser(self.config.train).parse()
        reconstructor = self.solver.reconstructor()
        reference = None
        if self.config.reference:
            duration = self.config.duration or float(train.last_time)
            reference = config_signal(self.config, self.config.reference,
                                      duration)
        result = reconstructor.run(train, params, self.config.rate,
                                   reference=reference)
        path = self.tool.output_path(self.config.output)
        result.write_csv(path)
        self.tool.write_json(self.config.output + ".json",
                             result.diagnostics())
        logger.info("Wrote %d samples to %s", len(result.samples), path)


class ExperimentDriver(TaskDriver):
    description = "Run a registered experiment."

    name = Argument(help="Experiment id: {}".format(", ".join(EXPERIMENTS)))
    sweep = Option(default=None, help="Swept parameter")
    sweep_values = Option(type=float_list_validator, default=None,
                          help="Comma separated sweep values")
    duration = Option(type=positive_float_validator, default=None,
                      help="Signal duration (s)")
    adder = Option(choices=tuple(ADDER_MODELS), default=None,
                   help="Adder model of the addition experiments")
    grid_rate = Option(type=positive_float_validator, default=None,
                       help="Sample rate of the reconstruction grid (Hz)")
    basis_factor = Option(type=positive_float_validator, default=None,
                          help="Knot spacing in median inter-pulse "
                          "intervals")
    trials = Option(type=int, default=None,
                    help="Random cases per law of group-laws")
    workers = Option(type=int, default=1, help="Sweep processes")

    def __init__(self, tool, **kwargs):
        super().__init__(**kwargs)
        self.tool = tool

    def _sweep(self):
        if self.config.sweep_values is None:
            if self.config.sweep:
                raise ConfigError("--sweep needs --sweep-values")
            return None
        parameter = self.config.sweep
        if parameter is None:
            default = EXPERIMENTS.get(self.config.name)
            if default is None or default.sweep is None:
                raise ConfigError("--sweep-values needs --sweep")
            parameter = default.sweep.parameter
        return Sweep(parameter, self.config.sweep_values)

    def run(self):
        config = ExperimentConfig(
            self.config.name, params=self.tool.params(), sweep=self._sweep(),
            out_dir=self.tool.config.out, seed=self.tool.config.seed,
            duration=self.config.duration, grid_rate=self.config.grid_rate,
            adder=self.config.adder, workers=self.config.workers,
            basis_factor=self.config.basis_factor, trials=self.config.trials)
        with ProgressTimer("Experiment %s" % config.name, logger):
            records = run_experiment(config)
        for record in records:
            logger.info("%s", record)


class PulsalDriver(BaseToolTaskDriver):
    """
    Main driver of the pulsal tool, holds the converter options.
    """
    description = """
    Pulse-domain signal processing with integrate-and-fire converters.
    Encode signals into pulse trains, add pulse trains, reconstruct the
    signals and run the bundled experiments.
    """

    config_file = Option("--config", type=file_path_validator,
                         help="INI file with option defaults, [pulsal] "
                         "for global options and one section per "
                         "subcommand")
    out = Option(type=file_path_validator, default=".",
                 help="Output directory")
    exact = Option(action="store_true",
                   help="Exact rational pulse times, no clock")
    clock = Option(type=seconds_validator, default="1/1000000",
                   help="Time-stamping clock quantum (s)")
    theta = Option(type=positive_float_validator, default=0.001,
                   help="Threshold (V s)")
    alpha = Option(type=non_negative_float_validator, default=40.0,
                   help="Leak factor (1/s)")
    tau = Option(type=seconds_validator, default="0",
                 help="Refractory period (s)")
    seed = Option(type=int, default=0, help="Seed of randomized runs")

    encode = SubCommand(EncodeDriver)
    add = SubCommand(AddDriver)
    reconstruct = SubCommand(ReconstructDriver)
    experiment = SubCommand(ExperimentDriver)

    def params(self):
        """Converter parameters from the global options."""
        clock = None if self.config.exact else self.config.clock
        if clock is not None and clock <= 0:
            raise ConfigError("clock must be positive")
        return IfcParams(self.config.theta, self.config.alpha,
                         self.config.tau, clock)

    def output_path(self, name):
        os.makedirs(self.config.out, exist_ok=True)
        return os.path.join(self.config.out, name)

    def write_json(self, name, data):
        with open(self.output_path(name), "w") as fd:
            json.dump(data, fd, indent=2)
            fd.write("\n")

    def run(self):
        sub = self.config.subcommand_class(self, config=self.config)
        sub.run()
