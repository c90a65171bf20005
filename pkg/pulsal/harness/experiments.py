#-
# Copyright (c) 2026 The pulsal developers
# All rights reserved.
#

"""
Experiments combining the encoder, the pulse-domain adder and the
reconstruction.

Every experiment is a list of independent points (one per sweep value),
each point produces one or more :class:`MetricsRecord`. The addition
experiments encode every operand, add the operand trains in the pulse
domain, reconstruct the sum train and compare it to the analog sum of the
operand signals on the window where every operand still has pulses.
"""

import json
import logging
import multiprocessing
import os
import numpy as np
import pandas as pd

from collections import OrderedDict, namedtuple
from fractions import Fraction

from pulsal.algebra import (
    ChargingAdder, IntervalAdder, add_n, identity, add_pair_closed_form,
    subtract_closed_form, corollary_counts)
from pulsal.core.error import ConfigError, UnknownExperimentError
from pulsal.core.utils import ProgressPrinter, ProgressTimer
from pulsal.encoder import (
    ConstantSignal, EncoderConfig, SinusoidSignal, SumSignal, encode)
from pulsal.harness.generators import (
    corollary_operands, random_train, SHAPED_CONFIGURATIONS)
from pulsal.harness.metrics import (
    MetricsRecord, snr, pulse_density_ratio, pulses_per_interval)
from pulsal.pulse import IfcParams, PulseTrain, negate, write_pulse_train
from pulsal.reconstruction import (
    ReconstructionResult, Reconstructor, sup_error)

logger = logging.getLogger(__name__)

__all__ = ("Sweep", "ExperimentConfig", "Experiment", "AdditionExperiment",
           "AdditionOutcome", "run_addition", "run_experiment",
           "EXPERIMENTS", "EXPERIMENT_ALIASES", "SWEEP_PARAMETERS",
           "default_params")

Sweep = namedtuple("Sweep", ["parameter", "values"])

SWEEP_PARAMETERS = ("theta", "alpha", "clock", "tau")

ADDERS = ("linear", "charging")


def default_params():
    """Threshold 0.001, leak factor 40, 1 us clock, no refractory period."""
    return IfcParams(theta=1e-3, alpha=40, tau=0, clock=Fraction(1, 10**6))


class ExperimentConfig:
    """
    Settings of an experiment run.

    Options left to None take the defaults of the experiment.

    :param name: registered experiment id
    :param signals: list of operand :class:`pulsal.encoder.SignalSource`
    :param params: converter parameters, see :func:`default_params`
    :param sweep: :class:`Sweep` (parameter, values) or None
    :param out_dir: output directory, no files are written if None
    :param seed: seed of the randomized experiments
    :param duration: signal duration in seconds
    :param grid_rate: sample rate of the reconstruction grid (Hz)
    :param adder: "linear" or "charging"
    :param encoder: :class:`pulsal.encoder.EncoderConfig`
    :param workers: number of processes running the sweep points
    :param basis_factor: reconstruction knot spacing in median intervals
    :param trials: number of random cases per law (randomized experiments)
    """

    def __init__(self, name, signals=None, params=None, sweep=None,
                 out_dir=None, seed=0, duration=None, grid_rate=None,
                 adder=None, encoder=None, workers=1, basis_factor=None,
                 trials=None):
        try:
            experiment = EXPERIMENTS[name]
        except KeyError:
            raise UnknownExperimentError(
                "Unknown experiment {}, expected one of {}".format(
                    name, ", ".join(EXPERIMENTS)))
        self.name = name
        self.params = params or default_params()
        self.duration = float(duration or experiment.duration)
        if not self.duration > 0:
            raise ConfigError("Duration must be positive")
        if signals is None:
            signals = experiment.default_signals(self.duration)
        self.signals = list(signals)
        if sweep is None:
            sweep = experiment.sweep
        elif not isinstance(sweep, Sweep):
            sweep = Sweep(*sweep)
        if sweep is not None:
            if sweep.parameter not in SWEEP_PARAMETERS:
                raise ConfigError("Can not sweep {}, expected one of {}"
                                  .format(sweep.parameter,
                                          ", ".join(SWEEP_PARAMETERS)))
            values = list(sweep.values)
            if not values or any(not v > 0 for v in values):
                raise ConfigError("Sweep values must be positive")
            if values != sorted(values):
                raise ConfigError("Sweep values must be sorted")
            sweep = Sweep(sweep.parameter, tuple(values))
        self.sweep = sweep
        self.out_dir = out_dir
        self.seed = int(seed)
        self.grid_rate = float(grid_rate or experiment.grid_rate)
        self.adder = adder or experiment.adder
        if self.adder not in ADDERS:
            raise ConfigError("Unknown adder model %s" % self.adder)
        self.encoder = encoder or EncoderConfig()
        if int(workers) != workers or workers < 1:
            raise ConfigError("workers must be an integer >= 1")
        self.workers = int(workers)
        self.basis_factor = float(basis_factor or experiment.basis_factor)
        self.trials = int(trials or experiment.trials)

    def describe(self):
        """JSON-friendly summary of the settings."""
        return OrderedDict([
            ("name", self.name),
            ("signals", [repr(s) for s in self.signals]),
            ("params", OrderedDict(
                (k, None if v is None else str(v))
                for k, v in self.params.header().items())),
            ("sweep", None if self.sweep is None else OrderedDict([
                ("parameter", self.sweep.parameter),
                ("values", list(self.sweep.values))])),
            ("seed", self.seed),
            ("duration", self.duration),
            ("grid_rate", self.grid_rate),
            ("adder", self.adder),
            ("oversampling", self.encoder.oversampling),
            ("basis_factor", self.basis_factor),
            ("trials", self.trials),
        ])

    def __repr__(self):
        return "<ExperimentConfig {}>".format(self.name)


AdditionOutcome = namedtuple("AdditionOutcome", [
    "operands", "result", "reconstruction", "horizon", "eval_end",
    "desired", "reconstructed", "snr", "sup_error"])


def run_addition(signals, params, adder="charging", encoder=None,
                 grid_rate=2e5, basis_factor=2, window_pulses=1024):
    """
    Encode, add in the pulse domain and reconstruct.

    The SNR window is [0, T] with T the earliest last pulse among the
    operands that have pulses, the end of the signals if none has, and at
    most the last pulse of the sum: past it the sum train carries no
    information and the reconstruction is an extrapolation.

    :return: :class:`AdditionOutcome`
    """
    operands = [encode(s, params, encoder) for s in signals]
    if adder == "charging":
        adder_inst = ChargingAdder(operands, params.alpha, tau=params.tau)
    elif adder == "linear":
        adder_inst = IntervalAdder(operands, tau=params.tau)
    else:
        raise ConfigError("Unknown adder model %s" % adder)
    result = adder_inst.run()

    total = SumSignal(signals)
    covered = [t.last_time for t in operands if len(t)]
    horizon = min(covered) if covered else None
    eval_end = total.duration
    if horizon is not None:
        eval_end = min(eval_end, float(horizon))
    recon_end = eval_end
    if len(result.train):
        recon_end = float(result.train.last_time)
        eval_end = min(eval_end, recon_end)
    reconstructor = Reconstructor(basis_factor=basis_factor,
                                  window_pulses=window_pulses)
    reconstruction = reconstructor.run(result.train, params, grid_rate,
                                       end=recon_end)
    inside = reconstruction.times <= eval_end
    desired = total.evaluate(reconstruction.times[inside])
    reconstructed = reconstruction.samples[inside]
    return AdditionOutcome(operands, result, reconstruction, horizon,
                           eval_end, desired, reconstructed,
                           snr(desired, reconstructed),
                           sup_error(desired, reconstructed))


class Experiment:
    """
    Base class of the registered experiments.

    :param config: :class:`ExperimentConfig`
    """

    name = None
    description = ""
    duration = 0.1
    grid_rate = 2e5
    adder = "charging"
    basis_factor = 2
    trials = 1
    sweep = None
    keep_artifacts = True
    """Attach pulse trains and reconstructions to the records."""

    def __init__(self, config):
        self.config = config

    @classmethod
    def default_signals(cls, duration):
        return []

    def points(self):
        """Parameter values of every point, in sweep order."""
        sweep = self.config.sweep
        if sweep is None:
            return [OrderedDict()]
        return [OrderedDict([(sweep.parameter, v)]) for v in sweep.values]

    def point_params(self, point):
        params = self.config.params
        if point:
            params = params.replace(**point)
        return params

    def run_point(self, point):
        """:return: list of :class:`MetricsRecord`"""
        raise NotImplementedError("Abstract method")

    def _output_path(self, suffix):
        return os.path.join(self.config.out_dir,
                            "{}{}".format(self.config.name, suffix))

    def write_outputs(self, records):
        """
        Write the metrics table, the JSON summary and the artifacts of
        the records in the output directory.
        """
        os.makedirs(self.config.out_dir, exist_ok=True)
        df = pd.DataFrame([r.as_row() for r in records])
        df.to_csv(self._output_path("_metrics.csv"), index=False)
        summary = OrderedDict([
            ("experiment", self.config.name),
            ("config", self.config.describe()),
            ("records", [r.as_dict() for r in records]),
        ])
        with open(self._output_path(".json"), "w") as fd:
            json.dump(summary, fd, indent=2)
            fd.write("\n")
        for record in records:
            for key, artifact in record.artifacts.items():
                if isinstance(artifact, PulseTrain):
                    write_pulse_train(self._output_path(
                        "_{}.txt".format(key)), artifact, self.config.params)
                elif isinstance(artifact, ReconstructionResult):
                    artifact.write_csv(self._output_path(
                        "_{}.csv".format(key)))
                    artifact.write_diagnostics(self._output_path(
                        "_{}.json".format(key)))
        logger.info("Wrote %s outputs to %s", self.config.name,
                    self.config.out_dir)


class AdditionExperiment(Experiment):
    """Addition of the encoded operand signals."""

    def point_extra(self, outcome, params):
        return OrderedDict()

    def run_point(self, point):
        params = self.point_params(point)
        config = self.config
        with ProgressTimer("{} {}".format(config.name, dict(point)),
                           logger) as timer:
            outcome = run_addition(config.signals, params, config.adder,
                                   config.encoder, config.grid_rate,
                                   config.basis_factor)
        train = outcome.result.train
        extra = OrderedDict([
            ("eval_end", outcome.eval_end),
            ("operand_pulses", [len(t) for t in outcome.operands]),
            ("collisions", outcome.result.collisions),
            ("final_excess", float(outcome.result.final_excess)),
            ("rank_deficient", outcome.reconstruction.rank_deficient),
        ])
        extra.update(self.point_extra(outcome, params))
        artifacts = OrderedDict()
        if self.keep_artifacts:
            for i, operand in enumerate(outcome.operands):
                artifacts["operand{}".format(i)] = operand
            artifacts["sum"] = train
            artifacts["reconstruction"] = outcome.reconstruction
        record = MetricsRecord(config.name, point, outcome.snr,
                               train.counts(), outcome.sup_error,
                               timer.elapsed, extra, artifacts)
        return [record]


class PeriodicSumExperiment(AdditionExperiment):
    """
    Sum of a 1 V and a 10 V constant. The augend pulses split the output
    in intervals holding the ratio of the summed to augend amplitude
    pulses.
    """

    name = "periodic-sum"
    duration = 0.1005

    @classmethod
    def default_signals(cls, duration):
        return [ConstantSignal(1.0, duration), ConstantSignal(10.0, duration)]

    def point_extra(self, outcome, params):
        augend = outcome.operands[0]
        counts = pulses_per_interval(outcome.result.train, augend,
                                     outcome.horizon)
        extra = OrderedDict(pulses_per_interval=counts.tolist())
        if len(counts):
            extra["pulses_per_interval_min"] = int(counts.min())
            extra["pulses_per_interval_max"] = int(counts.max())
        return extra


class SinusoidSumExperiment(AdditionExperiment):
    """
    Sum of two in-phase 12 Hz sinusoids of 10 V and 13 V. Few pulses are
    fired around the zero crossings.
    """

    name = "sinusoid-sum"
    duration = 0.25

    @classmethod
    def default_signals(cls, duration):
        return [SinusoidSignal(10.0, 12.0, duration=duration),
                SinusoidSignal(13.0, 12.0, duration=duration)]

    def point_extra(self, outcome, params):
        ratio = pulse_density_ratio(outcome.result.train,
                                    SumSignal(self.config.signals), 0.1,
                                    end=outcome.eval_end)
        return OrderedDict(density_ratio=ratio)


class ClockSweepExperiment(PeriodicSumExperiment):
    """Constant sum with the time-stamping clock swept."""

    name = "clock-sweep"
    duration = 0.05
    adder = "linear"
    keep_artifacts = False
    sweep = Sweep("clock", (1e-9, 1e-7, 1e-6, 1e-5, 1e-4))


class ThresholdSweepExperiment(PeriodicSumExperiment):
    """Constant sum with the threshold swept over three decades."""

    name = "threshold-sweep"
    duration = 0.05
    adder = "linear"
    keep_artifacts = False
    sweep = Sweep("theta", (3.16e-5, 1e-4, 3.16e-4, 1e-3, 3.16e-3, 1e-2,
                            3.16e-2))


class AssociativityExperiment(Experiment):
    """
    Three trains added interval-wise in one sweep and pairwise in two
    orders. The three sums agree on the pulse count but not on the pulse
    times.
    """

    name = "associativity"
    duration = 0.008

    operands_ms = (
        (Fraction(8, 3), Fraction(8)),
        (Fraction(4), Fraction(8)),
        (Fraction(8),),
    )

    def run_point(self, point):
        p1, p2, p3 = [PulseTrain([t / 1000 for t in times])
                      for times in self.operands_ms]
        variants = OrderedDict([
            ("simultaneous", lambda: add_n([p1, p2, p3])),
            ("(P1+P2)+P3", lambda: add_n([add_n([p1, p2]), p3])),
            ("(P1+P3)+P2", lambda: add_n([add_n([p1, p3]), p2])),
        ])
        records = []
        for variant, compute in variants.items():
            with ProgressTimer("associativity " + variant, logger) as timer:
                train = compute()
            times_ms = [t * 1000 for t in train.times]
            extra = OrderedDict(times_ms=times_ms)
            records.append(MetricsRecord(
                self.config.name, OrderedDict(variant=variant), None,
                train.counts(), None, timer.elapsed, extra,
                OrderedDict([(_slug(variant), train)])))
        return records


def _slug(variant):
    return "".join(c if c.isalnum() else "_" for c in variant).strip("_")


class GroupLawsExperiment(Experiment):
    """
    Randomized checks of the group laws of the pulse-domain addition and
    of the predicted pulse counts of the known configurations.
    """

    name = "group-laws"
    duration = 1.0
    trials = 200
    max_pulses = 20

    def _laws(self, rng):
        n = self.max_pulses

        def train(count=None):
            count = count or int(rng.integers(1, n + 1))
            return random_train(rng, count)

        def law_identity():
            p = train()
            return add_n([p, identity()]) == p and add_n([p]) == p

        def law_inverse():
            p = train()
            return add_n([p, negate(p)]) == identity()

        def law_commutativity():
            p, q = train(), train()
            return add_n([p, q]) == add_n([q, p])

        def law_permutation():
            trains = [train(), train(), train()]
            reference = add_n(trains)
            order = rng.permutation(3)
            return add_n([trains[i] for i in order]) == reference

        def law_single_addend_closed_form():
            augend, addend, _ = corollary_operands(rng, "single-addend", n)
            return add_n([augend, addend]) == add_pair_closed_form(augend,
                                                                    addend)

        def law_single_negative_addend_closed_form():
            augend, addend, _ = corollary_operands(
                rng, "single-negative-addend", n)
            return add_n([augend, addend]) == subtract_closed_form(augend,
                                                                    addend)

        laws = OrderedDict([
            ("identity", law_identity),
            ("inverse", law_inverse),
            ("commutativity", law_commutativity),
            ("permutation", law_permutation),
            ("closed-form-sum", law_single_addend_closed_form),
            ("closed-form-difference",
             law_single_negative_addend_closed_form),
        ])
        for configuration in SHAPED_CONFIGURATIONS:
            laws["count:" + configuration] = self._count_law(
                rng, configuration)
        return laws

    def _count_law(self, rng, configuration):
        def check():
            augend, addend, expected = corollary_operands(
                rng, configuration, self.max_pulses)
            prediction = corollary_counts(augend, addend)
            counts = add_n([augend, addend]).counts()
            return (tuple(prediction[1:]) == tuple(expected) and
                    tuple(counts) == tuple(expected))
        return check

    def run_point(self, point):
        rng = np.random.default_rng(self.config.seed)
        records = []
        for law, check in self._laws(rng).items():
            with ProgressTimer("law " + law, logger) as timer:
                failures = sum(0 if check() else 1
                               for _ in range(self.config.trials))
            if failures:
                logger.warning("Law %s failed %d of %d trials", law,
                               failures, self.config.trials)
            extra = OrderedDict([("trials", self.config.trials),
                                 ("failures", failures)])
            records.append(MetricsRecord(
                self.config.name, OrderedDict(law=law), None, (0, 0), None,
                timer.elapsed, extra))
        return records


EXPERIMENTS = OrderedDict((cls.name, cls) for cls in (
    PeriodicSumExperiment, ClockSweepExperiment, ThresholdSweepExperiment,
    SinusoidSumExperiment, AssociativityExperiment, GroupLawsExperiment))
"""Registered experiments by id."""

EXPERIMENT_ALIASES = OrderedDict([
    ("fig6", "periodic-sum"),
    ("fig7", "clock-sweep"),
    ("fig8", "threshold-sweep"),
    ("fig9", "sinusoid-sum"),
    ("thm4", "associativity"),
])
"""Short ids of the reference experiments, registered next to the long
ones. Outputs are named after the id used to run the experiment."""

EXPERIMENTS.update((alias, EXPERIMENTS[name])
                   for alias, name in EXPERIMENT_ALIASES.items())


def _run_point(args):
    config, point = args
    return EXPERIMENTS[config.name](config).run_point(point)


def run_experiment(config):
    """
    Run every point of an experiment and write its outputs.

    Points run on a process pool when config.workers > 1, the records are
    returned in sweep order either way.

    :param config: :class:`ExperimentConfig`
    :return: list of :class:`MetricsRecord`
    """
    experiment = EXPERIMENTS[config.name](config)
    points = experiment.points()
    if config.workers > 1 and len(points) > 1:
        with multiprocessing.Pool(config.workers) as pool:
            chunks = pool.map(_run_point, [(config, p) for p in points])
    else:
        progress = ProgressPrinter(len(points), desc=config.name)
        chunks = []
        for point in points:
            chunks.append(experiment.run_point(point))
            progress.advance()
        progress.finish()
    records = [record for chunk in chunks for record in chunk]
    if config.out_dir:
        experiment.write_outputs(records)
    return records
