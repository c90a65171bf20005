"""
Test the experiment metrics
"""
import numpy as np
import pytest

from fractions import Fraction
from pulsal.core.error import GridMismatchError, PreconditionError, \
    SignalError
from pulsal.encoder import ConstantSignal, SinusoidSignal
from pulsal.harness.metrics import *
from pulsal.pulse import PulseTrain

def test_snr_saturation():
    desired = np.sin(np.linspace(0, 6, 100))
    pair = snr(desired, desired)
    assert pair.power_db == SNR_CAP_DB
    assert pair.error_db == SNR_CAP_DB
    assert pair.power_saturated and pair.error_saturated

def test_snr_zero_reconstruction():
    pair = snr(np.ones(10), np.zeros(10))
    assert pair.power_db == pytest.approx(0)
    assert pair.error_db == pytest.approx(0)
    assert not pair.power_saturated

def test_snr_formulas_disagree():
    pair = snr(np.full(50, 11.0), np.full(50, 10.9))
    assert pair.error_db == pytest.approx(40.828, abs=1e-3)
    assert pair.power_db == pytest.approx(17.423, abs=1e-3)

def test_snr_overshoot():
    # a reconstruction stronger than the signal has negative power
    # difference, the power-difference ratio saturates
    pair = snr(np.ones(10), np.full(10, 1.1))
    assert pair.power_saturated
    assert pair.error_db == pytest.approx(20)

def test_snr_errors():
    with pytest.raises(GridMismatchError):
        snr(np.ones(10), np.ones(11))
    with pytest.raises(SignalError):
        snr(np.zeros(10), np.ones(10))
    with pytest.raises(SignalError):
        snr([], [])

def test_pulses_per_interval():
    output = PulseTrain([0.5, 1, 1.5, 1.7, 2])
    reference = PulseTrain([1, 2])
    assert list(pulses_per_interval(output, reference)) == [2, 3]
    assert list(pulses_per_interval(output, reference, horizon=1)) == [2]
    assert list(pulses_per_interval(output, reference,
                                    horizon=Fraction(3, 2))) == [2]
    assert list(pulses_per_interval(PulseTrain(), reference)) == [0, 0]
    assert len(pulses_per_interval(output, PulseTrain())) == 0

def test_pulse_density_ratio():
    uniform = PulseTrain([Fraction(k, 100) for k in range(1, 101)])
    assert pulse_density_ratio(uniform, ConstantSignal(1, 1),
                               rate=1000) == pytest.approx(1)
    peaks = PulseTrain([0.25, 0.75], [1, -1])
    assert pulse_density_ratio(peaks, SinusoidSignal(1, 1, duration=1),
                               rate=1000) == 0

def test_pulse_density_ratio_errors():
    signal = ConstantSignal(1, 1)
    with pytest.raises(PreconditionError):
        pulse_density_ratio(PulseTrain([2]), signal)
    with pytest.raises(PreconditionError):
        pulse_density_ratio(PulseTrain([0.5]), signal, fraction=1)

def test_metrics_record():
    record = MetricsRecord("periodic-sum", {"theta": 1e-3},
                           SnrPair(41.5, 42.0, False, False), (12, 3),
                           0.01, 0.5,
                           {"pulses_per_interval": [11, 11],
                            "pulses_per_interval_min": 11,
                            "horizon": Fraction(1, 10)})
    row = record.as_row()
    assert row["experiment"] == "periodic-sum"
    assert row["theta"] == 1e-3
    assert row["snr_power_db"] == 41.5
    assert row["snr_error_db"] == 42.0
    assert row["positive_pulses"] == 12
    assert row["negative_pulses"] == 3
    assert row["pulses_per_interval_min"] == 11
    assert "pulses_per_interval" not in row
    record_dict = record.as_dict()
    assert record_dict["extra"]["pulses_per_interval"] == [11, 11]
    assert record_dict["extra"]["horizon"] == "1/10"
    assert record_dict["runtime"] == 0.5
    assert "runtime" not in record.reproducible_fields()

def test_metrics_record_without_snr():
    record = MetricsRecord("associativity", {"variant": "simultaneous"})
    assert record.snr_power_db is None
    assert record.as_row()["snr_error_saturated"] is None
    with pytest.raises(SignalError):
        MetricsRecord("x", {}, SnrPair(float("nan"), 1.0, False, False))
