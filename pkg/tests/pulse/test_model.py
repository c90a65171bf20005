"""
Test the pulse train model and the converter parameters
"""
import numpy as np
import pytest

from fractions import Fraction
from pulsal.core.error import ConfigError, TrainValidationError
from pulsal.pulse import *

def test_exact_train():
    train = PulseTrain([Fraction(8, 3000), Fraction(1, 125)], [1, -1])
    assert train.exact
    assert train.ticks is None
    assert train.times == (Fraction(8, 3000), Fraction(1, 125))
    assert train.intervals == (Fraction(8, 3000), Fraction(16, 3000))
    assert train.counts() == (1, 1)
    assert train.area() == 0
    assert train.last_time == Fraction(1, 125)
    assert list(train.polarities) == [1, -1]
    assert train[1] == Pulse(Fraction(1, 125), Polarity.NEGATIVE)

def test_clocked_train():
    train = PulseTrain([1021, 2042], clock="1/1000000")
    assert not train.exact
    assert train.ticks == (1021, 2042)
    assert train.times == (Fraction(1021, 10**6), Fraction(2042, 10**6))
    assert np.allclose(train.seconds, [1.021e-3, 2.042e-3])
    with pytest.raises(TrainValidationError):
        PulseTrain([0.5], clock=1e-6)

def test_from_seconds_rounds_to_ticks():
    train = PulseTrain.from_seconds([1.0000004, 2.0000006], clock=1e-6)
    assert train.ticks == (1000000, 2000001)

def test_float_times_are_decimal():
    train = PulseTrain([1e-6, 0.1])
    assert train.times == (Fraction(1, 10**6), Fraction(1, 10))

def test_empty_train():
    train = PulseTrain()
    assert len(train) == 0
    assert train.last_time == 0
    assert train.counts() == (0, 0)
    assert train.area() == 0
    assert train.intervals == ()

@pytest.mark.parametrize("values,polarities", [
    ([-1], None),
    ([1, 2], [1, 0]),
    ([1, 2], [1]),
    ([float("nan")], None),
])
def test_invalid_train(values, polarities):
    with pytest.raises(TrainValidationError):
        PulseTrain(values, polarities)

def test_pulse_validation():
    assert Pulse(1, -1).polarity == Polarity.NEGATIVE
    with pytest.raises(TrainValidationError):
        Pulse(-1, 1)
    with pytest.raises(TrainValidationError):
        Pulse(1, 2)

def test_train_equality():
    a = PulseTrain([1, 2], [1, -1])
    b = PulseTrain([Fraction(1), Fraction(2)], [1, -1], tau=0)
    assert a == b
    assert hash(a) == hash(b)
    assert a != PulseTrain([1, 2])
    assert a.replace(polarities=[1, 1]) == PulseTrain([1, 2])

def test_ifc_params():
    params = IfcParams(0.001, 40, 0, 1e-6)
    assert params.clock == Fraction(1, 10**6)
    assert params.tau == 0
    assert not params.exact
    assert params.replace(clock=None).exact
    assert params.header() == {"clock_seconds": "1/1000000", "theta": 0.001,
                               "alpha": 40.0, "tau": "0"}
    assert params == IfcParams(0.001, 40, clock=Fraction(1, 10**6))

@pytest.mark.parametrize("kwargs", [
    dict(theta=0),
    dict(theta=-1),
    dict(theta=float("inf")),
    dict(theta=1, alpha=-1),
    dict(theta=1, tau=-1),
    dict(theta=1, clock=0),
])
def test_invalid_params(kwargs):
    with pytest.raises(ConfigError):
        IfcParams(**kwargs)
