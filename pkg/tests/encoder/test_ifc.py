"""
Test the integrate-and-fire encoder
"""
import numpy as np
import pytest

from fractions import Fraction
from pulsal.core.error import ConfigError, SignalError
from pulsal.encoder import *
from pulsal.pulse import IfcParams, PulseTrain, validate

def leaky_ipi(c, theta, alpha):
    return -np.log(1 - alpha * theta / c) / alpha

@pytest.mark.timeout(10)
def test_constant_exact():
    params = IfcParams(theta=1, alpha=0)
    train = encode(ConstantSignal(1, 3.5), params)
    assert train.exact
    assert train.times == (1, 2, 3)
    assert list(train.polarities) == [1, 1, 1]

@pytest.mark.timeout(10)
def test_constant_doubled():
    train = encode(ConstantSignal(2, 2.2), IfcParams(theta=1, alpha=0))
    assert train.times == (Fraction(1, 2), 1, Fraction(3, 2), 2)

@pytest.mark.timeout(10)
def test_negative_constant():
    train = encode(ConstantSignal(-1, 2.5), IfcParams(theta=1, alpha=0))
    assert train.times == (1, 2)
    assert list(train.polarities) == [-1, -1]

@pytest.mark.timeout(10)
def test_leaky_constant_clocked():
    """
    Pulse times of a constant input with leak are within one clock
    tick of the closed-form charging time.
    """
    params = IfcParams(theta=1e-3, alpha=40, clock=1e-6)
    ipi = leaky_ipi(1, 1e-3, 40)
    assert ipi == pytest.approx(1.02055e-3, rel=1e-5)
    train = encode(ConstantSignal(1, 0.1), params)
    assert len(train) == int(0.1 / ipi)
    expected = ipi * np.arange(1, len(train) + 1)
    assert np.max(np.abs(train.seconds - expected)) <= 1e-6
    assert validate(train) == []

@pytest.mark.timeout(10)
def test_leaky_constant_exact():
    params = IfcParams(theta=1e-3, alpha=40)
    train = encode(ConstantSignal(1, 0.02), params)
    intervals = np.array([float(d) for d in train.intervals])
    assert np.allclose(intervals, leaky_ipi(1, 1e-3, 40), rtol=0, atol=1e-9)

@pytest.mark.timeout(10)
def test_scaling_shortens_intervals():
    """
    Scaling a constant by 3 divides the interval by 3 without leak and by
    slightly more with leak, the leak delays weak inputs the most.
    """
    linear = IfcParams(theta=1, alpha=0)
    base = encode(ConstantSignal(1, 1.5), linear).intervals[0]
    scaled = encode(ConstantSignal(3, 1.5), linear).intervals[0]
    assert base / scaled == 3

    leaky = IfcParams(theta=1e-3, alpha=40)
    base = float(encode(ConstantSignal(1, 0.002), leaky).intervals[0])
    scaled = float(encode(ConstantSignal(3, 0.002), leaky).intervals[0])
    assert base == pytest.approx(leaky_ipi(1, 1e-3, 40), abs=1e-9)
    assert scaled == pytest.approx(leaky_ipi(3, 1e-3, 40), abs=1e-9)
    assert 3 < base / scaled < 3.1

@pytest.mark.timeout(10)
def test_refractory_hold():
    params = IfcParams(theta=1, alpha=0, tau=Fraction(1, 2))
    train = encode(ConstantSignal(1, 4.2), params)
    assert train.times == (1, Fraction(5, 2), 4)
    assert train.tau == Fraction(1, 2)
    assert verify_area_constraint(train, ConstantSignal(1, 4.2),
                                  params) <= 1e-6

@pytest.mark.timeout(10)
def test_short_window():
    train = encode(ConstantSignal(1, 0.5), IfcParams(theta=1, alpha=0))
    assert len(train) == 0

@pytest.mark.timeout(10)
@pytest.mark.parametrize("signal", [
    ConstantSignal(1, 0.05),
    ConstantSignal(-10, 0.05),
    SinusoidSignal(10, 12, duration=0.1),
    SinusoidSignal(13, 12, np.pi / 3, duration=0.1),
    SampledSignal(5 + np.sin(np.linspace(0, 6, 501)), rate=1e4),
])
def test_area_constraint(signal):
    params = IfcParams(theta=1e-3, alpha=40)
    train = encode(signal, params)
    assert len(train) > 10
    assert verify_area_constraint(train, signal, params) <= 1e-4

@pytest.mark.timeout(10)
def test_area_constraint_perturbed():
    signal = ConstantSignal(1, 3.5)
    params = IfcParams(theta=1, alpha=0)
    train = encode(signal, params)
    assert verify_area_constraint(train, signal, params) <= 1e-6
    shifted = PulseTrain([1, Fraction(21, 10), 3])
    residual = verify_area_constraint(shifted, signal, params)
    assert residual == pytest.approx(0.1, abs=1e-6)

def test_area_constraint_empty():
    params = IfcParams(theta=1, alpha=0)
    assert verify_area_constraint(PulseTrain(), ConstantSignal(0, 1),
                                  params) == 0

def test_quantize_times():
    quantized = quantize_times(PulseTrain(["1.0000004"]), 1e-6)
    assert quantized.train.ticks == (1000000,)
    assert quantized.collisions == 0
    fine = quantize_times(PulseTrain(["1.0000004"]), 1e-9)
    assert fine.train.times == (Fraction("1.0000004"),)

def test_quantize_collision():
    quantized = quantize_times(PulseTrain(["1.0000002", "1.0000004"]), 1e-6)
    assert quantized.train.ticks == (1000000, 1000001)
    assert quantized.collisions == 1

def test_non_finite_signal():
    signal = SampledSignal([1.0, 2.0], rate=10)
    signal._evaluate = lambda t: np.full_like(t, np.nan)
    with pytest.raises(SignalError):
        encode(signal, IfcParams(theta=1e-3))

@pytest.mark.parametrize("kwargs", [
    dict(oversampling=0),
    dict(oversampling=1.5),
    dict(base_step=0),
    dict(tolerance=0),
])
def test_encoder_config(kwargs):
    with pytest.raises(ConfigError):
        EncoderConfig(**kwargs)

def test_oversampling_step():
    assert EncoderConfig(oversampling=4).step == pytest.approx(2.5e-7)
