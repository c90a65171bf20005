"""
Test the signal sources
"""
import numpy as np
import pytest

from pulsal.core.error import SignalError
from pulsal.encoder import *

def test_constant():
    signal = ConstantSignal(2.5, 1.0)
    assert signal.kind == "analytic"
    assert np.all(signal.evaluate([0, 0.5, 1]) == 2.5)

def test_sinusoid():
    signal = SinusoidSignal(10, 12, duration=0.25)
    t = np.array([0, 1 / 48, 1 / 24])
    assert np.allclose(signal.evaluate(t), [0, 10, 0], atol=1e-12)

def test_sampled():
    signal = SampledSignal([0, 1, 2, 3], rate=2)
    assert signal.kind == "uniform-samples"
    assert signal.duration == 2
    assert np.allclose(signal.evaluate([0.25, 1.5, 1.9]), [0.5, 3, 3])

def test_sum():
    signal = SumSignal([ConstantSignal(1, 2), SinusoidSignal(1, 1, np.pi / 2,
                                                             duration=1)])
    assert signal.duration == 1
    assert np.allclose(signal.evaluate([0, 0.5]), [2, 0])

def test_grid():
    signal = ConstantSignal(1, 0.01)
    t, values = signal.sample(1000)
    assert len(t) == 11
    assert t[-1] == pytest.approx(0.01)
    assert len(signal.grid(1000, end=0.005)) == 6

@pytest.mark.parametrize("build", [
    lambda: ConstantSignal(1, 0),
    lambda: ConstantSignal(float("nan"), 1),
    lambda: SinusoidSignal(float("inf"), 1),
    lambda: SampledSignal([], 10),
    lambda: SampledSignal([1, 2], 0),
    lambda: SampledSignal([1, float("nan")], 10),
    lambda: SumSignal([]),
])
def test_invalid_signals(build):
    with pytest.raises(SignalError):
        build()

def test_non_finite_values():
    class Diverging(SignalSource):
        def _evaluate(self, t):
            return 1 / (t - 0.5)

    with np.errstate(divide="ignore"):
        with pytest.raises(SignalError):
            Diverging(1).evaluate([0.5])
