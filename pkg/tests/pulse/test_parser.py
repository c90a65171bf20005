"""
Test the pulse-train file formats
"""
import pytest

from fractions import Fraction
from pulsal.core.error import SignalFormatError
from pulsal.pulse import *

@pytest.fixture
def params():
    return IfcParams(0.001, 40, 0, Fraction(1, 10**6))

@pytest.fixture
def clocked_train():
    return PulseTrain([1021, 2042, 3100], [1, 1, -1], clock=Fraction(1, 10**6))

@pytest.fixture
def exact_train():
    return PulseTrain([Fraction(4, 3000), Fraction(120, 43000)], [1, -1])

def test_parse_text(tmp_path):
    path = tmp_path / "train.txt"
    path.write_text("clock_seconds=1/1000000 theta=0.001 alpha=40 tau=0\n"
                    "1021 1\n"
                    "2042 1\n"
                    "# comment\n"
                    "3063 -1\n")
    train, params = PulseTrainFileParser(str(path)).parse()
    assert train.ticks == (1021, 2042, 3063)
    assert list(train.polarities) == [1, 1, -1]
    assert params == IfcParams(0.001, 40, 0, Fraction(1, 10**6))

def test_parse_jsonl(tmp_path):
    path = tmp_path / "train.jsonl"
    path.write_text('{"clock_seconds": "1/1000000", "theta": 0.001, '
                    '"alpha": 40, "tau": "0"}\n'
                    '{"tick": 1021, "polarity": 1}\n'
                    '{"tick": 2042, "polarity": -1}\n')
    train, params = PulseTrainFileParser(str(path)).parse()
    assert train.ticks == (1021, 2042)
    assert list(train.polarities) == [1, -1]
    assert params.alpha == 40

@pytest.mark.parametrize("fmt", ["text", "jsonl"])
def test_write_clocked(tmp_path, params, clocked_train, fmt):
    path = str(tmp_path / "train")
    write_pulse_train(path, clocked_train, params, fmt)
    train, parsed = PulseTrainFileParser(path).parse()
    assert train == clocked_train
    assert train.ticks == clocked_train.ticks
    assert parsed == params

@pytest.mark.parametrize("fmt", ["text", "jsonl"])
def test_write_exact(tmp_path, params, exact_train, fmt):
    path = str(tmp_path / "train")
    write_pulse_train(path, exact_train, params, fmt)
    train, parsed = PulseTrainFileParser(path).parse()
    assert train.exact
    assert train.times == (Fraction(4, 3000), Fraction(120, 43000))
    assert parsed.exact

def test_write_empty(tmp_path, params):
    path = str(tmp_path / "empty.txt")
    write_pulse_train(path, PulseTrain([], clock=params.clock), params)
    train, _ = PulseTrainFileParser(path).parse()
    assert len(train) == 0

def test_write_unknown_format(tmp_path, params, clocked_train):
    with pytest.raises(ValueError):
        write_pulse_train(str(tmp_path / "x"), clocked_train, params, "xml")

@pytest.mark.parametrize("content", [
    "",
    "clock_seconds=1/1000000 theta=0.001 alpha=40\n1 1\n",
    "clock_seconds=1/1000000 theta=0 alpha=40 tau=0\n1 1\n",
    "clock_seconds=1/1000000 theta=0.001 alpha=40 tau=0\n1 2\n",
    "clock_seconds=1/1000000 theta=0.001 alpha=40 tau=0\n5 1\n3 1\n5\n",
    "clock_seconds=1/1000000 theta=0.001 alpha=40 tau=0\n-5 1\n",
    "clock_seconds theta=0.001 alpha=40 tau=0\n",
    '{"clock_seconds": "1/1000000", "theta": 0.001, "alpha": 40}\n',
    '{"clock_seconds": null, "theta": 0.001, "alpha": 0, "tau": "0"}\n'
    '{"tick": 1, "polarity": 1}\n',
])
def test_malformed(tmp_path, content):
    path = tmp_path / "bad.txt"
    path.write_text(content)
    with pytest.raises(SignalFormatError):
        PulseTrainFileParser(str(path)).parse()
