"""
Test loading sampled signal files
"""
import numpy as np
import pytest

from scipy.io import wavfile

from pulsal.core.error import ConfigError, SignalFormatError
from pulsal.harness.ingest import *

@pytest.fixture
def csv_signal(tmp_path):
    path = tmp_path / "signal.csv"
    t = np.arange(1000) / 1000
    lines = ["time,value"] + ["{!r},{!r}".format(float(a), float(b))
                              for a, b in zip(t, np.sin(2 * np.pi * t))]
    path.write_text("\n".join(lines) + "\n")
    return str(path)

def test_csv(csv_signal):
    signal = ingest_signal(csv_signal)
    assert signal.rate == pytest.approx(1000)
    assert signal.duration == pytest.approx(1)
    assert signal.evaluate([0.25])[0] == pytest.approx(1)

def test_csv_single_column(tmp_path):
    path = tmp_path / "values.csv"
    path.write_text("# volts\nvalue\n1\n2\n3\n4\n")
    signal = SignalFileParser(str(path), rate=2).parse()
    assert signal.duration == 2
    assert list(signal.values) == [1, 2, 3, 4]
    with pytest.raises(SignalFormatError):
        SignalFileParser(str(path)).parse()

@pytest.mark.parametrize("content,message", [
    ("time,value\n0,1\n0.001,1\n0.0025,1\n", "non-uniform"),
    ("time,value\n0.5,1\n1,1\n1.5,1\n", "t=0"),
    ("time,volts\n0,1\n1,1\n", "value column"),
    ("time,value\n0,1\n", "two samples"),
    ("time,value\n0,a\n1,b\n", ""),
])
def test_csv_errors(tmp_path, content, message):
    path = tmp_path / "bad.csv"
    path.write_text(content)
    with pytest.raises(SignalFormatError) as err:
        ingest_signal(str(path))
    assert message in str(err.value)

def test_wav(tmp_path):
    path = str(tmp_path / "tone.wav")
    data = np.array([0, 16384, -16384, -32768, 32767], dtype=np.int16)
    wavfile.write(path, 44100, data)
    signal = ingest_signal(path, full_scale=2.0)
    assert signal.rate == 44100
    assert np.allclose(signal.values[:4], [0, 1, -1, -2])
    assert signal.values[4] == pytest.approx(2, abs=1e-4)

def test_wav_unsigned(tmp_path):
    path = str(tmp_path / "tone.wav")
    wavfile.write(path, 8000, np.array([128, 192, 64], dtype=np.uint8))
    signal = ingest_signal(path, full_scale=1.0)
    assert np.allclose(signal.values, [0, 0.5, -0.5])

def test_wav_errors(tmp_path):
    path = str(tmp_path / "stereo.wav")
    wavfile.write(path, 8000, np.zeros((10, 2), dtype=np.int16))
    with pytest.raises(ConfigError):
        ingest_signal(path)
    with pytest.raises(SignalFormatError) as err:
        ingest_signal(path, full_scale=1.0)
    assert "mono" in str(err.value)

def test_unknown_format(tmp_path):
    with pytest.raises(ConfigError):
        SignalFileParser(str(tmp_path / "signal.mp3"))
    assert SignalFileParser(str(tmp_path / "x.dat"), fmt="csv").fmt == "csv"
