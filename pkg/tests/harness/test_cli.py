"""
Test the pulsal command line
"""
import io
import json
import pandas as pd
import pytest

from fractions import Fraction
from pulsal.core import run_tool_main
from pulsal.core.error import ConfigError
from pulsal.encoder import ConstantSignal, SinusoidSignal
from pulsal.harness import PulsalDriver, signal_from_spec
from pulsal.pulse import IfcParams, PulseTrain, PulseTrainFileParser, \
    write_pulse_train

def pulsal(*argv):
    stream = io.StringIO()
    status = run_tool_main(PulsalDriver, [str(a) for a in argv], stream)
    return status, stream.getvalue()

def test_signal_from_spec(tmp_path):
    signal = signal_from_spec("constant:2.5", 1)
    assert isinstance(signal, ConstantSignal)
    assert signal.value == 2.5
    signal = signal_from_spec("sine:10:12:1.5", 0.25)
    assert isinstance(signal, SinusoidSignal)
    assert (signal.amplitude, signal.frequency, signal.phase) == \
        (10, 12, 1.5)
    assert signal.duration == 0.25
    path = tmp_path / "signal.csv"
    path.write_text("value\n1\n2\n")
    assert signal_from_spec(str(path), rate=10).duration == \
        pytest.approx(0.2)

@pytest.mark.parametrize("spec,duration", [
    ("constant:1", None),
    ("constant:a", 1),
    ("constant:1:2", 1),
    ("sine:1", 1),
])
def test_signal_from_spec_errors(spec, duration):
    with pytest.raises(ConfigError):
        signal_from_spec(spec, duration)

@pytest.mark.timeout(10)
def test_encode(tmp_path):
    status, _ = pulsal("--out", tmp_path, "--exact", "--theta", 1,
                       "--alpha", 0, "encode", "constant:1",
                       "--duration", 3.5)
    assert status == 0
    train, params = PulseTrainFileParser(
        str(tmp_path / "encoded.txt")).parse()
    assert train.times == (1, 2, 3)
    assert params == IfcParams(1, 0)

@pytest.mark.timeout(10)
def test_encode_clocked(tmp_path):
    status, _ = pulsal("--out", tmp_path, "--clock", "1/1000",
                       "--theta", "0.25", "--alpha", 0, "encode",
                       "constant:-1", "--duration", 1.1, "--output", "n.txt")
    assert status == 0
    train, params = PulseTrainFileParser(str(tmp_path / "n.txt")).parse()
    assert params.clock == Fraction(1, 1000)
    assert list(train.ticks) == [250, 500, 750, 1000]
    assert train.counts() == (0, 4)

@pytest.mark.timeout(10)
def test_add(tmp_path):
    params = IfcParams(1, 0)
    write_pulse_train(str(tmp_path / "a.txt"), PulseTrain([2, 4]), params)
    write_pulse_train(str(tmp_path / "b.txt"), PulseTrain([4]), params)
    status, _ = pulsal("--out", tmp_path, "add", tmp_path / "a.txt",
                       tmp_path / "b.txt")
    assert status == 0
    total, _ = PulseTrainFileParser(str(tmp_path / "sum.txt")).parse()
    assert total.times == (Fraction(4, 3), Fraction(8, 3), 4)
    with open(str(tmp_path / "sum.txt.json")) as fd:
        diagnostics = json.load(fd)
    assert diagnostics["model"] == "linear"
    assert diagnostics["operands"] == [2, 1]
    assert diagnostics["pulses"] == 3

@pytest.mark.timeout(30)
def test_reconstruct(tmp_path):
    status, _ = pulsal("--out", tmp_path, "--exact", "--theta", 0.1,
                       "--alpha", 0, "encode", "constant:1",
                       "--duration", 4.95)
    assert status == 0
    status, _ = pulsal("--out", tmp_path, "reconstruct",
                       tmp_path / "encoded.txt", "--rate", 100,
                       "--reference", "constant:1")
    assert status == 0
    df = pd.read_csv(str(tmp_path / "reconstruction.csv"))
    assert list(df.columns) == ["time", "value"]
    assert df["time"].iloc[-1] == pytest.approx(4.9)
    with open(str(tmp_path / "reconstruction.csv.json")) as fd:
        diagnostics = json.load(fd)
    assert diagnostics["sup_error"] < 0.05
    assert diagnostics["samples"] == len(df)

@pytest.mark.timeout(10)
def test_experiment(tmp_path):
    status, _ = pulsal("--out", tmp_path, "experiment", "associativity")
    assert status == 0
    assert (tmp_path / "associativity_metrics.csv").exists()
    assert (tmp_path / "associativity.json").exists()

@pytest.mark.timeout(60)
def test_experiment_sweep(tmp_path):
    status, _ = pulsal("--out", tmp_path, "experiment", "threshold-sweep",
                       "--sweep-values", "1e-3", "--duration", 0.01)
    assert status == 0
    df = pd.read_csv(str(tmp_path / "threshold-sweep_metrics.csv"))
    assert list(df["theta"]) == [1e-3]

def test_config_file(tmp_path):
    config = tmp_path / "pulsal.ini"
    config.write_text("[pulsal]\nexact = yes\ntheta = 1\nalpha = 0\n\n"
                      "[encode]\nduration = 3.4\noutput = config.txt\n")
    status, _ = pulsal("--config", config, "--out", tmp_path, "encode",
                       "constant:2")
    assert status == 0
    train, _ = PulseTrainFileParser(str(tmp_path / "config.txt")).parse()
    assert train.times == tuple(Fraction(k, 2) for k in range(1, 7))

@pytest.mark.parametrize("argv,error", [
    (["experiment", "nope"], "UnknownExperimentError"),
    (["encode", "constant:x"], "ConfigError"),
    (["reconstruct", "missing.txt"], "FileNotFoundError"),
    (["experiment", "associativity", "--sweep", "theta"], "ConfigError"),
])
def test_errors(tmp_path, argv, error):
    status, output = pulsal("--out", tmp_path, *argv)
    assert status == 1
    record = json.loads(output)
    assert record["status"] == "error"
    assert record["error"] == error

@pytest.mark.timeout(30)
def test_reconstruct_options(tmp_path):
    status, _ = pulsal("--out", tmp_path, "--exact", "--theta", 0.1,
                       "--alpha", 0, "encode", "constant:1",
                       "--duration", 4.95)
    assert status == 0
    reference = tmp_path / "reference.csv"
    reference.write_text("value\n" + "1\n" * 491)
    config = tmp_path / "pulsal.ini"
    config.write_text("[reconstruct]\nwindow_pulses = 16\n")
    status, _ = pulsal("--config", config, "--out", tmp_path, "reconstruct",
                       tmp_path / "encoded.txt", "--rate", 100,
                       "--basis-factor", 4, "--workers", 2,
                       "--reference", reference, "--sample-rate", 100)
    assert status == 0
    with open(str(tmp_path / "reconstruction.csv.json")) as fd:
        diagnostics = json.load(fd)
    assert diagnostics["windows"] > 1
    assert diagnostics["sup_error"] < 0.05

@pytest.mark.parametrize("argv", [
    ["--theta"],
    ["--theta", "-1", "encode", "constant:1"],
    ["encode"],
    ["add"],
    [],
])
def test_usage_errors(tmp_path, argv):
    status, output = pulsal("--out", tmp_path, *argv)
    assert status == 2
    record = json.loads(output)
    assert record["status"] == "error"
    assert record["error"] == "UsageError"
    assert record["message"]

def test_add_single_operand(tmp_path):
    write_pulse_train(str(tmp_path / "a.txt"), PulseTrain([2, 4]),
                      IfcParams(1, 0))
    status, output = pulsal("--out", tmp_path, "add", tmp_path / "a.txt")
    assert status == 1
    assert json.loads(output)["error"] == "ConfigError"
    assert not (tmp_path / "sum.txt").exists()

@pytest.mark.parametrize("other", [
    IfcParams(2, 0),
    IfcParams(1, 40),
    IfcParams(1, 0, tau=Fraction(1, 10)),
])
def test_add_mismatched_params(tmp_path, other):
    write_pulse_train(str(tmp_path / "a.txt"), PulseTrain([2, 4]),
                      IfcParams(1, 0))
    write_pulse_train(str(tmp_path / "b.txt"), PulseTrain([4]), other)
    status, output = pulsal("--out", tmp_path, "add", tmp_path / "a.txt",
                            tmp_path / "b.txt")
    assert status == 1
    record = json.loads(output)
    assert record["error"] == "ConfigError"
    assert "b.txt" in record["message"]

@pytest.mark.timeout(10)
def test_add_mixed_clocks(tmp_path):
    write_pulse_train(str(tmp_path / "a.txt"),
                      PulseTrain([2000, 4000], clock=Fraction(1, 1000)),
                      IfcParams(1, 0, clock=Fraction(1, 1000)))
    write_pulse_train(str(tmp_path / "b.txt"),
                      PulseTrain([40], clock=Fraction(1, 10)),
                      IfcParams(1, 0, clock=Fraction(1, 10)))
    status, _ = pulsal("--out", tmp_path, "add", tmp_path / "a.txt",
                       tmp_path / "b.txt")
    assert status == 0
    total, params = PulseTrainFileParser(str(tmp_path / "sum.txt")).parse()
    assert params.clock == Fraction(1, 1000)
    assert len(total) == 3
