import pytest

def pytest_addoption(parser):
    parser.addoption("--run-benchmark", action="store_true",
                     help="Run benchmark tests")

def pytest_configure(config):
    config.addinivalue_line(
        "markers", "skipbenchmark: benchmark, needs --run-benchmark")

def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-benchmark"):
        return
    skip = pytest.mark.skip(reason="Requires --run-benchmark option")
    for item in items:
        if "skipbenchmark" in item.keywords:
            item.add_marker(skip)
