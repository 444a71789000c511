import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))


def pytest_addoption(parser):
    parser.addoption("--run-reproduction", action="store_true", default=False,
                     help="run the full n=22 extremal-tree reproduction (hours)")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-reproduction"):
        return
    skip = pytest.mark.skip(reason="needs --run-reproduction")
    for item in items:
        if "reproduction" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
