import math
import warnings

import numpy as np
import pytest

from quasifold.spaces import NearRationalWarning, WeightsPQ, WeightsST

GOLDEN = (1 + math.sqrt(5)) / 2

_criteria: list[str] = []


def record_criterion(number: int, title: str, passed: bool, detail: str = "") -> None:
    line = f"[{'PASS' if passed else 'FAIL'}] criterion {number:>2}: {title}"
    if detail:
        line += f" ({detail})"
    _criteria.append(line)


def pytest_terminal_summary(terminalreporter):
    if _criteria:
        terminalreporter.section("acceptance criteria")
        for line in _criteria:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def golden_st():
    return WeightsST(1.0, GOLDEN)


@pytest.fixture
def sqrt2_st():
    return WeightsST(1.0, math.sqrt(2))


@pytest.fixture
def pq23():
    return WeightsPQ(2, 3)


def unit_weights_st():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NearRationalWarning)
        return WeightsST(1.0, 1.0)
