import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

DATA = Path(__file__).parent / "data"

# incidence matrices of three named Fano realisations
FANO_I1 = np.array([
    [1, 1, 1, 0, 0, 0, 0],
    [1, 0, 0, -1, 1, 0, 0],
    [1, 0, 0, 0, 0, -1, 1],
    [0, 1, 0, 1, 0, 1, 0],
    [0, -1, 0, 0, -1, 0, 1],
    [0, 0, -1, -1, 0, 0, 1],
    [0, 0, -1, 0, 1, 1, 0],
])


def fano_i2(sign: int) -> np.ndarray:
    return np.array([
        [sign, sign, -1, 0, 0, 0, 0],
        [1, 0, 0, -1, -1, 0, 0],
        [1, 0, 0, 0, 0, -1, -1],
        [0, 1, 0, 1, 0, 1, 0],
        [0, 1, 0, 0, 1, 0, 1],
        [0, 0, 1, 1, 0, 0, 1],
        [0, 0, 1, 0, 1, 1, 0],
    ])


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


@pytest.fixture(scope="session")
def fano_classes():
    from hyperheat.fano import permutation_classes

    return permutation_classes(classify=True)


@pytest.fixture(scope="session")
def fano_negatives(fano_classes):
    from hyperheat.fano import verify_fano_universal_negatives

    return verify_fano_universal_negatives(fano_classes)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
