import numpy as np
import pytest

from meansense import (
    GeneratorDescriptor,
    LanguageApprox,
    S3Construction,
    S4Construction,
    build_schedule_s3,
    build_schedule_s4,
)


@pytest.fixture(scope="session")
def s3():
    return S3Construction(build_schedule_s3(4))


@pytest.fixture(scope="session")
def s4():
    return S4Construction(build_schedule_s4(4, GeneratorDescriptor("constant-zero")))


@pytest.fixture(scope="session")
def s3_x4(s3):
    return s3.transitive_prefix(s3.schedule.level(4).len_a)


@pytest.fixture(scope="session")
def s3_language(s3_x4):
    return LanguageApprox(s3_x4.prefix)


def naive_window_max(symbols: np.ndarray, window: int, target: int = 1):
    """Sliding-window maximum count by direct cumsum, with first witness."""
    hits = (symbols == target).astype(np.int64)
    cs = np.concatenate([[0], np.cumsum(hits)])
    counts = cs[window:] - cs[:-window]
    best = int(counts.max())
    return best, int(np.argmax(counts)) + 1


def naive_step_distances(a: np.ndarray, b: np.ndarray, steps: int, depth: int):
    """Reference per-step distances from expanded symbol arrays."""
    values = np.zeros(steps)
    truncated = np.zeros(steps, dtype=bool)
    for i in range(steps):
        window_a = a[i:i + depth]
        window_b = b[i:i + depth]
        diff = np.nonzero(window_a != window_b)[0]
        if len(diff):
            values[i] = 1.0 / (int(diff[0]) + 1)
        else:
            truncated[i] = True
    return values, truncated
