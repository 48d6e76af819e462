import math

import numpy as np
import pytest

from extrec.dist import (
    Exponential,
    Laplace,
    Logistic,
    Normal,
    Pareto,
    PowerFunction,
    Uniform,
)

CATALOG_MEMBERS = [
    Uniform(),
    Exponential(rate=1.0),
    PowerFunction(theta=2.0),
    Pareto(theta=2.0),
    Normal(),
    Laplace(),
    Logistic(),
]

SYMMETRIC_MEMBERS = [Uniform(), Normal(), Laplace(), Logistic()]


@pytest.fixture(params=CATALOG_MEMBERS, ids=lambda d: d.spec_string())
def catalog_member(request):
    return request.param


def ks_distance(values, cdf) -> float:
    """One-sample Kolmogorov-Smirnov distance of a sample against a cdf."""
    x = np.sort(np.asarray(values, dtype=float))
    n = x.size
    F = np.fromiter((cdf(float(v)) for v in x), dtype=float, count=n)
    return float(max(np.max(np.arange(1, n + 1) / n - F), np.max(F - np.arange(0, n) / n)))


def assert_close(actual, expected, tol, label=""):
    assert math.isfinite(actual), f"{label}: non-finite value {actual}"
    assert abs(actual - expected) < tol, f"{label}: |{actual} - {expected}| >= {tol}"
