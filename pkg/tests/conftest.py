from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from cyclecert.wenger import WengerGraph, build_wenger

settings.register_profile(
    "ci",
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")


@pytest.fixture(scope="session")
def w2() -> WengerGraph:
    return build_wenger(2)


@pytest.fixture(scope="session")
def w3() -> WengerGraph:
    return build_wenger(3)


@pytest.fixture(scope="session")
def w4() -> WengerGraph:
    return build_wenger(4)
