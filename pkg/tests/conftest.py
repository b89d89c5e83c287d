import pytest
from hypothesis import HealthCheck, settings as hypothesis_settings

from cohomring.services.spec_service import spec_service

hypothesis_settings.register_profile(
    "ci",
    max_examples=40,
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
hypothesis_settings.load_profile("ci")

BUNDLED = [
    "o3_o2",
    "suspension_su2",
    "sp2",
    "su3_s7",
    "su3_self",
    "so3_rp3",
    "s4_oddodd",
    "u2_oddeven",
    "torus_flip",
    "torus_identity",
    "synthetic_k2",
]

EVEN_EVEN = ["suspension_su2", "sp2", "su3_s7", "su3_self", "synthetic_k2"]

_loaded = {}


def load(name: str):
    """Each bundled spec is parsed once per session so service caches are shared."""
    if name not in _loaded:
        _loaded[name] = spec_service.load(name)
    return _loaded[name]


@pytest.fixture(scope="session")
def bundled():
    return load


@pytest.fixture(scope="session")
def su3_s7():
    return load("su3_s7")


@pytest.fixture(scope="session")
def suspension():
    return load("suspension_su2")


@pytest.fixture(scope="session")
def s4():
    return load("s4_oddodd")


@pytest.fixture(scope="session")
def u2():
    return load("u2_oddeven")
