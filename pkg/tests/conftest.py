import pytest

from skewclean import rings

# (ring spec, endomorphism spec) pairs exercised throughout the suite
CORPUS = [
    ("zmod:2", "id"),
    ("zmod:4", "id"),
    ("zmod:5", "id"),
    ("zmod:8", "id"),
    ("dual:zmod:4", "negx"),
    ("groupring:zmod:4;C2", "aug"),
    ("quot:zmod:3;x^2+x+1", "id"),
]


def pytest_addoption(parser):
    parser.addoption(
        "--runlong",
        action="store_true",
        default=False,
        help="run the long exhaustive sweeps (full 16^6 enumerations)",
    )


def pytest_configure(config):
    config.addinivalue_line("markers", "longrun: long exhaustive verification runs")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runlong"):
        return
    skip = pytest.mark.skip(reason="pass --runlong to run the full exhaustive sweeps")
    for item in items:
        if "longrun" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def corpus():
    pairs = []
    for ring_spec, sigma_spec in CORPUS:
        ring = rings.get_ring(ring_spec)
        pairs.append((ring, rings.get_endomorphism(ring, sigma_spec)))
    return pairs


@pytest.fixture(scope="session")
def zmod4():
    return rings.get_ring("zmod:4")


@pytest.fixture(scope="session")
def zmod4_id(zmod4):
    return rings.get_endomorphism(zmod4, "id")


@pytest.fixture(scope="session")
def dual4():
    return rings.get_ring("dual:zmod:4")


@pytest.fixture(scope="session")
def z4g():
    return rings.get_ring("groupring:zmod:4;C2")
