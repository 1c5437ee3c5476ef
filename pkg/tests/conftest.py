import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hqcldpc.encoder import derive_encoder
from hqcldpc.hqc import catalog_config, construct_hqc


@pytest.fixture(scope="session")
def h576():
    return construct_hqc(catalog_config("wimax-576", seed=1))


@pytest.fixture(scope="session")
def enc576(h576):
    return derive_encoder(h576)


@pytest.fixture(scope="session")
def h2304():
    return construct_hqc(catalog_config("wimax-2304", seed=1))


@pytest.fixture(scope="session")
def enc2304(h2304):
    return derive_encoder(h2304)
