import numpy as np
import pytest

from models import NoiseModel
from utils.logging_config import setup_testing_logging


@pytest.fixture
def rng():
    return np.random.default_rng(20100101)


@pytest.fixture
def storage_model():
    return NoiseModel(p=0.8, p1=0.95, n_paths=8, seed=7)


@pytest.fixture(scope="session", autouse=True)
def quiet_logging(tmp_path_factory):
    setup_testing_logging(log_dir=str(tmp_path_factory.mktemp("logs")))
