import hypothesis
import numpy as np
import pytest

from src.domain.entities.dataset import Dataset
from src.domain.value_objects.kernel_spec import KernelSpec
from src.infrastructure.posterior.gp import fit

np.seterr(all="warn")

hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.register_profile("thorough", max_examples=200, deadline=None)
hypothesis.settings.load_profile("fast")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def small_dataset(rng):
    X = rng.uniform(0.0, 1.0, size=30)
    return Dataset(X, np.sin(2 * np.pi * X) + 0.1 * rng.standard_normal(30))


@pytest.fixture
def matern_posterior(small_dataset):
    return fit(small_dataset, KernelSpec.matern(1.2), lambda_=0.05, sigma2=0.01)


@pytest.fixture
def clean_env(monkeypatch):
    monkeypatch.delenv("GPCOVER_SEED", raising=False)
    monkeypatch.delenv("GPCOVER_WORKERS", raising=False)
