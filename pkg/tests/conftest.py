import pytest

from tailcord import ModelSpec
from tailcord.quadrature import QuadratureConfig


@pytest.fixture
def clayton():
    return ModelSpec.survival_clayton(2.0)


@pytest.fixture
def logistic():
    return ModelSpec.logistic(0.5)


@pytest.fixture
def gaussian():
    return ModelSpec.gaussian(0.5)


@pytest.fixture
def tight():
    return QuadratureConfig(abs_tol=1e-13, rel_tol=1e-12)
