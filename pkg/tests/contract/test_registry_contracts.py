"""Contract tests for the predictor and check registries.

Every registered predictor must evaluate to a finite positive float at an
admissible point, and every registered check must belong to a known suite.
"""

import inspect
import math

import pytest

from divgaps.asymptotics.context import AsymptoticContext
from divgaps.asymptotics.predictors import get_default_registry, predict
from divgaps.config import EngineConfig
from divgaps.verify.checks import SUITES, get_check_registry


@pytest.fixture(scope="module")
def context():
    return AsymptoticContext(EngineConfig(grid_step=2.0**-8, d_u_max=6.0))


@pytest.mark.parametrize("kind", get_default_registry().kinds())
def test_predictor_contract(kind, context):
    """Test (q, n, m) = (3, 40, 4) is admissible for every kind and gives a value in (0, 2)."""
    registry = get_default_registry()
    predictor = registry.get(kind)
    assert predictor.kind == registry.canonical(kind)
    assert predictor.description
    value = predict(kind, 3, 40, 4, context)
    assert isinstance(value, float)
    assert math.isfinite(value)
    assert 0.0 < value < 2.0


@pytest.mark.parametrize("check_id", get_check_registry().kinds())
def test_check_contract(check_id):
    """Test each check takes (config, context, **defaults) and names its statement."""
    entry = get_check_registry().get(check_id)
    assert entry.check_id == check_id
    assert entry.suite in SUITES and entry.suite != "all"
    assert entry.anchor
    parameters = list(inspect.signature(entry.func).parameters.values())
    assert [p.name for p in parameters[:2]] == ["config", "ctx"]
    assert all(p.default is not inspect.Parameter.empty for p in parameters[2:])
