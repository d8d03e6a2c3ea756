"""Contract test for the divgaps public API.

The top level exposes one-off values and configuration; every name a
subpackage lists in __all__ must resolve.
"""

import importlib
from fractions import Fraction

import pytest

import divgaps

SUBPACKAGES = (
    "divgaps.exact",
    "divgaps.asymptotics",
    "divgaps.oracle",
    "divgaps.verify",
    "divgaps.utils",
    "divgaps.cli",
)


def test_top_level_exports():
    """Test that __all__ lists exactly the one-off entry points."""
    expected_exports = {
        "__version__",
        "EngineConfig",
        "load_config",
        "f_value",
        "g_value",
        "irr_count",
        "lambda_q",
        "perm_rough",
        "r_ratio",
    }
    actual_exports = set(divgaps.__all__)
    assert actual_exports == expected_exports, (
        f"Missing: {sorted(expected_exports - actual_exports)}\n"
        f"Extra: {sorted(actual_exports - expected_exports)}"
    )


def test_top_level_values_are_exact():
    """Test the re-exported functions return rationals and integers."""
    assert divgaps.f_value(2, 2, 1) == Fraction(3, 4)
    assert divgaps.g_value(3, 1) == Fraction(2, 3)
    assert divgaps.r_ratio(2, 2, 1) == Fraction(1, 4)
    assert divgaps.perm_rough(3, 1) == Fraction(1, 3)
    assert divgaps.irr_count(2, 4) == 3
    assert isinstance(divgaps.__version__, str)


@pytest.mark.parametrize("module_name", SUBPACKAGES)
def test_subpackage_exports_resolve(module_name):
    """Test every name in a subpackage __all__ is an attribute of it."""
    module = importlib.import_module(module_name)
    missing = [name for name in module.__all__ if not hasattr(module, name)]
    assert not missing, f"{module_name} lists unresolved names: {missing}"


def test_entry_point_callable():
    from divgaps.cli import main, run

    assert callable(main)
    assert callable(run)
