"""Integration tests: exact engine against exhaustive censuses."""

import pytest

from divgaps.config import EngineConfig
from divgaps.verify.checks import check_oracle_equivalence, check_theorem

pytestmark = pytest.mark.integration

SMALL_DEGREES = {2: 8, 3: 5, 4: 4, 5: 3}


@pytest.fixture(scope="module")
def config():
    return EngineConfig(grid_step=2.0**-8, census_degrees=SMALL_DEGREES)


def test_small_censuses_match_exact_tables(config):
    """Test every (q, n, m) cell of f, r, g and p agrees with the census."""
    report = check_oracle_equivalence(n_max_poly=None, n_max_perm=12, config=config)
    assert report.passed, report.details["mismatches"]
    assert report.details["mismatch_count"] == 0
    assert report.parameter_range["n_max_poly"] == {"2": 8, "3": 5, "4": 4, "5": 3}
    poly_cells = sum(n * (n + 1) // 2 for n in SMALL_DEGREES.values())
    perm_cells = 1 + sum(range(1, 13))
    assert report.details["cells"] == poly_cells + perm_cells


def test_shared_degree_bound(config):
    report = check_oracle_equivalence(q_list=(2, 3), n_max_poly=4, n_max_perm=6, config=config)
    assert report.passed
    assert report.parameter_range["q"] == [2, 3]


def test_dual_rough_counts(config):
    report = check_theorem("dual", {"q_list": (2, 3, 5), "n_max": 80, "m_max": 8}, config)
    assert report.passed


@pytest.mark.slow
def test_default_census_degrees():
    """Test the full-size oracle campaign (q^n up to 2^16, 3^12, 4^10, 5^9; S_n up to 40)."""
    report = check_oracle_equivalence()
    assert report.passed, report.details["mismatches"]
