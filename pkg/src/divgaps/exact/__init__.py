"""Exact (arbitrary-precision) counting sequences and their float counterparts.

estimates is imported on its own (divgaps.exact.estimates) since it depends on
the asymptotic engine, which in turn uses the products defined here.
"""

from divgaps.exact.gaps import f_counts, f_table, f_value, g_counts, g_table, g_value
from divgaps.exact.irreducibles import irr_count, irr_counts, within_gauss_bounds
from divgaps.exact.models import Estimate, ExactRatio, HighPrecisionReal, RoughTable
from divgaps.exact.numeric import NumericTable, numeric_tables, validate_overlap
from divgaps.exact.products import exp_neg_harmonic, harmonic, lambda_q
from divgaps.exact.rough import (
    perm_rough,
    perm_rough_column,
    perm_rough_counts,
    perm_rough_gf,
    r_ratio,
    rough_counts,
    rough_recurrence_residual,
    rough_table_gf,
    rough_table_rec,
)
from divgaps.exact.series import TruncatedSeries, one_minus_z_power

__all__ = [
    "Estimate",
    "ExactRatio",
    "HighPrecisionReal",
    "NumericTable",
    "RoughTable",
    "TruncatedSeries",
    "exp_neg_harmonic",
    "f_counts",
    "f_table",
    "f_value",
    "g_counts",
    "g_table",
    "g_value",
    "harmonic",
    "irr_count",
    "irr_counts",
    "lambda_q",
    "numeric_tables",
    "one_minus_z_power",
    "perm_rough",
    "perm_rough_column",
    "perm_rough_counts",
    "perm_rough_gf",
    "r_ratio",
    "rough_counts",
    "rough_recurrence_residual",
    "rough_table_gf",
    "rough_table_rec",
    "validate_overlap",
    "within_gauss_bounds",
]
