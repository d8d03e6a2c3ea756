"""Brute-force ground truth: finite fields, factorization, exhaustive censuses."""

from divgaps.oracle.census import (
    CycleType,
    PermCensus,
    PolyCensus,
    census_perm,
    census_poly,
    census_poly_range,
    cycle_types,
    partition_weight_total,
)
from divgaps.oracle.degrees import DegreeSet, criterion_threshold, max_gap, subset_sums
from divgaps.oracle.field import FiniteField, build_field, field_of_size
from divgaps.oracle.polynomials import (
    Factorization,
    FqPoly,
    divisor_degree_set,
    enumerate_divisor_degrees,
    enumerate_monic,
    factor,
    gen_irreducibles,
)
from divgaps.oracle.sieve import SieveLayers, sieve_layers

__all__ = [
    "CycleType",
    "DegreeSet",
    "Factorization",
    "FiniteField",
    "FqPoly",
    "PermCensus",
    "PolyCensus",
    "SieveLayers",
    "build_field",
    "census_perm",
    "census_poly",
    "census_poly_range",
    "criterion_threshold",
    "cycle_types",
    "divisor_degree_set",
    "enumerate_divisor_degrees",
    "enumerate_monic",
    "factor",
    "field_of_size",
    "gen_irreducibles",
    "max_gap",
    "partition_weight_total",
    "sieve_layers",
    "subset_sums",
]
