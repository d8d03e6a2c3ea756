"""Verification checks and campaigns."""

from divgaps.verify.campaign import run_campaign
from divgaps.verify.checks import (
    CheckRegistry,
    check_identities,
    check_oracle_equivalence,
    check_theorem,
    get_check_registry,
)
from divgaps.verify.report import CampaignReport, CheckReport, ConvergenceRow

__all__ = [
    "CampaignReport",
    "CheckRegistry",
    "CheckReport",
    "ConvergenceRow",
    "check_identities",
    "check_oracle_equivalence",
    "check_theorem",
    "get_check_registry",
    "run_campaign",
]
