"""Verification campaigns: run a suite of checks and write report.json and convergence.csv."""

from __future__ import annotations

from pathlib import Path

from divgaps.asymptotics.context import AsymptoticContext, get_context
from divgaps.config import EngineConfig
from divgaps.utils.logging import get_logger, log_operation
from divgaps.utils.serialization import loads_json, write_csv, write_json
from divgaps.verify.checks import check_theorem, get_check_registry
from divgaps.verify.report import CONVERGENCE_HEADER, CampaignReport

logger = get_logger(__name__)

REPORT_FILE = "report.json"
CONVERGENCE_FILE = "convergence.csv"


def engine_version() -> str:
    from divgaps import __version__

    return __version__


def run_campaign(
    suite: str = "all",
    config: EngineConfig | None = None,
    report_path: Path | None = None,
    context: AsymptoticContext | None = None,
) -> CampaignReport:
    """
    Run every check of a suite and write the artifacts.

    # AICODE-NOTE: Checks run one after another in check-id order and share
    # one AsymptoticContext, so the ω and d grids are solved once per campaign.
    # Everything except runtime_seconds is reproducible for a fixed config.

    Args:
        suite: "all", "oracle", "constants", "theorems", "identities" or a check id
        config: Engine configuration
        report_path: Where report.json goes; convergence.csv is written next to
            it. Defaults to config.output_dir / "verify" / report.json
        context: Solved grids; shared default context when omitted

    Returns:
        CampaignReport; passed is True iff every check passed

    Raises:
        UnknownKindError: If suite is neither a suite name nor a check id
    """
    config = config or EngineConfig()
    ctx = context or get_context(config)
    check_ids = get_check_registry().suite(suite)

    reports = [check_theorem(check_id, None, config, ctx) for check_id in check_ids]
    campaign = CampaignReport(
        suite=suite,
        engine_version=engine_version(),
        config=loads_json(config.model_dump_json()),
        checks=sorted(reports, key=lambda report: report.check_id),
    )

    path = Path(report_path) if report_path else config.output_dir / "verify" / REPORT_FILE
    write_json(path, campaign.model_dump(mode="json"))
    write_csv(path.parent / CONVERGENCE_FILE, CONVERGENCE_HEADER, campaign.convergence_rows())

    log_operation(
        logger,
        "campaign_completed",
        suite=suite,
        checks=len(reports),
        passed=campaign.passed,
        failed=",".join(campaign.failed()) or "-",
        report=path,
    )
    return campaign
