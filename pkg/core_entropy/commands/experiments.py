"""
scan, feigenbaum and monotonicity subcommands
"""

from itertools import permutations

import structlog

from core_entropy.commands.output import Artifact
from core_entropy.core.config import settings
from core_entropy.core.exceptions import InsufficientDataError
from core_entropy.schemas.results import FitOutput, MonotonicityOutput
from core_entropy.schemas.run_config import RunConfig
from core_entropy.services.holder_service import (
    certified_pairs,
    feigenbaum_counterexample,
    fit_exponent,
    holder_scan,
    monotonicity_sweep,
)
from core_entropy.utils.parsing import parse_angle, parse_sequence

logger = structlog.get_logger(__name__)

SCAN_COLUMNS = ["phi", "distance", "k", "h_phi", "delta_h"]


def scan_command(config: RunConfig) -> Artifact:
    if not config.angle:
        raise ValueError("scan needs --angle")
    theta = parse_angle(config.angle)
    records = holder_scan(theta, config.m_min, config.m_max, config.offsets)
    rows = [r.as_row() for r in records]

    fit = None
    exit_code = 0
    try:
        fit = FitOutput.from_fit(fit_exponent(records)).model_dump()
    except InsufficientDataError as e:
        logger.error("fit failed", angle=theta.text, error=str(e), records=rows)
        exit_code = 1
    return Artifact(
        data={"angle": theta.text, "records": rows, "fit": fit},
        rows=rows,
        columns=SCAN_COLUMNS,
        exit_code=exit_code,
    )


def feigenbaum_command(config: RunConfig) -> Artifact:
    rows = [row.as_row() for row in feigenbaum_counterexample(config.n_max or settings.FEIGENBAUM_LEVEL)]
    return Artifact(
        data={"rows": rows},
        rows=rows,
        columns=["n", "sequence", "entropy", "diff", "bound", "ratio"],
    )


def monotonicity_command(config: RunConfig) -> Artifact:
    if not config.sequences:
        raise ValueError("monotonicity needs at least one --seq")
    corpus = [parse_sequence(text) for text in config.sequences]
    pairs = certified_pairs(corpus, config.max_terms) + list(permutations(corpus, 2))
    report = monotonicity_sweep(pairs, config.n_max or settings.CENSUS_HORIZON)
    output = MonotonicityOutput.from_report(report)
    return Artifact(
        data=output.model_dump(),
        rows=output.violations,
        columns=["mu", "nu", "kind", "depth", "detail"],
        exit_code=0 if report.passed else 1,
    )
