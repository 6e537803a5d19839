"""
entropy and census subcommands
"""

from core_entropy.commands.output import Artifact
from core_entropy.commands.symbolic import sequence_from_config
from core_entropy.core.config import settings
from core_entropy.schemas.results import EntropyOutput
from core_entropy.schemas.run_config import RunConfig
from core_entropy.services.census_service import census
from core_entropy.services.entropy_service import entropy_estimate, entropy_exact, recurrence_witness


def entropy_command(config: RunConfig) -> Artifact:
    nu = sequence_from_config(config)
    n_max = config.n_max or settings.CENSUS_HORIZON
    if config.estimate:
        result = entropy_estimate(nu, n_max)
    else:
        result = entropy_exact(nu, config.tolerance)
    output = EntropyOutput.from_result(nu.text, result, recurrence_witness(nu, n_max))
    return Artifact(data=output.model_dump())


def census_command(config: RunConfig) -> Artifact:
    nu = sequence_from_config(config)
    result = census(nu, config.n_max or settings.CENSUS_HORIZON)
    rows = [{"depth": n, "count": count} for n, count in result.rows()]
    data = {
        "sequence": nu.text,
        "n_max": result.n_max,
        "counts": [row["count"] for row in rows],
        "cumulative": result.cumulative(result.n_max),
    }
    return Artifact(data=data, rows=rows, columns=["depth", "count"])
