"""
Artifact emission: JSON documents and CSV tables with the run config echoed
"""

import json
import sys
from dataclasses import dataclass
from typing import Any, Dict, List, Optional

import pandas as pd
import structlog

from core_entropy.schemas.run_config import OutputFormat, RunConfig

logger = structlog.get_logger(__name__)


@dataclass
class Artifact:
    """
    Result of one command.

    `data` is the JSON body; `rows` and `columns` give the CSV table, and a
    command without rows emits its body as a single row.
    """
    data: Dict[str, Any]
    rows: Optional[List[Dict[str, Any]]] = None
    columns: Optional[List[str]] = None
    exit_code: int = 0


def _flat_row(data: Dict[str, Any]) -> Dict[str, Any]:
    return {
        key: json.dumps(value, sort_keys=True) if isinstance(value, (dict, list)) else value
        for key, value in data.items()
    }


def render(config: RunConfig, artifact: Artifact) -> str:
    echo = config.echo()
    if config.format == OutputFormat.JSON:
        body = {"config": echo, **artifact.data}
        return json.dumps(body, indent=2, sort_keys=True) + "\n"

    rows = artifact.rows if artifact.rows is not None else [_flat_row(artifact.data)]
    frame = pd.DataFrame(rows, columns=artifact.columns)
    header = f"# config: {json.dumps(echo, sort_keys=True)}\n"
    return header + frame.to_csv(index=False, lineterminator="\n", float_format="%.17g")


def emit(config: RunConfig, artifact: Artifact) -> None:
    text = render(config, artifact)
    if config.output:
        with open(config.output, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        logger.info("artifact written", path=config.output, command=config.command.value)
    else:
        sys.stdout.write(text)
        sys.stdout.flush()
