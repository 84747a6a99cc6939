"""Shared output helpers for subcommands."""
import json
from pathlib import Path
from typing import Optional

import pandas as pd
from pydantic import BaseModel

from reflekt.schemas.report import VerificationReport


def dump(payload: BaseModel) -> str:
    return json.dumps(payload.model_dump(by_alias=True, exclude_none=True), sort_keys=True, indent=2)


def emit(payload: BaseModel, json_path: Optional[str] = None) -> None:
    """Print the payload as JSON, and also write it to ``json_path`` when given."""
    text = dump(payload)
    if json_path:
        Path(json_path).write_text(text + "\n", encoding="utf-8")
    print(text)


def report_table(report: VerificationReport) -> str:
    """Human-readable table of checks."""
    if not report.checks:
        return "no checks"
    frame = pd.DataFrame(
        [
            {"check": c.name, "status": c.status, "reason": c.reason or ""}
            for c in report.checks
        ]
    )
    counts = frame["status"].value_counts()
    summary = ", ".join(f"{status}: {counts.get(status, 0)}" for status in ("pass", "fail", "skipped"))
    return frame.to_string(index=False) + "\n\n" + summary
