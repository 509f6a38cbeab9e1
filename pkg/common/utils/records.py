"""
Structured-text record utilities.

Every result file is written with sorted keys, fixed separators and a trailing
newline, so equal inputs produce byte-identical files.
"""

import json
from collections.abc import Iterable
from fractions import Fraction
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd
from loguru import logger


def _default(value: Any) -> Any:
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, Path):
        return str(value)
    raise TypeError(f"Object of type {type(value).__name__} is not serializable")


def dumps_record(record: dict[str, Any]) -> str:
    """One record as a single line of JSON."""
    return json.dumps(record, sort_keys=True, separators=(",", ":"), ensure_ascii=False, default=_default)


def ensure_output_dir(path: str | Path) -> Path:
    """
    Create the output directory if needed.

    Args:
        path: Directory to create

    Returns:
        Path: The directory
    """
    if not str(path):
        raise ValueError("Output directory cannot be empty")
    directory = Path(path)
    directory.mkdir(parents=True, exist_ok=True)
    return directory


def write_json(path: str | Path, document: dict[str, Any]) -> Path:
    """Write one JSON document, indented for reading."""
    path = Path(path)
    ensure_output_dir(path.parent)
    text = json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False, default=_default)
    path.write_text(text + "\n", encoding="utf-8")
    logger.debug(f"Saved {path}")
    return path


def write_jsonl(path: str | Path, records: Iterable[dict[str, Any]]) -> Path:
    """Write records one per line, in the order given."""
    path = Path(path)
    ensure_output_dir(path.parent)
    count = 0
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        for record in records:
            fh.write(dumps_record(record) + "\n")
            count += 1
    logger.debug(f"Saved {count} records to {path}")
    return path


def read_json(path: str | Path) -> dict[str, Any]:
    return json.loads(Path(path).read_text(encoding="utf-8"))


def read_jsonl(path: str | Path) -> list[dict[str, Any]]:
    with Path(path).open(encoding="utf-8") as fh:
        return [json.loads(line) for line in fh if line.strip()]


def write_table(path: str | Path, frame: pd.DataFrame) -> Path:
    """Write a plot-ready CSV table."""
    path = Path(path)
    ensure_output_dir(path.parent)
    frame.to_csv(path, index=False, lineterminator="\n")
    logger.debug(f"Saved table {path} ({len(frame)} rows)")
    return path
