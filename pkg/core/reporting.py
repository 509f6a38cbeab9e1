"""
Lightweight progress reporting primitives for long-running experiments.

How to use
----------
1) Instantiate a reporter where the work is orchestrated and pass it down:

    from core.reporting import ProgressReporter, ReportStatus

    reporter = ProgressReporter()  # logs every payload through loguru
    summary = run_experiment(config, reporter=reporter)

2) Emit step and percentage updates from the service code:

    reporter.report_step(step="Recommending parameters", status=ReportStatus.IN_PROGRESS)
    # ... do work ...
    reporter.report_step(step="Recommending parameters", status=ReportStatus.SUCCESS)

    for pct in (10, 40, 70, 100):
        reporter.report_percentage(step="Trials", progress=pct)

A custom ``sink`` receives every payload dict instead of the logger, which is
how tests observe the reporter.
"""

from collections.abc import Callable
from enum import Enum
from typing import Any

from loguru import logger


class ReportStatus(str, Enum):
    IN_PROGRESS = "IN_PROGRESS"
    SUCCESS = "SUCCESS"
    FAILURE = "FAILURE"
    PENDING = "PENDING"


def log_sink(payload: dict[str, Any]) -> None:
    """Default sink: one log line per payload."""
    if "progress" in payload:
        logger.info(f"{payload['step']}: {payload['progress']}%")
        return
    level = "WARNING" if payload["status"] == ReportStatus.FAILURE.value else "INFO"
    sub = f" [{payload['sub_step_name']}]" if payload.get("sub_step_name") else ""
    details = f" {payload['details']}" if payload.get("details") else ""
    logger.log(level, f"{payload['step']}{sub}: {payload['status']}{details}")


class ProgressReporter:
    def __init__(self, *, sink: Callable[[dict[str, Any]], None] | None = None) -> None:
        self._sink = sink or log_sink
        self._last_percentage: dict[str, int] = {}

    def report_step(
        self,
        *,
        step: str,
        status: ReportStatus,
        sub_step_name: str | None = None,
        sub_step_index: int | None = None,
        details: dict[str, Any] | None = None,
        message: str | None = None,
    ) -> None:
        payload: dict[str, Any] = {
            "step": step,
            "status": status.value,
            "sub_step_name": sub_step_name,
            "sub_step_index": sub_step_index,
        }
        if details is not None:
            payload["details"] = dict(details)
        if message is not None:
            payload.setdefault("details", {})
            payload["details"]["message"] = message

        self._sink(payload)

    def report_percentage(self, *, step: str, progress: int) -> None:
        """Emit a percentage update; repeated values for the same step are dropped."""
        progress = int(progress)
        if self._last_percentage.get(step) == progress:
            return
        self._last_percentage[step] = progress
        payload = {
            "step": step,
            "status": ReportStatus.IN_PROGRESS.value,
            "progress": progress,
        }
        self._sink(payload)

    def report_failure(self, *, step: str, details: dict[str, Any] | None = None) -> None:
        self.report_step(step=step, status=ReportStatus.FAILURE, details=details)
