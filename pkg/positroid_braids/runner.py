"""Runs the configured checks on a bounded thread pool."""

from __future__ import annotations

import asyncio
import logging
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime
from typing import Any, Dict, List, Optional, Type

from .checks import (
    BaseCheck,
    BrickStrataCheck,
    IntroReproductionCheck,
    MainOneICheck,
    MainOneIICheck,
    RichardsonVsJugglingCheck,
    TraceReplayCheck,
)
from .config import Config
from .const import CHECK_TYPES, STATUS_DISABLED, STATUS_ERROR, STATUS_PASSED

_LOGGER = logging.getLogger(__name__)

CHECK_CLASSES: Dict[str, Type[BaseCheck]] = {
    "intro": IntroReproductionCheck,
    "main1-i": MainOneICheck,
    "main1-ii": MainOneIICheck,
    "rich-vs-juggling": RichardsonVsJugglingCheck,
    "brick-strata": BrickStrataCheck,
    "trace": TraceReplayCheck,
}


def _field_name(check_type: str) -> str:
    return check_type.replace("-", "_")


class CheckRunner:
    """Builds the enabled checks from a Config and collects their reports."""

    def __init__(self, config: Config, executor: Optional[ThreadPoolExecutor] = None):
        self.config = config
        self._executor = executor
        self.checks = self._initialize_checks()

    def _initialize_checks(self) -> Dict[str, BaseCheck]:
        """Initialize all checks based on configuration"""
        checks: Dict[str, BaseCheck] = {}
        for check_type in CHECK_TYPES:
            check_config = getattr(self.config.checks, _field_name(check_type))
            if check_config.enabled:
                checks[check_type] = CHECK_CLASSES[check_type](
                    check_config.model_dump(), self.config, self._executor
                )
        _LOGGER.debug(f"Enabled checks: {list(checks)}")
        return checks

    async def get_check_data(self, check_type: str) -> Dict[str, Any]:
        """Report of a single check, or a disabled marker"""
        if check_type not in self.checks:
            return {"status": STATUS_DISABLED}
        try:
            return await self.checks[check_type].get_data()
        except Exception as e:
            _LOGGER.error(f"Failed to run check {check_type}: {e}")
            return {
                "status": STATUS_ERROR,
                "error": str(e),
                "timestamp": datetime.now().isoformat(),
            }

    async def get_all_check_data(self) -> Dict[str, Any]:
        """Run every known check; disabled ones are reported as such"""
        own_executor = self._executor is None
        executor = self._executor or ThreadPoolExecutor(max_workers=self.config.runner.threads)
        for check in self.checks.values():
            check.executor = executor
        try:
            names = list(CHECK_TYPES)
            reports = await asyncio.gather(*(self.get_check_data(name) for name in names))
        finally:
            if own_executor:
                executor.shutdown(wait=True)
        results = dict(zip(names, reports))
        _LOGGER.info(
            "Checks finished: "
            + ", ".join(f"{name}={report.get('status')}" for name, report in results.items())
        )
        return results

    def run(self) -> Dict[str, Any]:
        return asyncio.run(self.get_all_check_data())

    def get_enabled_checks(self) -> List[str]:
        """Get list of enabled check names"""
        return list(self.checks.keys())


def all_passed(results: Dict[str, Any]) -> bool:
    """True when no check failed or errored; disabled checks are ignored."""
    statuses = [r.get("status") for r in results.values() if r.get("status") != STATUS_DISABLED]
    return all(status == STATUS_PASSED for status in statuses)
