import asyncio
import logging
from abc import ABC, abstractmethod
from typing import Dict, Any, Optional
from datetime import datetime
from enum import Enum

from core.errors import ConsistencyError
from core.poset import VarietyContext
from core.state import CheckResult

logger = logging.getLogger(__name__)


class CheckStatus(Enum):
    IDLE = "idle"
    RUNNING = "running"
    PASSED = "passed"
    FAILED = "failed"
    SKIPPED = "skipped"


class CheckSkipped(Exception):
    """Raised by a check that does not apply to the context"""


class BaseCheck(ABC):
    """Base class for all verification checks"""

    name = "check"
    description = ""

    def __init__(self):
        self.status = CheckStatus.IDLE
        self.start_time: Optional[datetime] = None
        self.end_time: Optional[datetime] = None
        self.error_message: Optional[str] = None
        self.details: Dict[str, Any] = {}

    @abstractmethod
    async def execute(self, ctx: VarietyContext) -> Dict[str, Any]:
        """Run the check; raise ConsistencyError on failure, CheckSkipped when not applicable.

        Awaited by VerifyOrchestrator.run_verification. Bodies may be fully synchronous.
        """
        pass

    @staticmethod
    def require(condition: bool, message: str) -> None:
        if not condition:
            raise ConsistencyError(message)

    @staticmethod
    def skip_unless(condition: bool, reason: str) -> None:
        if not condition:
            raise CheckSkipped(reason)

    async def run(self, ctx: VarietyContext) -> CheckResult:
        """Run the check with timing and error capture"""
        self.status = CheckStatus.RUNNING
        self.start_time = datetime.now()
        self.error_message = None
        self.details = {}
        logger.debug(f"Check {self.name} started for {ctx.label}")
        try:
            self.details = await self.execute(ctx) or {}
            self.status = CheckStatus.PASSED
            logger.info(f"Check {self.name} passed for {ctx.label}")
        except asyncio.CancelledError:
            self.status = CheckStatus.FAILED
            self.error_message = "cancelled"
            logger.warning(f"Check {self.name} was cancelled")
            raise
        except CheckSkipped as e:
            self.status = CheckStatus.SKIPPED
            self.details = {"reason": str(e)}
            logger.info(f"Check {self.name} skipped for {ctx.label}: {str(e)}")
        except Exception as e:
            self.status = CheckStatus.FAILED
            self.error_message = f"{type(e).__name__}: {str(e)}"
            logger.error(f"Check {self.name} failed for {ctx.label}: {self.error_message}")
        finally:
            self.end_time = datetime.now()
        return CheckResult(
            name=self.name,
            description=self.description,
            status=self.status.value,
            details=self.details,
            error_message=self.error_message,
            duration=(self.end_time - self.start_time).total_seconds(),
        )
