import asyncio
import logging
from typing import Dict, List, Any, Optional
from datetime import datetime

from core.checks.base_check import BaseCheck, CheckStatus
from core.checks.catalog_checks import CatalogCheck
from core.checks.classical_checks import MiddleMatrixCheck, NonAmbientCheck, PairingCheck
from core.checks.gkm_checks import ChevalleyOracleCheck, LocalizationCheck, StructureConstantCheck
from core.checks.quantum_checks import (
    ComparisonCheck, GromovWittenCheck, KernelCheck, OperatorCheck, SigmaCheck, SpectrumCheck,
)
from core.checks.structure_checks import DominanceOrderCheck, HasseCheck, PosetCheck, RootSystemCheck
from core.poset import VarietyContext
from core.state import VerificationReport

logger = logging.getLogger(__name__)


def default_checks() -> List[BaseCheck]:
    """All checks, in dependency order"""
    return [
        RootSystemCheck(),
        DominanceOrderCheck(),
        PosetCheck(),
        CatalogCheck(),
        LocalizationCheck(),
        StructureConstantCheck(),
        HasseCheck(),
        ChevalleyOracleCheck(),
        MiddleMatrixCheck(),
        PairingCheck(),
        NonAmbientCheck(),
        OperatorCheck(),
        GromovWittenCheck(),
        ComparisonCheck(),
        KernelCheck(),
        SpectrumCheck(),
        SigmaCheck(),
    ]


class VerifyOrchestrator:
    """Runs the property suite for one context"""

    def __init__(self, checks: Optional[List[BaseCheck]] = None):
        self.checks = checks if checks is not None else default_checks()
        self.workflow_status = "idle"
        self.current_step = ""
        self.start_time: Optional[datetime] = None
        self.end_time: Optional[datetime] = None

    async def run_verification(self, ctx: VarietyContext) -> VerificationReport:
        self.workflow_status = "running"
        self.start_time = datetime.now()
        logger.info(f"Starting verification of {ctx.label} with {len(self.checks)} checks")
        results = []
        for step, check in enumerate(self.checks, start=1):
            self.current_step = check.name
            logger.info(f"Step {step}: running check {check.name}")
            results.append(await check.run(ctx))
        self.end_time = datetime.now()
        report = VerificationReport(
            context=ctx.label,
            success=not any(r.status == CheckStatus.FAILED.value for r in results),
            checks=results,
        )
        self.workflow_status = "completed" if report.success else "failed"
        self.current_step = "Completed"
        duration = (self.end_time - self.start_time).total_seconds()
        logger.info(f"Verification of {ctx.label} finished in {duration:.2f} seconds: "
                    f"{len(report.failed)} failed")
        return report

    def verify(self, ctx: VarietyContext) -> VerificationReport:
        return asyncio.run(self.run_verification(ctx))

    def get_workflow_status(self) -> Dict[str, Any]:
        duration = None
        if self.start_time:
            end = self.end_time or datetime.now()
            duration = (end - self.start_time).total_seconds()
        return {
            "workflow_status": self.workflow_status,
            "current_step": self.current_step,
            "duration": duration,
            "checks": {c.name: c.status.value for c in self.checks},
        }
