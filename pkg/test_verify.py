"""Tests for the verification checks and their orchestrator"""
import asyncio
import logging

import pytest

from core.checks.base_check import BaseCheck, CheckStatus
from core.checks import quantum_checks
from core.checks.quantum_checks import GromovWittenCheck, SigmaCheck, SpectrumCheck
from core.checks.structure_checks import PosetCheck, RootSystemCheck
from core.errors import ConsistencyError
from core.poset import context_for
from core.quantum import QuantumOperator, q
from core.workflow.verify_orchestrator import VerifyOrchestrator, default_checks

logger = logging.getLogger(__name__)


class BrokenCheck(BaseCheck):
    name = "broken"
    description = "Always fails"

    async def execute(self, ctx):
        raise ConsistencyError("deliberately inconsistent")


class CrashingCheck(BaseCheck):
    name = "crashing"

    async def execute(self, ctx):
        return {}["missing"]


def test_single_check_passes(g2_adjoint):
    result = asyncio.run(RootSystemCheck().run(g2_adjoint))
    assert result.status == CheckStatus.PASSED.value
    assert result.duration is not None and result.duration >= 0


def test_sigma_check_skips_quasi_minuscule(c3_qm):
    check = SigmaCheck()
    result = asyncio.run(check.run(c3_qm))
    assert result.status == "skipped"
    assert result.details["reason"]
    assert check.status == CheckStatus.SKIPPED


def test_failures_are_captured(g2_adjoint):
    broken = asyncio.run(BrokenCheck().run(g2_adjoint))
    assert broken.status == "failed"
    assert broken.error_message == "ConsistencyError: deliberately inconsistent"
    crashing = asyncio.run(CrashingCheck().run(g2_adjoint))
    assert crashing.status == "failed"
    assert crashing.error_message.startswith("KeyError")


def test_orchestrator_reports_failure(g2_adjoint):
    orchestrator = VerifyOrchestrator([PosetCheck(), BrokenCheck()])
    report = orchestrator.verify(g2_adjoint)
    assert not report.success
    assert [c.name for c in report.failed] == ["broken"]
    assert orchestrator.get_workflow_status()["workflow_status"] == "failed"


def test_default_check_names_are_unique():
    names = [check.name for check in default_checks()]
    assert len(names) == len(set(names))


@pytest.mark.parametrize("dynkin_type,rank,variant", [
    ("G", 2, "adjoint"), ("G", 2, "quasi-minuscule"), ("C", 3, "quasi-minuscule"), ("A", 2, "adjoint"),
    ("A", 4, "adjoint"),
])
def test_full_suite_passes(dynkin_type, rank, variant):
    ctx = context_for(dynkin_type, rank, variant)
    report = VerifyOrchestrator().verify(ctx)
    for check in report.checks:
        logger.info(f"{check.name}: {check.status} {check.error_message or ''}")
    assert report.success, [c.error_message for c in report.failed]


def test_spectrum_check_on_even_type_a():
    result = asyncio.run(SpectrumCheck().run(context_for("A", 4, "adjoint")))
    assert result.status == "passed", result.error_message
    assert result.details["diagonalizable"]
    assert not result.details["nonzero_simple"]
    assert result.details["kernel_dim"] == 5


def test_gw_check_reads_the_built_operator(g2_adjoint, monkeypatch):
    assert asyncio.run(GromovWittenCheck().run(g2_adjoint)).status == "passed"
    build = quantum_checks.build_EY

    def with_wrong_line_column(ctx):
        op = build(ctx)
        matrix = op.matrix.copy()
        matrix[ctx.index[ctx.varpi], ctx.index[(-3, -1)]] = q ** 2
        return QuantumOperator(op.name, ctx, op.ambient, matrix, dict(op.quantum_degrees))

    monkeypatch.setattr(quantum_checks, "build_EY", with_wrong_line_column)
    result = asyncio.run(GromovWittenCheck().run(g2_adjoint))
    assert result.status == "failed"
    assert "expected 2" in result.error_message
