"""Checks on the quantum hyperplane operators and their spectra"""
from typing import Any, Dict

from sympy import Poly, QQ, degree, expand, gcd, sympify, zeros

from core.checks.base_check import BaseCheck
from core.classical import SchubertVector, cup_with_h, cup_with_hX, hyperplane_classes_A
from core.errors import UnsupportedContextError
from core.poset import VarietyContext
from core.rootsys import add, is_positive, support_size
from core.quantum import (
    T, build_EX, build_EY, build_typeA_operators, classical_agreement, comparison_map, gw_constants,
    is_diagonalizable, kernel_generators, q, q1, q2, quantum_hyperplane_operator, quantum_root, sigma_lambda0,
    spectral_report, typeA_kernel_generators,
)
from core.utils import fraction_str, root_label

SPECTRAL_MAX_RANK = 4


def _quantum_supported(ctx: VarietyContext) -> str:
    """Empty string when E_X and E_Y can be built, else the reason"""
    if ctx.datum.dynkin_type == "A":
        return "type A uses the two-parameter operators"
    try:
        quantum_root(ctx)
    except UnsupportedContextError as e:
        return str(e)
    return ""


class OperatorCheck(BaseCheck):
    name = "quantum_operators"
    description = "grading of every operator and agreement with the classical Chevalley formulas at q = 0"

    async def execute(self, ctx: VarietyContext) -> Dict[str, Any]:
        if ctx.datum.dynkin_type == "A":
            self.skip_unless(ctx.datum.rank >= 2, "A1 has no two-parameter operators")
            operators = list(build_typeA_operators(ctx))
        else:
            reason = _quantum_supported(ctx)
            self.skip_unless(not reason, reason)
            EX = build_EX(ctx)
            operators = [EX, build_EY(ctx)]
            classical_X = zeros(len(ctx.aleph), len(ctx.aleph))
            for col, alpha in enumerate(ctx.aleph):
                for beta, c in cup_with_hX(ctx, alpha).items():
                    classical_X[ctx.index[beta], col] = c
            self.require(EX.classical_part() == classical_X, "E_X at q = 0 is not h_X . -")
            if not ctx.is_adjoint:
                self.require(all(degree(entry, q) <= 1 for entry in EX.matrix), "E_X has a q^2 term")
        for op in operators:
            violations = op.grading_violations()
            self.require(not violations, f"{op.name} breaks the grading at " + ", ".join(
                f"({root_label(b)}, {root_label(a)})" for b, a, _ in violations[:3]))
        self.require(classical_agreement(ctx), "E_Y at q = 0 differs from the classical Chevalley matrix")
        return {"operators": [op.name for op in operators]}


class ComparisonCheck(BaseCheck):
    name = "comparison_map"
    description = "E_Y and E_X are intertwined by the comparison map, which is bijective"

    async def execute(self, ctx: VarietyContext) -> Dict[str, Any]:
        reason = _quantum_supported(ctx)
        self.skip_unless(not reason, reason)
        comparison = comparison_map(ctx)
        self.require(comparison.holds(), "the intertwining identity fails")
        self.require(comparison.is_bijective(), "the comparison map is not bijective")
        return {"domain": len(comparison.domain)}


class KernelCheck(BaseCheck):
    name = "kernel"
    description = "Gamma classes and the point relation span the kernel of E_Y"

    async def execute(self, ctx: VarietyContext) -> Dict[str, Any]:
        reason = _quantum_supported(ctx)
        self.skip_unless(not reason, reason)
        EY = build_EY(ctx)
        generators = kernel_generators(ctx)
        for v in generators:
            self.require(not EY.apply(v), f"E_Y does not kill {v.to_dict()}")
        report = spectral_report(EY)
        if ctx.is_adjoint and not ctx.is_quasi_minuscule:
            self.require(report.kernel_dim == len(ctx.phi_aleph) + 1,
                         f"kernel of E_Y has dimension {report.kernel_dim}, expected {len(ctx.phi_aleph) + 1}")
        return {"kernel_dim": report.kernel_dim, "generators": len(generators)}


class SpectrumCheck(BaseCheck):
    name = "spectrum"
    description = ("minimal polynomial of E_Y at q = 1 is T P(T^c1) with P squarefree and P(0) != 0; "
                   "in type A with n even, (h1 + h2)* is diagonalizable with the expected kernel")

    async def execute(self, ctx: VarietyContext) -> Dict[str, Any]:
        if ctx.datum.dynkin_type == "A":
            self.skip_unless(ctx.datum.rank >= 2, "A1 has no two-parameter operators")
            generators = typeA_kernel_generators(ctx)
            for op in build_typeA_operators(ctx):
                for v in generators:
                    self.require(not op.apply(v), f"{op.name} does not kill {v.to_dict()}")
            report = spectral_report(quantum_hyperplane_operator(ctx))
            diagonalizable = is_diagonalizable(report)
            if ctx.datum.rank % 2 == 0:
                self.require(diagonalizable, "(h1 + h2)* at q1 = q2 = 1 is not diagonalizable")
                self.require(report.kernel_dim == len(generators),
                             f"kernel of (h1 + h2)* has dimension {report.kernel_dim}, expected {len(generators)}")
            return {"diagonalizable": diagonalizable, "nonzero_simple": report.nonzero_simple,
                    "kernel_dim": report.kernel_dim}

        reason = _quantum_supported(ctx)
        self.skip_unless(not reason, reason)
        report = spectral_report(build_EY(ctx))
        details = {"min_poly": report.min_poly, "kernel_dim": report.kernel_dim}
        if ctx.datum.rank > SPECTRAL_MAX_RANK:
            return details
        shape = report.shape
        self.require(shape is not None and shape.k == 1 and shape.c == ctx.c1_Y,
                     f"minimal polynomial {report.min_poly} is not T P(T^{ctx.c1_Y})")
        P = Poly([sympify(c) for c in shape.P], T, domain=QQ)
        self.require(P.eval(0) != 0, "P(0) = 0")
        self.require(gcd(P, P.diff(T)).degree() == 0, "P is not squarefree")
        details["P"] = shape.P
        return details


class SigmaCheck(BaseCheck):
    name = "sigma"
    description = "the element of the h-subalgebra killed by h has lambda_0 < 0"

    async def execute(self, ctx: VarietyContext) -> Dict[str, Any]:
        self.skip_unless(ctx.is_adjoint and not ctx.is_quasi_minuscule and not _quantum_supported(ctx),
                         "sigma exists for adjoint, non quasi-minuscule contexts with a quantum formula")
        sigma, lambda0, coefficients = sigma_lambda0(ctx)
        image = build_EY(ctx).specialize({q: 1}) * sigma.column(ctx.aleph)
        self.require(image.is_zero_matrix, "E_Y does not kill sigma")
        self.require(lambda0 < 0, f"lambda_0 = {lambda0} is not negative")
        return {"lambda0": fraction_str(lambda0), "coefficients": [fraction_str(c) for c in coefficients]}


class GromovWittenCheck(BaseCheck):
    name = "gw_constants"
    description = "degree-two invariants used by the operators, read back from the point column"

    async def execute(self, ctx: VarietyContext) -> Dict[str, Any]:
        constants = gw_constants(ctx)
        if ctx.datum.dynkin_type == "A":
            self.skip_unless(ctx.datum.rank >= 2, "A1 has no two-parameter operators")
            self.require(all(v == 1 for k, v in constants.items() if k.endswith("(1,1)")), "(1,1) invariants != 1")
            self.require(all(v == 0 for k, v in constants.items() if not k.endswith("(1,1)")), "pure invariants != 0")
            h1, h2 = hyperplane_classes_A(ctx)
            datum = ctx.datum
            for op in build_typeA_operators(ctx):
                mixed = SchubertVector({a: expand(c).coeff(q1 * q2) for a, c in op.column(ctx.point).items()})
                self.require(mixed == h1 + h2, f"q1 q2 part of {op.name}[pt] is not h1 + h2")
                for simple in datum.simple_roots:
                    self.require(op.column(simple) == op.column(tuple(-c for c in simple)),
                                 f"{op.name} sigma_{root_label(simple)} != {op.name} sigma_-{root_label(simple)}")
            return {"constants": constants}
        reason = _quantum_supported(ctx)
        self.skip_unless(ctx.is_adjoint and not reason, reason or "no degree-two invariants for this variant")
        EY = build_EY(ctx)
        h = cup_with_h(ctx, ctx.varpi)
        theta = ctx.datum.highest_root
        lines = [alpha for alpha in ctx.aleph if not is_positive(alpha) and support_size(add(theta, alpha)) == 1]
        self.require(lines, "no line class in the Schubert basis")
        for line in lines:
            value = expand(EY.column(line)[ctx.varpi]).coeff(q, 2)
            self.require(value == 2, f"q^2 coefficient of [1] in h * sigma_{root_label(line)} is {value}, expected 2")
        top = SchubertVector({alpha: expand(c).coeff(q, 2) for alpha, c in EY.column(ctx.point).items()})
        self.require(top == h.scale(2), "q^2 part of h * [pt] is not 2h")
        return {"constants": constants, "lines": [root_label(line) for line in lines]}
