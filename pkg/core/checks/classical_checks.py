"""Checks on the closed-form classical cohomology of Y"""
from typing import Any, Dict

from sympy import eye, zeros

from core.checks.base_check import BaseCheck
from core.classical import (
    SchubertVector, dual_class, gamma_vector, hyperplane_classes_A, integrate, line_classes_A, middle_basis,
    middle_matrices, opposite_base_change, opposite_gamma, opposite_intersections, pairing_matrix, pullback_j,
    pushforward_j,
)
from core.gkm import classical_product
from core.poset import VarietyContext
from core.rootsys import negate
from core.utils import expr_str, root_label


def _has_middle(ctx: VarietyContext) -> bool:
    return ctx.dim_Y >= 2 and ctx.dim_Y % 2 == 0 and bool(ctx.phi_aleph)


class MiddleMatrixCheck(BaseCheck):
    name = "middle_matrices"
    description = "identities between J, C, A, B, D, M, N and the middle intersection blocks"

    async def execute(self, ctx: VarietyContext) -> Dict[str, Any]:
        self.skip_unless(_has_middle(ctx), f"dim Y = {ctx.dim_Y} has no middle degree")
        m = middle_matrices(ctx)
        I = m.identity
        self.require(m.J * m.J == I, "J^2 != I")
        self.require(m.J * m.C == m.C * m.J, "J and C do not commute")
        self.require(m.C == m.C.T, "C is not symmetric")
        self.require(m.B == (m.C - 3 * I) * m.A, "B != (C - 3I)A")
        self.require(m.D == m.J + (m.C - 4 * I) * m.A, "D != J + (C - 4I)A")
        self.require(m.A == m.A.T, "A is not symmetric")
        self.require(m.A * m.C == m.C * m.A, "A and C do not commute")
        self.require(m.M * m.M == eye(2 * len(m.roots)), "M is not an involution")
        self.require(m.N * m.N == eye(2 * len(m.roots)), "N is not an involution")
        shifted = 4 * I - m.C
        self.require(all(shifted[:k, :k].det() > 0 for k in range(1, len(m.roots) + 1)),
                     "4I - C is not positive definite")
        self.require(m.gamma_pairing == m.epsilon * shifted, "Gamma pairing != epsilon (4I - C)")
        self.require(all((m.epsilon * m.gamma_pairing)[:k, :k].det() > 0 for k in range(1, len(m.roots) + 1)),
                     "epsilon times the Gamma pairing is not positive definite")

        # the closed-form blocks against the structure constants
        order = middle_basis(ctx)
        computed = zeros(len(order), len(order))
        for a, alpha in enumerate(order):
            for b, beta in enumerate(order):
                computed[a, b] = classical_product(ctx, alpha, beta).get(ctx.point, 0)
        self.require(computed == m.intersection_blocks, "middle intersection blocks disagree with localization")

        k = len(m.roots)
        blocks = m.intersection_blocks
        gamma = blocks[:k, :k] - blocks[:k, k:] - blocks[k:, :k] + blocks[k:, k:]
        self.require(gamma == m.gamma_pairing, "Gamma pairing is not the signed sum of the sigma blocks")
        return {"epsilon": m.epsilon, "A": [[expr_str(x) for x in m.A.row(i)] for i in range(k)]}


class PairingCheck(BaseCheck):
    name = "pairings"
    description = "Poincare pairings and dual classes in every degree"

    async def execute(self, ctx: VarietyContext) -> Dict[str, Any]:
        for degree in range(ctx.dim_Y + 1):
            matrix = pairing_matrix(ctx, degree)
            self.require(matrix.rows == matrix.cols and matrix.det() != 0, f"pairing in degree {degree} is degenerate")
            rows = ctx.basis_of_degree(degree)
            cols = ctx.basis_of_degree(ctx.dim_Y - degree)
            for a, alpha in enumerate(rows):
                dual = dual_class(ctx, alpha)
                for b, beta in enumerate(rows):
                    value = integrate(ctx, dual, SchubertVector.basis(beta))
                    self.require(value == (1 if a == b else 0),
                                 f"dual of {root_label(alpha)} pairs to {value} with {root_label(beta)}")
                for b, beta in enumerate(cols):
                    expected = classical_product(ctx, alpha, beta).get(ctx.point, 0)
                    self.require(matrix[a, b] == expected,
                                 f"pairing of {root_label(alpha)} and {root_label(beta)} disagrees with localization")
        self.require(pairing_matrix(ctx, 0)[0, 0] == 1, "fundamental class does not pair to 1 with the point")

        if ctx.datum.dynkin_type != "A" and ctx.is_adjoint and ctx.dim_Y % 2 == 0:
            alpha0 = next(s for s in ctx.datum.simple_roots if ctx.datum.pairing(ctx.datum.highest_root, s) != 0)
            if alpha0 in ctx.phi_aleph and ctx.degree_Y(alpha0) == ctx.middle_degree:
                total = dual_class(ctx, alpha0) + dual_class(ctx, negate(alpha0))
                self.require(total == pullback_j(ctx, alpha0), "dual classes of +-alpha_0 do not sum to j^* sigma_alpha_0")

        if ctx.datum.dynkin_type == "A" and ctx.datum.rank >= 2:
            for i, h in enumerate(hyperplane_classes_A(ctx), start=1):
                for j, line in enumerate(line_classes_A(ctx), start=1):
                    value = integrate(ctx, h, line)
                    self.require(value == (1 if i == j else 0), f"h{i} . line{j} = {value}")
        return {"degrees": ctx.dim_Y + 1}


class NonAmbientCheck(BaseCheck):
    name = "non_ambient"
    description = "Gamma classes are killed by j_* and pair as C - 4I with the opposite Gamma classes"

    async def execute(self, ctx: VarietyContext) -> Dict[str, Any]:
        self.skip_unless(_has_middle(ctx), f"dim Y = {ctx.dim_Y} has no middle degree")
        for alpha in ctx.phi_aleph:
            self.require(not pushforward_j(ctx, gamma_vector(ctx, alpha)), f"j_* Gamma_{root_label(alpha)} != 0")
        m = middle_matrices(ctx)
        roots = list(ctx.phi_aleph)
        k = len(roots)
        I = m.identity
        pairing = zeros(k, k)
        for a, alpha in enumerate(roots):
            for b, beta in enumerate(roots):
                pairing[a, b] = integrate(ctx, gamma_vector(ctx, alpha), opposite_gamma(ctx, beta))
        self.require(pairing == m.C - 4 * I, "Gamma . Gamma^- != C - 4I")

        A, B = opposite_base_change(ctx)
        self.require(A == m.A, "A from the opposite classes disagrees with the closed form")
        self.require(B == m.B, "B from the opposite classes disagrees with the closed form")
        for a, alpha in enumerate(roots):
            expected = SchubertVector()
            for b, beta in enumerate(roots):
                expected = expected + gamma_vector(ctx, beta).scale(m.D[a, b])
            self.require(opposite_gamma(ctx, alpha) == expected, f"Gamma^-_{root_label(alpha)} != D Gamma")

        blocks = opposite_intersections(ctx)
        self.require(blocks["plus_plus"] == I and blocks["minus_minus"] == I, "sigma . sigma^- is not I on Phi_aleph")
        self.require(blocks["plus_minus"] == m.C - 2 * I, "sigma_a . sigma^-_-b != C - 2I")
        self.require(blocks["minus_plus"] == zeros(k, k), "sigma_-a . sigma^-_b != 0")
        return {"D": [[expr_str(x) for x in m.D.row(i)] for i in range(k)]}
