"""Checks on the localized classes and the structure constants they produce"""
import itertools
from typing import Any, Dict

from core.checks.base_check import BaseCheck
from core.errors import ConsistencyError
from core.classical import SchubertVector, cup_with_h, cup_with_hX, pullback_j, pushforward_j
from core.gkm import (
    LocalizedClass, class_table, classical_expansion, curve_graph, gkm_violations,
    hyperplane_localization, structure_constants, vanishing_violations,
)
from core.poset import VarietyContext
from core.utils import root_label

ASSOCIATIVITY_MAX_RANK = 4
EQUIVARIANT_MAX_CLASSES = 12


class LocalizationCheck(BaseCheck):
    name = "localization"
    description = "edge divisibility on the curve graphs, vanishing pattern, degrees of f_alpha"

    async def execute(self, ctx: VarietyContext) -> Dict[str, Any]:
        table = class_table(ctx)
        fY = table.all_classes()
        fX = table.x_classes()
        for ambient, classes in (("Y", fY), ("X", fX)):
            violations = gkm_violations(classes, curve_graph(ctx, ambient))
            if violations:
                alpha, a, b = violations[0]
                raise ConsistencyError(
                    f"{ambient} class {root_label(alpha)} fails divisibility on the curve {root_label(a)} - {root_label(b)}"
                )
        vanishing = vanishing_violations(ctx, fY)
        if vanishing:
            alpha, beta = vanishing[0]
            raise ConsistencyError(f"f_{root_label(alpha)} does not vanish at x_{root_label(beta)}")
        for alpha, cls in fY.items():
            self.require(cls.is_homogeneous(), f"f_{root_label(alpha)} is not homogeneous")
            self.require(cls.degree == ctx.dim_Y - ctx.dim_Y_schubert(alpha), f"f_{root_label(alpha)} has the wrong degree")
        return {"classes_Y": len(fY), "classes_X": len(fX)}


class StructureConstantCheck(BaseCheck):
    name = "structure_constants"
    description = "classical constants are commutative and associative; equivariant solve is exact"

    async def execute(self, ctx: VarietyContext) -> Dict[str, Any]:
        products = class_table(ctx).products("Y")
        aleph = ctx.aleph
        for alpha, beta in itertools.combinations(aleph, 2):
            swapped = {d: products.values[beta][d] * products.values[alpha][d] for d in aleph}
            degree = ctx.degree_Y(alpha) + ctx.degree_Y(beta)
            self.require(products.expand(swapped, degree) == products.product(alpha, beta),
                         f"product of {root_label(alpha)} and {root_label(beta)} is not commutative")

        triples = 0
        if ctx.datum.rank <= ASSOCIATIVITY_MAX_RANK:
            def times(v: Dict, gamma) -> Dict:
                out: Dict = {}
                for delta, c in v.items():
                    for eps, d in products.product(delta, gamma).items():
                        out[eps] = out.get(eps, 0) + c * d
                return {k: c for k, c in out.items() if c}

            for alpha, beta, gamma in itertools.product(aleph, repeat=3):
                if ctx.degree_Y(alpha) + ctx.degree_Y(beta) + ctx.degree_Y(gamma) > ctx.dim_Y:
                    continue
                left = times(products.product(alpha, beta), gamma)
                right = times(products.product(beta, gamma), alpha)
                self.require(left == right, f"associativity fails on {root_label(alpha)}, {root_label(beta)}, {root_label(gamma)}")
                triples += 1

        equivariant = 0
        if len(aleph) <= EQUIVARIANT_MAX_CLASSES:
            equivariant = len(structure_constants(ctx, class_table(ctx).all_classes()))
        return {"associative_triples": triples, "equivariant_constants": equivariant}


class ChevalleyOracleCheck(BaseCheck):
    name = "chevalley_oracle"
    description = "closed-form h and h_X products agree with localization, j_* j^* = h_X"

    async def execute(self, ctx: VarietyContext) -> Dict[str, Any]:
        table = class_table(ctx)
        fY, fX = table.all_classes(), table.x_classes()
        f_H = hyperplane_localization(ctx)
        for alpha in ctx.aleph:
            product = LocalizedClass({b: f_H[b] * fY[alpha][b] for b in ctx.aleph}, fY[alpha].degree + 1)
            expected = SchubertVector(classical_expansion(ctx, product))
            self.require(cup_with_h(ctx, alpha) == expected, f"h . sigma_{root_label(alpha)} disagrees with localization")

            product_X = LocalizedClass({b: f_H[b] * fX[alpha][b] for b in ctx.aleph}, fX[alpha].degree + 1, "X")
            expected_X = SchubertVector(classical_expansion(ctx, product_X, "X"), "X")
            self.require(cup_with_hX(ctx, alpha) == expected_X, f"h_X . sigma_{root_label(alpha)},X disagrees with localization")

            pulled = SchubertVector(classical_expansion(ctx, fX[alpha]))
            self.require(pullback_j(ctx, alpha) == pulled, f"j^* sigma_{root_label(alpha)},X disagrees with localization")
            self.require(pushforward_j(ctx, pulled) == expected_X, f"j_* j^* != h_X at {root_label(alpha)}")
        return {"checked": len(ctx.aleph)}
