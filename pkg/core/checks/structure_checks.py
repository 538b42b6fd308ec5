"""Checks on the root system and on the fixed-point posets of X and Y"""
import itertools
from typing import Any, Dict

from core.checks.base_check import BaseCheck
from core.classical import betti_numbers
from core.poset import VarietyContext, hasse_graph_Y
from core.rootsys import ROOT_COUNTS, dominance_leq, negate
from core.utils import root_label


class RootSystemCheck(BaseCheck):
    name = "root_system"
    description = "root count, unique maxima, reflection closure, rho pairings, Cartan involution"

    async def execute(self, ctx: VarietyContext) -> Dict[str, Any]:
        datum = ctx.datum
        expected = ROOT_COUNTS[datum.dynkin_type](datum.rank)
        self.require(len(datum.roots) == expected, f"{len(datum.roots)} roots, expected {expected}")

        for gamma in datum.roots:
            for beta in datum.roots:
                image = datum.reflect(gamma, beta)
                self.require(datum.is_root(image), f"s_{root_label(gamma)}({root_label(beta)}) is not a root")
                self.require(datum.is_long(image) == datum.is_long(beta),
                             f"s_{root_label(gamma)} changes the length of {root_label(beta)}")

        for top, members in ((datum.highest_root, datum.long_roots), (datum.highest_short_root, datum.short_roots)):
            maxima = [r for r in members if all(dominance_leq(s, r) for s in members)]
            self.require(maxima == [top], f"{root_label(top)} is not the unique maximum")
        self.require(all(dominance_leq(r, datum.highest_root) for r in datum.roots),
                     "the highest root does not dominate every root")

        self.require(all(datum.rho_pairing(s) == 1 for s in datum.simple_roots), "<rho, alpha^vee> != 1 on a simple root")
        involution = datum.cartan_involution
        self.require(all(involution[involution[i]] == i for i in involution), "Cartan involution is not an involution")
        return {"roots": len(datum.roots), "highest_root": root_label(datum.highest_root)}


class DominanceOrderCheck(BaseCheck):
    name = "dominance_order"
    description = "dominance is reflexive, antisymmetric and transitive on roots"

    async def execute(self, ctx: VarietyContext) -> Dict[str, Any]:
        roots = ctx.datum.roots
        below = {r: [s for s in roots if dominance_leq(s, r)] for r in roots}
        for r in roots:
            self.require(r in below[r], f"{root_label(r)} is not below itself")
            for s in below[r]:
                self.require(s == r or not dominance_leq(r, s), f"{root_label(r)} and {root_label(s)} are mutually below")
                self.require(all(dominance_leq(t, r) for t in below[s]), f"transitivity fails below {root_label(r)}")
        return {"comparable_pairs": sum(len(v) for v in below.values())}


class PosetCheck(BaseCheck):
    name = "poset"
    description = "graded X covering graph, Poincare symmetry, Y order axioms, middle basis size"

    async def execute(self, ctx: VarietyContext) -> Dict[str, Any]:
        aleph = ctx.aleph
        graph = ctx.x_covering_graph
        self.require(ctx.dim_X_schubert(ctx.varpi) == ctx.dim_X and ctx.dim_X_schubert(ctx.point) == 0,
                     "covering graph does not span varpi to -varpi")
        for alpha, beta in graph.edges:
            self.require(ctx.dim_X_schubert(alpha) == ctx.dim_X_schubert(beta) + 1,
                         f"covering edge {root_label(alpha)} -> {root_label(beta)} skips a rank")
        self.require(ctx.dim_X == 2 * ctx.datum.rho_pairing(ctx.varpi) - 1 or not ctx.is_adjoint,
                     f"dim X = {ctx.dim_X} but 2<rho, varpi^vee> - 1 = {2 * ctx.datum.rho_pairing(ctx.varpi) - 1}")

        for alpha in aleph:
            total = ctx.dim_X_schubert(alpha) + ctx.dim_X_schubert(negate(alpha))
            self.require(total == ctx.dim_X, f"dim X_a + dim X_-a = {total} at {root_label(alpha)}")

        below = {a: [b for b in aleph if ctx.y_strict_order(b, a)] for a in aleph}
        for alpha in aleph:
            self.require(alpha not in below[alpha], f"order is reflexive at {root_label(alpha)}")
            for beta in below[alpha]:
                self.require(ctx.y_strict_order(negate(alpha), negate(beta)),
                             f"opposite reversal fails for {root_label(beta)} < {root_label(alpha)}")
                missing = [g for g in below[beta] if g not in below[alpha]]
                self.require(not missing, f"order not transitive through {root_label(beta)}")

        betti = betti_numbers(ctx)
        if ctx.dim_Y % 2 == 0:
            middle = betti[ctx.middle_degree]
            self.require(middle == 2 * len(ctx.phi_aleph), f"middle Betti number {middle} != 2|Phi_aleph|")
        self.require(betti == betti[::-1], f"Poincare polynomial {betti} is not palindromic")
        return {"dim_X": ctx.dim_X, "dim_Y": ctx.dim_Y, "betti": betti}


class HasseCheck(BaseCheck):
    name = "hasse"
    description = "Hasse diagram of Y is graded with positive integer coefficients"

    async def execute(self, ctx: VarietyContext) -> Dict[str, Any]:
        hasse = hasse_graph_Y(ctx)
        self.require(hasse.is_graded(), "an edge of the Hasse diagram skips a degree")
        self.require(len(hasse.vertices) == len(ctx.aleph), "Hasse diagram misses fixed points")
        for alpha, beta in itertools.product(ctx.aleph, repeat=2):
            if ctx.is_x_cover(alpha, beta) and ctx.y_strict_order(beta, alpha) \
                    and ctx.degree_Y(beta) == ctx.degree_Y(alpha) + 1:
                self.require(any(e.src == root_label(alpha) and e.dst == root_label(beta) for e in hasse.edges),
                             f"X covering relation {root_label(alpha)} -> {root_label(beta)} missing in Y")
        return {"edges": len(hasse.edges), "red_edges": len(hasse.red_edges)}
