import logging
from typing import Dict, List, Sequence, Tuple

import networkx as nx
from cachetools import LRUCache, cached

from config.settings import Settings
from core.errors import ConsistencyError, UnsupportedContextError
from core.rootsys import (
    Root, RootDatum, build_root_system, dominance_leq, height, is_positive, negate, sub, support,
)
from core.state import HasseEdge
from core.utils import root_label, to_rational

logger = logging.getLogger(__name__)

ADJOINT = "adjoint"
QUASI_MINUSCULE = "quasi-minuscule"
VARIANTS = (ADJOINT, QUASI_MINUSCULE)


def _tie_break(root: Root) -> Tuple[int, ...]:
    return tuple(-c for c in root)


class VarietyContext:
    """Fixed points, Schubert dimensions and orders for X and its hyperplane section Y"""

    def __init__(self, datum: RootDatum, variant: str):
        self.datum = datum
        self.variant = variant
        self.is_adjoint = variant == ADJOINT
        # X is adjoint and quasi-minuscule at once when the root system is simply laced
        self.is_quasi_minuscule = variant == QUASI_MINUSCULE or datum.is_simply_laced

        members = datum.long_roots if self.is_adjoint else datum.short_roots
        positives = sorted((r for r in members if is_positive(r)), key=lambda r: (-height(r), _tie_break(r)))
        ascending = sorted((r for r in members if is_positive(r)), key=lambda r: (height(r), _tie_break(r)))
        self.aleph: Tuple[Root, ...] = tuple(positives) + tuple(negate(r) for r in ascending)
        self._aleph_set = frozenset(self.aleph)
        self.index: Dict[Root, int] = {alpha: k for k, alpha in enumerate(self.aleph)}

        self.phi_aleph: Tuple[Root, ...] = tuple(s for s in datum.simple_roots if s in self._aleph_set)
        self.varpi: Root = datum.highest_root if self.is_adjoint else datum.highest_short_root
        self.weight_support = frozenset(datum.roots if self.is_adjoint else datum.short_roots) | {
            tuple(0 for _ in range(datum.rank))
        }

        self.x_covering_graph = self._build_covering_graph()
        self._x_distance = nx.single_source_shortest_path_length(self.x_covering_graph, self.varpi)
        self.dim_X = self._x_distance[negate(self.varpi)]
        self.dim_Y = self.dim_X - 1
        self.c1_X = datum.rho_pairing(self.varpi)
        self.c1_Y = self.c1_X - 1
        self.aleph1: Tuple[Root, ...] = tuple(
            sorted((b for b in self.x_covering_graph.successors(self.varpi) if is_positive(b)),
                   key=lambda r: self.index[r])
        )
        self.picard_rank = 2 if (datum.dynkin_type == "A" and datum.rank >= 2) else 1
        self._check_grading()
        logger.info(f"Context {self.label}: |aleph| = {len(self.aleph)}, dim X = {self.dim_X}, c1(X) = {self.c1_X}")

    @property
    def label(self) -> str:
        return f"{self.datum.label} {self.variant}"

    @property
    def key(self) -> Tuple[str, int, str]:
        return (self.datum.dynkin_type, self.datum.rank, self.variant)

    @property
    def middle_degree(self) -> int:
        return self.dim_Y // 2

    @property
    def point(self) -> Root:
        return negate(self.varpi)

    def __contains__(self, root) -> bool:
        return tuple(root) in self._aleph_set

    def __repr__(self) -> str:
        return f"VarietyContext({self.label})"

    # -- the X covering graph -------------------------------------------------------

    def _build_covering_graph(self) -> nx.DiGraph:
        """Edges alpha -> beta whenever X_beta is a divisor of X_alpha"""
        datum = self.datum
        graph = nx.DiGraph()
        graph.add_nodes_from(self.aleph)
        for alpha in self.aleph:
            for i, simple in enumerate(datum.simple_roots):
                k = datum.simple_pairing(i, alpha)
                if k > 0:
                    graph.add_edge(alpha, datum.simple_reflection(i, alpha), weight=simple, coefficient=k)
        for alpha in self.phi_aleph:
            for other in self.phi_aleph:
                if other != alpha and datum.is_root(sub(alpha, negate(other))):
                    graph.add_edge(alpha, negate(other), weight=sub(alpha, negate(other)), coefficient=1)
        return graph

    def _check_grading(self) -> None:
        for alpha, beta in self.x_covering_graph.edges:
            if self._x_distance[beta] != self._x_distance[alpha] + 1:
                raise ConsistencyError(f"{self.label}: covering graph not graded at {alpha} -> {beta}")
        if len(self._x_distance) != len(self.aleph):
            raise ConsistencyError(f"{self.label}: covering graph not connected from varpi")

    # -- dimensions and degrees -----------------------------------------------------

    def dim_X_schubert(self, alpha: Root) -> int:
        return self.dim_X - self._x_distance[tuple(alpha)]

    def dim_Y_schubert(self, alpha: Root) -> int:
        alpha = tuple(alpha)
        if is_positive(alpha):
            return self.dim_X_schubert(alpha) - 1
        return self.dim_X_schubert(alpha)

    def degree_X(self, alpha: Root) -> int:
        """Complex degree of sigma_{alpha, X}"""
        return self.dim_X - self.dim_X_schubert(alpha)

    def degree_Y(self, alpha: Root) -> int:
        """Complex degree of sigma_alpha = codimension of Y_alpha in Y"""
        return self.dim_Y - self.dim_Y_schubert(alpha)

    def basis_of_degree(self, degree: int, ambient: str = "Y") -> List[Root]:
        measure = self.degree_Y if ambient == "Y" else self.degree_X
        return [alpha for alpha in self.aleph if measure(alpha) == degree]

    # -- orders ---------------------------------------------------------------------

    def x_order_leq(self, beta: Root, alpha: Root) -> bool:
        """X_beta is contained in X_alpha"""
        beta, alpha = tuple(beta), tuple(alpha)
        if beta == alpha:
            return True
        beta_positive, alpha_positive = is_positive(beta), is_positive(alpha)
        if beta_positive == alpha_positive:
            return dominance_leq(beta, alpha)
        if alpha_positive:
            return self.datum.support_connected(support(alpha) | support(beta))
        return False

    def y_strict_order(self, beta: Root, alpha: Root) -> bool:
        """beta strictly below alpha in the Bialynicki-Birula order of Y"""
        beta, alpha = tuple(beta), tuple(alpha)
        if beta == alpha or not self.x_order_leq(beta, alpha):
            return False
        return not (self.datum.is_simple(alpha) and beta == negate(alpha))

    def y_order_leq(self, beta: Root, alpha: Root) -> bool:
        return tuple(beta) == tuple(alpha) or self.y_strict_order(beta, alpha)

    def is_x_cover(self, alpha: Root, beta: Root) -> bool:
        return self.x_covering_graph.has_edge(tuple(alpha), tuple(beta))


def canonical_variant(datum: RootDatum, variant: str) -> str:
    variant = variant.lower().replace("_", "-")
    if variant in ("qm", "quasiminuscule"):
        variant = QUASI_MINUSCULE
    if variant not in VARIANTS:
        raise UnsupportedContextError(f"Unknown variant {variant!r}; expected one of {', '.join(VARIANTS)}")
    if datum.is_simply_laced:
        return ADJOINT
    return variant


@cached(cache=LRUCache(maxsize=Settings.CONTEXT_CACHE_SIZE))
def _make_context(dynkin_type: str, rank: int, variant: str) -> VarietyContext:
    return VarietyContext(build_root_system(dynkin_type, rank), variant)


def make_context(datum: RootDatum, variant: str) -> VarietyContext:
    """Build (and memoise) the variety context; simply laced quasi-minuscule aliases adjoint"""
    variant = canonical_variant(datum, variant)
    if variant == QUASI_MINUSCULE and datum.dynkin_type in ("B", "C") and datum.rank < 2:
        raise UnsupportedContextError(f"{datum.label} quasi-minuscule: types B and C need rank >= 2")
    return _make_context(datum.dynkin_type, datum.rank, variant)


def context_for(dynkin_type: str, rank: int, variant: str) -> VarietyContext:
    return make_context(build_root_system(dynkin_type, rank), variant)


def dim_schubert_X(ctx: VarietyContext, alpha: Root) -> int:
    return ctx.dim_X_schubert(alpha)


def dim_schubert_Y(ctx: VarietyContext, alpha: Root) -> int:
    return ctx.dim_Y_schubert(alpha)


def x_order_leq(ctx: VarietyContext, beta: Root, alpha: Root) -> bool:
    return ctx.x_order_leq(beta, alpha)


def y_strict_order(ctx: VarietyContext, beta: Root, alpha: Root) -> bool:
    return ctx.y_strict_order(beta, alpha)


class HasseGraph:
    """Hasse diagram of Y: constant Chevalley coefficients between consecutive degrees"""

    def __init__(self, ctx: VarietyContext, edges: Sequence[HasseEdge]):
        self.ctx = ctx
        self.vertices: List[Root] = list(ctx.aleph)
        self.edges: List[HasseEdge] = list(edges)
        self.grading: Dict[Root, int] = {alpha: ctx.degree_Y(alpha) for alpha in ctx.aleph}

    @property
    def red_edges(self) -> List[HasseEdge]:
        return [e for e in self.edges if e.new_in_Y]

    def to_networkx(self) -> nx.MultiDiGraph:
        graph = nx.MultiDiGraph()
        for alpha in self.vertices:
            graph.add_node(root_label(alpha), codim=self.grading[alpha])
        for edge in self.edges:
            for _ in range(edge.coeff):
                graph.add_edge(edge.src, edge.dst, new_in_Y=edge.new_in_Y)
        return graph

    def is_graded(self) -> bool:
        by_label = {root_label(a): d for a, d in self.grading.items()}
        return all(by_label[e.dst] == by_label[e.src] + 1 for e in self.edges)

    def to_dict(self) -> Dict:
        return {
            "vertices": [root_label(a) for a in self.vertices],
            "edges": [e.model_dump() for e in self.edges],
            "grading": {root_label(a): d for a, d in self.grading.items()},
        }


def hasse_graph_Y(ctx: VarietyContext) -> HasseGraph:
    from core.gkm import chevalley_coeff

    edges = []
    for alpha in ctx.aleph:
        for beta in ctx.aleph:
            if ctx.degree_Y(beta) != ctx.degree_Y(alpha) + 1 or not ctx.y_strict_order(beta, alpha):
                continue
            coefficient = chevalley_coeff(ctx, alpha, beta)
            if coefficient == 0:
                continue
            if not coefficient.is_ground:
                raise ConsistencyError(f"Non-constant coefficient between consecutive degrees: {alpha} -> {beta}")
            value = to_rational(coefficient.LC)
            if value <= 0 or not value.is_Integer:
                raise ConsistencyError(f"Hasse coefficient {value} for {alpha} -> {beta} is not a positive integer")
            edges.append(HasseEdge(
                src=root_label(alpha), dst=root_label(beta), coeff=int(value),
                new_in_Y=not ctx.is_x_cover(alpha, beta),
            ))
    logger.info(f"Hasse graph of Y for {ctx.label}: {len(ctx.aleph)} vertices, {len(edges)} edges")
    return HasseGraph(ctx, edges)
