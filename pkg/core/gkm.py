"""Equivariant cohomology of Y and X by localization at the torus-fixed points.

A class is stored through its restrictions to the fixed points x_alpha, alpha in aleph,
as polynomials in the equivariant parameters y1..y_rank (the images of the simple roots).
"""
import logging
from math import prod
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
from cachetools import LRUCache, cached
from sympy import QQ
from sympy.polys.orderings import grlex
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import PolyElement, PolyRing

from config.settings import Settings
from core.errors import ConsistencyError, UnsupportedContextError
from core.poset import VarietyContext
from core.rootsys import (
    Root, add, dominance_leq, is_positive, max_coefficient, negate, sub, support, support_size,
)
from core.utils import root_label, to_rational

logger = logging.getLogger(__name__)

PLAIN = "plain"
ROOT_CONIC = "root-conic"
SPACES = ("X", "Y", "X_alpha", "Y_alpha", "normal_Y", "normal_X")


@cached(cache=LRUCache(maxsize=16))
def equivariant_ring(rank: int) -> PolyRing:
    """Q[y1, ..., y_rank] with graded lexicographic order"""
    return PolyRing([f"y{i}" for i in range(1, rank + 1)], QQ, grlex)


def linear_form(ring: PolyRing, root: Sequence[int]) -> PolyElement:
    form = ring.zero
    for coeff, gen in zip(root, ring.gens):
        if coeff:
            form += coeff * gen
    return form


def exact_divide(numerator: PolyElement, denominator: PolyElement) -> PolyElement:
    """numerator / denominator, failing loudly when the division is not exact"""
    if not numerator:
        return numerator.ring.zero
    try:
        return numerator.exquo(denominator)
    except ExactQuotientFailed:
        raise ConsistencyError(f"Inexact division of {numerator} by {denominator}")


def is_divisible(numerator: PolyElement, denominator: PolyElement) -> bool:
    # a single polynomial is a Groebner basis of the ideal it generates
    return not numerator or numerator.rem(denominator) == 0


class LocalizedClass:
    """An equivariant class given by its restrictions to the fixed points"""

    def __init__(self, restrictions: Dict[Root, PolyElement], degree: int, ambient: str = "Y"):
        self.restrictions = restrictions
        self.degree = degree
        self.ambient = ambient

    def __getitem__(self, beta: Root) -> PolyElement:
        return self.restrictions[tuple(beta)]

    def items(self):
        return self.restrictions.items()

    def is_homogeneous(self) -> bool:
        for value in self.restrictions.values():
            if value and any(sum(monom) != self.degree for monom in value.monoms()):
                return False
        return True

    def evaluate(self, point: Sequence) -> Dict[Root, object]:
        return {beta: (value(*point) if value else QQ.zero) for beta, value in self.restrictions.items()}

    def to_dict(self) -> Dict[str, str]:
        return {root_label(beta): str(value) for beta, value in self.restrictions.items()}


class CurveGraph:
    """Torus-stable curves of X or Y with their weights"""

    def __init__(self, ambient: str, graph: nx.Graph):
        self.ambient = ambient
        self.graph = graph

    @property
    def edges(self) -> List[Tuple[Root, Root, Root, str]]:
        return [(a, b, data["weight"], data["kind"]) for a, b, data in self.graph.edges(data=True)]

    def degree(self, alpha: Root) -> int:
        return self.graph.degree(tuple(alpha))


def tangent_weights(ctx: VarietyContext, alpha: Root, space: str) -> Tuple[Root, ...]:
    """T-weights of the tangent (or normal) space at x_alpha"""
    if space not in SPACES:
        raise UnsupportedContextError(f"Unknown tangent space {space!r}; expected one of {', '.join(SPACES)}")
    alpha = tuple(alpha)
    weights = [g for g in ctx.datum.roots if add(alpha, g) in ctx.weight_support]
    if space in ("X", "X_alpha", "normal_X"):
        pass
    else:
        weights = [g for g in weights if g != negate(alpha)]
    if space in ("X_alpha", "Y_alpha"):
        weights = [g for g in weights if not is_positive(g)]
    elif space in ("normal_Y", "normal_X"):
        weights = [g for g in weights if is_positive(g)]
    return tuple(weights)


def curve_graph(ctx: VarietyContext, ambient: str) -> CurveGraph:
    if ambient not in ("X", "Y"):
        raise UnsupportedContextError(f"Curve graphs exist for X and Y, not {ambient!r}")
    graph = nx.Graph()
    graph.add_nodes_from(ctx.aleph)
    for alpha in ctx.aleph:
        for gamma in tangent_weights(ctx, alpha, ambient):
            beta = ctx.datum.reflect(gamma, alpha)
            if beta not in ctx:
                raise ConsistencyError(f"Curve from {alpha} with weight {gamma} leaves the fixed-point set")
            kind = ROOT_CONIC if beta == negate(alpha) else PLAIN
            if not graph.has_edge(alpha, beta):
                graph.add_edge(alpha, beta, weight=gamma if is_positive(gamma) else negate(gamma), kind=kind)
    return CurveGraph(ambient, graph)


# -- equivariant Chevalley coefficients ----------------------------------------------

def chevalley_coeff(ctx: VarietyContext, alpha: Root, beta: Root) -> PolyElement:
    """a_alpha^beta in h . f_alpha = (varpi - alpha) f_alpha + sum a_alpha^beta f_beta"""
    ring = equivariant_ring(ctx.datum.rank)
    alpha, beta = tuple(alpha), tuple(beta)
    if not ctx.y_strict_order(beta, alpha) or not dominance_leq(beta, alpha):
        return ring.zero
    gap = ctx.degree_Y(beta) - ctx.degree_Y(alpha)
    if gap not in (0, 1):
        return ring.zero

    datum = ctx.datum
    diff = sub(alpha, beta)
    diff_support = support(diff)
    size = support_size(diff)
    phi = set(ctx.phi_aleph)
    alpha_simple = alpha in phi
    minus_beta_simple = negate(beta) in phi

    if size == 1:
        if beta == negate(alpha):
            return ring.zero
        value, degree = max_coefficient(diff), 0
    elif size in (2, 3) and datum.support_connected(diff_support) and (
        (alpha_simple and datum.simple_index(alpha) in diff_support)
        or (minus_beta_simple and datum.simple_index(negate(beta)) in diff_support)
    ):
        if alpha_simple and minus_beta_simple:
            if gap != 0:
                return ring.zero
            return -linear_form(ring, alpha)
        if alpha_simple:
            value, degree = (max_coefficient(beta) if size == 2 else 0), 0
        elif size == 2 and any(datum.simple_roots[i] not in phi for i in diff_support):
            value, degree = max_coefficient(alpha), 0
        else:
            value, degree = max_coefficient(diff), 0
    else:
        return ring.zero

    if gap != degree + 1:
        return ring.zero
    return ring(value)


# -- localized classes -------------------------------------------------------------

def hyperplane_localization(ctx: VarietyContext) -> LocalizedClass:
    """f_H(x_alpha) = varpi - alpha"""
    ring = equivariant_ring(ctx.datum.rank)
    top = linear_form(ring, ctx.varpi)
    return LocalizedClass({alpha: top - linear_form(ring, alpha) for alpha in ctx.aleph}, 1)


class ClassTable:
    """Lazily computed Schubert classes f_alpha of Y for one context"""

    def __init__(self, ctx: VarietyContext):
        self.ctx = ctx
        self.ring = equivariant_ring(ctx.datum.rank)
        self._forms = {alpha: linear_form(self.ring, alpha) for alpha in ctx.aleph}
        self._terms: Dict[Root, List[Tuple[Root, PolyElement]]] = {}
        self._classes: Dict[Root, LocalizedClass] = {}
        self._x_classes: Optional[Dict[Root, LocalizedClass]] = None
        self._products: Dict[str, "ProductTable"] = {}

    def chevalley_terms(self, alpha: Root) -> List[Tuple[Root, PolyElement]]:
        alpha = tuple(alpha)
        if alpha not in self._terms:
            terms = []
            for beta in self.ctx.aleph:
                coefficient = chevalley_coeff(self.ctx, alpha, beta)
                if coefficient:
                    terms.append((beta, coefficient))
            self._terms[alpha] = terms
        return self._terms[alpha]

    def get(self, alpha: Root) -> LocalizedClass:
        alpha = tuple(alpha)
        if alpha in self._classes:
            return self._classes[alpha]
        ctx = self.ctx
        if alpha == ctx.varpi:
            restrictions = {beta: self.ring.one for beta in ctx.aleph}
        else:
            terms = [(self.get(gamma), coefficient) for gamma, coefficient in self.chevalley_terms(alpha)]
            leading = prod((linear_form(self.ring, g) for g in tangent_weights(ctx, alpha, "normal_Y")),
                           start=self.ring.one)
            restrictions = {}
            for beta in ctx.aleph:
                if beta == alpha:
                    restrictions[beta] = leading
                    continue
                numerator = self.ring.zero
                for f_gamma, coefficient in terms:
                    value = f_gamma[beta]
                    if value:
                        numerator += coefficient * value
                restrictions[beta] = exact_divide(numerator, self._forms[alpha] - self._forms[beta])
        cls = LocalizedClass(restrictions, ctx.degree_Y(alpha))
        self._classes[alpha] = cls
        logger.debug(f"{ctx.label}: computed f_{root_label(alpha)} of degree {cls.degree}")
        return cls

    def all_classes(self) -> Dict[Root, LocalizedClass]:
        for alpha in reversed(self.ctx.aleph):
            self.get(alpha)
        return {alpha: self._classes[alpha] for alpha in self.ctx.aleph}

    def x_classes(self) -> Dict[Root, LocalizedClass]:
        if self._x_classes is None:
            self._x_classes = equivariant_classes_X(self.ctx, self.all_classes())
        return self._x_classes

    def products(self, ambient: str = "Y") -> "ProductTable":
        if ambient not in self._products:
            if ambient == "Y":
                self._products[ambient] = ProductTable(self.ctx, self.all_classes(), self.ctx.degree_Y)
            else:
                self._products[ambient] = ProductTable(self.ctx, self.x_classes(), self.ctx.degree_X)
        return self._products[ambient]


@cached(cache=LRUCache(maxsize=Settings.CLASS_CACHE_SIZE), key=lambda ctx: ctx.key)
def class_table(ctx: VarietyContext) -> ClassTable:
    return ClassTable(ctx)


def equivariant_classes_Y(ctx: VarietyContext) -> Dict[Root, LocalizedClass]:
    classes = class_table(ctx).all_classes()
    logger.info(f"{ctx.label}: computed {len(classes)} equivariant Schubert classes of Y")
    return classes


def equivariant_classes_X(ctx: VarietyContext, fY: Dict[Root, LocalizedClass]) -> Dict[Root, LocalizedClass]:
    """Schubert classes of X restricted to the fixed points of Y"""
    ring = equivariant_ring(ctx.datum.rank)
    datum = ctx.datum
    table = class_table(ctx)
    result = {}
    for alpha in ctx.aleph:
        if is_positive(alpha) and not datum.is_simple(alpha):
            restrictions = dict(fY[alpha].restrictions)
        elif datum.is_simple(alpha):
            summands = [fY[alpha], fY[negate(alpha)]]
            summands += [fY[negate(b)] for b in ctx.phi_aleph if datum.is_root(add(alpha, b))]
            restrictions = {beta: sum((f[beta] for f in summands), ring.zero) for beta in ctx.aleph}
        else:
            form = linear_form(ring, alpha)
            terms = table.chevalley_terms(alpha)
            restrictions = {}
            for beta in ctx.aleph:
                value = -form * fY[alpha][beta]
                for gamma, coefficient in terms:
                    value += coefficient * fY[gamma][beta]
                restrictions[beta] = value
        result[alpha] = LocalizedClass(restrictions, ctx.degree_X(alpha), ambient="X")
    return result


def opposite_classes(ctx: VarietyContext, fY: Dict[Root, LocalizedClass]) -> Dict[Root, LocalizedClass]:
    """f_alpha^-(x_beta) = (-1)^{dim Y_alpha} f_{-alpha}(x_{-beta})"""
    result = {}
    for alpha in ctx.aleph:
        dim = ctx.dim_Y_schubert(alpha)
        sign = -1 if dim % 2 else 1
        source = fY[negate(alpha)]
        result[alpha] = LocalizedClass({beta: sign * source[negate(beta)] for beta in ctx.aleph}, dim)
    return result


# -- validity checks ----------------------------------------------------------------

def gkm_violations(classes: Dict[Root, LocalizedClass], graph: CurveGraph) -> List[Tuple[Root, Root, Root]]:
    """(class, edge source, edge target) for every edge where divisibility fails"""
    ring = None
    failures = []
    for alpha, cls in classes.items():
        for a, b, weight, _ in graph.edges:
            if ring is None:
                ring = cls[a].ring
            if not is_divisible(cls[a] - cls[b], linear_form(ring, weight)):
                failures.append((alpha, a, b))
    return failures


def vanishing_violations(ctx: VarietyContext, fY: Dict[Root, LocalizedClass]) -> List[Tuple[Root, Root]]:
    return [
        (alpha, beta)
        for alpha, cls in fY.items()
        for beta in ctx.aleph
        if beta != alpha and cls[beta] and not ctx.y_strict_order(beta, alpha)
    ]


# -- structure constants ------------------------------------------------------------

def _triangular_solve(values: Dict[Root, object], table: Dict[Root, Dict[Root, object]],
                      order: Sequence[Root], divide: Callable, zero) -> Dict[Root, object]:
    """Coefficients c with values = sum c_g table[g], g processed from the top of the order"""
    residual = dict(values)
    coefficients = {}
    for position, g in enumerate(order):
        r = residual[g]
        if not r:
            continue
        c = divide(r, table[g][g])
        coefficients[g] = c
        for d in order[position:]:
            t = table[g][d]
            if t:
                residual[d] = residual[d] - c * t
    if any(residual[d] for d in order):
        raise ConsistencyError("Triangular solve left a nonzero residual")
    return coefficients


def structure_constants(ctx: VarietyContext, classes: Dict[Root, LocalizedClass],
                        pairs: Optional[Iterable[Tuple[Root, Root]]] = None) -> Dict[Tuple[Root, Root, Root], PolyElement]:
    """Equivariant constants c_{alpha beta}^gamma with f_alpha f_beta = sum c f_gamma"""
    ring = equivariant_ring(ctx.datum.rank)
    table = {g: cls.restrictions for g, cls in classes.items()}
    if pairs is None:
        pairs = [(a, b) for i, a in enumerate(ctx.aleph) for b in ctx.aleph[i:]]
    result = {}
    for alpha, beta in pairs:
        values = {d: classes[alpha][d] * classes[beta][d] for d in ctx.aleph}
        for gamma, c in _triangular_solve(values, table, ctx.aleph, exact_divide, ring.zero).items():
            result[(alpha, beta, gamma)] = c
    return result


def generic_point(rank: int) -> List:
    base = Settings.GENERIC_POINT_BASE
    return [QQ(base ** i) for i in range(rank)]


class ProductTable:
    """Classical structure constants read off at a generic point of the parameter space.

    A coefficient of polynomial degree zero equals its value at any point; coefficients of
    negative degree must vanish there, which is asserted.
    """

    def __init__(self, ctx: VarietyContext, classes: Dict[Root, LocalizedClass], degree_of: Callable[[Root], int]):
        self.ctx = ctx
        self.degree_of = degree_of
        point = generic_point(ctx.datum.rank)
        self.values = {g: cls.evaluate(point) for g, cls in classes.items()}
        self._cache: Dict[Tuple[Root, Root], Dict[Root, object]] = {}

    def expand(self, values: Dict[Root, object], degree: int) -> Dict[Root, object]:
        """Classical part of a homogeneous class of the given degree, from its values at the point"""
        coefficients = _triangular_solve(values, self.values, self.ctx.aleph, lambda a, b: a / b, QQ.zero)
        result = {}
        for gamma, c in coefficients.items():
            gamma_degree = self.degree_of(gamma)
            if gamma_degree > degree:
                raise ConsistencyError(f"Coefficient of negative degree at {root_label(gamma)}: {c}")
            if gamma_degree == degree:
                result[gamma] = c
        return result

    def product(self, alpha: Root, beta: Root) -> Dict[Root, object]:
        key = (tuple(alpha), tuple(beta))
        if key not in self._cache:
            values = {d: self.values[key[0]][d] * self.values[key[1]][d] for d in self.ctx.aleph}
            self._cache[key] = self.expand(values, self.degree_of(key[0]) + self.degree_of(key[1]))
            self._cache[(key[1], key[0])] = self._cache[key]
        return self._cache[key]


def classical_structure_constants(ctx: VarietyContext, ambient: str = "Y",
                                  pairs: Optional[Iterable[Tuple[Root, Root]]] = None) -> Dict[Tuple[Root, Root, Root], object]:
    products = class_table(ctx).products(ambient)
    if pairs is None:
        pairs = [(a, b) for i, a in enumerate(ctx.aleph) for b in ctx.aleph[i:]]
    return {
        (alpha, beta, gamma): to_rational(c)
        for alpha, beta in pairs
        for gamma, c in products.product(alpha, beta).items()
        if c
    }


def classical_product(ctx: VarietyContext, alpha: Root, beta: Root, ambient: str = "Y") -> Dict[Root, object]:
    """sigma_alpha . sigma_beta in the Schubert basis, exact rationals"""
    products = class_table(ctx).products(ambient)
    return {gamma: to_rational(c) for gamma, c in products.product(alpha, beta).items() if c}


def classical_expansion(ctx: VarietyContext, cls: LocalizedClass, ambient: str = "Y") -> Dict[Root, object]:
    """Non-equivariant class of a localized class in the Schubert basis"""
    products = class_table(ctx).products(ambient)
    values = cls.evaluate(generic_point(ctx.datum.rank))
    return {gamma: to_rational(c) for gamma, c in products.expand(values, cls.degree).items() if c}
