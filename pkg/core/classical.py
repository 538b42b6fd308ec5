"""Closed-form classical cohomology of Y: Chevalley formula, j^* and j_*, Poincare pairings and
the middle-degree matrices.

Middle-degree matrices are indexed by Phi_aleph in Bourbaki order; block matrices by the
basis [sigma_alpha for alpha in Phi_aleph] + [sigma_{-alpha} for alpha in Phi_aleph].
"""
import logging
from typing import Dict, Iterable, List, Optional, Tuple

from sympy import Expr, Matrix, Rational, S, eye, expand, sympify, zeros

from core.errors import ConsistencyError, UnsupportedContextError
from core.gkm import class_table, classical_expansion, classical_product, hyperplane_localization, opposite_classes
from core.poset import VarietyContext
from core.rootsys import Root, add, is_positive, negate
from core.utils import expr_str, root_label, to_rational

logger = logging.getLogger(__name__)


class SchubertVector:
    """Finitely supported combination of Schubert classes sigma_alpha (of Y or of X)"""

    def __init__(self, coords: Optional[Dict[Root, object]] = None, ring_tag: str = "Y"):
        self.ring_tag = ring_tag
        self.coords: Dict[Root, Expr] = {}
        for root, coeff in (coords or {}).items():
            self.add_term(root, coeff)

    @classmethod
    def basis(cls, root: Root, ring_tag: str = "Y") -> "SchubertVector":
        return cls({tuple(root): S.One}, ring_tag)

    def add_term(self, root: Root, coeff) -> None:
        root = tuple(root)
        value = expand(self.coords.get(root, S.Zero) + sympify(coeff))
        if value == 0:
            self.coords.pop(root, None)
        else:
            self.coords[root] = value

    def copy(self) -> "SchubertVector":
        return SchubertVector(dict(self.coords), self.ring_tag)

    def __getitem__(self, root: Root) -> Expr:
        return self.coords.get(tuple(root), S.Zero)

    def __iter__(self):
        return iter(self.coords)

    def items(self):
        return self.coords.items()

    def __len__(self) -> int:
        return len(self.coords)

    def __bool__(self) -> bool:
        return bool(self.coords)

    def _check_tag(self, other: "SchubertVector") -> None:
        if other.ring_tag != self.ring_tag:
            raise ConsistencyError(f"Cannot combine classes of {self.ring_tag} and {other.ring_tag}")

    def __add__(self, other: "SchubertVector") -> "SchubertVector":
        self._check_tag(other)
        result = self.copy()
        for root, coeff in other.items():
            result.add_term(root, coeff)
        return result

    def __sub__(self, other: "SchubertVector") -> "SchubertVector":
        return self + other.scale(-1)

    def __neg__(self) -> "SchubertVector":
        return self.scale(-1)

    def scale(self, factor) -> "SchubertVector":
        factor = sympify(factor)
        return SchubertVector({root: factor * coeff for root, coeff in self.items()}, self.ring_tag)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SchubertVector):
            return NotImplemented
        return self.ring_tag == other.ring_tag and self.coords == other.coords

    def __repr__(self) -> str:
        terms = " + ".join(f"({expr_str(c)})*s[{root_label(r)}]" for r, c in self.items())
        return f"SchubertVector<{self.ring_tag}>({terms or '0'})"

    def to_dict(self) -> Dict[str, str]:
        return {root_label(root): expr_str(coeff) for root, coeff in self.items()}

    def column(self, order: Iterable[Root]) -> Matrix:
        return Matrix([self[root] for root in order])


def _ambient(ctx: VarietyContext, ambient: str) -> None:
    if ambient not in ("X", "Y"):
        raise UnsupportedContextError(f"Unknown ambient {ambient!r}; expected X or Y")


# -- Chevalley formulas and the inclusion j -------------------------------------------

def _descents(ctx: VarietyContext, alpha: Root) -> List[Tuple[int, Root]]:
    """(<beta^vee, alpha>, s_beta(alpha)) for simple beta pairing positively with alpha"""
    datum = ctx.datum
    out = []
    for i in range(datum.rank):
        k = datum.simple_pairing(i, alpha)
        if k > 0:
            out.append((k, datum.simple_reflection(i, alpha)))
    return out


def cup_with_hX(ctx: VarietyContext, alpha: Root) -> SchubertVector:
    """h_X . sigma_{alpha, X} in the X basis"""
    datum = ctx.datum
    alpha = tuple(alpha)
    result = SchubertVector(ring_tag="X")
    if datum.is_simple(alpha):
        for beta in ctx.phi_aleph:
            k = abs(datum.pairing(beta, alpha))
            if k:
                result.add_term(negate(beta), k)
        return result
    for k, image in _descents(ctx, alpha):
        result.add_term(image, k)
    return result


def pullback_j(ctx: VarietyContext, alpha: Root) -> SchubertVector:
    """j^* sigma_{alpha, X} in the Y basis"""
    datum = ctx.datum
    alpha = tuple(alpha)
    if is_positive(alpha) and not datum.is_simple(alpha):
        return SchubertVector.basis(alpha)
    if datum.is_simple(alpha):
        result = SchubertVector({alpha: 1, negate(alpha): 1})
        for beta in ctx.phi_aleph:
            if datum.is_root(add(alpha, beta)):
                result.add_term(negate(beta), 1)
        return result
    result = SchubertVector()
    for beta, coefficient in class_table(ctx).chevalley_terms(alpha):
        if coefficient.is_ground:
            result.add_term(beta, to_rational(coefficient.LC))
    return result


def pushforward_j(ctx: VarietyContext, v: SchubertVector) -> SchubertVector:
    """j_* of a class of Y, in the X basis"""
    if v.ring_tag != "Y":
        raise ConsistencyError("pushforward_j expects a class of Y")
    datum = ctx.datum
    result = SchubertVector(ring_tag="X")
    for alpha, coeff in v.items():
        if not is_positive(alpha):
            result.add_term(alpha, coeff)
        elif datum.is_simple(alpha):
            result.add_term(negate(alpha), coeff)
        else:
            result = result + cup_with_hX(ctx, alpha).scale(coeff)
    return result


def cup_with_h(ctx: VarietyContext, alpha: Root) -> SchubertVector:
    """h . sigma_alpha in the Y basis; sigma_alpha and sigma_{-alpha} agree for simple alpha"""
    datum = ctx.datum
    alpha = tuple(alpha)
    if datum.is_simple(alpha):
        alpha = negate(alpha)
    result = SchubertVector()
    if is_positive(alpha):
        # j^* commutes with h, and sigma_alpha = j^* sigma_{alpha, X} here
        for k, image in _descents(ctx, alpha):
            result = result + pullback_j(ctx, image).scale(k)
        return result
    for k, image in _descents(ctx, alpha):
        result.add_term(image, k)
    return result


def multiply_by_h(ctx: VarietyContext, v: SchubertVector) -> SchubertVector:
    result = SchubertVector()
    for alpha, coeff in v.items():
        result = result + cup_with_h(ctx, alpha).scale(coeff)
    return result


def chevalley_matrix(ctx: VarietyContext) -> Matrix:
    """Matrix of h . - on the Y basis; column alpha holds cup_with_h(alpha)"""
    n = len(ctx.aleph)
    matrix = zeros(n, n)
    for col, alpha in enumerate(ctx.aleph):
        for beta, coeff in cup_with_h(ctx, alpha).items():
            matrix[ctx.index[beta], col] = coeff
    return matrix


def hyperplane_class(ctx: VarietyContext) -> SchubertVector:
    """h in the Y basis, from the localization f_H"""
    return SchubertVector(classical_expansion(ctx, hyperplane_localization(ctx)))


def gamma_vector(ctx: VarietyContext, alpha: Root) -> SchubertVector:
    """Gamma_alpha = sigma_alpha - sigma_{-alpha}, a non-ambient middle class"""
    alpha = tuple(alpha)
    if alpha not in ctx.phi_aleph:
        raise UnsupportedContextError(f"{root_label(alpha)} is not a simple root of aleph")
    return SchubertVector({alpha: 1, negate(alpha): -1})


def product(ctx: VarietyContext, u: SchubertVector, v: SchubertVector) -> SchubertVector:
    """Cup product of two classes of Y via the classical structure constants"""
    result = SchubertVector()
    for alpha, a in u.items():
        for beta, b in v.items():
            for gamma, c in classical_product(ctx, alpha, beta).items():
                result.add_term(gamma, a * b * c)
    return result


# -- degrees, Betti numbers, pairings -----------------------------------------------

def betti_numbers(ctx: VarietyContext) -> List[int]:
    counts = [0] * (ctx.dim_Y + 1)
    for alpha in ctx.aleph:
        counts[ctx.degree_Y(alpha)] += 1
    return counts


def degree_Y(ctx: VarietyContext) -> int:
    """Integral of h^{dim Y}"""
    v = SchubertVector.basis(ctx.varpi)
    for _ in range(ctx.dim_Y):
        v = multiply_by_h(ctx, v)
    value = to_rational(v[ctx.point])
    if not value.is_Integer or value <= 0:
        raise ConsistencyError(f"{ctx.label}: degree {value} is not a positive integer")
    return int(value)


def _require_middle(ctx: VarietyContext) -> None:
    if ctx.dim_Y < 2 or ctx.dim_Y % 2:
        raise UnsupportedContextError(f"{ctx.label}: middle cohomology needs even dim Y >= 2, got {ctx.dim_Y}")


def middle_basis(ctx: VarietyContext) -> List[Root]:
    return list(ctx.phi_aleph) + [negate(alpha) for alpha in ctx.phi_aleph]


class MiddleMatrices:
    """Closed-form matrices of the middle cohomology of Y"""

    def __init__(self, roots, J, C, epsilon, A, B, D, M, N, intersection_blocks, gamma_pairing, dual):
        self.roots = roots
        self.J = J
        self.C = C
        self.epsilon = epsilon
        self.A = A
        self.B = B
        self.D = D
        self.M = M
        self.N = N
        self.intersection_blocks = intersection_blocks
        self.gamma_pairing = gamma_pairing
        self.dual = dual
        k = len(roots)
        self.P = dual[:k, :k]
        self.Q = dual[:k, k:]
        self.R = dual[k:, :k]
        self.S = dual[k:, k:]

    @property
    def identity(self) -> Matrix:
        return eye(len(self.roots))

    def to_dict(self) -> Dict:
        def rows(m: Matrix) -> List[List[str]]:
            return [[expr_str(m[i, j]) for j in range(m.cols)] for i in range(m.rows)]

        return {
            "roots": [root_label(r) for r in self.roots],
            "epsilon": self.epsilon,
            **{name: rows(getattr(self, name)) for name in ("J", "C", "A", "B", "D", "M", "N", "P", "Q", "R", "S")},
            "intersection_blocks": rows(self.intersection_blocks),
            "gamma_pairing": rows(self.gamma_pairing),
        }


def _blocks(top_left: Matrix, top_right: Matrix, bottom_left: Matrix, bottom_right: Matrix) -> Matrix:
    return Matrix.vstack(Matrix.hstack(top_left, top_right), Matrix.hstack(bottom_left, bottom_right))


def middle_matrices(ctx: VarietyContext) -> MiddleMatrices:
    _require_middle(ctx)
    datum = ctx.datum
    roots = list(ctx.phi_aleph)
    k = len(roots)
    I = eye(k)
    C = Matrix(k, k, lambda a, b: datum.pairing(roots[a], roots[b]))
    J = Matrix(k, k, lambda a, b: 1 if roots[a] == datum.involution(roots[b]) else 0)
    epsilon = -1 if (ctx.dim_Y // 2) % 2 else 1

    shifted = 4 * I - C
    if shifted.det() == 0:
        raise ConsistencyError(f"{ctx.label}: 4I - C is singular")
    inverse = shifted.inv()
    A = (J + epsilon * I) * inverse
    B = (C - 3 * I) * A
    D = J + (C - 4 * I) * A
    zero = zeros(k, k)
    M = _blocks(J, zero, A, D)
    N = _blocks(J, zero, B, D)
    c3 = C - 3 * I
    intersection = _blocks(
        inverse * (J + epsilon * c3 * c3), inverse * (J + epsilon * c3),
        inverse * (J + epsilon * c3), inverse * (J + epsilon * I),
    )
    dual = _blocks(
        J + epsilon * I, -J - epsilon * c3,
        -J - epsilon * c3, J + epsilon * c3 * c3,
    )
    dual = _blocks(*(epsilon * J * inverse * dual[r:r + k, c:c + k] for r in (0, k) for c in (0, k)))
    if dual * intersection != eye(2 * k):
        raise ConsistencyError(f"{ctx.label}: dual blocks do not invert the middle intersection matrix")
    matrices = MiddleMatrices(roots, J, C, epsilon, A, B, D, M, N, intersection, epsilon * shifted, dual)
    logger.info(f"{ctx.label}: middle matrices built on {k} simple roots, epsilon = {epsilon}")
    return matrices


def pairing_matrix(ctx: VarietyContext, degree: int) -> Matrix:
    """Poincare pairing: rows basis_of_degree(degree), columns basis_of_degree(dim Y - degree)"""
    if not 0 <= degree <= ctx.dim_Y:
        raise UnsupportedContextError(f"Degree {degree} outside 0..{ctx.dim_Y}")
    rows = ctx.basis_of_degree(degree)
    cols = ctx.basis_of_degree(ctx.dim_Y - degree)
    if ctx.dim_Y % 2 == 0 and degree == ctx.middle_degree and ctx.phi_aleph and ctx.dim_Y >= 2:
        order = middle_basis(ctx)
        if sorted(order) != sorted(rows):
            raise ConsistencyError(f"{ctx.label}: middle degree basis is not Phi_aleph and its negative")
        blocks = middle_matrices(ctx).intersection_blocks
        position = {alpha: i for i, alpha in enumerate(order)}
        return Matrix(len(rows), len(cols), lambda a, b: blocks[position[rows[a]], position[cols[b]]])
    datum = ctx.datum
    return Matrix(len(rows), len(cols), lambda a, b: 1 if cols[b] == datum.w0(rows[a]) else 0)


def intersection_number(ctx: VarietyContext, alpha: Root, beta: Root) -> Rational:
    """Integral of sigma_alpha . sigma_beta over Y"""
    alpha, beta = tuple(alpha), tuple(beta)
    degree = ctx.degree_Y(alpha)
    if degree + ctx.degree_Y(beta) != ctx.dim_Y:
        return S.Zero
    rows = ctx.basis_of_degree(degree)
    cols = ctx.basis_of_degree(ctx.dim_Y - degree)
    return pairing_matrix(ctx, degree)[rows.index(alpha), cols.index(beta)]


def integrate(ctx: VarietyContext, u: SchubertVector, v: SchubertVector):
    return expand(sum((a * b * intersection_number(ctx, alpha, beta)
                       for alpha, a in u.items() for beta, b in v.items()), S.Zero))


def dual_class(ctx: VarietyContext, alpha: Root) -> SchubertVector:
    """sigma_alpha^vee, the class pairing to 1 with sigma_alpha and 0 with the rest of the basis"""
    alpha = tuple(alpha)
    if alpha not in ctx:
        raise UnsupportedContextError(f"{root_label(alpha)} is not in aleph for {ctx.label}")
    if ctx.dim_Y >= 2 and ctx.dim_Y % 2 == 0 and ctx.degree_Y(alpha) == ctx.middle_degree:
        order = middle_basis(ctx)
        dual = middle_matrices(ctx).dual
        row = order.index(alpha)
        return SchubertVector({beta: dual[row, col] for col, beta in enumerate(order)})
    return SchubertVector.basis(ctx.datum.w0(alpha))


# -- opposite classes ---------------------------------------------------------------

def opposite_expansion(ctx: VarietyContext, alpha: Root) -> SchubertVector:
    """sigma_alpha^- (class of the opposite cell) in the Y basis"""
    table = class_table(ctx)
    opposite = opposite_classes(ctx, table.all_classes())
    return SchubertVector(classical_expansion(ctx, opposite[tuple(alpha)]))


def opposite_base_change(ctx: VarietyContext) -> Tuple[Matrix, Matrix]:
    """A and B read off sigma_alpha^- = sigma_{-i(alpha)} + sum A Gamma and
    sigma_{-alpha}^- = sigma_{i(alpha)} + sum B Gamma"""
    _require_middle(ctx)
    datum = ctx.datum
    roots = list(ctx.phi_aleph)
    k = len(roots)

    def coefficients(v: SchubertVector) -> List:
        row = []
        for beta in roots:
            if v[beta] != -v[negate(beta)]:
                raise ConsistencyError(f"{ctx.label}: opposite class is not a sum of Gamma classes")
            row.append(v[beta])
        if any(root not in roots and negate(root) not in roots for root in v):
            raise ConsistencyError(f"{ctx.label}: opposite class leaves the middle basis")
        return row

    A = zeros(k, k)
    B = zeros(k, k)
    for a, alpha in enumerate(roots):
        image = datum.involution(alpha)
        residual_a = opposite_expansion(ctx, alpha) - SchubertVector.basis(negate(image))
        residual_b = opposite_expansion(ctx, negate(alpha)) - SchubertVector.basis(image)
        for b, value in enumerate(coefficients(residual_a)):
            A[a, b] = value
        for b, value in enumerate(coefficients(residual_b)):
            B[a, b] = value
    return A, B


def opposite_intersections(ctx: VarietyContext) -> Dict[str, Matrix]:
    """The four blocks sigma_{+-alpha} . sigma_{+-beta}^- on Phi_aleph"""
    _require_middle(ctx)
    roots = list(ctx.phi_aleph)
    k = len(roots)
    opposites = {beta: opposite_expansion(ctx, beta) for beta in middle_basis(ctx)}
    out = {}
    for name, sign_left, sign_right in (("plus_plus", 1, 1), ("minus_minus", -1, -1),
                                        ("plus_minus", 1, -1), ("minus_plus", -1, 1)):
        out[name] = Matrix(k, k, lambda a, b: integrate(
            ctx,
            SchubertVector.basis(tuple(sign_left * c for c in roots[a])),
            opposites[tuple(sign_right * c for c in roots[b])],
        ))
    return out


def opposite_gamma(ctx: VarietyContext, alpha: Root) -> SchubertVector:
    """Gamma_alpha^- = sigma_{-alpha}^- - sigma_alpha^-"""
    alpha = tuple(alpha)
    return opposite_expansion(ctx, negate(alpha)) - opposite_expansion(ctx, alpha)


# -- type A: two hyperplane classes ----------------------------------------------------

def alpha_ij(n: int, i: int, j: int) -> Root:
    """alpha_{i,j} = alpha_i + ... + alpha_{j-1} in A_n, 1 <= i < j <= n + 1"""
    if not 1 <= i < j <= n + 1:
        raise UnsupportedContextError(f"alpha_({i},{j}) is not a root of A{n}")
    return tuple(1 if i - 1 <= k <= j - 2 else 0 for k in range(n))


def _require_type_a(ctx: VarietyContext) -> int:
    if ctx.datum.dynkin_type != "A" or ctx.datum.rank < 2:
        raise UnsupportedContextError(f"{ctx.label}: two hyperplane classes exist only in type A with rank >= 2")
    return ctx.datum.rank


def hyperplane_classes_A(ctx: VarietyContext) -> Tuple[SchubertVector, SchubertVector]:
    """h_1 = j^* sigma_{alpha_{1,n}, X} and h_2 = j^* sigma_{alpha_{2,n+1}, X}"""
    n = _require_type_a(ctx)
    return pullback_j(ctx, alpha_ij(n, 1, n)), pullback_j(ctx, alpha_ij(n, 2, n + 1))


def line_classes_A(ctx: VarietyContext) -> Tuple[SchubertVector, SchubertVector]:
    n = _require_type_a(ctx)
    return SchubertVector.basis(negate(alpha_ij(n, 2, n + 1))), SchubertVector.basis(negate(alpha_ij(n, 1, n)))


def cup_with_hi(ctx: VarietyContext, i: int, alpha: Root) -> SchubertVector:
    """h_i . sigma_alpha in type A, i in (1, 2)"""
    if i not in (1, 2):
        raise UnsupportedContextError(f"Hyperplane index must be 1 or 2, got {i}")
    h = hyperplane_classes_A(ctx)[i - 1]
    return product(ctx, h, SchubertVector.basis(alpha))
