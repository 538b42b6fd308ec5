"""Quantum multiplication by the hyperplane class on X and on Y, comparison maps and exact spectra."""
import logging
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import Matrix, Poly, QQ, S, Symbol, expand, gcd, sympify, zeros
from sympy.polys.matrices import DomainMatrix

from core.classical import (
    SchubertVector, alpha_ij, chevalley_matrix, cup_with_h, cup_with_hX, cup_with_hi, gamma_vector,
    hyperplane_classes_A, pullback_j,
)
from core.errors import ConsistencyError, UnsupportedContextError
from core.poset import VarietyContext
from core.rootsys import Root, add, dominance_leq, is_positive, max_coefficient, negate, sub, support_size
from core.state import SpectralReport, SpectralShape
from core.utils import expr_str, fraction_str, root_label, to_rational

logger = logging.getLogger(__name__)

q = Symbol("q")
q1 = Symbol("q1")
q2 = Symbol("q2")
T = Symbol("T")


class QuantumOperator:
    """Matrix of h * - (or h_X * -) on a Schubert basis, entries polynomial in the quantum parameters"""

    def __init__(self, name: str, ctx: VarietyContext, ambient: str, matrix: Matrix,
                 quantum_degrees: Dict[Symbol, int]):
        self.name = name
        self.ctx = ctx
        self.ambient = ambient
        self.basis: Tuple[Root, ...] = ctx.aleph
        self.matrix = matrix
        self.quantum_degrees = quantum_degrees

    @property
    def parameters(self) -> List[Symbol]:
        return list(self.quantum_degrees)

    @property
    def cyclic_degree(self) -> int:
        """Common degree of the quantum parameters"""
        degrees = set(self.quantum_degrees.values())
        if len(degrees) != 1:
            raise ConsistencyError(f"{self.name}: quantum parameters of unequal degree {sorted(degrees)}")
        return degrees.pop()

    def degree_of(self, alpha: Root) -> int:
        return self.ctx.degree_Y(alpha) if self.ambient == "Y" else self.ctx.degree_X(alpha)

    def column(self, alpha: Root) -> SchubertVector:
        col = self.ctx.index[tuple(alpha)]
        return SchubertVector({beta: self.matrix[row, col] for row, beta in enumerate(self.basis)}, self.ambient)

    def apply(self, v: SchubertVector) -> SchubertVector:
        result = SchubertVector(ring_tag=self.ambient)
        for alpha, coeff in v.items():
            result = result + self.column(alpha).scale(coeff)
        return result

    def specialize(self, values: Optional[Dict] = None) -> Matrix:
        substitutions = {p: 1 for p in self.parameters}
        for key, value in (values or {}).items():
            symbol = key if isinstance(key, Symbol) else Symbol(str(key))
            if symbol not in substitutions:
                raise UnsupportedContextError(f"{self.name} has no quantum parameter {symbol}")
            substitutions[symbol] = to_rational(value)
        return self.matrix.subs(substitutions)

    def classical_part(self) -> Matrix:
        return self.matrix.subs({p: 0 for p in self.parameters})

    def grading_violations(self) -> List[Tuple[Root, Root, str]]:
        """(row, column, monomial) for every entry breaking deg(row) + deg(monomial) = deg(column) + 1"""
        failures = []
        parameters = self.parameters
        for col, alpha in enumerate(self.basis):
            target = self.degree_of(alpha) + 1
            for row, beta in enumerate(self.basis):
                entry = self.matrix[row, col]
                if entry == 0:
                    continue
                poly = Poly(entry, *parameters) if parameters else Poly(entry, Symbol("_"))
                for monomial in poly.monoms():
                    weight = sum(e * self.quantum_degrees[p] for e, p in zip(monomial, parameters)) if parameters else 0
                    if self.degree_of(beta) + weight != target:
                        failures.append((beta, alpha, str(monomial)))
        return failures

    def to_dict(self) -> Dict:
        columns = {}
        for col, alpha in enumerate(self.basis):
            entries = {root_label(beta): expr_str(self.matrix[row, col])
                       for row, beta in enumerate(self.basis) if self.matrix[row, col] != 0}
            columns[root_label(alpha)] = entries
        return {
            "operator": self.name,
            "context": self.ctx.label,
            "ambient": self.ambient,
            "basis": [root_label(a) for a in self.basis],
            "quantum_degrees": {str(p): d for p, d in self.quantum_degrees.items()},
            "columns": columns,
        }


def _matrix_from_columns(ctx: VarietyContext, columns: Dict[Root, SchubertVector]) -> Matrix:
    n = len(ctx.aleph)
    matrix = zeros(n, n)
    for alpha, v in columns.items():
        col = ctx.index[alpha]
        for beta, coeff in v.items():
            matrix[ctx.index[beta], col] = coeff
    return matrix


def _require_non_a(ctx: VarietyContext) -> None:
    if ctx.datum.dynkin_type == "A":
        raise UnsupportedContextError(
            f"{ctx.label}: type A carries two quantum parameters; use build_typeA_operators"
        )


def quantum_root(ctx: VarietyContext) -> Root:
    """alpha_0: the simple root pairing nontrivially with the highest root"""
    datum = ctx.datum
    theta = datum.highest_root
    candidates = [s for s in datum.simple_roots if datum.pairing(theta, s) != 0]
    if len(candidates) != 1:
        raise UnsupportedContextError(f"{ctx.label}: no unique simple root pairing with the highest root")
    alpha0 = candidates[0]
    if ctx.is_adjoint and alpha0 not in ctx.phi_aleph:
        raise UnsupportedContextError(
            f"{ctx.label}: {root_label(alpha0)} is not a long simple root, quantum Chevalley formula unavailable"
        )
    return alpha0


def gw_constants(ctx: VarietyContext) -> Dict[str, int]:
    """Degree-two invariants <[pt], [line], h> used by the operator builders"""
    if ctx.datum.dynkin_type == "A":
        constants = {}
        for i in (1, 2):
            for j in (1, 2):
                constants[f"pt,line{i},h{j};(1,1)"] = 1
                constants[f"pt,line{i},h{j};(2,0)"] = 0
                constants[f"pt,line{i},h{j};(0,2)"] = 0
        return constants
    if ctx.is_adjoint:
        return {"pt,line,h;2": 2}
    return {}


def build_EX(ctx: VarietyContext) -> QuantumOperator:
    _require_non_a(ctx)
    datum = ctx.datum
    theta = datum.highest_root
    columns = {}
    if ctx.is_adjoint:
        alpha0 = quantum_root(ctx)
        for alpha in ctx.aleph:
            v = cup_with_hX(ctx, alpha)
            if is_positive(alpha):
                if alpha == alpha0:
                    v.add_term(ctx.varpi, q)
            elif alpha != negate(theta):
                k = abs(datum.pairing(theta, alpha))
                if k:
                    v.add_term(datum.reflect(theta, alpha), k * q ** k)
            else:
                v = SchubertVector({negate(alpha0): q, ctx.varpi: 2 * q ** 2}, "X")
            columns[alpha] = v
    else:
        bound = sub(ctx.varpi, theta)
        for alpha in ctx.aleph:
            v = cup_with_hX(ctx, alpha)
            if dominance_leq(alpha, bound):
                target = add(alpha, theta)
                if target not in ctx:
                    raise ConsistencyError(f"{ctx.label}: {root_label(target)} is not a fixed point")
                v.add_term(target, q)
            columns[alpha] = v
    op = QuantumOperator("E_X", ctx, "X", _matrix_from_columns(ctx, columns), {q: ctx.c1_X})
    logger.info(f"{ctx.label}: built E_X of size {len(ctx.aleph)}")
    return op


def build_EY(ctx: VarietyContext) -> QuantumOperator:
    _require_non_a(ctx)
    datum = ctx.datum
    theta = datum.highest_root
    columns: Dict[Root, SchubertVector] = {}
    if ctx.is_adjoint:
        alpha0 = quantum_root(ctx)
        pt_line_h = gw_constants(ctx)["pt,line,h;2"]
        h = cup_with_h(ctx, ctx.varpi)
        for alpha in ctx.aleph:
            v = cup_with_h(ctx, alpha)
            if datum.is_simple(alpha):
                if alpha == alpha0:
                    v = v + h.scale(q)
            elif is_positive(alpha):
                if ctx.degree_Y(alpha) == ctx.c1_Y - 1 and dominance_leq(alpha0, alpha):
                    v.add_term(ctx.varpi, max_coefficient(alpha) * q)
            elif alpha == negate(theta):
                v = h.scale(pt_line_h * q ** 2) + cup_with_h(ctx, negate(alpha0)).scale(q)
            elif support_size(add(theta, alpha)) == 1:
                v = v + pullback_j(ctx, alpha0).scale(q)
                v.add_term(ctx.varpi, pt_line_h * q ** 2)
            else:
                k = abs(datum.pairing(theta, alpha))
                if k:
                    v.add_term(datum.reflect(theta, alpha), k * q ** k)
            columns[alpha] = v
    else:
        bound = sub(ctx.varpi, theta)
        for alpha in ctx.aleph:
            if is_positive(alpha):
                continue
            v = cup_with_h(ctx, alpha)
            if dominance_leq(alpha, bound):
                v = v + pullback_j(ctx, add(alpha, theta)).scale(q)
            columns[alpha] = v
        for alpha in ctx.aleph:
            if not is_positive(alpha):
                continue
            if datum.is_simple(alpha):
                columns[alpha] = columns[negate(alpha)].copy()
            else:
                columns[alpha] = cup_with_h(ctx, alpha)
    op = QuantumOperator("E_Y", ctx, "Y", _matrix_from_columns(ctx, columns), {q: ctx.c1_Y})
    logger.info(f"{ctx.label}: built E_Y of size {len(ctx.aleph)}")
    return op


def build_typeA_operators(ctx: VarietyContext) -> Tuple[QuantumOperator, QuantumOperator]:
    """h_1 * - and h_2 * - on Y for X adjoint of type A_n"""
    datum = ctx.datum
    if datum.dynkin_type != "A":
        raise UnsupportedContextError(f"{ctx.label}: two-parameter operators exist only in type A")
    n = datum.rank
    if n < 2:
        raise UnsupportedContextError(f"{ctx.label}: the roots alpha_(i,j) need rank >= 2")
    constants = gw_constants(ctx)
    mixed = q1 * q2
    theta = datum.highest_root
    top_1, top_2 = alpha_ij(n, 1, n), alpha_ij(n, 2, n + 1)

    def quantum_terms(which: int, alpha: Root) -> SchubertVector:
        extra = SchubertVector()
        own = q1 if which == 1 else q2
        if is_positive(alpha):
            if sum(alpha) == 2 and alpha != theta:
                i = alpha.index(1) + 1
                if (which == 1 and i == 1) or (which == 2 and i == n - 1):
                    extra.add_term(ctx.varpi, own)
            return extra
        positive = negate(alpha)
        first = positive.index(1) + 1
        last = first + sum(positive)
        if alpha == negate(theta):
            line = alpha_ij(n, n - 1, n + 1) if which == 1 else alpha_ij(n, 1, 3)
            extra.add_term(negate(line), own)
            h1, h2 = hyperplane_classes_A(ctx)
            coupling = constants[f"pt,line{which},h{which};(1,1)"]
            extra = extra + (h1 + h2).scale(coupling * mixed)
        elif positive in (top_1, top_2):
            coupling = constants[f"pt,line{1 if positive == top_2 else 2},h{which};(1,1)"]
            extra.add_term(ctx.varpi, coupling * mixed)
            if (which == 1 and positive == top_1) or (which == 2 and positive == top_2):
                simple = datum.simple_roots[n - 1] if which == 1 else datum.simple_roots[0]
                extra = extra + pullback_j(ctx, simple).scale(own)
        elif (which == 1 and first == 1) or (which == 2 and last == n + 1):
            extra.add_term(sub(theta, positive), own)
        return extra

    operators = []
    for which, own in ((1, q1), (2, q2)):
        columns: Dict[Root, SchubertVector] = {}
        for alpha in ctx.aleph:
            if datum.is_simple(alpha):
                continue
            columns[alpha] = cup_with_hi(ctx, which, alpha) + quantum_terms(which, alpha)
        for alpha in datum.simple_roots:
            columns[alpha] = columns[negate(alpha)].copy()
        matrix = _matrix_from_columns(ctx, columns)
        operators.append(QuantumOperator(f"h{which}*", ctx, "Y", matrix, {q1: n - 1, q2: n - 1}))
    logger.info(f"{ctx.label}: built type A operators h1*, h2*")
    return operators[0], operators[1]


def typeA_kernel_generators(ctx: VarietyContext) -> List[SchubertVector]:
    """Classes killed by both h_1 * and h_2 *: sigma_{alpha_i} - sigma_{-alpha_i}, and for n >= 3
    [pt] - q_2 sigma_{-alpha_1} - q_1 sigma_{-alpha_n} - q_1 q_2"""
    datum = ctx.datum
    if datum.dynkin_type != "A" or datum.rank < 2:
        raise UnsupportedContextError(f"{ctx.label}: two-parameter kernel exists only in type A with rank >= 2")
    generators = [SchubertVector({alpha: 1, negate(alpha): -1}) for alpha in datum.simple_roots]
    if datum.rank >= 3:
        first, last = datum.simple_roots[0], datum.simple_roots[-1]
        generators.append(SchubertVector({
            ctx.point: 1, negate(first): -q2, negate(last): -q1, ctx.varpi: -q1 * q2,
        }))
    return generators


def quantum_hyperplane_operator(ctx: VarietyContext) -> QuantumOperator:
    """E_Y, or (h_1 + h_2) * - in type A"""
    if ctx.datum.dynkin_type == "A":
        first, second = build_typeA_operators(ctx)
        return QuantumOperator("E_Y", ctx, "Y", first.matrix + second.matrix, dict(first.quantum_degrees))
    return build_EY(ctx)


# -- comparison maps ----------------------------------------------------------------

class ComparisonMap:
    """The map from QH(X) to QH(Y) intertwining the hyperplane operators"""

    def __init__(self, ctx: VarietyContext, domain: List[Root], codomain: List[Root], jmap: Matrix,
                 lhs: Matrix, rhs: Matrix):
        self.ctx = ctx
        self.domain = domain
        self.codomain = codomain
        self.jmap = jmap
        self.lhs = lhs
        self.rhs = rhs

    def holds(self) -> bool:
        return (self.lhs - self.rhs).applyfunc(expand) == zeros(*self.lhs.shape)

    def is_bijective(self) -> bool:
        return self.jmap.rows == self.jmap.cols and self.jmap.det() != 0

    def to_dict(self) -> Dict:
        return {
            "context": self.ctx.label,
            "domain": [root_label(a) for a in self.domain],
            "codomain": [root_label(a) for a in self.codomain],
            "jmap": [[expr_str(self.jmap[i, j]) for j in range(self.jmap.cols)] for i in range(self.jmap.rows)],
            "intertwines": self.holds(),
            "bijective": self.is_bijective(),
        }


def _full_jmap(ctx: VarietyContext) -> Matrix:
    """j^* on positive classes, sigma_{alpha, X} -> sigma_alpha on negative ones"""
    columns = {}
    for alpha in ctx.aleph:
        columns[alpha] = pullback_j(ctx, alpha) if is_positive(alpha) else SchubertVector.basis(alpha)
    return _matrix_from_columns(ctx, columns)


def _bar_EX(ctx: VarietyContext, EX: Matrix, squared_degrees: Sequence[int]) -> Matrix:
    squared = EX * EX
    bar = EX.copy()
    for col, alpha in enumerate(ctx.aleph):
        if ctx.degree_X(alpha) in squared_degrees:
            bar[:, col] = squared[:, col]
    return bar


def comparison_map(ctx: VarietyContext) -> ComparisonMap:
    _require_non_a(ctx)
    EX = build_EX(ctx).matrix
    EY = build_EY(ctx).matrix
    jmap = _full_jmap(ctx)
    if not ctx.is_adjoint:
        bar = _bar_EX(ctx, EX, [ctx.middle_degree])
        aleph = list(ctx.aleph)
        return ComparisonMap(ctx, aleph, aleph, jmap, EY * jmap, jmap * bar)

    alpha0 = quantum_root(ctx)
    theta = ctx.datum.highest_root
    bar = _bar_EX(ctx, EX, [ctx.c1_Y - 1, ctx.dim_Y])
    dropped = set(ctx.phi_aleph) | {negate(theta)}
    kept = [alpha for alpha in ctx.aleph if alpha not in dropped]
    reduce = _reduction_matrix(ctx, alpha0, kept)
    columns = [ctx.index[alpha] for alpha in kept]
    lhs = (reduce * EY * jmap).extract(list(range(len(kept))), columns)
    rhs = (reduce * jmap * bar).extract(list(range(len(kept))), columns)
    reduced_j = (reduce * jmap).extract(list(range(len(kept))), columns)
    return ComparisonMap(ctx, kept, kept, reduced_j, lhs, rhs)


def _reduction_matrix(ctx: VarietyContext, alpha0: Root, kept: List[Root]) -> Matrix:
    """Projection of QH(Y) onto the quotient by the Gamma classes and [pt] - q sigma_{-alpha_0} - q^2"""
    position = {alpha: i for i, alpha in enumerate(kept)}
    matrix = zeros(len(kept), len(ctx.aleph))
    for col, alpha in enumerate(ctx.aleph):
        if alpha in position:
            matrix[position[alpha], col] = 1
        elif alpha in ctx.phi_aleph:
            matrix[position[negate(alpha)], col] = 1
        else:
            matrix[position[negate(alpha0)], col] = q
            matrix[position[ctx.varpi], col] = q ** 2
    return matrix


# -- spectra ------------------------------------------------------------------------

def _to_domain(matrix: Matrix) -> DomainMatrix:
    return DomainMatrix.from_Matrix(matrix).convert_to(QQ)


def characteristic_polynomial(dM: DomainMatrix) -> Poly:
    return Poly.from_list([QQ.to_sympy(c) for c in dM.charpoly()], T, domain=QQ)


def _evaluate_at(poly: Poly, dM: DomainMatrix) -> DomainMatrix:
    n = dM.shape[0]
    identity = DomainMatrix.eye(n, QQ)
    acc = DomainMatrix.zeros((n, n), QQ)
    for coeff in poly.all_coeffs():
        acc = acc * dM + identity * QQ.convert(coeff)
    return acc


def minimal_polynomial(matrix: Matrix, char: Optional[Poly] = None) -> Poly:
    """Product over the irreducible factors f of char of f^m, m the least exponent killing the f-primary part"""
    dM = _to_domain(matrix)
    n = dM.shape[0]
    if char is None:
        char = characteristic_polynomial(dM)
    result = Poly(1, T, domain=QQ)
    for factor, multiplicity in char.factor_list()[1]:
        target = factor.degree() * multiplicity
        base = _evaluate_at(factor, dM)
        power, exponent = base, 1
        while n - power.rank() < target:
            power = power * base
            exponent += 1
            if exponent > multiplicity:
                raise ConsistencyError("Primary component exceeds its algebraic multiplicity")
        result = result * factor ** exponent
    return result.monic()


def _coeff_strings(poly: Poly) -> List[str]:
    return [fraction_str(to_rational(c)) for c in poly.all_coeffs()]


def _shape(poly: Poly, cyclic: int) -> Optional[SpectralShape]:
    """T^k P(T^c) decomposition, read off the exponents"""
    terms = poly.terms()
    k = min(m[0] for m, _ in terms)
    if any((m[0] - k) % cyclic for m, _ in terms):
        return None
    top = (poly.degree() - k) // cyclic
    coeffs = [S.Zero] * (top + 1)
    for (exponent,), coeff in terms:
        coeffs[top - (exponent - k) // cyclic] = to_rational(coeff)
    return SpectralShape(k=k, c=cyclic, P=[fraction_str(c) for c in coeffs])


def analyze_spectrum(name: str, matrix: Matrix, cyclic: int, specialization: Optional[Dict[str, str]] = None) -> SpectralReport:
    n = matrix.rows
    dM = _to_domain(matrix)
    char = characteristic_polynomial(dM)
    minimal = minimal_polynomial(matrix, char)
    zero_order = min(m[0] for m, _ in char.terms())
    nonzero = char.exquo(Poly(T ** zero_order, T, domain=QQ))
    squarefree = gcd(nonzero, nonzero.diff(T)).degree() == 0
    report = SpectralReport(
        operator=name,
        specialization=specialization or {},
        char_poly=_coeff_strings(char),
        min_poly=_coeff_strings(minimal),
        shape=_shape(minimal, cyclic),
        nonzero_simple=squarefree,
        kernel_dim=n - dM.rank(),
    )
    logger.info(f"{name}: kernel dimension {report.kernel_dim}, nonzero eigenvalues simple = {squarefree}")
    return report


def is_diagonalizable(report: SpectralReport) -> bool:
    """Minimal polynomial without repeated factors"""
    minimal = Poly([sympify(c) for c in report.min_poly], T, domain=QQ)
    return gcd(minimal, minimal.diff(T)).degree() == 0


def spectral_report(op: QuantumOperator, q_values: Optional[Dict] = None) -> SpectralReport:
    values = {p: S.One for p in op.parameters}
    for key, value in (q_values or {}).items():
        values[key if isinstance(key, Symbol) else Symbol(str(key))] = to_rational(value)
    if any(v == 0 for v in values.values()):
        raise UnsupportedContextError("Quantum parameters must be specialised to nonzero rationals")
    matrix = op.specialize(values)
    specialization = {str(p): fraction_str(v) for p, v in values.items()}
    return analyze_spectrum(f"{op.name} {op.ctx.label}", matrix, op.cyclic_degree, specialization)


def kernel_basis(op: QuantumOperator, q_values: Optional[Dict] = None) -> List[SchubertVector]:
    matrix = op.specialize(q_values)
    return [SchubertVector({alpha: v[i] for i, alpha in enumerate(op.basis)}, op.ambient) for v in matrix.nullspace()]


def kernel_generators(ctx: VarietyContext) -> List[SchubertVector]:
    """Gamma_alpha for alpha in Phi_aleph, plus [pt] - q sigma_{-alpha_0} - q^2 in the adjoint case"""
    generators = [gamma_vector(ctx, alpha) for alpha in ctx.phi_aleph]
    if ctx.is_adjoint:
        alpha0 = quantum_root(ctx)
        generators.append(SchubertVector({ctx.point: 1, negate(alpha0): -q, ctx.varpi: -q ** 2}))
    return generators


# -- the element sigma of the h-subalgebra killed by h --------------------------------

def sigma_lambda0(ctx: VarietyContext) -> Tuple[SchubertVector, object, List]:
    """sigma = sum a_k h^k in Ker E_Y with [pt]-coefficient 1, at q = 1; returns (sigma, lambda_0, [a_k])"""
    if not ctx.is_adjoint or ctx.is_quasi_minuscule:
        raise UnsupportedContextError(f"{ctx.label}: sigma is defined for adjoint, non quasi-minuscule X")
    matrix = build_EY(ctx).specialize({q: 1})
    start = Matrix([1 if alpha == ctx.varpi else 0 for alpha in ctx.aleph])
    powers = [start]
    while True:
        candidate = matrix * powers[-1]
        if Matrix.hstack(*powers, candidate).rank() == len(powers):
            break
        powers.append(candidate)
    shifted = Matrix.hstack(*[matrix * v for v in powers])
    null = shifted.nullspace()
    if len(null) != 1:
        raise ConsistencyError(f"{ctx.label}: h-subalgebra meets the kernel in dimension {len(null)}, expected 1")
    coefficients = list(null[0])
    element = Matrix.zeros(len(ctx.aleph), 1)
    for a, v in zip(coefficients, powers):
        element += a * v
    point_coefficient = element[ctx.index[ctx.point]]
    if point_coefficient == 0:
        raise ConsistencyError(f"{ctx.label}: kernel element has no point component")
    coefficients = [sympify(a) / point_coefficient for a in coefficients]
    element = element / point_coefficient
    sigma = SchubertVector({alpha: element[i] for i, alpha in enumerate(ctx.aleph)})
    lambda0 = coefficients[0]
    logger.info(f"{ctx.label}: lambda_0 = {lambda0}")
    return sigma, lambda0, coefficients


def classical_agreement(ctx: VarietyContext) -> bool:
    """E_Y at q = 0 equals the classical Chevalley matrix"""
    op = quantum_hyperplane_operator(ctx)
    return op.classical_part() == chevalley_matrix(ctx)
