"""Tests for the quantum hyperplane operators, comparison maps and their spectra"""
import logging

import pytest
from sympy import Matrix, Poly, Rational, Symbol, sympify

from core.classical import SchubertVector, chevalley_matrix, cup_with_hX, gamma_vector
from core.errors import UnsupportedContextError
from core.poset import context_for
from core.quantum import (
    analyze_spectrum, build_EX, build_EY, build_typeA_operators, classical_agreement, comparison_map,
    gw_constants, is_diagonalizable, kernel_basis, kernel_generators, minimal_polynomial, q, q1, q2,
    quantum_hyperplane_operator, quantum_root, sigma_lambda0, spectral_report, typeA_kernel_generators,
)

logger = logging.getLogger(__name__)


def test_quantum_root(g2_adjoint, b3_adjoint):
    assert quantum_root(g2_adjoint) == (0, 1)
    assert quantum_root(b3_adjoint) == (0, 1, 0)


def test_quantum_root_must_be_long():
    with pytest.raises(UnsupportedContextError):
        quantum_root(context_for("C", 3, "adjoint"))


def test_g2_EX_spectrum(g2_adjoint):
    """Minimal polynomial of E_X at q = 1 is P(T^3) with P = T^2 - 18T - 27"""
    op = build_EX(g2_adjoint)
    assert op.cyclic_degree == 3
    report = spectral_report(op)
    logger.info(f"G2 E_X: {report.model_dump()}")
    assert report.shape is not None
    assert report.shape.k == 0 and report.shape.c == 3
    assert report.shape.P == ["1", "-18", "-27"]


def test_g2_EY_kernel_and_sigma(g2_adjoint):
    op = build_EY(g2_adjoint)
    assert op.cyclic_degree == g2_adjoint.c1_Y == 2
    assert spectral_report(op).kernel_dim == 2
    sigma, lambda0, _ = sigma_lambda0(g2_adjoint)
    assert lambda0 == Rational(-3, 2)
    residual = sigma - SchubertVector({g2_adjoint.point: 1, (0, -1): -1, g2_adjoint.varpi: -1})
    assert set(residual) <= {(0, 1), (0, -1)}
    assert residual[(0, 1)] == -residual[(0, -1)]


@pytest.mark.parametrize("dynkin_type,rank,expected_kernel", [("G", 2, 2), ("B", 3, 3), ("F", 4, 3)])
def test_adjoint_kernel_dimension(dynkin_type, rank, expected_kernel):
    ctx = context_for(dynkin_type, rank, "adjoint")
    op = build_EY(ctx)
    assert spectral_report(op).kernel_dim == expected_kernel == len(ctx.phi_aleph) + 1
    _, lambda0, _ = sigma_lambda0(ctx)
    assert lambda0 < 0


@pytest.mark.parametrize("dynkin_type,rank,variant", [
    ("G", 2, "adjoint"), ("B", 3, "adjoint"), ("C", 3, "quasi-minuscule"), ("G", 2, "quasi-minuscule"),
])
def test_kernel_generators_are_killed(dynkin_type, rank, variant):
    ctx = context_for(dynkin_type, rank, variant)
    op = build_EY(ctx)
    for generator in kernel_generators(ctx):
        image = op.apply(generator)
        assert all(coeff.expand() == 0 for _, coeff in image.items()), generator


@pytest.mark.parametrize("dynkin_type,rank,variant", [
    ("G", 2, "adjoint"), ("B", 3, "adjoint"), ("C", 3, "quasi-minuscule"), ("F", 4, "adjoint"),
])
def test_operators_are_graded_and_deform_the_classical_product(dynkin_type, rank, variant):
    ctx = context_for(dynkin_type, rank, variant)
    EX = build_EX(ctx)
    EY = build_EY(ctx)
    assert EX.grading_violations() == []
    assert EY.grading_violations() == []
    assert classical_agreement(ctx)
    for alpha in ctx.aleph:
        classical = SchubertVector({b: EX.classical_part()[ctx.index[b], ctx.index[alpha]] for b in ctx.aleph}, "X")
        assert classical == cup_with_hX(ctx, alpha)


def test_quasi_minuscule_operators_are_linear_in_q(c3_qm):
    for op in (build_EX(c3_qm), build_EY(c3_qm)):
        for entry in op.matrix:
            if entry != 0:
                assert Poly(entry, q).degree() <= 1


@pytest.mark.parametrize("dynkin_type,rank,variant", [
    ("G", 2, "adjoint"), ("B", 3, "adjoint"), ("C", 3, "quasi-minuscule"),
])
def test_comparison_map_intertwines(dynkin_type, rank, variant):
    comparison = comparison_map(context_for(dynkin_type, rank, variant))
    assert comparison.holds()
    assert comparison.to_dict()["intertwines"] is True


def test_type_a_operators_require_type_a(g2_adjoint):
    with pytest.raises(UnsupportedContextError):
        build_typeA_operators(g2_adjoint)
    with pytest.raises(UnsupportedContextError):
        build_EY(context_for("A", 3, "adjoint"))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_type_a_operators(n):
    ctx = context_for("A", n, "adjoint")
    h1, h2 = build_typeA_operators(ctx)
    for op in (h1, h2):
        assert op.grading_violations() == []
        for simple in ctx.datum.simple_roots:
            negative = tuple(-c for c in simple)
            assert op.column(simple) == op.column(negative)
    assert quantum_hyperplane_operator(ctx).classical_part() == chevalley_matrix(ctx)


def test_type_a_rank_two_spectrum(a2_adjoint):
    report = spectral_report(quantum_hyperplane_operator(a2_adjoint), {"q1": 1, "q2": 1})
    assert report.nonzero_simple
    assert is_diagonalizable(report)
    assert report.kernel_dim == 2 == len(typeA_kernel_generators(a2_adjoint))


def test_type_a_rank_four_spectrum():
    """Nonzero spectrum of (h1 + h2)* at q1 = q2 = 1 repeats, the operator stays diagonalizable"""
    ctx = context_for("A", 4, "adjoint")
    report = spectral_report(quantum_hyperplane_operator(ctx))
    T = Symbol("T")
    sextic = T ** 6 + 11 * T ** 3 - 1
    char = Poly([sympify(c) for c in report.char_poly], T, domain="QQ")
    minimal = Poly([sympify(c) for c in report.min_poly], T, domain="QQ")
    assert char == Poly(T ** 5 * (T ** 3 - 32) * sextic ** 2, T, domain="QQ")
    assert minimal == Poly(T * (T ** 3 - 32) * sextic, T, domain="QQ")
    assert not report.nonzero_simple
    assert is_diagonalizable(report)
    assert report.kernel_dim == 5 == len(typeA_kernel_generators(ctx))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_type_a_kernel_generators_are_killed(n):
    ctx = context_for("A", n, "adjoint")
    generators = typeA_kernel_generators(ctx)
    assert len(generators) == (n + 1 if n >= 3 else n)
    for op in build_typeA_operators(ctx):
        for generator in generators:
            assert not op.apply(generator), (op.name, generator)
    if n >= 3:
        point_relation = generators[-1]
        assert point_relation[ctx.point] == 1
        assert point_relation[ctx.varpi] == -q1 * q2
        assert point_relation[(-1,) + (0,) * (n - 1)] == -q2


def test_type_a_gromov_witten_constants(a2_adjoint):
    constants = gw_constants(a2_adjoint)
    assert all(value == (1 if key.endswith("(1,1)") else 0) for key, value in constants.items())
    assert gw_constants(context_for("G", 2, "adjoint")) == {"pt,line,h;2": 2}


def test_specialization_rejects_unknown_parameter(g2_adjoint):
    with pytest.raises(UnsupportedContextError):
        build_EY(g2_adjoint).specialize({"q7": 2})
    with pytest.raises(UnsupportedContextError):
        spectral_report(build_EY(g2_adjoint), {"q": 0})


def test_kernel_basis_spans_kernel(g2_adjoint):
    op = build_EY(g2_adjoint)
    basis = kernel_basis(op, {q: 1})
    assert len(basis) == 2
    gamma = gamma_vector(g2_adjoint, (0, 1))
    assert all(coeff == 0 for _, coeff in op.apply(gamma).items())


def test_minimal_polynomial_of_jordan_block():
    T = Symbol("T")
    block = Matrix([[2, 1, 0], [0, 2, 0], [0, 0, 3]])
    assert minimal_polynomial(block) == Poly((T - 2) ** 2 * (T - 3), T, domain="QQ")
    report = analyze_spectrum("block", block, 1)
    assert report.kernel_dim == 0
    assert not report.nonzero_simple
    assert report.min_poly == ["1", "-7", "16", "-12"]
