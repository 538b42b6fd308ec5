"""Tests for the classical cohomology of Y: Chevalley formula, pull-back and push-forward, pairings"""
import logging

import pytest
from sympy import Matrix, eye, zeros

from core.classical import (
    SchubertVector, betti_numbers, chevalley_matrix, cup_with_h, cup_with_hX, degree_Y, dual_class, gamma_vector,
    hyperplane_class, hyperplane_classes_A, integrate, intersection_number, line_classes_A, middle_basis,
    middle_matrices, multiply_by_h, opposite_base_change, opposite_gamma, opposite_intersections, pairing_matrix,
    product, pullback_j, pushforward_j,
)
from core.errors import ConsistencyError, UnsupportedContextError
from core.gkm import classical_product
from core.poset import context_for

logger = logging.getLogger(__name__)


def test_schubert_vector_arithmetic():
    u = SchubertVector({(1, 0): 2, (0, 1): 1})
    v = SchubertVector({(1, 0): -2})
    assert (u + v) == SchubertVector.basis((0, 1))
    assert not (u - u)
    assert (-u)[(1, 0)] == -2
    with pytest.raises(ConsistencyError):
        u + SchubertVector.basis((1, 0), ring_tag="X")


def test_g2_degree_and_chevalley(g2_adjoint):
    ctx = g2_adjoint
    assert degree_Y(ctx) == 18
    assert cup_with_h(ctx, (0, 1)) == SchubertVector({(-3, -1): 3})
    assert cup_with_h(ctx, (0, -1)) == SchubertVector({(-3, -1): 3})
    assert cup_with_h(ctx, (3, 1)) == SchubertVector({(0, 1): 3, (0, -1): 3})


def test_hyperplane_class_is_the_divisor(g2_adjoint):
    assert hyperplane_class(g2_adjoint) == SchubertVector.basis((3, 1))


def test_a2_pullback_and_hyperplane(a2_adjoint):
    ctx = a2_adjoint
    assert pullback_j(ctx, (1, 0)) == SchubertVector({(1, 0): 1, (-1, 0): 1, (0, -1): 1})
    assert hyperplane_class(ctx) == SchubertVector({(1, 0): 1, (0, 1): 1, (-1, 0): 2, (0, -1): 2})
    h1, h2 = hyperplane_classes_A(ctx)
    assert h1 + h2 == hyperplane_class(ctx)


@pytest.mark.parametrize("dynkin_type,rank,variant", [
    ("A", 3, "adjoint"), ("B", 3, "adjoint"), ("C", 3, "quasi-minuscule"), ("G", 2, "adjoint"),
])
def test_chevalley_formula_matches_localization(dynkin_type, rank, variant):
    ctx = context_for(dynkin_type, rank, variant)
    h = hyperplane_class(ctx)
    for alpha in ctx.aleph:
        assert product(ctx, h, SchubertVector.basis(alpha)) == cup_with_h(ctx, alpha), alpha


def test_chevalley_matrix_columns(c3_qm):
    matrix = chevalley_matrix(c3_qm)
    for col, alpha in enumerate(c3_qm.aleph):
        column = SchubertVector({beta: matrix[c3_qm.index[beta], col] for beta in c3_qm.aleph})
        assert column == cup_with_h(c3_qm, alpha)


def test_pushforward_of_pullback_is_hyperplane_product(b3_adjoint):
    ctx = b3_adjoint
    for alpha in ctx.aleph:
        assert pushforward_j(ctx, pullback_j(ctx, alpha)) == cup_with_hX(ctx, alpha)


def test_pushforward_rejects_classes_of_x(g2_adjoint):
    with pytest.raises(ConsistencyError):
        pushforward_j(g2_adjoint, SchubertVector.basis((3, 2), ring_tag="X"))


def test_g2_middle_matrices(g2_adjoint):
    m = middle_matrices(g2_adjoint)
    assert m.epsilon == 1
    assert m.A == Matrix([[1]])
    assert m.D == Matrix([[-1]])
    assert m.intersection_blocks == eye(2)
    assert m.gamma_pairing == Matrix([[2]])
    gamma = gamma_vector(g2_adjoint, (0, 1))
    assert integrate(g2_adjoint, gamma, gamma) == 2


def test_c3_quasi_minuscule_middle_matrices(c3_qm):
    m = middle_matrices(c3_qm)
    I = eye(2)
    assert m.epsilon == -1
    assert m.A == zeros(2, 2)
    expected = Matrix.vstack(Matrix.hstack(m.C - 2 * I, I), Matrix.hstack(I, zeros(2, 2)))
    assert m.intersection_blocks == expected
    assert m.dual * m.intersection_blocks == eye(4)


def test_f4_middle_matrices(f4_adjoint):
    m = middle_matrices(f4_adjoint)
    assert 4 * m.identity - m.C == Matrix([[2, 1], [1, 2]])
    assert m.A == zeros(2, 2)


@pytest.mark.parametrize("dynkin_type,rank,variant", [
    ("G", 2, "adjoint"), ("C", 3, "quasi-minuscule"), ("B", 3, "adjoint"), ("A", 3, "adjoint"),
])
def test_middle_blocks_match_structure_constants(dynkin_type, rank, variant):
    ctx = context_for(dynkin_type, rank, variant)
    order = middle_basis(ctx)
    blocks = middle_matrices(ctx).intersection_blocks
    for a, alpha in enumerate(order):
        for b, beta in enumerate(order):
            assert classical_product(ctx, alpha, beta).get(ctx.point, 0) == blocks[a, b]


def test_middle_matrices_need_even_dimension():
    with pytest.raises(UnsupportedContextError):
        middle_matrices(context_for("A", 1, "adjoint"))


def test_betti_numbers_sum_to_fixed_points(f4_qm):
    betti = betti_numbers(f4_qm)
    assert sum(betti) == len(f4_qm.aleph)
    assert betti[f4_qm.middle_degree] == 2 * len(f4_qm.phi_aleph)


@pytest.mark.parametrize("dynkin_type,rank,variant", [("G", 2, "adjoint"), ("C", 3, "quasi-minuscule")])
def test_pairings_are_nondegenerate_and_dual_classes_integrate(dynkin_type, rank, variant):
    ctx = context_for(dynkin_type, rank, variant)
    for degree in range(ctx.dim_Y + 1):
        matrix = pairing_matrix(ctx, degree)
        assert matrix.rows == matrix.cols and matrix.det() != 0
    for alpha in ctx.aleph:
        dual = dual_class(ctx, alpha)
        for beta in ctx.aleph:
            expected = 1 if beta == alpha else 0
            assert integrate(ctx, dual, SchubertVector.basis(beta)) == expected


def test_point_pairs_with_fundamental_class(g2_adjoint):
    assert intersection_number(g2_adjoint, (3, 2), (-3, -2)) == 1
    assert intersection_number(g2_adjoint, (3, 2), (3, 1)) == 0


def test_pairing_degree_out_of_range(g2_adjoint):
    with pytest.raises(UnsupportedContextError):
        pairing_matrix(g2_adjoint, 5)


@pytest.mark.parametrize("dynkin_type,rank,variant", [("G", 2, "adjoint"), ("C", 3, "quasi-minuscule")])
def test_non_ambient_classes(dynkin_type, rank, variant):
    ctx = context_for(dynkin_type, rank, variant)
    m = middle_matrices(ctx)
    A, B = opposite_base_change(ctx)
    assert A == m.A and B == m.B
    for a, alpha in enumerate(m.roots):
        gamma = gamma_vector(ctx, alpha)
        assert not pushforward_j(ctx, gamma)
        expected = SchubertVector()
        for b, beta in enumerate(m.roots):
            expected = expected + gamma_vector(ctx, beta).scale(m.D[a, b])
        assert opposite_gamma(ctx, alpha) == expected


def test_opposite_intersection_blocks(c3_qm):
    m = middle_matrices(c3_qm)
    blocks = opposite_intersections(c3_qm)
    I = eye(2)
    logger.info(f"Opposite intersection blocks: {blocks}")
    assert blocks["plus_plus"] == I
    assert blocks["minus_minus"] == I
    assert blocks["plus_minus"] == m.C - 2 * I
    assert blocks["minus_plus"] == zeros(2, 2)


def test_gamma_vector_needs_simple_root_of_aleph(g2_adjoint):
    with pytest.raises(UnsupportedContextError):
        gamma_vector(g2_adjoint, (1, 0))


def test_h_power_reaches_point(g2_adjoint):
    v = SchubertVector.basis(g2_adjoint.varpi)
    for _ in range(g2_adjoint.dim_Y):
        v = multiply_by_h(g2_adjoint, v)
    assert v == SchubertVector({g2_adjoint.point: 18})


@pytest.mark.parametrize("n", [2, 3])
def test_type_a_hyperplanes_and_lines_are_dual(n):
    ctx = context_for("A", n, "adjoint")
    for i, h in enumerate(hyperplane_classes_A(ctx), start=1):
        for j, line in enumerate(line_classes_A(ctx), start=1):
            assert integrate(ctx, h, line) == (1 if i == j else 0)
