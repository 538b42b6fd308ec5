"""Tests for the fixed-point posets of X and Y and the Hasse diagram of Y"""
import logging

import pytest

from core.errors import UnsupportedContextError
from core.poset import context_for, hasse_graph_Y, x_order_leq, y_strict_order
from core.classical import betti_numbers

logger = logging.getLogger(__name__)


def test_g2_adjoint_context(g2_adjoint, root):
    ctx = g2_adjoint
    assert len(ctx.aleph) == 6
    assert ctx.dim_X == 5 and ctx.dim_Y == 4
    assert ctx.c1_X == 3 and ctx.c1_Y == 2
    assert ctx.phi_aleph == (root("a2", 2),)
    assert ctx.varpi == (3, 2)
    assert ctx.picard_rank == 1


def test_g2_schubert_dimensions(g2_adjoint):
    ctx = g2_adjoint
    assert ctx.dim_X_schubert((0, 1)) == 3
    assert ctx.dim_Y_schubert((0, 1)) == 2
    assert ctx.dim_Y_schubert((0, -1)) == 2
    assert ctx.dim_Y_schubert((-3, -2)) == 0
    assert [ctx.degree_Y(a) for a in ctx.aleph] == [0, 1, 2, 2, 3, 4]


def test_g2_betti(g2_adjoint):
    assert betti_numbers(g2_adjoint) == [1, 1, 2, 1, 1]


def test_c3_quasi_minuscule_context(c3_qm):
    assert len(c3_qm.aleph) == 12
    assert c3_qm.dim_X == 7
    assert c3_qm.c1_X == 5
    assert not c3_qm.is_adjoint


def test_a2_adjoint_context(a2_adjoint):
    assert a2_adjoint.picard_rank == 2
    assert a2_adjoint.aleph1 == ((1, 0), (0, 1))
    assert betti_numbers(a2_adjoint) == [1, 4, 1]


@pytest.mark.parametrize("dynkin_type,rank", [("A", 3), ("B", 3), ("C", 3), ("D", 4), ("F", 4), ("G", 2)])
def test_adjoint_dimension_formula(dynkin_type, rank):
    """dim X = 2 <rho, theta^vee> - 1 for the adjoint variety"""
    ctx = context_for(dynkin_type, rank, "adjoint")
    assert ctx.dim_X == 2 * ctx.c1_X - 1


@pytest.mark.parametrize("dynkin_type,rank,variant", [
    ("A", 3, "adjoint"), ("B", 3, "adjoint"), ("B", 3, "quasi-minuscule"),
    ("C", 3, "quasi-minuscule"), ("G", 2, "adjoint"), ("G", 2, "quasi-minuscule"),
])
def test_y_order_is_a_strict_partial_order(dynkin_type, rank, variant):
    ctx = context_for(dynkin_type, rank, variant)
    aleph = ctx.aleph
    for alpha in aleph:
        assert not y_strict_order(ctx, alpha, alpha)
        assert x_order_leq(ctx, alpha, alpha)
        for beta in aleph:
            if y_strict_order(ctx, beta, alpha):
                assert not y_strict_order(ctx, alpha, beta)
                # -beta < -alpha
                assert x_order_leq(ctx, tuple(-c for c in alpha), tuple(-c for c in beta))
                for gamma in aleph:
                    if y_strict_order(ctx, gamma, beta):
                        assert y_strict_order(ctx, gamma, alpha)


def test_simple_root_not_above_its_negative_in_y(g2_adjoint):
    ctx = g2_adjoint
    assert x_order_leq(ctx, (0, -1), (0, 1))
    assert not y_strict_order(ctx, (0, -1), (0, 1))


def test_disconnected_support_breaks_x_order():
    ctx = context_for("A", 3, "adjoint")
    assert not x_order_leq(ctx, (-1, 0, 0), (0, 0, 1))
    assert x_order_leq(ctx, (-1, 0, 0), (0, 1, 0))
    assert not x_order_leq(ctx, (0, 1, 0), (-1, 0, 0))


def test_poincare_symmetry():
    for dynkin_type, rank, variant in [("B", 4, "adjoint"), ("C", 4, "quasi-minuscule"), ("F", 4, "adjoint")]:
        betti = betti_numbers(context_for(dynkin_type, rank, variant))
        assert betti == betti[::-1]


def test_simply_laced_quasi_minuscule_aliases_adjoint():
    assert context_for("D", 4, "quasi-minuscule") is context_for("D", 4, "adjoint")


def test_unknown_variant():
    with pytest.raises(UnsupportedContextError):
        context_for("B", 3, "minuscule")


def test_g2_hasse_edges(g2_adjoint):
    """Golden edge list of the Hasse diagram of Y"""
    hasse = hasse_graph_Y(g2_adjoint)
    edges = {(e.src, e.dst): (e.coeff, e.new_in_Y) for e in hasse.edges}
    logger.info(f"G2 adjoint Hasse edges: {edges}")
    assert edges == {
        ("3a1+2a2", "3a1+a2"): (1, False),
        ("3a1+a2", "a2"): (3, False),
        ("3a1+a2", "-a2"): (3, True),
        ("a2", "-3a1-a2"): (3, True),
        ("-a2", "-3a1-a2"): (3, False),
        ("-3a1-a2", "-3a1-2a2"): (1, False),
    }
    assert hasse.is_graded()
    assert len(hasse.red_edges) == 2


def test_hasse_graph_export(c3_qm):
    hasse = hasse_graph_Y(c3_qm)
    graph = hasse.to_networkx()
    assert graph.number_of_nodes() == 12
    assert hasse.is_graded()
    document = hasse.to_dict()
    assert set(document) == {"vertices", "edges", "grading"}
    assert document["grading"][document["vertices"][0]] == 0
