"""Tests for the static variety catalog and its cross-check against computed data"""
import pytest
from pydantic import ValidationError

from core.catalog import catalog_document, check_record, jordan_table, load_catalog, lookup, supported_triples
from core.errors import CatalogLookupError
from core.poset import context_for
from core.state import JordanRow, VarietyRecord


def test_load_catalog_sections():
    data = load_catalog()
    assert {"families", "jordan"} <= set(data)
    with pytest.raises(CatalogLookupError):
        load_catalog("/nonexistent/catalog.yaml")


@pytest.mark.parametrize("dynkin_type,rank,variant,dim_X,c1_X", [
    ("G", 2, "adjoint", 5, 3),
    ("G", 2, "quasi-minuscule", 5, 5),
    ("C", 3, "quasi-minuscule", 7, 5),
    ("B", 3, "adjoint", 7, 4),
    ("A", 3, "adjoint", 5, 3),
    ("F", 4, "adjoint", 15, 8),
])
def test_lookup_matches_computed_dimensions(dynkin_type, rank, variant, dim_X, c1_X):
    record = lookup(dynkin_type, rank, variant)
    assert (record.dim_X, record.c1_X) == (dim_X, c1_X)
    ctx = context_for(dynkin_type, rank, variant)
    assert check_record(record, ctx) == []


def test_lookup_renders_rank_placeholders():
    record = lookup("C", 4, "qm")
    assert record.variant == "quasi-minuscule"
    assert record.X_name == "IGr(2,8)"
    assert record.jordan_rank == 4
    assert record.h1_Y_TY == 1


def test_simply_laced_lookup_is_adjoint():
    record = lookup("d", 4, "quasi-minuscule")
    assert record.dynkin_type == "D" and record.variant == "adjoint"


def test_exceptional_rank_map():
    record = lookup("E", 7, "adjoint")
    assert record.X_name == "E7/P1"
    assert record.dim_X == 33


@pytest.mark.parametrize("dynkin_type,rank,variant", [("H", 3, "adjoint"), ("D", 3, "adjoint"), ("B", 3, "spinor")])
def test_lookup_failures(dynkin_type, rank, variant):
    with pytest.raises(CatalogLookupError):
        lookup(dynkin_type, rank, variant)


def test_check_record_reports_mismatch(g2_adjoint):
    record = lookup("G", 2, "adjoint").model_copy(update={"dim_X": 6})
    mismatches = check_record(record, g2_adjoint)
    assert len(mismatches) == 1 and "dim X" in mismatches[0]


def test_jordan_rank_controls_h1():
    for row in jordan_table(5):
        assert row.h1_Y_TY == max(0, row.jordan_rank - 3)
    with pytest.raises(ValidationError):
        JordanRow(jordan_algebra="S5", big_ambient_name="v2(P4)", X_name="v2(Q3)",
                  aut0_Y_name="1", jordan_rank=5, h1_Y_TY=0)
    with pytest.raises(ValidationError):
        VarietyRecord(dynkin_type="K", rank=2, variant="adjoint", weight_label="w1",
                      X_name="?", parabolic_label="P1")


def test_supported_triples_and_document():
    triples = supported_triples(3)
    assert ("G", 2, "adjoint") in triples
    assert ("F", 4, "adjoint") in triples
    assert ("E", 8, "adjoint") in triples
    assert ("A", 4, "adjoint") not in triples
    assert ("G", 3, "adjoint") not in triples
    document = catalog_document(3)
    assert len(document["varieties"]) == len(triples)
    assert len(document["jordan"]) == len(load_catalog()["jordan"])


def test_catalog_document_at_default_rank():
    document = catalog_document(4)
    listed = {(r["dynkin_type"], r["rank"], r["variant"]) for r in document["varieties"]}
    assert ("F", 4, "adjoint") in listed
    assert ("F", 4, "quasi-minuscule") in listed
    assert ("G", 2, "adjoint") in listed
    assert ("A", 4, "adjoint") in listed
    assert not any(t in ("F", "G") and rank != {"F": 4, "G": 2}[t] for t, rank, _ in listed)


def test_fixed_rank_family_rejects_other_ranks():
    with pytest.raises(CatalogLookupError):
        lookup("G", 3, "adjoint")
