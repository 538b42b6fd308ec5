"""Static metadata for adjoint and quasi-minuscule varieties, cross-checked against computed data."""
import logging
import os
import re
from typing import Any, Dict, List, Optional

import yaml
from cachetools import cached, LRUCache
from sympy import Symbol, sympify

from core.errors import CatalogLookupError, ConsistencyError, UnsupportedContextError
from core.poset import VarietyContext, canonical_variant, context_for
from core.rootsys import build_root_system
from core.state import JordanRow, VarietyRecord

logger = logging.getLogger(__name__)

CATALOG_PATH = os.path.join(os.path.dirname(__file__), "data", "catalog.yaml")
PLACEHOLDER = re.compile(r"\{([^}]*)\}")
n = Symbol("n")


@cached(cache=LRUCache(maxsize=4))
def load_catalog(path: str = CATALOG_PATH) -> Dict[str, Any]:
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except (OSError, yaml.YAMLError) as e:
        logger.error(f"Failed to load catalog {path}: {str(e)}")
        raise CatalogLookupError(f"Catalog unavailable: {path}")
    logger.debug(f"Loaded {len(data.get('families', []))} catalog families from {path}")
    return data


def _evaluate(expression: Optional[str], rank: int) -> Optional[int]:
    if expression is None:
        return None
    value = sympify(str(expression)).subs(n, rank)
    if not value.is_Integer:
        raise ConsistencyError(f"Catalog expression {expression!r} is not an integer at n = {rank}")
    return int(value)


def _render(template: Optional[str], rank: int) -> Optional[str]:
    if template is None:
        return None
    return PLACEHOLDER.sub(lambda m: str(sympify(m.group(1)).subs(n, rank)), str(template))


def _family(dynkin_type: str, variant: str, rank: int) -> Dict[str, Any]:
    for family in load_catalog()["families"]:
        if family["dynkin_type"] != dynkin_type or family["variant"] != variant:
            continue
        if "ranks" in family:
            if rank not in family["ranks"]:
                break
            merged = {k: v for k, v in family.items() if k != "ranks"}
            merged.update(family["ranks"][rank])
            return merged
        if family.get("min_rank", 1) <= rank <= family.get("max_rank", rank):
            return family
    raise CatalogLookupError(f"No catalog entry for ({dynkin_type}, {rank}, {variant})")


def lookup(dynkin_type: str, rank: int, variant: str) -> VarietyRecord:
    """Catalog record for a supported triple, with dim X and c1(X) checked against the poset"""
    dynkin_type = dynkin_type.upper()
    try:
        datum = build_root_system(dynkin_type, rank)
        variant = canonical_variant(datum, variant)
    except UnsupportedContextError as e:
        raise CatalogLookupError(str(e))
    family = _family(dynkin_type, variant, rank)
    record = VarietyRecord(
        dynkin_type=dynkin_type,
        rank=rank,
        variant=variant,
        weight_label=_render(family["weight_label"], rank),
        X_name=_render(family["X_name"], rank),
        parabolic_label=_render(family["parabolic_label"], rank),
        aut0_Y_name=_render(family.get("aut0_Y_name"), rank),
        h1_Y_TY=_evaluate(family.get("h1_Y_TY"), rank),
        jordan_algebra=_render(family.get("jordan_algebra"), rank),
        jordan_rank=_evaluate(family.get("jordan_rank"), rank),
        big_ambient_name=_render(family.get("big_ambient_name"), rank),
        dim_X=_evaluate(family.get("dim_X"), rank),
        c1_X=_evaluate(family.get("c1_X"), rank),
    )
    mismatches = check_record(record, context_for(dynkin_type, rank, variant))
    if mismatches:
        raise ConsistencyError(f"Catalog disagrees with computed data: {'; '.join(mismatches)}")
    return record


def check_record(record: VarietyRecord, ctx: VarietyContext) -> List[str]:
    mismatches = []
    if record.dim_X is not None and record.dim_X != ctx.dim_X:
        mismatches.append(f"{ctx.label}: dim X = {ctx.dim_X}, catalog says {record.dim_X}")
    if record.c1_X is not None and record.c1_X != ctx.c1_X:
        mismatches.append(f"{ctx.label}: c1(X) = {ctx.c1_X}, catalog says {record.c1_X}")
    return mismatches


def jordan_table(rank: int = 4) -> List[JordanRow]:
    """Rows of the Jordan-algebra table instantiated at n = rank"""
    rows = []
    for row in load_catalog()["jordan"]:
        rows.append(JordanRow(
            jordan_algebra=_render(row["jordan_algebra"], rank),
            big_ambient_name=_render(row["big_ambient_name"], rank),
            X_name=_render(row["X_name"], rank),
            aut0_Y_name=_render(row["aut0_Y_name"], rank),
            jordan_rank=_evaluate(row["jordan_rank"], rank),
            h1_Y_TY=_evaluate(row["h1_Y_TY"], rank),
        ))
    return rows


def supported_triples(max_rank: int = 4) -> List[tuple]:
    """Catalog triples up to max_rank; families with a fixed rank (E, F, G) are always listed"""
    triples = []
    for family in load_catalog()["families"]:
        if "ranks" in family:
            ranks = sorted(family["ranks"])
        else:
            ranks = range(family.get("min_rank", 1), family.get("max_rank", max_rank) + 1)
        for rank in ranks:
            triples.append((family["dynkin_type"], rank, family["variant"]))
    return triples


def all_records(max_rank: int = 4) -> List[VarietyRecord]:
    return [lookup(*triple) for triple in supported_triples(max_rank)]


def catalog_document(max_rank: int = 4) -> Dict[str, Any]:
    return {
        "varieties": [r.model_dump() for r in all_records(max_rank)],
        "jordan": [r.model_dump() for r in jordan_table(max_rank)],
    }
