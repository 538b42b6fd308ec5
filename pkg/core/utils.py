import os
import re
import logging
from typing import Any, Dict, Sequence

import orjson
from sympy import Basic, Rational, expand, sstr

logger = logging.getLogger(__name__)

JSON_OPTIONS = orjson.OPT_SORT_KEYS | orjson.OPT_INDENT_2


def to_rational(value: Any) -> Rational:
    """Convert ints, sympy numbers and QQ domain elements to a sympy Rational"""
    if isinstance(value, Basic):
        return value
    if hasattr(value, "numerator") and hasattr(value, "denominator"):
        return Rational(int(value.numerator), int(value.denominator))
    return Rational(value)


def fraction_str(value: Any) -> str:
    """Exact rational as "p/q", or "p" when integral"""
    r = to_rational(value)
    if not r.is_Rational:
        raise TypeError(f"Not a rational number: {value!r}")
    if r.q == 1:
        return str(r.p)
    return f"{r.p}/{r.q}"


def expr_str(value: Any) -> str:
    """Canonical string for a polynomial expression in the quantum parameters"""
    value = to_rational(value)
    if value.is_Rational:
        return fraction_str(value)
    return sstr(expand(value), order="grlex")


def root_label(root: Sequence[int]) -> str:
    """Coordinate string of a root, e.g. (3, 2) -> '3a1+2a2', (0, -1) -> '-a2'"""
    parts = []
    for index, coeff in enumerate(root, start=1):
        if coeff == 0:
            continue
        sign = "-" if coeff < 0 else "+"
        magnitude = "" if abs(coeff) == 1 else str(abs(coeff))
        parts.append(f"{sign}{magnitude}a{index}")
    if not parts:
        return "0"
    label = "".join(parts)
    return label[1:] if label.startswith("+") else label


def parse_root_label(label: str, rank: int) -> tuple:
    """Inverse of root_label"""
    coords = [0] * rank
    text = label.replace(" ", "")
    if not re.fullmatch(r"([+-]?\d*a\d+)+", text):
        raise ValueError(f"Malformed root label: {label!r}")
    for sign, magnitude, index in re.findall(r"([+-]?)(\d*)a(\d+)", text):
        position = int(index) - 1
        if not 0 <= position < rank:
            raise ValueError(f"Root label {label!r} refers to a simple root outside rank {rank}")
        value = int(magnitude) if magnitude else 1
        coords[position] += -value if sign == "-" else value
    return tuple(coords)


def json_dumps(data: Any) -> str:
    """Deterministic JSON (sorted keys, two-space indent)"""
    try:
        return orjson.dumps(data, option=JSON_OPTIONS).decode("utf-8")
    except TypeError as e:
        logger.error(f"Failed to serialize JSON: {str(e)}")
        raise


def versioned(payload: Dict[str, Any], schema_version: int) -> Dict[str, Any]:
    """Attach the schema version to a top-level document"""
    document = dict(payload)
    document["schema_version"] = schema_version
    return document


def sanitize_filename(filename: str) -> str:
    """Sanitize filename for safe file operations"""
    return re.sub(r'[^a-zA-Z0-9_.-]', '_', filename.lower().replace(' ', '_'))


def ensure_dir_exists(directory: str) -> bool:
    """Ensure directory exists, create if it doesn't"""
    try:
        os.makedirs(directory, exist_ok=True)
        return True
    except OSError as e:
        logger.error(f"Failed to create directory {directory}: {str(e)}")
        return False
