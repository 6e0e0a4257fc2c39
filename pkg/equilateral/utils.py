# equilateral/utils.py
import csv
import hashlib
import io
import json
import logging
import math
from typing import Any, Dict, Iterable, List, Sequence

import numpy as np

from equilateral.const import INF_TAG
from equilateral.errors import InputFormatError
from equilateral.space import LpLeaf, LqSum, SpaceSpec, spec_from_dict, spec_to_dict

# Set up logging
logger = logging.getLogger(__name__)


def stable_seed(*parts: Any) -> int:
    """
    Derive a reproducible 63-bit seed from arbitrary JSON-like parts.

    Arrays are hashed through their float repr so identical inputs always give
    the same generator, independent of process or platform.
    """
    digest = hashlib.sha256()
    for part in parts:
        digest.update(_canonical(part).encode())
        digest.update(b"\x00")
    return int.from_bytes(digest.digest()[:8], "big") >> 1


def _canonical(part: Any) -> str:
    if isinstance(part, (LpLeaf, LqSum)):
        return json.dumps(spec_to_dict(part), sort_keys=True)
    if isinstance(part, np.ndarray):
        return json.dumps(to_jsonable(part.tolist()))
    return json.dumps(to_jsonable(part), sort_keys=True)


def to_jsonable(value: Any) -> Any:
    """Convert numpy containers and scalars into plain JSON types (inf becomes "inf")."""
    if isinstance(value, dict):
        return {str(key): to_jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(item) for item in value]
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isinf(value):
            return INF_TAG if value > 0 else f"-{INF_TAG}"
        return value
    return value


def dumps(document: Dict[str, Any]) -> str:
    """JSON text with shortest round-trip float repr, so equal inputs give identical bytes."""
    return json.dumps(to_jsonable(document), indent=2, allow_nan=False) + "\n"


def read_json(path: str) -> Any:
    """Read a JSON file; OSError propagates, malformed JSON raises InputFormatError."""
    with open(path, "r", encoding="utf-8") as f:
        text = f.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        logger.error(f"Invalid JSON in {path}: {e}")
        raise InputFormatError(f"Invalid JSON in {path}: {e}") from e


def load_space(data: Any) -> SpaceSpec:
    """Accept either a space object or a construct document carrying a "space" field."""
    if isinstance(data, dict) and "space" in data:
        data = data["space"]
    return spec_from_dict(data)


def load_points(data: Any) -> List[List[float]]:
    """Accept either a list of points or a document with a "points" field."""
    if isinstance(data, dict):
        if "points" not in data:
            raise InputFormatError("Points document has no 'points' field")
        data = data["points"]
    if not isinstance(data, list) or not all(isinstance(row, list) for row in data):
        raise InputFormatError("Points must be a list of coordinate lists")
    rows = []
    for row in data:
        try:
            rows.append([float(value) for value in row])
        except (TypeError, ValueError) as e:
            raise InputFormatError(f"Non-numeric coordinate in point {row!r}") from e
    return rows


def format_csv(records: Iterable[Dict[str, Any]], columns: Sequence[str]) -> str:
    """CSV text with booleans as true/false and missing values left empty."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for record in records:
        row = []
        for column in columns:
            value = record.get(column)
            if value is None:
                row.append("")
            elif isinstance(value, (bool, np.bool_)):
                row.append("true" if value else "false")
            elif isinstance(value, float):
                row.append(repr(value))
            else:
                row.append(str(value))
        writer.writerow(row)
    return buffer.getvalue()
