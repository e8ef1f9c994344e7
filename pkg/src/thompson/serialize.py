"""Tagged JSON round-trips for PL maps, graphs and growth tables.

``dumps`` is canonical (sorted keys, fixed separators), so
``dumps(loads(dumps(x))) == dumps(x)`` byte for byte.
"""
from __future__ import annotations

import json
import os
import tempfile

from . import analysis, element, graphs
from .element import SchemaError


def to_obj(x) -> dict:
    if isinstance(x, element.PLMap):
        return {"type": "plmap", "data": element.to_json_obj(x)}
    if isinstance(x, graphs.RootedLabelledGraph):
        return {"type": "graph", "data": graphs.to_json_obj(x)}
    if isinstance(x, analysis.GrowthTable):
        return {"type": "table", "data": analysis.table_to_json_obj(x)}
    raise TypeError(f"cannot serialize {type(x).__name__}")


def from_obj(obj):
    if not isinstance(obj, dict) or "type" not in obj or "data" not in obj:
        raise SchemaError("$", "expected {'type': ..., 'data': ...}")
    kind = obj["type"]
    if kind == "plmap":
        return element.from_json_obj(obj["data"], "$.data")
    if kind == "graph":
        return graphs.from_json_obj(obj["data"])
    if kind == "table":
        return analysis.table_from_json_obj(obj["data"])
    raise SchemaError("$.type", f"unknown type {kind!r}")


def dumps(x) -> bytes:
    return json.dumps(to_obj(x), sort_keys=True, separators=(",", ":")).encode()


def loads(data: bytes | str):
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as e:
        raise SchemaError("$", f"invalid JSON: {e}") from None
    return from_obj(obj)


def write_atomic(path: str, text: str):
    """Write via a temporary file in the same directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
