"""JSON and CSV encodings shared by all modules.

complex -> [re, im]; matrix -> row-major list of rows of complex;
group element -> {"n": 2|3, "mat": [[...]]}.
"""
from __future__ import annotations

import csv
import io
import json
from typing import Any, Iterable

import numpy as np


def complex_to_json(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def complex_from_json(v) -> complex:
    re, im = v
    return complex(re, im)


def matrix_to_json(a: np.ndarray) -> list[list[list[float]]]:
    return [[complex_to_json(z) for z in row] for row in np.asarray(a)]


def matrix_from_json(rows) -> np.ndarray:
    return np.array([[complex_from_json(z) for z in row] for row in rows], dtype=complex)


def element_to_json(a: np.ndarray) -> dict[str, Any]:
    return {"n": int(np.asarray(a).shape[0]), "mat": matrix_to_json(a)}


def element_from_json(obj) -> np.ndarray:
    mat = matrix_from_json(obj["mat"])
    if mat.shape != (obj["n"], obj["n"]):
        raise ValueError("matrix shape does not match n")
    return mat


def _default(obj):
    if isinstance(obj, np.generic):
        return obj.item()
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(obj: Any) -> str:
    """Deterministic JSON text (fixed key order, repr floats)."""
    return json.dumps(obj, indent=None, separators=(",", ":"), allow_nan=True, default=_default)


def flatten(obj: Any, prefix: str = "") -> dict[str, Any]:
    """Flatten nested dicts/lists into dotted column names for CSV rows.

    A two-float list is treated as a complex number and split into
    ``<name>.re`` / ``<name>.im``.
    """
    out: dict[str, Any] = {}
    if isinstance(obj, dict):
        for k, v in obj.items():
            out.update(flatten(v, f"{prefix}.{k}" if prefix else str(k)))
    elif isinstance(obj, (list, tuple)):
        if len(obj) == 2 and all(isinstance(x, (float, np.floating)) for x in obj):
            out[f"{prefix}.re"], out[f"{prefix}.im"] = obj
        else:
            for i, v in enumerate(obj):
                out.update(flatten(v, f"{prefix}.{i}" if prefix else str(i)))
    else:
        out[prefix or "value"] = obj.item() if isinstance(obj, np.generic) else obj
    return out


def to_csv(rows: Iterable[dict[str, Any]]) -> str:
    flat = [flatten(r) for r in rows]
    header: list[str] = []
    for row in flat:
        for key in row:
            if key not in header:
                header.append(key)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=header, lineterminator="\n")
    writer.writeheader()
    for row in flat:
        writer.writerow({k: repr(v) if isinstance(v, float) else v for k, v in row.items()})
    return buf.getvalue()
