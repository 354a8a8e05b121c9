"""File formats: density-matrix JSON and plain CSV.

Density matrices are stored as ``{"dim": 8, "re": [[...]], "im": [[...]]}``
with rows in big-endian basis order. Floats are written with 17
significant digits, enough to round-trip any double.
"""
from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .exceptions import FormatError
from .statespace import DIM, make_density


def fmt(v, digits: int = 17) -> str:
    v = float(v)
    if not math.isfinite(v):
        raise ValueError(f"cannot serialize non-finite value {v!r}")
    return f"{v:.{digits}g}"


def dumps(obj, digits: int = 17, indent: int = 2, _level: int = 0) -> str:
    """JSON text with every float printed to ``digits`` significant digits."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt(obj, digits)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, digits, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if all(isinstance(v, (int, float, np.number)) and not isinstance(v, bool) for v in seq):
            return "[" + ", ".join(dumps(v, digits) for v in seq) + "]"
        return "[\n" + ",\n".join(pad + dumps(v, digits, indent, _level + 1) for v in seq) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def density_to_dict(rho) -> dict:
    rho = np.asarray(rho, dtype=complex)
    return {"dim": DIM, "re": rho.real.tolist(), "im": rho.imag.tolist()}


def parse_density(data) -> np.ndarray:
    """Raw 8x8 complex array from the decoded JSON object; no physical validation."""
    if not isinstance(data, dict):
        raise FormatError("density JSON must be an object")
    missing = {"dim", "re", "im"} - set(data)
    if missing:
        raise FormatError(f"density JSON lacks keys {sorted(missing)}")
    if data["dim"] != DIM:
        raise FormatError(f"dim must be {DIM}, got {data['dim']!r}")
    try:
        re = np.array(data["re"], dtype=float)
        im = np.array(data["im"], dtype=float)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"matrix entries must be numbers: {exc}") from exc
    if re.shape != (DIM, DIM) or im.shape != (DIM, DIM):
        raise FormatError(f"re and im must be {DIM}x{DIM}, got {re.shape} and {im.shape}")
    return re + 1j * im


def read_density(path, atol: float = 1e-10) -> np.ndarray:
    """Load and validate a density matrix.

    Raises ``FormatError`` for unreadable or malformed files and an
    ``InvalidStateError`` subclass if the matrix is not a valid state.
    """
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    return make_density(parse_density(data), atol=atol)


def write_density(path, rho) -> None:
    Path(path).write_text(dumps(density_to_dict(rho)) + "\n")


def csv_text(header, rows, digits: int = 17) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(v if isinstance(v, str) else fmt(v, digits) for v in row))
    return "\n".join(lines) + "\n"
