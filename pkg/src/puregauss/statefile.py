"""Reading and writing covariance matrices as JSON state files.

Layout::

    {
      "n_modes": 2,
      "ordering": "xpxp",
      "matrix": [
        [1.0000000000000000e+00, ...],
        ...
      ]
    }

Entries are written with 17 significant digits so that a write/read round
trip is exact.
"""
from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .errors import StateFileError
from .states import TOL_SYMMETRIC, CovarianceMatrix, _as_cm

ORDERING = "xpxp"


def _fmt(x: float) -> str:
    return f"{x:.16e}"


def dumps(cm: CovarianceMatrix) -> str:
    cm = _as_cm(cm)
    rows = ",\n".join(
        "    [" + ", ".join(_fmt(float(x)) for x in row) + "]" for row in cm.matrix
    )
    return (
        "{\n"
        f'  "n_modes": {cm.n_modes},\n'
        f'  "ordering": "{ORDERING}",\n'
        '  "matrix": [\n'
        f"{rows}\n"
        "  ]\n"
        "}\n"
    )


def loads(text: str) -> CovarianceMatrix:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StateFileError("document", f"not valid JSON ({exc})") from None
    if not isinstance(doc, dict):
        raise StateFileError("document", "expected a JSON object")
    for key in ("n_modes", "ordering", "matrix"):
        if key not in doc:
            raise StateFileError(key, "missing")

    n = doc["n_modes"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise StateFileError("n_modes", f"expected a positive integer, got {n!r}")
    if doc["ordering"] != ORDERING:
        raise StateFileError("ordering", f"expected {ORDERING!r}, got {doc['ordering']!r}")

    rows = doc["matrix"]
    dim = 2 * n
    if not isinstance(rows, list) or len(rows) != dim:
        raise StateFileError("matrix", f"expected {dim} rows")
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != dim:
            raise StateFileError("matrix", f"row {i} must have {dim} entries")
        for x in row:
            if isinstance(x, bool) or not isinstance(x, (int, float)) or not math.isfinite(x):
                raise StateFileError("matrix", f"row {i} has a non-numeric entry {x!r}")
    m = np.array(rows, dtype=float)
    if np.max(np.abs(m - m.T)) > TOL_SYMMETRIC:
        raise StateFileError("matrix", "not symmetric")
    return CovarianceMatrix.from_matrix(m)


def write_state(path, cm: CovarianceMatrix) -> None:
    Path(path).write_text(dumps(cm), encoding="utf-8", newline="\n")


def read_state(path) -> CovarianceMatrix:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise StateFileError("path", str(exc)) from None
    return loads(text)
