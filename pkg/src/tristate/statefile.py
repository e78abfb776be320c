"""JSON state files.

Layout::

    {"dims": [d1, d2, d3], "matrix": [[re, im], ...]}

``matrix`` is row-major with ``(d1*d2*d3)**2`` entries in lexicographic
basis order, party A slowest.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .hilbert import Operator, as_dims

HERMITIAN_LOAD_TOL = 1e-10


class StateFileError(ValueError):
    pass


def state_to_dict(op: Operator) -> dict:
    flat = op.matrix.ravel()
    return {
        "dims": [int(d) for d in op.dims],
        "matrix": [[float(z.real), float(z.imag)] for z in flat],
    }


def save_state(op: Operator, path) -> None:
    Path(path).write_text(json.dumps(state_to_dict(op)) + "\n", encoding="utf-8")


def state_from_dict(data) -> Operator:
    if not isinstance(data, dict) or "dims" not in data or "matrix" not in data:
        raise StateFileError("state file must be an object with 'dims' and 'matrix'")
    try:
        dims = as_dims(data["dims"])
    except (TypeError, ValueError) as exc:
        raise StateFileError(f"bad dims: {exc}") from None
    entries = data["matrix"]
    n = dims.total
    if not isinstance(entries, list) or len(entries) != n * n:
        got = len(entries) if isinstance(entries, list) else type(entries).__name__
        raise StateFileError(f"dimension mismatch: dims {list(dims)} need {n * n} matrix entries, got {got}")
    try:
        arr = np.array(entries, dtype=float)
    except (TypeError, ValueError):
        raise StateFileError("matrix entries must be [re, im] number pairs") from None
    if arr.shape != (n * n, 2):
        raise StateFileError("matrix entries must be [re, im] number pairs")
    if not np.all(np.isfinite(arr)):
        raise StateFileError("matrix has non-finite entries")
    M = (arr[:, 0] + 1j * arr[:, 1]).reshape(n, n)
    asym = float(np.max(np.abs(M - M.conj().T)))
    if asym > HERMITIAN_LOAD_TOL:
        raise StateFileError(f"matrix is not Hermitian (max |M - M^H| = {asym:.3e})")
    return Operator(dims, M)


def load_state(path) -> Operator:
    raw = Path(path).read_bytes()
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise StateFileError(f"parse error at byte {exc.start}: invalid UTF-8") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        offset = len(text[: exc.pos].encode("utf-8"))
        raise StateFileError(f"parse error at byte {offset}: {exc.msg}") from None
    return state_from_dict(data)
