"""Per-cut positive-partial-transpose checks and PPT threshold search."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .hilbert import CUTS, Cut, Operator, PartyLike, as_party, partial_transpose
from .linalg import DEFAULT_RANK_TOL, eig_hermitian

DEFAULT_PSD_TOL = 1e-10


@dataclass
class CutVerdict:
    cut: Cut
    lmin: float
    ppt: bool
    pt_rank: int
    pt_equals_state: bool
    spectrum: np.ndarray


def _rank_from_spectrum(w: np.ndarray, tol_rel: float) -> int:
    scale = max(float(np.max(np.abs(w))), 1.0) if w.size else 1.0
    return int(np.sum(w > tol_rel * scale))


def pt_min_eigenvalue(op: Operator, party: PartyLike) -> float:
    return float(eig_hermitian(partial_transpose(op, party).matrix).eigenvalues[0])


def ppt_report(op: Operator, tol: float = DEFAULT_PSD_TOL,
               rank_tol: float = DEFAULT_RANK_TOL) -> dict[Cut, CutVerdict]:
    """Partial-transpose spectrum on every cut, in the order A|BC, B|CA, C|AB.

    A cut is PPT when the smallest eigenvalue of the partial transpose is
    at least ``-tol``.
    """
    out = {}
    for cut in CUTS:
        T = partial_transpose(op, cut.party).matrix
        w = eig_hermitian(T).eigenvalues
        out[cut] = CutVerdict(
            cut=cut,
            lmin=float(w[0]),
            ppt=bool(w[0] >= -tol),
            pt_rank=_rank_from_spectrum(w, rank_tol),
            pt_equals_state=bool(np.max(np.abs(T - op.matrix)) <= 1e-12),
            spectrum=w,
        )
    return out


@dataclass
class ThresholdResult:
    party: str
    root: Optional[float]
    bracket: Optional[tuple[float, float]]
    iterations: int
    note: str = ""


def ppt_threshold(
    family: Callable[[float], Operator],
    party: PartyLike,
    interval: tuple[float, float] = (0.0, 1.0),
    tol_b: float = 1e-10,
    tol_psd: float = DEFAULT_PSD_TOL,
    scan_points: int = 101,
) -> ThresholdResult:
    """Locate the parameter where ``family(b)`` becomes PPT on ``party``.

    A coarse scan classifies each grid point as PSD (``lmin >= -tol_psd``)
    or not; every flip between neighbours brackets a boundary.  The
    largest bracket is refined by bisection to width ``tol_b``.  When the
    verdict never flips, ``root`` is ``None``.
    """
    p = as_party(party)
    lo, hi = map(float, interval)
    if not lo < hi:
        raise ValueError(f"empty interval [{lo}, {hi}]")

    def psd(b: float) -> bool:
        return pt_min_eigenvalue(family(b), p) >= -tol_psd

    grid = np.linspace(lo, hi, scan_points)
    flags = [psd(float(b)) for b in grid]
    brackets = [(float(grid[i]), float(grid[i + 1])) for i in range(len(grid) - 1)
                if flags[i] != flags[i + 1]]
    if not brackets:
        state = "PPT" if flags[0] else "NPT"
        return ThresholdResult(p.name, None, None, 0, f"no sign change: {state} on the whole interval")

    a, c = brackets[-1]
    fa = psd(a)
    iterations = 0
    while c - a > tol_b:
        m = 0.5 * (a + c)
        if psd(m) == fa:
            a = m
        else:
            c = m
        iterations += 1
    note = "" if len(brackets) == 1 else f"{len(brackets)} sign changes; largest root reported"
    return ThresholdResult(p.name, 0.5 * (a + c), brackets[-1], iterations, note)
