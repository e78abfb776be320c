"""Classification reports: per-cut PPT evidence plus inseparability provenance.

Reports only ever say PPT, NPT, or "inseparability proven via <method>".
PPT is necessary for separability, never sufficient, so nothing here
claims a state is separable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .hilbert import CUTS, Cut, Operator
from .linalg import DEFAULT_RANK_TOL, eig_hermitian
from .ppt import DEFAULT_PSD_TOL, CutVerdict, ppt_report


class NotAStateError(ValueError):
    pass


@dataclass
class ClassificationReport:
    dims: tuple[int, int, int]
    trace: float
    lmin: float
    state_rank: int
    cuts: dict[Cut, CutVerdict]
    b_int_excluded: bool = False
    provenance: list[str] = field(default_factory=list)

    @property
    def p_int_evidence(self) -> bool:
        return all(self.cuts[c].ppt for c in CUTS)

    def to_dict(self) -> dict:
        return {
            "dims": list(self.dims),
            "trace": self.trace,
            "lmin": self.lmin,
            "state_rank": self.state_rank,
            "cuts": {
                c.name: {
                    "lmin": self.cuts[c].lmin,
                    "ppt": self.cuts[c].ppt,
                    "pt_rank": self.cuts[c].pt_rank,
                    "pt_equals_state": self.cuts[c].pt_equals_state,
                }
                for c in CUTS
            },
            "p_int_evidence": self.p_int_evidence,
            "b_int_excluded": self.b_int_excluded,
            "provenance": list(self.provenance),
        }

    def render(self) -> str:
        lines = [
            f"dims        {self.dims}",
            f"trace       {self.trace:.12g}",
            f"lmin        {self.lmin:.6e}",
            f"state rank  {self.state_rank}",
        ]
        for c in CUTS:
            v = self.cuts[c]
            flag = "PPT" if v.ppt else "NPT"
            extra = "  PT equals state" if v.pt_equals_state else ""
            lines.append(f"{c.value:<5} {flag}  lmin(PT)={v.lmin: .6e}  pt_rank={v.pt_rank}{extra}")
        lines.append("PPT on all three cuts (P^int evidence): " + ("yes" if self.p_int_evidence else "no"))
        if self.b_int_excluded:
            lines.append("excluded from B^int: yes")
        else:
            lines.append("excluded from B^int: no proof attached")
        for p in self.provenance:
            lines.append(f"  - {p}")
        return "\n".join(lines)


def classify(op: Operator, tol: float = DEFAULT_PSD_TOL, rank_tol: float = DEFAULT_RANK_TOL,
             b_int_excluded: bool = False, provenance: Optional[list[str]] = None) -> ClassificationReport:
    """Build a report for a density operator; rejects non-PSD input."""
    w = eig_hermitian(op.matrix).eigenvalues
    if w[0] < -tol:
        raise NotAStateError(f"not a state: smallest eigenvalue {w[0]:.3e} is below -{tol:g}")
    scale = max(float(np.max(np.abs(w))), 1.0)
    return ClassificationReport(
        dims=tuple(op.dims),
        trace=float(np.trace(op.matrix).real),
        lmin=float(w[0]),
        state_rank=int(np.sum(w > rank_tol * scale)),
        cuts=ppt_report(op, tol, rank_tol),
        b_int_excluded=b_int_excluded,
        provenance=list(provenance or []),
    )
