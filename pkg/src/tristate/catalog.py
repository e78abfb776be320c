"""Named states and product sets exposed through the command line."""

from __future__ import annotations

import difflib
from dataclasses import dataclass
from typing import Callable, Optional

from . import family, upb


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    kind: str  # "state" or "product-set"
    dims: tuple[int, int, int]
    description: str
    builder: Callable
    parametric: bool = False

    def listing(self) -> str:
        dims = "(" + ",".join(str(d) for d in self.dims) + ")"
        head = f"{self.id} {dims}"
        if self.parametric:
            head += ", parameter b"
        return f"{head:<34} {self.kind:<12} {self.description}"


_ENTRIES = [
    CatalogEntry("shifts", "product-set", (2, 2, 2), "Shifts UPB, 4 members", upb.shifts_upb),
    CatalogEntry("rho-su", "state", (2, 2, 2), "normalised projector onto the Shifts complement (rank 4)", upb.rho_su),
    CatalogEntry("topb3", "product-set", (3, 3, 3), "twisted orthogonal product basis, 27 members", upb.topb3),
    CatalogEntry("upb3", "product-set", (3, 3, 3), "UPB carved from topb3, 19 members", upb.upb3),
    CatalogEntry("rho3-8", "state", (3, 3, 3), "normalised projector onto the upb3 complement (rank 8)", upb.rho3_8),
    CatalogEntry("topb4", "product-set", (4, 4, 4), "twisted orthogonal product basis, 64 members", upb.topb4),
    CatalogEntry("upb4", "product-set", (4, 4, 4), "UPB carved from topb4, 56 members", upb.upb4),
    CatalogEntry("rho4-8", "state", (4, 4, 4), "normalised projector onto the upb4 complement (rank 8)", upb.rho4_8),
    CatalogEntry("chi", "state", (2, 2, 2), "rank-4 seed state, NPT across A|BC", family.chi),
    CatalogEntry("sigma", "state", (2, 2, 2), "chi mixed with the phi(b) noise term", family.sigma_b, True),
    CatalogEntry("eta", "state", (2, 2, 2), "cyclic party average of sigma(b)", family.eta_b, True),
    CatalogEntry("rho2", "state", (2, 2, 2), "rank-6 normalised correction of eta(b)", family.rho2_b, True),
]

CATALOG: dict[str, CatalogEntry] = {e.id: e for e in _ENTRIES}


class UnknownEntry(KeyError):
    def __init__(self, name: str, suggestion: Optional[str]):
        self.name = name
        self.suggestion = suggestion
        msg = f"unknown catalog id {name!r}"
        if suggestion:
            msg += f"; did you mean {suggestion!r}?"
        super().__init__(msg)

    def __str__(self) -> str:
        return self.args[0]


def lookup(name: str) -> CatalogEntry:
    try:
        return CATALOG[name]
    except KeyError:
        close = difflib.get_close_matches(name, list(CATALOG), n=1, cutoff=0.4)
        raise UnknownEntry(name, close[0] if close else None) from None


def listing() -> list[str]:
    return [e.listing() for e in _ENTRIES]
