"""``tristate`` command line.

Exit codes: 0 on success, 2 on invalid input, 3 on numerical failure.
The environment variable ``TRISTATE_TOL`` overrides the default PSD
tolerance; ``--tol`` overrides both.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import family, upb
from .catalog import CATALOG, CatalogEntry, UnknownEntry, listing, lookup
from .hilbert import CUTS, Cut, Operator
from .linalg import NumericalError
from .ppt import DEFAULT_PSD_TOL, ppt_threshold, pt_min_eigenvalue
from .range_criterion import range_criterion_AB_C
from .report import ClassificationReport, classify
from .statefile import StateFileError, load_state, save_state

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NUMERIC = 3


class UsageError(ValueError):
    pass


def default_tol() -> float:
    raw = os.environ.get("TRISTATE_TOL")
    if raw is None:
        return DEFAULT_PSD_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise UsageError(f"TRISTATE_TOL is not a number: {raw!r}") from None
    if not tol >= 0:
        raise UsageError(f"TRISTATE_TOL must be non-negative, got {raw!r}")
    return tol


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def build_state(entry: CatalogEntry, b: Optional[float]) -> Operator:
    if entry.kind != "state":
        raise UsageError(f"{entry.id!r} is a product set, not a state; try `tristate upb verify {entry.id}`")
    if entry.parametric:
        if b is None:
            raise UsageError(f"{entry.id!r} needs a parameter: pass --b with 0 <= b <= 1")
        return entry.builder(b)
    if b is not None:
        raise UsageError(f"{entry.id!r} takes no parameter b")
    return entry.builder()


def _upb_provenance(set_id: str, pset) -> list[str]:
    verdict = upb.verify_unextendible(pset)
    status = "unextendible" if verdict.is_unextendible else "EXTENDIBLE"
    notes = [f"{set_id}: {len(pset)} members, orthogonal={verdict.is_orthogonal}, {status}, "
             f"complement dim {verdict.complement_dim}"]
    return notes


def catalog_report(entry: CatalogEntry, b: Optional[float], tol: float) -> ClassificationReport:
    """Report for a catalog state, with any inseparability argument attached."""
    op = build_state(entry, b)
    report = classify(op, tol)
    prov: list[str] = []
    excluded = False

    if entry.id in ("rho3-8", "rho4-8"):
        set_id = "upb3" if entry.id == "rho3-8" else "upb4"
        prov += _upb_provenance(set_id, upb.upb3() if set_id == "upb3" else upb.upb4())
        prov.append(
            "inseparability proven via UPB deficit argument: the rank-8 complement admits fewer than 8 "
            "mutually orthogonal A|BC-product states (known bound for this construction; "
            "maximality not re-derived here)"
        )
        if entry.id == "rho3-8":
            quad = upb.biseparable_quad3()
            U = upb.upb3().vectors()
            worst = max(float(np.max(np.abs(U.conj() @ q.amplitudes))) for q in quad)
            prov.append(f"four A|BC-product states orthogonal to upb3 verified (max overlap {worst:.1e})")
        excluded = True
    elif entry.id == "rho2":
        v = range_criterion_AB_C(op, witness=family.witness_u(b))
        if not v.applicable:
            prov.append(f"range criterion across AB|C skipped: {v.note}")
        elif v.violated:
            prov.append(f"inseparability proven via range criterion across AB|C "
                        f"(witness residual {v.witness_residual:.3e})")
            excluded = True
        else:
            prov.append(f"range criterion across AB|C inconclusive: witness residual {v.witness_residual:.3e}, "
                        f"conjugated product span dim {v.sampled_span_dim} of {v.pt_range_dim}")

    npt = [c.value for c in CUTS if not report.cuts[c].ppt]
    if npt:
        prov.append("inseparability proven via NPT across " + ", ".join(npt))
        excluded = True

    report.b_int_excluded = excluded
    report.provenance = prov
    return report


def file_report(path: str, tol: float) -> ClassificationReport:
    op = load_state(path)
    report = classify(op, tol)
    npt = [c.value for c in CUTS if not report.cuts[c].ppt]
    if npt:
        report.b_int_excluded = True
        report.provenance = ["inseparability proven via NPT across " + ", ".join(npt)]
    return report


def resolve_entry(name: str) -> Optional[CatalogEntry]:
    if name in CATALOG:
        return CATALOG[name]
    if Path(name).exists():
        return None
    return lookup(name)


# --- commands ----------------------------------------------------------------


def cmd_catalog(args) -> int:
    for line in listing():
        print(line)
    return EXIT_OK


def cmd_check(args) -> int:
    tol = args.tol if args.tol is not None else default_tol()
    entry = resolve_entry(args.state)
    if entry is None:
        if args.b is not None:
            raise UsageError("--b applies only to catalog families")
        report = file_report(args.state, tol)
    else:
        report = catalog_report(entry, args.b, tol)
    if args.format == "json":
        print(json.dumps(report.to_dict(), indent=2))
    else:
        print(report.render())
    return EXIT_OK


def _parametric(name: str) -> CatalogEntry:
    entry = lookup(name)
    if not entry.parametric:
        raise UsageError(f"{name!r} is not a parameterised family; choose one of "
                         + ", ".join(e.id for e in CATALOG.values() if e.parametric))
    return entry


def sweep_rows(entry: CatalogEntry, start: float, stop: float, steps: int) -> list[tuple[float, ...]]:
    if steps < 1:
        raise UsageError("empty range: --steps must be at least 1")
    if start > stop:
        raise UsageError(f"empty range: --from {start} exceeds --to {stop}")
    if not (0.0 <= start and stop <= 1.0):
        raise UsageError("b must lie in [0, 1]")
    bs = np.linspace(start, stop, steps) if steps > 1 else np.array([start])
    rows = []
    for b in bs:
        op = entry.builder(float(b))
        rows.append((float(b),) + tuple(pt_min_eigenvalue(op, c.party) for c in CUTS))
    return rows


def cmd_sweep(args) -> int:
    entry = _parametric(args.state)
    rows = sweep_rows(entry, args.start, args.stop, args.steps)
    out = open(args.output, "w", newline="") if args.output else sys.stdout
    try:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["b", "lmin_A", "lmin_B", "lmin_C"])
        for row in rows:
            w.writerow([_fmt(x) for x in row])
    finally:
        if args.output:
            out.close()
    return EXIT_OK


def cmd_threshold(args) -> int:
    entry = _parametric(args.state)
    party = args.party.upper()
    if party not in ("A", "B", "C"):
        raise UsageError(f"invalid party {args.party!r}; expected A, B or C")
    tol_b = args.tol if args.tol is not None else 1e-10
    res = ppt_threshold(entry.builder, party, (args.start, args.stop), tol_b=tol_b, tol_psd=default_tol())
    if res.root is None:
        print(f"{entry.id} party {party}: {res.note}")
    else:
        print(f"{entry.id} party {party}: b* = {_fmt(res.root)}"
              + (f"  ({res.note})" if res.note else ""))
    return EXIT_OK


def cmd_upb_verify(args) -> int:
    entry = lookup(args.set)
    if entry.kind != "product-set":
        raise UsageError(f"{entry.id!r} is a state, not a product set")
    pset = entry.builder()
    v = upb.verify_unextendible(pset)
    if args.format == "json":
        out = {
            "set": entry.id,
            "dims": list(pset.dims),
            "members": len(pset),
            "is_orthogonal": v.is_orthogonal,
            "max_offdiag": v.max_offdiag,
            "is_unextendible": v.is_unextendible,
            "complement_dim": v.complement_dim,
            "witness": None if v.witness is None else list(v.witness["assignment"]),
        }
        print(json.dumps(out, indent=2))
        return EXIT_OK
    dims = "(" + ",".join(map(str, pset.dims)) + ")"
    print(f"set             {entry.id} {dims}, {len(pset)} members")
    print(f"orthogonal      {'yes' if v.is_orthogonal else 'no'} (max |G - I| = {v.max_offdiag:.1e})")
    print(f"unextendible    {'yes' if v.is_unextendible else 'no'}")
    print(f"complement dim  {v.complement_dim}")
    if v.witness is not None:
        print("extension       assignment " + "".join(v.witness["assignment"]))
    return EXIT_OK


def cmd_export(args) -> int:
    entry = lookup(args.state)
    save_state(build_state(entry, args.b), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tristate",
        description="PPT and separability checks for tripartite states built from product bases.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", help="list catalog states and product sets")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("check", help="classify a catalog state or a state file")
    p.add_argument("state", help="catalog id or path to a JSON state file")
    p.add_argument("--b", type=float, default=None, help="family parameter in [0, 1]")
    p.add_argument("--tol", type=float, default=None, help="PSD tolerance (default 1e-10)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("sweep", help="CSV of partial-transpose minimum eigenvalues over b")
    p.add_argument("state")
    p.add_argument("--from", dest="start", type=float, default=0.0)
    p.add_argument("--to", dest="stop", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=101)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("threshold", help="bisect for the PPT boundary in b")
    p.add_argument("state")
    p.add_argument("--party", required=True)
    p.add_argument("--tol", type=float, default=None, help="bracket width in b (default 1e-10)")
    p.add_argument("--from", dest="start", type=float, default=0.0)
    p.add_argument("--to", dest="stop", type=float, default=1.0)
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("upb", help="product-basis tools")
    upb_sub = p.add_subparsers(dest="upb_command", required=True)
    q = upb_sub.add_parser("verify", help="check orthogonality and unextendibility")
    q.add_argument("set")
    q.add_argument("--format", choices=("text", "json"), default="text")
    q.set_defaults(func=cmd_upb_verify)

    p = sub.add_parser("export", help="write a catalog state to a JSON state file")
    p.add_argument("state")
    p.add_argument("--b", type=float, default=None)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_export)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NumericalError as exc:
        print(f"error: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (UsageError, UnknownEntry, StateFileError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
