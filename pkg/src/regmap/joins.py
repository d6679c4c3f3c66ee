"""Overlap joins between region datasets and the pairwise mining report.

Two join implementations produce identical output:

- ``nested_loop_join`` pairs every same-chromosome combination and is
  the executable reference for the SQL view semantics (it evaluates the
  four-branch case analysis per pair);
- ``sweep_join`` sorts each chromosome by start and scans a bounded
  window, for the same answer in near-linear time.

A pair (a, b) is emitted when its signed bp overlap is at least
``min_bp`` and, if a bound is set, its exact centre distance is
strictly below ``max_centre_distance``. Output is ordered by
(a_id, b_id) so runs are byte-comparable.

Joins are pure functions over immutable inputs and thread-safe.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path
from typing import IO, Iterable, Sequence

from .bedio import CatalogEntry
from .intervals import (
    GenomicRegion,
    case_overlap_coords,
    centre_distance_coords,
)
from .store import RegionStore

__all__ = [
    "OverlapPair",
    "JoinFilter",
    "MiningRow",
    "nested_loop_join",
    "sweep_join",
    "count_overlapping",
    "pairwise_mining",
    "overlap_percentage",
    "write_pairs_tsv",
    "write_mining_tsv",
    "PAIRS_TSV_HEADER",
    "MINING_TSV_HEADER",
]

IdRegion = tuple[int, GenomicRegion]

PAIRS_TSV_HEADER = ("a_id", "b_id", "chrom", "bp_overlap", "centre_distance")
MINING_TSV_HEADER = (
    "assembly",
    "query_name",
    "query_factor",
    "query_cell_line",
    "query_treatment",
    "ref_name",
    "ref_factor",
    "ref_cell_line",
    "ref_treatment",
    "query_total",
    "overlapping",
    "percentage",
)


@dataclass(frozen=True, slots=True)
class OverlapPair:
    """One joined row: region ids plus both derived metrics."""

    a_id: int
    b_id: int
    chrom: str
    bp_overlap: int
    centre_distance: float


@dataclass(frozen=True, slots=True)
class JoinFilter:
    """Emission conditions: bp_overlap >= min_bp, centre distance < bound."""

    min_bp: int = 1
    max_centre_distance: float | None = None

    def __post_init__(self) -> None:
        if self.max_centre_distance is not None and self.max_centre_distance < 0:
            raise ValueError("max_centre_distance must be non-negative")


@dataclass(frozen=True, slots=True)
class MiningRow:
    """One query-vs-reference line of the pairwise overlap report."""

    assembly: str
    query_name: str
    query_factor: str
    query_cell_line: str
    query_treatment: str | None
    ref_name: str
    ref_factor: str
    ref_cell_line: str
    ref_treatment: str | None
    query_total: int
    overlapping: int
    percentage: float


def _check_unique_ids(regions: Sequence[IdRegion], label: str) -> None:
    ids = [rid for rid, _ in regions]
    if len(set(ids)) != len(ids):
        raise ValueError(f"duplicate region ids in input {label}")


def _by_chrom(regions: Sequence[IdRegion]) -> dict[str, list[tuple[int, int, int]]]:
    grouped: dict[str, list[tuple[int, int, int]]] = {}
    for rid, region in regions:
        grouped.setdefault(region.chrom, []).append((rid, region.start, region.end))
    return grouped


def nested_loop_join(
    a_regions: Sequence[IdRegion],
    b_regions: Sequence[IdRegion],
    flt: JoinFilter = JoinFilter(),
) -> list[OverlapPair]:
    """Reference join: evaluate every same-chromosome pair of A x B.

    bp overlap goes through the four-branch case analysis, exactly as
    the SQL view computes it.
    """
    _check_unique_ids(a_regions, "A")
    _check_unique_ids(b_regions, "B")
    a_by_chrom = _by_chrom(a_regions)
    b_by_chrom = _by_chrom(b_regions)
    min_bp = flt.min_bp
    max_cd = flt.max_centre_distance
    pairs: list[OverlapPair] = []
    for chrom, a_rows in a_by_chrom.items():
        b_rows = b_by_chrom.get(chrom)
        if not b_rows:
            continue
        for a_id, a_start, a_end in a_rows:
            for b_id, b_start, b_end in b_rows:
                bp = case_overlap_coords(a_start, a_end, b_start, b_end)
                if bp < min_bp:
                    continue
                cd = centre_distance_coords(a_start, a_end, b_start, b_end)
                if max_cd is not None and not cd < max_cd:
                    continue
                pairs.append(OverlapPair(a_id, b_id, chrom, bp, cd))
    pairs.sort(key=lambda p: (p.a_id, p.b_id))
    return pairs


def sweep_join(
    a_regions: Sequence[IdRegion],
    b_regions: Sequence[IdRegion],
    flt: JoinFilter = JoinFilter(),
) -> list[OverlapPair]:
    """Sorted sweep join; identical output to nested_loop_join.

    Each chromosome's B side is sorted by start and every A region
    scans only the window of B starts that could still satisfy the
    filter. A negative min_bp admits non-overlapping pairs, which is
    only a bounded window when a centre-distance bound is set; without
    one the join refuses rather than degenerate to a cross join.
    """
    min_bp = flt.min_bp
    max_cd = flt.max_centre_distance
    if min_bp < 1 and max_cd is None:
        raise ValueError(
            "unbounded non-overlap join: min_bp < 1 requires max_centre_distance"
        )
    _check_unique_ids(a_regions, "A")
    _check_unique_ids(b_regions, "B")

    # Window shift: pairs need b.start <= a.end - shift and
    # b.start >= a.start + shift - max_b_len. For min_bp >= 1 the shift
    # is min_bp itself; for gap joins it is the negated allowance,
    # never wider than the centre-distance bound.
    if min_bp >= 1:
        shift = min_bp
    else:
        shift = -min(-min_bp, math.ceil(max_cd))

    a_by_chrom = _by_chrom(a_regions)
    b_by_chrom = _by_chrom(b_regions)
    pairs: list[OverlapPair] = []
    for chrom, a_rows in a_by_chrom.items():
        b_rows = b_by_chrom.get(chrom)
        if not b_rows:
            continue
        b_rows = sorted(b_rows, key=lambda t: (t[1], t[2]))
        b_starts = [t[1] for t in b_rows]
        max_b_len = max(t[2] - t[1] for t in b_rows)
        for a_id, a_start, a_end in a_rows:
            i = bisect_left(b_starts, a_start + shift - max_b_len)
            limit = a_end - shift
            while i < len(b_starts) and b_starts[i] <= limit:
                b_id, b_start, b_end = b_rows[i]
                i += 1
                bp = case_overlap_coords(a_start, a_end, b_start, b_end)
                if bp < min_bp:
                    continue
                cd = centre_distance_coords(a_start, a_end, b_start, b_end)
                if max_cd is not None and not cd < max_cd:
                    continue
                pairs.append(OverlapPair(a_id, b_id, chrom, bp, cd))
    pairs.sort(key=lambda p: (p.a_id, p.b_id))
    return pairs


def count_overlapping(
    a_regions: Sequence[IdRegion],
    b_regions: Sequence[IdRegion],
    flt: JoinFilter = JoinFilter(),
) -> tuple[int, int]:
    """(overlapping, total) where overlapping counts DISTINCT A regions
    participating in at least one emitted pair, and total is |A|.

    This is the counting convention of the mining report: each query
    region counts once however many reference regions it hits.
    """
    if flt.min_bp < 1 and flt.max_centre_distance is None:
        pairs = nested_loop_join(a_regions, b_regions, flt)
    else:
        pairs = sweep_join(a_regions, b_regions, flt)
    return len({p.a_id for p in pairs}), len(a_regions)


def overlap_percentage(overlapping: int, total: int, digits: int = 2) -> float:
    """overlapping / total as a percentage, rounded half-up."""
    if total == 0:
        return 0.0
    exact = Decimal(overlapping * 100) / Decimal(total)
    q = Decimal(1).scaleb(-digits) if digits > 0 else Decimal(1)
    return float(exact.quantize(q, rounding=ROUND_HALF_UP))


def pairwise_mining(
    catalog: Sequence[CatalogEntry],
    store: RegionStore,
    flt: JoinFilter = JoinFilter(),
) -> list[MiningRow]:
    """Overlap counts for every ordered pair of same-assembly datasets.

    Pairs across assemblies are never computed. Rows are grouped by
    assembly, then ordered by (query name, reference name).
    """
    names = {row.dataset for row in store.rows()}
    for entry in catalog:
        if entry.name not in names:
            raise ValueError(f"catalog dataset {entry.name!r} not imported")
    regions = {entry.name: store.valid_regions(entry.name) for entry in catalog}
    rows: list[MiningRow] = []
    for query in catalog:
        for ref in catalog:
            if query.name == ref.name or query.assembly != ref.assembly:
                continue
            overlapping, total = count_overlapping(
                regions[query.name], regions[ref.name], flt
            )
            rows.append(
                MiningRow(
                    assembly=query.assembly,
                    query_name=query.name,
                    query_factor=query.factor,
                    query_cell_line=query.cell_line,
                    query_treatment=query.treatment,
                    ref_name=ref.name,
                    ref_factor=ref.factor,
                    ref_cell_line=ref.cell_line,
                    ref_treatment=ref.treatment,
                    query_total=total,
                    overlapping=overlapping,
                    percentage=overlap_percentage(overlapping, total),
                )
            )
    rows.sort(key=lambda r: (r.assembly, r.query_name, r.ref_name))
    return rows


def _format_distance(cd: float) -> str:
    return str(int(cd)) if cd == int(cd) else f"{cd:.1f}"


def write_pairs_tsv(pairs: Iterable[OverlapPair], sink: str | Path | IO) -> None:
    """Overlap pairs as TSV, header included."""
    if isinstance(sink, (str, Path)):
        with open(sink, "w", encoding="utf-8", newline="") as fh:
            write_pairs_tsv(pairs, fh)
        return
    sink.write("\t".join(PAIRS_TSV_HEADER) + "\n")
    for p in pairs:
        sink.write(
            f"{p.a_id}\t{p.b_id}\t{p.chrom}\t{p.bp_overlap}\t"
            f"{_format_distance(p.centre_distance)}\n"
        )


def write_mining_tsv(rows: Iterable[MiningRow], sink: str | Path | IO) -> None:
    """Mining report as TSV; percentage printed with exactly 2 decimals."""
    if isinstance(sink, (str, Path)):
        with open(sink, "w", encoding="utf-8", newline="") as fh:
            write_mining_tsv(rows, fh)
        return
    sink.write("\t".join(MINING_TSV_HEADER) + "\n")
    for r in rows:
        fields = (
            r.assembly,
            r.query_name,
            r.query_factor,
            r.query_cell_line,
            r.query_treatment or "",
            r.ref_name,
            r.ref_factor,
            r.ref_cell_line,
            r.ref_treatment or "",
            str(r.query_total),
            str(r.overlapping),
            f"{r.percentage:.2f}",
        )
        sink.write("\t".join(fields) + "\n")
