"""Pure interval algebra for genomic regions.

Regions use 0-based half-open coordinates (UCSC BED convention), so a
region's length is ``end - start`` and two regions are adjacent, not
overlapping, when one ends exactly where the other starts.

The central quantity is the signed base-pair overlap of two regions on
the same chromosome: positive when bases are shared, zero at adjacency,
and negative by the size of the gap. It is computed two ways that are
provably equal:

- ``bp_overlap`` uses the closed form min(end) - max(start);
- ``bp_overlap_case`` evaluates four positional branches in a fixed
  first-match order, mirroring how a SQL CASE expression resolves the
  same configurations.

Coordinate-level kernels (``overlap_coords`` and friends) are exposed
for callers that work on raw integers, e.g. array pipelines and tests
that sweep millions of coordinate pairs.

All functions here are pure and operate on immutable values; they are
safe to call concurrently from any number of threads.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

__all__ = [
    "RawRegion",
    "GenomicRegion",
    "RelativePosition",
    "OverlapMetrics",
    "overlap_metrics",
    "bp_overlap",
    "bp_overlap_case",
    "classify",
    "centre_distance",
    "centre_distance_sql_compat",
    "overlaps",
    "geo_intersects",
    "region_length",
    "overlap_coords",
    "case_overlap_coords",
    "centre_distance_coords",
    "centre_distance_sql_coords",
]


def _check_chrom(chrom: str) -> None:
    if not chrom:
        raise ValueError("chromosome name must be non-empty")
    if any(c.isspace() for c in chrom):
        raise ValueError(f"chromosome name contains whitespace: {chrom!r}")


@dataclass(frozen=True, slots=True)
class RawRegion:
    """An unvalidated (chromosome, start, end) record.

    start and end may be any integers, in any order. Invalid records
    are deliberately representable so they can be stored and later
    located by an erroneous-region search.
    """

    chrom: str
    start: int
    end: int

    def __post_init__(self) -> None:
        _check_chrom(self.chrom)

    def is_valid(self) -> bool:
        """True when the record satisfies the GenomicRegion invariants."""
        return self.start >= 0 and self.end >= self.start

    def to_region(self) -> "GenomicRegion":
        """Validate and convert; raises ValueError on an invalid record."""
        return GenomicRegion(self.chrom, self.start, self.end)


@dataclass(frozen=True, slots=True)
class GenomicRegion:
    """A validated genomic interval, 0-based, half-open on the end."""

    chrom: str
    start: int
    end: int

    def __post_init__(self) -> None:
        _check_chrom(self.chrom)
        if self.start < 0:
            raise ValueError(f"start must be >= 0, got {self.start}")
        if self.end < self.start:
            raise ValueError(f"end must be >= start, got [{self.start}, {self.end})")

    @property
    def length(self) -> int:
        return self.end - self.start


class RelativePosition(enum.Enum):
    """Relative placement of region A against region B on one chromosome."""

    A_WITHIN_B = "a_within_b"
    B_WITHIN_A = "b_within_a"
    A_LEFT_OF_B = "a_left_of_b"
    A_RIGHT_OF_B = "a_right_of_b"


@dataclass(frozen=True, slots=True)
class OverlapMetrics:
    """Signed bp overlap plus centre distance for one region pair."""

    bp_overlap: int
    centre_distance: float


def overlap_metrics(a: "GenomicRegion", b: "GenomicRegion") -> OverlapMetrics:
    """Both derived quantities for a same-chromosome pair in one call."""
    _require_same_chrom(a, b)
    return OverlapMetrics(
        bp_overlap=overlap_coords(a.start, a.end, b.start, b.end),
        centre_distance=centre_distance_coords(a.start, a.end, b.start, b.end),
    )


def _require_same_chrom(a: GenomicRegion, b: GenomicRegion) -> None:
    if a.chrom != b.chrom:
        raise ValueError(
            f"regions are on different chromosomes: {a.chrom!r} vs {b.chrom!r}"
        )


def overlap_coords(a_start: int, a_end: int, b_start: int, b_end: int) -> int:
    """Signed bp overlap of two same-chromosome intervals, closed form."""
    return min(a_end, b_end) - max(a_start, b_start)


def case_overlap_coords(a_start: int, a_end: int, b_start: int, b_end: int) -> int:
    """Signed bp overlap via the four positional branches, first match wins.

    Branch order: A within B, B within A, A left of B, A right of B.
    The branches are exhaustive, and wherever two conditions hold at
    once their formulas agree, so the order only determines which
    arithmetic path is taken.
    """
    if a_end <= b_end and a_start >= b_start:
        return a_end - a_start
    if b_end <= a_end and b_start >= a_start:
        return b_end - b_start
    if a_end <= b_end and a_start <= b_start:
        return a_end - b_start
    if a_end >= b_end and a_start >= b_start:
        return b_end - a_start
    raise AssertionError("positional branches are exhaustive")  # pragma: no cover


def centre_distance_coords(a_start: int, a_end: int, b_start: int, b_end: int) -> float:
    """Exact distance between interval midpoints, a multiple of 0.5."""
    return abs((a_start + a_end) - (b_start + b_end)) / 2


def centre_distance_sql_coords(a_start: int, a_end: int, b_start: int, b_end: int) -> int:
    """Midpoint distance as integer-division SQL evaluates it.

    Each midpoint is truncated to an integer before the difference is
    taken, so the result can differ from the exact value by up to 1.
    Coordinates are non-negative here, so floor and truncating division
    coincide.
    """
    return abs((a_start + a_end) // 2 - (b_start + b_end) // 2)


def bp_overlap(a: GenomicRegion, b: GenomicRegion) -> int:
    """Signed base-pair overlap of two regions on the same chromosome.

    Positive means at least one shared base, zero means the regions are
    adjacent, and a negative value is the size of the gap between them.
    Raises ValueError on a chromosome mismatch; overlap across
    chromosomes is undefined.
    """
    _require_same_chrom(a, b)
    return overlap_coords(a.start, a.end, b.start, b.end)


def bp_overlap_case(a: GenomicRegion, b: GenomicRegion) -> int:
    """bp overlap computed through the four-branch case analysis."""
    _require_same_chrom(a, b)
    return case_overlap_coords(a.start, a.end, b.start, b.end)


def classify(a: GenomicRegion, b: GenomicRegion) -> RelativePosition:
    """First matching positional branch for the pair (a, b).

    Ties (e.g. identical regions satisfy several conditions) resolve to
    the earliest branch, matching SQL CASE first-match semantics.
    """
    _require_same_chrom(a, b)
    if a.end <= b.end and a.start >= b.start:
        return RelativePosition.A_WITHIN_B
    if b.end <= a.end and b.start >= a.start:
        return RelativePosition.B_WITHIN_A
    if a.end <= b.end and a.start <= b.start:
        return RelativePosition.A_LEFT_OF_B
    if a.end >= b.end and a.start >= b.start:
        return RelativePosition.A_RIGHT_OF_B
    raise AssertionError("positional branches are exhaustive")  # pragma: no cover


def centre_distance(a: GenomicRegion, b: GenomicRegion) -> float:
    """Exact distance between region centres (multiples of 0.5 bp).

    Computed on doubled coordinates so half-unit midpoints never round.
    """
    _require_same_chrom(a, b)
    return centre_distance_coords(a.start, a.end, b.start, b.end)


def centre_distance_sql_compat(a: GenomicRegion, b: GenomicRegion) -> int:
    """Centre distance exactly as the emitted SQL computes it on integers."""
    _require_same_chrom(a, b)
    return centre_distance_sql_coords(a.start, a.end, b.start, b.end)


def overlaps(a: GenomicRegion, b: GenomicRegion, min_bp: int = 1) -> bool:
    """True when a and b share at least ``min_bp`` bases.

    Unlike the metric functions this predicate is total: regions on
    different chromosomes simply do not overlap.
    """
    if min_bp < 1:
        raise ValueError(f"min_bp must be >= 1, got {min_bp}")
    if a.chrom != b.chrom:
        return False
    return overlap_coords(a.start, a.end, b.start, b.end) >= min_bp


def geo_intersects(a: GenomicRegion, b: GenomicRegion) -> bool:
    """Boolean intersection of the closed segments [start, end].

    Emulates a database geometry intersect over 1-D segments: segments
    that merely touch at an endpoint count as intersecting, so this is
    deliberately looser than overlaps() at adjacency.
    """
    if a.chrom != b.chrom:
        return False
    return overlap_coords(a.start, a.end, b.start, b.end) >= 0


def region_length(r: GenomicRegion) -> int:
    """Region length under half-open coordinates: end - start."""
    return r.end - r.start
