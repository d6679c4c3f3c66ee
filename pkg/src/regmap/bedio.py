"""BED-like region file parsing/writing and the dataset catalog.

Input files are tab-separated with at least three columns (chromosome,
start, end); extra columns are ignored. Lines starting with ``#``,
``track`` or ``browser`` are skipped. Parsing yields RawRegion records
on purpose: coordinate sanity is NOT enforced here, so that invalid
rows can be ingested into a store and later located by the
erroneous-region search.

Coordinates accept only ASCII digits with an optional leading ``-``,
keeping the parse locale-independent.
"""

from __future__ import annotations

import io
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable, Iterator, Literal

from .intervals import GenomicRegion, RawRegion

__all__ = [
    "BedParseError",
    "CatalogEntry",
    "ParseReport",
    "parse_bed",
    "parse_bed_file",
    "write_bed",
    "load_catalog",
    "load_catalog_file",
]

_INT_RE = re.compile(r"^-?[0-9]+$")
_SKIP_PREFIXES = ("#", "track", "browser")

CATALOG_HEADER = ("name", "factor", "cell_line", "treatment", "assembly", "path")


class BedParseError(ValueError):
    """Malformed input line; carries the 1-based line number."""

    def __init__(self, lineno: int, reason: str):
        super().__init__(f"line {lineno}: {reason}")
        self.lineno = lineno
        self.reason = reason


@dataclass(frozen=True, slots=True)
class CatalogEntry:
    """One dataset of the catalog: regions file plus its metadata."""

    name: str
    factor: str
    cell_line: str
    treatment: str | None
    assembly: str
    path: str


@dataclass(slots=True)
class ParseReport:
    """Accounting for one parse: accepted + rejected = data lines seen."""

    accepted: int = 0
    rejected: int = 0
    rejects: list[tuple[int, str]] = field(default_factory=list)


def _iter_lines(source: str | Path | IO | Iterable[str]) -> Iterator[str]:
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as fh:
            yield from fh
        return
    if isinstance(source, io.IOBase) or hasattr(source, "read"):
        for line in source:
            if isinstance(line, bytes):
                yield line.decode("utf-8")
            else:
                yield line
        return
    for line in source:
        yield line


def _check_line(fields: list[str]) -> str | None:
    """Return a rejection reason for one split data line, or None."""
    if len(fields) < 3:
        return "too few columns"
    chrom = fields[0]
    if not chrom:
        return "empty chromosome"
    if any(c.isspace() for c in chrom):
        return "chromosome contains whitespace"
    if not _INT_RE.match(fields[1]):
        return "non-integer start"
    if not _INT_RE.match(fields[2]):
        return "non-integer end"
    return None


def parse_bed(
    source: str | Path | IO | Iterable[str],
    mode: Literal["strict", "permissive"] = "strict",
) -> tuple[list[RawRegion], ParseReport]:
    """Parse a BED-like stream into RawRegion records.

    In strict mode the first malformed line raises BedParseError. In
    permissive mode malformed lines are recorded in the report and
    skipped, and the parse itself never fails on tab-separated text.
    """
    if mode not in ("strict", "permissive"):
        raise ValueError(f"unknown parse mode: {mode!r}")
    regions: list[RawRegion] = []
    report = ParseReport()
    for lineno, raw in enumerate(_iter_lines(source), start=1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.startswith(_SKIP_PREFIXES):
            continue
        fields = line.split("\t")
        reason = _check_line(fields)
        if reason is not None:
            if mode == "strict":
                raise BedParseError(lineno, reason)
            report.rejected += 1
            report.rejects.append((lineno, reason))
            continue
        regions.append(RawRegion(fields[0], int(fields[1]), int(fields[2])))
        report.accepted += 1
    return regions, report


def parse_bed_file(
    path: str | Path, mode: Literal["strict", "permissive"] = "strict"
) -> tuple[list[RawRegion], ParseReport]:
    """parse_bed over a filesystem path."""
    return parse_bed(Path(path), mode=mode)


def write_bed(regions: Iterable[GenomicRegion | RawRegion], sink: str | Path | IO) -> None:
    """Write one chrom/start/end line per region, in input order.

    Output round-trips losslessly through parse_bed.
    """
    if isinstance(sink, (str, Path)):
        with open(sink, "w", encoding="utf-8", newline="") as fh:
            write_bed(regions, fh)
        return
    for r in regions:
        sink.write(f"{r.chrom}\t{r.start}\t{r.end}\n")


def load_catalog(source: str | Path | IO | Iterable[str]) -> list[CatalogEntry]:
    """Load a dataset catalog from TSV.

    The first line must be exactly the header
    ``name factor cell_line treatment assembly path`` (tab-separated).
    Dataset names must be unique; an empty treatment field means none.
    """
    lines = list(_iter_lines(source))
    if not lines:
        raise ValueError("catalog is empty, expected a header line")
    header = tuple(lines[0].rstrip("\r\n").split("\t"))
    if header != CATALOG_HEADER:
        raise ValueError(
            f"bad catalog header: expected {list(CATALOG_HEADER)}, got {list(header)}"
        )
    entries: list[CatalogEntry] = []
    seen: set[str] = set()
    for lineno, raw in enumerate(lines[1:], start=2):
        line = raw.rstrip("\r\n")
        if not line.strip():
            continue
        fields = line.split("\t")
        if len(fields) != len(CATALOG_HEADER):
            raise ValueError(
                f"line {lineno}: expected {len(CATALOG_HEADER)} columns, got {len(fields)}"
            )
        name, factor, cell_line, treatment, assembly, path = fields
        if name in seen:
            raise ValueError(f"line {lineno}: duplicate dataset name {name!r}")
        if not assembly:
            raise ValueError(f"line {lineno}: empty assembly for dataset {name!r}")
        seen.add(name)
        entries.append(
            CatalogEntry(
                name=name,
                factor=factor,
                cell_line=cell_line,
                treatment=treatment or None,
                assembly=assembly,
                path=path,
            )
        )
    return entries


def load_catalog_file(path: str | Path) -> list[CatalogEntry]:
    """load_catalog over a filesystem path."""
    return load_catalog(Path(path))
