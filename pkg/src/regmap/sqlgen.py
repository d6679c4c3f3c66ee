"""Dialect-specific SQL script emission.

Emits the schema, the overlap view/query, the geometry-based
comparison query, bulk import and insert scripts, and the two search
queries, for PostgreSQL and both common MySQL storage engines. Scripts
are deterministic bytes given (kind, dialect, parameters): lower-case
identifiers, explicit column lists, LF line endings, trailing newline.

Only validated integers and token-checked identifiers are substituted
into script text; arbitrary strings are never interpolated.

Column naming: ``start``/``end`` are reserved words in at least one
target dialect, so the physical columns are ``start_pos``/``end_pos``.
The overlap view keeps its historical column names ``bpooverlap`` and
``centredistance`` so existing filter queries keep working.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Sequence

from .intervals import GenomicRegion
from .joins import JoinFilter

__all__ = [
    "SqlDialect",
    "ScriptKind",
    "SqlScript",
    "DEMO_REGIONS",
    "emit_ddl",
    "emit_regmap_query",
    "emit_geo_query",
    "emit_bulk_import",
    "emit_random_gen",
    "emit_batch_insert",
    "emit_rowwise_insert",
    "emit_search_queries",
    "emit_all",
]


class SqlDialect(enum.Enum):
    POSTGRES = "postgres"
    MYSQL_INNODB = "mysql_innodb"
    MYSQL_MYISAM = "mysql_myisam"

    @property
    def is_mysql(self) -> bool:
        return self in (SqlDialect.MYSQL_INNODB, SqlDialect.MYSQL_MYISAM)


class ScriptKind(enum.Enum):
    DDL = "ddl"
    REGMAP_QUERY = "regmap_query"
    GEO_QUERY = "geo_query"
    BULK_IMPORT = "bulk_import"
    RANDOM_GEN = "random_gen"
    ROWWISE_INSERT = "rowwise_insert"
    BATCH_INSERT = "batch_insert"
    INVALID_SEARCH = "invalid_search"
    PROXIMITY_SEARCH = "proximity_search"


@dataclass(frozen=True, slots=True)
class SqlScript:
    """One emitted script: kind, dialect and exact text."""

    kind: ScriptKind
    dialect: SqlDialect
    text: str

    @property
    def filename(self) -> str:
        return f"{self.kind.value}.{self.dialect.value}.sql"

    def statements(self) -> list[str]:
        """Individual statements; every statement ends with ';'.

        Emitted scripts terminate each statement with ';' at end of
        line, which is the split point (no emitted literal contains
        one).
        """
        parts = self.text.split(";\n")
        return [p.strip() + ";" for p in parts if p.strip()]


# Default demo rows used for parameterless emission (CLI, goldens).
DEMO_REGIONS: tuple[GenomicRegion, ...] = (
    GenomicRegion("chr1", 100, 250),
    GenomicRegion("chr1", 200, 600),
    GenomicRegion("chr2", 400, 900),
    GenomicRegion("chr8", 128748300, 128748400),
    GenomicRegion("chrX", 5000, 5500),
)

_TOKEN_RE = re.compile(r"^[A-Za-z0-9_.]+$")
_PATH_RE = re.compile(r"^[A-Za-z0-9_./\\:~-]+$")


def _check_int(value: int, name: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise ValueError(f"{name} must be an integer, got {value!r}")
    return value


def _check_token(value: str, name: str) -> str:
    if not _TOKEN_RE.match(value):
        raise ValueError(f"{name} must be a plain token, got {value!r}")
    return value


def _check_path(value: str) -> str:
    if not _PATH_RE.match(value):
        raise ValueError(f"unsafe characters in path: {value!r}")
    return value


def _engine_suffix(dialect: SqlDialect) -> str:
    if dialect is SqlDialect.MYSQL_INNODB:
        return " engine=innodb"
    if dialect is SqlDialect.MYSQL_MYISAM:
        return " engine=myisam"
    return ""


def emit_ddl(dialect: SqlDialect) -> SqlScript:
    """Schema: production regions, their description link, and staging."""
    eng = _engine_suffix(dialect)
    text = f"""\
create table regiondesc (
    id integer not null,
    name varchar(255) not null,
    annotation text,
    primary key (id),
    unique (name)
){eng};

create table regions (
    id bigint not null,
    regiondesc_id integer not null,
    chromosome varchar(64) not null,
    start_pos bigint not null,
    end_pos bigint not null,
    primary key (id)
){eng};

create table staging_regions (
    chromosome varchar(64) not null,
    start_pos bigint not null,
    end_pos bigint not null
){eng};
"""
    return SqlScript(ScriptKind.DDL, dialect, text)


def _bp_case(indent: str) -> str:
    i = indent
    return (
        f"{i}case\n"
        f"{i}    when a.end_pos <= b.end_pos and a.start_pos >= b.start_pos"
        " then a.end_pos - a.start_pos\n"
        f"{i}    when b.end_pos <= a.end_pos and b.start_pos >= a.start_pos"
        " then b.end_pos - b.start_pos\n"
        f"{i}    when a.end_pos <= b.end_pos and a.start_pos <= b.start_pos"
        " then a.end_pos - b.start_pos\n"
        f"{i}    when a.end_pos >= b.end_pos and a.start_pos >= b.start_pos"
        " then b.end_pos - a.start_pos\n"
        f"{i}end as bpooverlap"
    )


def _format_bound(value: float | int) -> str:
    if isinstance(value, int) or float(value).is_integer():
        return str(int(value))
    return repr(float(value))


def emit_regmap_query(
    dialect: SqlDialect,
    flt: JoinFilter = JoinFilter(),
    query_dataset: int = 1,
    ref_dataset: int = 2,
) -> SqlScript:
    """Overlap view plus the filtered select over it.

    The view computes bp overlap through the four-branch case analysis
    and centre distance with integer division, exactly as the native
    sql-compat mode models it. MySQL needs ``div`` for integer
    division; PostgreSQL truncates ``/`` on integers.
    """
    q = _check_int(query_dataset, "query_dataset")
    r = _check_int(ref_dataset, "ref_dataset")
    div = "div" if dialect.is_mysql else "/"
    where = [f"where bpooverlap >= {_check_int(flt.min_bp, 'min_bp')}"]
    if flt.max_centre_distance is not None:
        where.append(f"  and centredistance < {_format_bound(flt.max_centre_distance)}")
    where_clause = "\n".join(where)
    text = f"""\
create or replace view vwregions as
select
    a.id as a_id,
    b.id as b_id,
    a.chromosome as chromosome,
{_bp_case("    ")},
    abs((a.end_pos + a.start_pos) {div} 2 - (b.end_pos + b.start_pos) {div} 2) as centredistance
from regions a
join regions b
    on a.chromosome = b.chromosome
where a.regiondesc_id = {q}
  and b.regiondesc_id = {r};

select a_id, b_id, chromosome, bpooverlap, centredistance
from vwregions
{where_clause}
order by a_id, b_id;
"""
    return SqlScript(ScriptKind.REGMAP_QUERY, dialect, text)


def emit_geo_query(
    dialect: SqlDialect, query_dataset: int = 1, ref_dataset: int = 2
) -> SqlScript:
    """Boolean intersection of 1-D segments via the dialect's geometry
    machinery; returns matched id pairs only."""
    q = _check_int(query_dataset, "query_dataset")
    r = _check_int(ref_dataset, "ref_dataset")
    if dialect.is_mysql:
        predicate = (
            "st_intersects(\n"
            "      st_geomfromtext(concat('linestring(', a.start_pos, ' 0, ', a.end_pos, ' 0)')),\n"
            "      st_geomfromtext(concat('linestring(', b.start_pos, ' 0, ', b.end_pos, ' 0)'))\n"
            "  )"
        )
    else:
        predicate = (
            "lseg(point(a.start_pos, 0), point(a.end_pos, 0))"
            " ?# lseg(point(b.start_pos, 0), point(b.end_pos, 0))"
        )
    text = f"""\
select
    a.id as a_id,
    b.id as b_id
from regions a
join regions b
    on a.chromosome = b.chromosome
where a.regiondesc_id = {q}
  and b.regiondesc_id = {r}
  and {predicate}
order by a_id, b_id;
"""
    return SqlScript(ScriptKind.GEO_QUERY, dialect, text)


_ID_ASSIGN_INSERT = """\
insert into regions (id, regiondesc_id, chromosome, start_pos, end_pos)
select mx.max_id + row_number() over (order by s.chromosome, s.start_pos, s.end_pos),
    {dataset},
    s.chromosome,
    s.start_pos,
    s.end_pos
from staging_regions s
cross join (select coalesce(max(id), 0) as max_id from regions) mx;
"""


def emit_bulk_import(
    dialect: SqlDialect, file_path: str = "/tmp/regions.bed", dataset: int = 1
) -> SqlScript:
    """Three-step staged import: load staging, copy with id assignment,
    empty staging."""
    path = _check_path(file_path)
    ds = _check_int(dataset, "dataset")
    if dialect.is_mysql:
        load = (
            f"load data infile '{path}' into table staging_regions"
            " fields terminated by '\\t' lines terminated by '\\n'"
            " (chromosome, start_pos, end_pos);"
        )
    else:
        load = (
            f"copy staging_regions (chromosome, start_pos, end_pos)"
            f" from '{path}' with (format text);"
        )
    text = (
        load
        + "\n\n"
        + _ID_ASSIGN_INSERT.format(dataset=ds)
        + "\ntruncate table staging_regions;\n"
    )
    return SqlScript(ScriptKind.BULK_IMPORT, dialect, text)


def emit_random_gen(
    dialect: SqlDialect,
    count: int = 5000,
    coord_lower: int = 0,
    coord_upper: int = 200_000_000,
    max_size: int = 500,
    dataset: int = 1,
    chromosome_count: int = 23,
) -> SqlScript:
    """Generate ``count`` random regions in memory and insert them in a
    single transaction.

    Starts fall in [coord_lower, coord_upper - max_size) and sizes in
    [1, max_size], so every region stays inside the coordinate range.
    """
    n = _check_int(count, "count")
    lo = _check_int(coord_lower, "coord_lower")
    hi = _check_int(coord_upper, "coord_upper")
    size = _check_int(max_size, "max_size")
    ds = _check_int(dataset, "dataset")
    nchrom = _check_int(chromosome_count, "chromosome_count")
    if n < 1:
        raise ValueError(f"count must be >= 1, got {n}")
    if size < 1:
        raise ValueError(f"max_size must be >= 1, got {size}")
    if hi - lo <= size:
        raise ValueError("coordinate range must exceed max_size")
    span = hi - lo - size
    if dialect.is_mysql:
        text = f"""\
set session cte_max_recursion_depth = {n + 1};

start transaction;

insert into regions (id, regiondesc_id, chromosome, start_pos, end_pos)
with recursive seq (n) as (
    select 1
    union all
    select n + 1 from seq where n < {n}
)
select mx.max_id + r.n,
    {ds},
    r.chromosome,
    r.start_pos,
    r.start_pos + r.size
from (
    select seq.n as n,
        concat('chr', 1 + floor(rand() * {nchrom})) as chromosome,
        cast({lo} + floor(rand() * {span}) as signed) as start_pos,
        cast(1 + floor(rand() * {size}) as signed) as size
    from seq
) r
cross join (select coalesce(max(id), 0) as max_id from regions) mx;

commit;
"""
    else:
        text = f"""\
start transaction;

insert into regions (id, regiondesc_id, chromosome, start_pos, end_pos)
select mx.max_id + r.n,
    {ds},
    r.chromosome,
    r.start_pos,
    r.start_pos + r.size
from (
    select gs.n as n,
        'chr' || cast(1 + floor(random() * {nchrom}) as varchar) as chromosome,
        cast({lo} + floor(random() * {span}) as bigint) as start_pos,
        cast(1 + floor(random() * {size}) as bigint) as size
    from generate_series(1, {n}) as gs(n)
) r
cross join (select coalesce(max(id), 0) as max_id from regions) mx;

commit;
"""
    return SqlScript(ScriptKind.RANDOM_GEN, dialect, text)


def _region_values(
    regions: Sequence[GenomicRegion], dataset: int, start_id: int
) -> list[tuple[int, int, str, int, int]]:
    rows = []
    for offset, region in enumerate(regions):
        rows.append(
            (
                start_id + offset,
                dataset,
                _check_token(region.chrom, "chromosome"),
                _check_int(region.start, "start"),
                _check_int(region.end, "end"),
            )
        )
    return rows


def emit_batch_insert(
    dialect: SqlDialect,
    regions: Sequence[GenomicRegion] = DEMO_REGIONS,
    dataset: int = 1,
    start_id: int = 1,
) -> SqlScript:
    """All rows in one multi-row insert inside one transaction."""
    ds = _check_int(dataset, "dataset")
    sid = _check_int(start_id, "start_id")
    if not regions:
        raise ValueError("batch insert needs at least one region")
    values = ",\n".join(
        f"    ({rid}, {d}, '{chrom}', {start}, {end})"
        for rid, d, chrom, start, end in _region_values(regions, ds, sid)
    )
    text = (
        "start transaction;\n\n"
        "insert into regions (id, regiondesc_id, chromosome, start_pos, end_pos) values\n"
        + values
        + ";\n\ncommit;\n"
    )
    return SqlScript(ScriptKind.BATCH_INSERT, dialect, text)


def emit_rowwise_insert(
    dialect: SqlDialect,
    regions: Sequence[GenomicRegion] = DEMO_REGIONS,
    dataset: int = 1,
    start_id: int = 1,
) -> SqlScript:
    """One autocommit insert statement per row (no transaction wrapper)."""
    ds = _check_int(dataset, "dataset")
    sid = _check_int(start_id, "start_id")
    stmts = [
        "insert into regions (id, regiondesc_id, chromosome, start_pos, end_pos)"
        f" values ({rid}, {d}, '{chrom}', {start}, {end});"
        for rid, d, chrom, start, end in _region_values(regions, ds, sid)
    ]
    return SqlScript(ScriptKind.ROWWISE_INSERT, dialect, "\n".join(stmts) + "\n")


def emit_search_queries(
    dialect: SqlDialect,
    chrom: str = "chr8",
    position: int = 128_748_314,
    window: int = 100_000,
) -> list[SqlScript]:
    """The erroneous-region scan and the windowed proximity query.

    Defaults are the MYC transcription start site with a 100 kb window
    on either side.
    """
    c = _check_token(chrom, "chrom")
    pos = _check_int(position, "position")
    win = _check_int(window, "window")
    if win < 1:
        raise ValueError(f"window must be >= 1, got {win}")
    invalid = """\
select id, regiondesc_id, chromosome, start_pos, end_pos
from regions
where start_pos < 0
   or end_pos < start_pos
order by id;
"""
    proximity = f"""\
select id, regiondesc_id, chromosome, start_pos, end_pos
from regions
where chromosome = '{c}'
  and least(end_pos, {pos + win}) - greatest(start_pos, {pos - win}) >= 1
order by id;
"""
    return [
        SqlScript(ScriptKind.INVALID_SEARCH, dialect, invalid),
        SqlScript(ScriptKind.PROXIMITY_SEARCH, dialect, proximity),
    ]


def emit_all(dialect: SqlDialect) -> list[SqlScript]:
    """Every script kind for one dialect, default parameters."""
    scripts = [
        emit_ddl(dialect),
        emit_regmap_query(dialect),
        emit_geo_query(dialect),
        emit_bulk_import(dialect),
        emit_random_gen(dialect),
        emit_batch_insert(dialect),
        emit_rowwise_insert(dialect),
    ]
    scripts.extend(emit_search_queries(dialect))
    return scripts
