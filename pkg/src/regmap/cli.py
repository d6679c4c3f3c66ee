"""Command-line entry point.

Subcommands: gen, overlap, mine, search, sqlgen, bench. Exit codes are
0 for success, 1 for runtime or data errors, 2 for usage errors. An
optional ``key = value`` config file supplies flag defaults; explicit
flags win over the file, the file wins over built-in defaults.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__, bench, dbadapter, sqlgen
from .bedio import load_catalog_file, parse_bed_file, write_bed
from .joins import (
    JoinFilter,
    nested_loop_join,
    pairwise_mining,
    sweep_join,
    write_mining_tsv,
    write_pairs_tsv,
)
from .store import RegionStore

SEARCH_TSV_HEADER = ("id", "dataset", "chrom", "start", "end")


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _open_sink(path: str | None):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline=""), True


def _load_id_regions(path: str, start_id: int):
    raws, _ = parse_bed_file(path, mode="strict")
    regions = [raw.to_region() for raw in raws]
    return [(start_id + i, r) for i, r in enumerate(regions)]


def cmd_gen(args) -> int:
    config = bench.GenConfig(
        seed=args.seed,
        count=args.count,
        chromosomes=tuple(args.chromosomes.split(",")) if args.chromosomes else bench.DEFAULT_CHROMOSOMES,
        coord_lower=args.coord_lower,
        coord_upper=args.coord_upper,
        max_size=args.max_size,
        fixed_size=args.fixed_size,
    )
    regions = bench.generate_regions(config)
    sink, close = _open_sink(args.out)
    try:
        write_bed(regions, sink)
    finally:
        if close:
            sink.close()
    return 0


def cmd_overlap(args) -> int:
    a = _load_id_regions(args.a, start_id=1)
    b = _load_id_regions(args.b, start_id=len(a) + 1)
    flt = JoinFilter(min_bp=args.min_bp, max_centre_distance=args.max_centre_distance)
    join = sweep_join if args.algorithm == "sweep" else nested_loop_join
    pairs = join(a, b, flt)
    sink, close = _open_sink(args.out)
    try:
        write_pairs_tsv(pairs, sink)
    finally:
        if close:
            sink.close()
    return 0


def cmd_mine(args) -> int:
    catalog_path = Path(args.catalog)
    catalog = load_catalog_file(catalog_path)
    store = RegionStore()
    for entry in catalog:
        path = Path(entry.path)
        if not path.is_absolute():
            path = catalog_path.parent / path
        regions, _ = parse_bed_file(path, mode="permissive")
        store.import_dataset(entry.name, regions)
    flt = JoinFilter(min_bp=args.min_bp, max_centre_distance=args.max_centre_distance)
    rows = pairwise_mining(catalog, store, flt)
    sink, close = _open_sink(args.out)
    try:
        write_mining_tsv(rows, sink)
    finally:
        if close:
            sink.close()
    return 0


def _parse_locus(text: str) -> tuple[str, int]:
    chrom, _, pos = text.rpartition(":")
    if not chrom or not pos.isdigit():
        raise ValueError(f"expected CHROM:POS, got {text!r}")
    return chrom, int(pos)


def cmd_search(args) -> int:
    store = RegionStore()
    for i, path in enumerate(args.store_from):
        regions, _ = parse_bed_file(path, mode="permissive")
        store.import_dataset(Path(path).stem or f"ds{i + 1}", regions)
    if args.invalid:
        hits = store.find_invalid()
    else:
        chrom, position = _parse_locus(args.near)
        store.build_index()
        hits = store.proximity_search(chrom, position, args.window)
    lines = ["\t".join(SEARCH_TSV_HEADER)]
    for row in hits:
        r = row.region
        lines.append(f"{row.id}\t{row.dataset}\t{r.chrom}\t{r.start}\t{r.end}")
    _write_text(args.out, "\n".join(lines) + "\n")
    return 0


def cmd_sqlgen(args) -> int:
    dialects = (
        list(sqlgen.SqlDialect)
        if args.dialect == "all"
        else [sqlgen.SqlDialect(args.dialect)]
    )
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for dialect in dialects:
        for script in sqlgen.emit_all(dialect):
            if args.kind != "all" and script.kind.value != args.kind:
                continue
            target = out_dir / script.filename
            target.write_text(script.text, encoding="utf-8", newline="")
            written.append(target)
    if not written:
        print(f"no scripts matched kind {args.kind!r}", file=sys.stderr)
        return 1
    for path in written:
        print(path)
    return 0


def cmd_bench(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",")] if args.sizes else [5000]
    backends = dbadapter.backends_from_env()
    if args.scenario == "insertion":
        report = bench.run_insertion_bench(sizes, reps=args.reps, backends=backends, seed=args.seed)
    elif args.scenario == "import":
        if not args.files:
            print("bench --scenario import requires --files", file=sys.stderr)
            return 2
        report = bench.run_import_bench(args.files, reps=args.reps, backends=backends)
    elif args.scenario == "overlap":
        report = bench.run_overlap_bench(sizes, reps=args.reps, backends=backends, seed=args.seed)
    else:
        report = bench.run_search_bench(sizes, reps=args.reps, backends=backends, seed=args.seed)
    text = bench.write_report(report, fmt=args.format)
    _write_text(args.report, text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="regmap",
        description="Genomic region mapping: overlap joins, searches, SQL emission, benchmarks.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", metavar="FILE", help="key = value file with flag defaults")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate seeded random regions as BED")
    p.add_argument("--count", type=int, default=1000, help="number of regions")
    p.add_argument("--seed", type=int, default=0, help="generator seed")
    p.add_argument("--max-size", type=int, default=500, help="maximum region length")
    p.add_argument("--fixed-size", action="store_true", help="every region exactly max-size long")
    p.add_argument("--chromosomes", help="comma-separated chromosome names")
    p.add_argument("--coord-lower", type=int, default=0, help="lowest start coordinate")
    p.add_argument("--coord-upper", type=int, default=200_000_000, help="coordinate upper bound")
    p.add_argument("--out", help="output BED file (default stdout)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("overlap", help="overlap-join two BED files")
    p.add_argument("--a", required=True, metavar="FILE", help="query regions (BED)")
    p.add_argument("--b", required=True, metavar="FILE", help="reference regions (BED)")
    p.add_argument("--min-bp", type=int, default=1, help="minimum bp overlap to emit a pair")
    p.add_argument(
        "--max-centre-distance",
        type=float,
        default=None,
        help="emit only pairs with centre distance strictly below this",
    )
    p.add_argument("--algorithm", choices=("nested", "sweep"), default="sweep")
    p.add_argument("--out", help="output TSV file (default stdout)")
    p.set_defaults(func=cmd_overlap)

    p = sub.add_parser("mine", help="pairwise overlap report over a dataset catalog")
    p.add_argument("--catalog", required=True, metavar="FILE", help="catalog TSV")
    p.add_argument("--min-bp", type=int, default=1)
    p.add_argument("--max-centre-distance", type=float, default=None)
    p.add_argument("--out", help="output TSV file (default stdout)")
    p.set_defaults(func=cmd_mine)

    p = sub.add_parser("search", help="find invalid regions or regions near a locus")
    p.add_argument(
        "--store-from", required=True, nargs="+", metavar="FILE", help="BED files to load"
    )
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--invalid", action="store_true", help="list malformed regions")
    mode.add_argument("--near", metavar="CHROM:POS", help="regions near this locus")
    p.add_argument("--window", type=int, default=100_000, help="half-window in bp for --near")
    p.add_argument("--out", help="output TSV file (default stdout)")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("sqlgen", help="emit SQL scripts per dialect")
    p.add_argument(
        "--dialect",
        choices=[d.value for d in sqlgen.SqlDialect] + ["all"],
        default="all",
    )
    p.add_argument(
        "--kind",
        choices=[k.value for k in sqlgen.ScriptKind] + ["all"],
        default="all",
    )
    p.add_argument("--out-dir", required=True, help="directory for the .sql files")
    p.set_defaults(func=cmd_sqlgen)

    p = sub.add_parser("bench", help="run a benchmark scenario")
    p.add_argument(
        "--scenario", required=True, choices=("insertion", "import", "overlap", "search")
    )
    p.add_argument("--sizes", help="comma-separated sizes (default 5000)")
    p.add_argument("--reps", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--files", nargs="+", metavar="FILE", help="BED files for --scenario import")
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p.add_argument("--report", help="report file (default stdout)")
    p.set_defaults(func=cmd_bench)

    return parser


def _read_config(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        values[key.strip().replace("-", "_")] = value.strip()
    return values


def _apply_config(parser: argparse.ArgumentParser, values: dict[str, str]) -> None:
    """Install config values as defaults on every subparser that has a
    matching destination. Types go through each action's converter."""
    subparsers = [
        sp
        for action in parser._actions
        if isinstance(action, argparse._SubParsersAction)
        for sp in action.choices.values()
    ]
    for sp in subparsers:
        defaults = {}
        for action in sp._actions:
            if action.dest in values:
                raw = values[action.dest]
                if isinstance(action, (argparse._StoreTrueAction, argparse._StoreFalseAction)):
                    defaults[action.dest] = raw.lower() in ("1", "true", "yes", "on")
                elif action.type is not None:
                    defaults[action.dest] = action.type(raw)
                else:
                    defaults[action.dest] = raw
        if defaults:
            sp.set_defaults(**defaults)


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    # Pre-scan for --config so its values become defaults before the
    # real parse; explicit flags then override them.
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if known.config:
        try:
            _apply_config(parser, _read_config(known.config))
        except (OSError, ValueError) as exc:
            print(f"regmap: config error: {exc}", file=sys.stderr)
            return 2
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BrokenPipeError:
        return 1
    except (ValueError, OSError, AssertionError) as exc:
        print(f"regmap: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
