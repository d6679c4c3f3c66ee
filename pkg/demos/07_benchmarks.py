"""
Timing the workloads
====================

Four scenario families can be timed: insertion (batch vs rowwise),
staged file import, overlap joins, and searches. The native engine
always participates; live PostgreSQL/MySQL backends join automatically
when REGMAP_PG_URL / REGMAP_MYSQL_URL are set. Sizes here are kept
small so the demo finishes in seconds.
"""

import sys

from regmap.bench import (
    run_insertion_bench,
    run_overlap_bench,
    run_search_bench,
    write_report,
)
from regmap.dbadapter import backends_from_env

backends = backends_from_env()
enabled = [b.name for b in backends if b.enabled]
print("live backends:", ", ".join(enabled) if enabled else "none (native only)")

report = run_insertion_bench([2000, 5000], reps=2, backends=backends)

overlap = run_overlap_bench([1000], reps=2, backends=backends)
report.rows.extend(overlap.rows)
report.context.extend(overlap.context)

search = run_search_bench([50_000], reps=2, backends=backends)
report.rows.extend(search.rows)
report.context.extend(search.context)

# Context lines ride along as '#' comments in the TSV.
write_report(report, fmt="tsv", sink=sys.stdout)
