"""
The region store: staged imports, error hunts, proximity search
===============================================================

The in-memory store mirrors how the SQL backends work: imports go
through a staging buffer, rows get store-wide sequential ids, and a
start-sorted index accelerates windowed lookups without ever changing
the answer.
"""

from regmap import RawRegion, RegionStore
from regmap.bench import GenConfig, generate_regions

store = RegionStore()

# A staged import assigns ids 1..n and leaves staging empty.
peaks = [
    RawRegion("chr8", 128_748_000, 128_748_600),   # near the MYC TSS
    RawRegion("chr8", 128_500_000, 128_500_400),
    RawRegion("chr8", 5_000, 5_200),
    RawRegion("chr1", 900, 1_000),
    RawRegion("chr1", -20, 50),                    # slipped through QC
    RawRegion("chr1", 700, 300),                   # coordinates swapped
]
imported = store.import_dataset("demo_peaks", peaks)
print("imported rows:", imported, " staging now:", store.staging_size)

# A second dataset continues the id sequence.
store.import_dataset("background", generate_regions(GenConfig(seed=1, count=4)))
print("ids:", [row.id for row in store.rows()])

# Hunt down records that should never have been ingested.
for row in store.find_invalid():
    r = row.region
    print(f"invalid row id={row.id}: {r.chrom}:{r.start}-{r.end}")

# Proximity search: everything within 100 kb of the MYC transcription
# start site. The index is optional and transparent.
hits = store.proximity_search("chr8", 128_748_314, 100_000)
store.build_index()
indexed_hits = store.proximity_search("chr8", 128_748_314, 100_000)
assert [h.id for h in hits] == [h.id for h in indexed_hits]
for row in indexed_hits:
    r = row.region
    print(f"near MYC: id={row.id} {r.chrom}:{r.start}-{r.end} ({row.dataset})")
