"""
Signed overlap and centre distance for region pairs
====================================================

The core quantity is the signed base-pair overlap: positive when two
regions share bases, zero when they touch, negative by the size of the
gap. Centre distance measures how far apart the midpoints sit.
"""

from regmap import (
    GenomicRegion,
    bp_overlap,
    bp_overlap_case,
    centre_distance,
    centre_distance_sql_compat,
    classify,
    geo_intersects,
    overlaps,
)

# Coordinates are 0-based and half-open, the UCSC BED convention: the
# region chr1:100-200 covers bases 100..199 and has length 100.
a = GenomicRegion("chr1", 100, 200)
b = GenomicRegion("chr1", 150, 400)
c = GenomicRegion("chr1", 200, 260)
d = GenomicRegion("chr1", 500, 560)

print("a vs b shares bases:   ", bp_overlap(a, b))        # 50
print("a vs c touches only:   ", bp_overlap(a, c))        # 0
print("a vs d gap of 300:     ", bp_overlap(a, d))        # -300

# The same value comes out of the four positional branches that a SQL
# CASE expression would evaluate, in the same first-match order.
for x, y in ((a, b), (a, c), (a, d)):
    assert bp_overlap_case(x, y) == bp_overlap(x, y)
print("case analysis and closed form agree")

# Which configuration matched is available as a classification.
print("a relative to b:       ", classify(a, b).value)
print("b relative to a:       ", classify(b, a).value)

# Centre distance keeps exact half-unit precision; the sql-compat mode
# reproduces what integer division does inside a database.
e = GenomicRegion("chr1", 0, 11)
f = GenomicRegion("chr1", 0, 10)
print("exact centre distance: ", centre_distance(e, f))            # 0.5
print("integer-division mode: ", centre_distance_sql_compat(e, f))  # 0

# Predicates are total: different chromosomes simply do not overlap.
print("cross-chromosome:      ", overlaps(a, GenomicRegion("chr2", 100, 200)))

# A geometry-style intersect counts touching endpoints, unlike overlaps().
print("adjacency, overlaps(): ", overlaps(a, c))
print("adjacency, geo:        ", geo_intersects(a, c))
