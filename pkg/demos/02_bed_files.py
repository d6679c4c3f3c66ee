"""
Reading and writing BED-like region files
=========================================

Parsing is deliberately forgiving about coordinate values (invalid
records must survive so they can be hunted down later) and strict about
syntax. Permissive mode records malformed lines instead of failing.
"""

import io

from regmap import parse_bed, write_bed, GenomicRegion, RawRegion

bed_text = """\
# peaks from an imaginary experiment
track name=demo
chr1\t100\t200\tpeak_1\t960
chr1\t-40\t80\tnegative_start
chr2\tfive\t60
chr2\t500\t650
"""

regions, report = parse_bed(io.StringIO(bed_text), mode="permissive")
print("accepted:", report.accepted, " rejected:", report.rejected)
for lineno, reason in report.rejects:
    print(f"  line {lineno}: {reason}")

# The negative start was *accepted*: it parses fine and validation is a
# separate step. RawRegion.is_valid tells the two apart.
for r in regions:
    print(r, "valid" if r.is_valid() else "INVALID")

# Strict mode would have stopped at the first malformed line instead.
try:
    parse_bed(io.StringIO(bed_text), mode="strict")
except ValueError as exc:
    print("strict mode:", exc)

# Writing emits plain three-column lines that round-trip losslessly.
out = io.StringIO()
write_bed([GenomicRegion("chr3", 0, 500), GenomicRegion("chrX", 7, 7)], out)
print(out.getvalue(), end="")

roundtrip, _ = parse_bed(io.StringIO(out.getvalue()))
assert roundtrip == [RawRegion("chr3", 0, 500), RawRegion("chrX", 7, 7)]
print("round-trip exact")
