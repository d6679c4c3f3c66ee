import io
from decimal import ROUND_HALF_UP, Decimal

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from regmap.bedio import load_catalog_file, parse_bed_file
from regmap.bench import GenConfig, generate_regions
from regmap.data import toy_catalog_path
from regmap.intervals import GenomicRegion
from regmap.joins import (
    JoinFilter,
    OverlapPair,
    count_overlapping,
    nested_loop_join,
    overlap_percentage,
    pairwise_mining,
    sweep_join,
    write_mining_tsv,
    write_pairs_tsv,
)
from regmap.store import RegionStore


def ids(regions, start=1):
    return [(start + i, r) for i, r in enumerate(regions)]


def gen_dataset(seed, count, chroms=5):
    config = GenConfig(
        seed=seed,
        count=count,
        chromosomes=tuple(f"chr{i}" for i in range(1, chroms + 1)),
        coord_lower=0,
        coord_upper=5000,
        max_size=500,
    )
    return generate_regions(config)


class TestNestedLoopJoin:
    def test_single_pair_metrics(self):
        a = ids([GenomicRegion("chr1", 0, 10)])
        b = ids([GenomicRegion("chr1", 5, 20)], start=2)
        result = nested_loop_join(a, b)
        assert result == [OverlapPair(1, 2, "chr1", 5, 7.5)]

    def test_self_join_reports_own_length(self):
        regions = [GenomicRegion("chr1", 0, 10), GenomicRegion("chr2", 7, 19)]
        a = ids(regions)
        diagonal = [p for p in nested_loop_join(a, a) if p.a_id == p.b_id]
        assert [(p.a_id, p.bp_overlap) for p in diagonal] == [(1, 10), (2, 12)]

    def test_distance_filter_equals_post_hoc_filtering(self):
        a = ids(gen_dataset(seed=5, count=120))
        b = ids(gen_dataset(seed=6, count=120), start=1000)
        unfiltered = nested_loop_join(a, b, JoinFilter(min_bp=1))
        bounded = nested_loop_join(a, b, JoinFilter(min_bp=1, max_centre_distance=80))
        assert bounded == [p for p in unfiltered if p.centre_distance < 80]

    def test_duplicate_ids_rejected(self):
        a = [(1, GenomicRegion("chr1", 0, 5)), (1, GenomicRegion("chr1", 4, 9))]
        with pytest.raises(ValueError, match="duplicate"):
            nested_loop_join(a, ids([GenomicRegion("chr1", 0, 5)]))
        with pytest.raises(ValueError, match="duplicate"):
            sweep_join(ids([GenomicRegion("chr1", 0, 5)]), a)

    def test_output_sorted_by_id_pair(self):
        a = ids([GenomicRegion("chr1", 0, 100), GenomicRegion("chr1", 10, 60)])
        b = ids([GenomicRegion("chr1", 0, 100), GenomicRegion("chr1", 20, 30)], start=10)
        result = nested_loop_join(a, b)
        assert [(p.a_id, p.b_id) for p in result] == sorted(
            (p.a_id, p.b_id) for p in result
        )


class TestSweepJoin:
    def test_matches_nested_loop_on_random_data(self):
        for seed in range(25):
            a = ids(gen_dataset(seed=seed, count=200))
            b = ids(gen_dataset(seed=seed + 1000, count=180), start=1000)
            assert sweep_join(a, b) == nested_loop_join(a, b)

    def test_matches_nested_loop_with_min_bp_filters(self):
        a = ids(gen_dataset(seed=42, count=150))
        b = ids(gen_dataset(seed=43, count=150), start=500)
        for flt in (
            JoinFilter(min_bp=2),
            JoinFilter(min_bp=25),
            JoinFilter(min_bp=1, max_centre_distance=100),
            JoinFilter(min_bp=0, max_centre_distance=250.5),
            JoinFilter(min_bp=-50, max_centre_distance=300),
            JoinFilter(min_bp=-10_000, max_centre_distance=60),
        ):
            assert sweep_join(a, b, flt) == nested_loop_join(a, b, flt)

    def test_empty_inputs(self):
        a = ids([GenomicRegion("chr1", 0, 10)])
        assert sweep_join(a, []) == []
        assert sweep_join([], a) == []

    def test_refuses_unbounded_non_overlap_join(self):
        a = ids([GenomicRegion("chr1", 0, 10)])
        with pytest.raises(ValueError, match="unbounded non-overlap join"):
            sweep_join(a, a, JoinFilter(min_bp=0))

    def test_zero_length_regions_agree_with_nested(self):
        a = ids(
            [GenomicRegion("chr1", 5, 5), GenomicRegion("chr1", 0, 10)],
        )
        b = ids([GenomicRegion("chr1", 5, 5), GenomicRegion("chr1", 4, 6)], start=10)
        for flt in (JoinFilter(), JoinFilter(min_bp=0, max_centre_distance=50)):
            assert sweep_join(a, b, flt) == nested_loop_join(a, b, flt)

    @settings(max_examples=50, deadline=None)
    @given(
        st.integers(0, 2**32 - 1),
        st.integers(1, 60),
        st.integers(1, 60),
        st.integers(-30, 5),
    )
    def test_property_equivalence(self, seed, na, nb, min_bp):
        a = ids(gen_dataset(seed=seed, count=na, chroms=2))
        b = ids(gen_dataset(seed=seed ^ 0xFFFF, count=nb, chroms=2), start=10_000)
        flt = JoinFilter(min_bp=min_bp, max_centre_distance=400)
        assert sweep_join(a, b, flt) == nested_loop_join(a, b, flt)


class TestFilterProperties:
    def test_monotone_in_min_bp_and_distance(self):
        a = ids(gen_dataset(seed=9, count=150))
        b = ids(gen_dataset(seed=10, count=150), start=300)
        base = set(
            (p.a_id, p.b_id) for p in sweep_join(a, b, JoinFilter(min_bp=1))
        )
        tighter_bp = set(
            (p.a_id, p.b_id) for p in sweep_join(a, b, JoinFilter(min_bp=30))
        )
        tighter_cd = set(
            (p.a_id, p.b_id)
            for p in sweep_join(a, b, JoinFilter(min_bp=1, max_centre_distance=50))
        )
        assert tighter_bp <= base
        assert tighter_cd <= base

    def test_pair_metrics_recompute_via_core(self):
        from regmap.intervals import bp_overlap, centre_distance

        a = ids(gen_dataset(seed=21, count=100))
        b = ids(gen_dataset(seed=22, count=100), start=200)
        lookup_a = dict(a)
        lookup_b = dict(b)
        for p in sweep_join(a, b):
            ra, rb = lookup_a[p.a_id], lookup_b[p.b_id]
            assert p.bp_overlap == bp_overlap(ra, rb)
            assert p.centre_distance == centre_distance(ra, rb)

    def test_bad_filter(self):
        with pytest.raises(ValueError):
            JoinFilter(max_centre_distance=-1)


class TestCountOverlapping:
    def test_distinct_query_regions(self):
        a = ids(
            [
                GenomicRegion("chr1", 0, 10),
                GenomicRegion("chr1", 100, 110),
                GenomicRegion("chr1", 200, 210),
            ]
        )
        # first query region hits two references, still counts once
        b = ids(
            [
                GenomicRegion("chr1", 0, 5),
                GenomicRegion("chr1", 5, 10),
                GenomicRegion("chr1", 100, 101),
            ],
            start=10,
        )
        assert count_overlapping(a, b) == (2, 3)

    def test_asymmetric_but_pairs_symmetric(self):
        a = ids(gen_dataset(seed=31, count=80))
        b = ids(gen_dataset(seed=32, count=120), start=500)
        over_ab, total_ab = count_overlapping(a, b)
        over_ba, total_ba = count_overlapping(b, a)
        assert total_ab == 80 and total_ba == 120
        pairs_ab = {(p.a_id, p.b_id) for p in sweep_join(a, b)}
        pairs_ba = {(p.b_id, p.a_id) for p in sweep_join(b, a)}
        assert pairs_ab == pairs_ba

    def test_percentage_rounding(self):
        assert overlap_percentage(6633, 6839) == 96.99
        assert overlap_percentage(4244, 6839) == 62.06
        assert overlap_percentage(4244, 6839, digits=0) == 62
        assert overlap_percentage(6633, 6839, digits=0) == 97
        assert overlap_percentage(1, 800) == 0.13  # exact .125 rounds up
        assert overlap_percentage(0, 0) == 0.0


def load_toy():
    catalog = load_catalog_file(toy_catalog_path())
    store = RegionStore()
    base = toy_catalog_path().parent
    for entry in catalog:
        regions, _ = parse_bed_file(base / entry.path, mode="permissive")
        store.import_dataset(entry.name, regions)
    return catalog, store


def brute_force_mining(catalog, store, min_bp=1):
    """Independent quadratic recomputation of the mining report."""
    rows = {}
    for q in catalog:
        for ref in catalog:
            if q.name == ref.name or q.assembly != ref.assembly:
                continue
            q_regions = store.valid_regions(q.name)
            r_regions = store.valid_regions(ref.name)
            hits = 0
            for _, qr in q_regions:
                found = False
                for _, rr in r_regions:
                    if qr.chrom != rr.chrom:
                        continue
                    if min(qr.end, rr.end) - max(qr.start, rr.start) >= min_bp:
                        found = True
                        break
                hits += int(found)
            total = len(q_regions)
            pct = Decimal(hits * 100) / Decimal(total) if total else Decimal(0)
            pct = float(pct.quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))
            rows[(q.name, ref.name)] = (hits, total, pct)
    return rows


class TestPairwiseMining:
    def test_toy_catalog_row_count_and_grouping(self):
        catalog, store = load_toy()
        rows = pairwise_mining(catalog, store)
        # 3 hg19 datasets -> 6 ordered pairs; the lone mm9 dataset has no partner
        assert len(rows) == 6
        assert all(r.assembly == "hg19" for r in rows)
        keys = [(r.assembly, r.query_name, r.ref_name) for r in rows]
        assert keys == sorted(keys)

    def test_matches_brute_force_oracle(self):
        catalog, store = load_toy()
        expected = brute_force_mining(catalog, store)
        for row in pairwise_mining(catalog, store):
            hits, total, pct = expected[(row.query_name, row.ref_name)]
            assert (row.overlapping, row.query_total, row.percentage) == (hits, total, pct)

    def test_hand_checked_rows(self):
        catalog, store = load_toy()
        rows = {
            (r.query_name, r.ref_name): r for r in pairwise_mining(catalog, store)
        }
        hnf4g_vs_marks = rows[("hnf4g_hepg2", "h3k4me1_hepg2")]
        assert (hnf4g_vs_marks.overlapping, hnf4g_vs_marks.query_total) == (6, 8)
        assert hnf4g_vs_marks.percentage == 75.0
        stag1_vs_hnf4g = rows[("stag1_hepg2", "hnf4g_hepg2")]
        assert (stag1_vs_hnf4g.overlapping, stag1_vs_hnf4g.query_total) == (4, 6)
        assert stag1_vs_hnf4g.percentage == 66.67

    def test_assembly_partition(self):
        catalog, store = load_toy()
        partial = [c for c in catalog if c.name != "stag1_hepg2"]
        rows = pairwise_mining(partial, store)
        # 2 hg19 datasets + 1 mm9 dataset -> 2 rows
        assert len(rows) == 2

    def test_missing_dataset_errors(self):
        catalog, _ = load_toy()
        with pytest.raises(ValueError, match="not imported"):
            pairwise_mining(catalog, RegionStore())


class TestTsvOutput:
    def test_pairs_tsv(self):
        pairs = [OverlapPair(1, 2, "chr1", 5, 7.5), OverlapPair(1, 3, "chr1", -4, 10.0)]
        buf = io.StringIO()
        write_pairs_tsv(pairs, buf)
        lines = buf.getvalue().splitlines()
        assert lines[0] == "a_id\tb_id\tchrom\tbp_overlap\tcentre_distance"
        assert lines[1] == "1\t2\tchr1\t5\t7.5"
        assert lines[2] == "1\t3\tchr1\t-4\t10"

    def test_mining_tsv_two_decimals(self):
        catalog, store = load_toy()
        rows = pairwise_mining(catalog, store)
        buf = io.StringIO()
        write_mining_tsv(rows, buf)
        lines = buf.getvalue().splitlines()
        assert lines[0].startswith("assembly\tquery_name\t")
        assert len(lines) == 7
        for line in lines[1:]:
            pct = line.rsplit("\t", 1)[1]
            whole, frac = pct.split(".")
            assert len(frac) == 2
