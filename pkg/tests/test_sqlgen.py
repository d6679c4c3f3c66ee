import re
from pathlib import Path

import pytest

from regmap.joins import JoinFilter
from regmap.sqlgen import (
    DEMO_REGIONS,
    ScriptKind,
    SqlDialect,
    SqlScript,
    emit_all,
    emit_batch_insert,
    emit_bulk_import,
    emit_ddl,
    emit_geo_query,
    emit_random_gen,
    emit_regmap_query,
    emit_rowwise_insert,
    emit_search_queries,
)

GOLDEN_DIR = Path(__file__).parent / "goldens"

ALL_DIALECTS = list(SqlDialect)


class TestDdl:
    def test_postgres_structure(self):
        text = emit_ddl(SqlDialect.POSTGRES).text
        assert "create table regions" in text
        assert "start_pos bigint not null" in text
        assert "end_pos bigint not null" in text
        assert "create table regiondesc" in text
        assert "create table staging_regions" in text
        assert "engine=" not in text

    def test_staging_has_no_id(self):
        text = emit_ddl(SqlDialect.POSTGRES).text
        staging = text.split("create table staging_regions")[1]
        assert re.search(r"^\s*id ", staging, re.MULTILINE) is None
        assert "primary key" not in staging

    def test_mysql_engines_differ_only_in_engine_clause(self):
        innodb = emit_ddl(SqlDialect.MYSQL_INNODB).text
        myisam = emit_ddl(SqlDialect.MYSQL_MYISAM).text
        assert innodb != myisam
        assert innodb.replace("engine=innodb", "engine=myisam") == myisam


class TestRegmapQuery:
    def test_case_has_four_branches_in_order(self):
        text = emit_regmap_query(SqlDialect.POSTGRES).text
        whens = re.findall(r"when (.+?) then (.+)", text)
        assert len(whens) == 4
        assert whens[0] == (
            "a.end_pos <= b.end_pos and a.start_pos >= b.start_pos",
            "a.end_pos - a.start_pos",
        )
        assert whens[1][1] == "b.end_pos - b.start_pos"
        assert whens[2][1] == "a.end_pos - b.start_pos"
        assert whens[3][1] == "b.end_pos - a.start_pos"

    def test_filter_clause_mirrors_view_columns(self):
        script = emit_regmap_query(
            SqlDialect.POSTGRES, JoinFilter(min_bp=1, max_centre_distance=1000)
        )
        assert "where bpooverlap >= 1" in script.text
        assert "centredistance < 1000" in script.text

    def test_default_has_no_distance_bound(self):
        text = emit_regmap_query(SqlDialect.POSTGRES).text
        assert "centredistance <" not in text

    def test_mysql_uses_integer_division(self):
        assert " div 2 " in emit_regmap_query(SqlDialect.MYSQL_INNODB).text
        assert " / 2 " in emit_regmap_query(SqlDialect.POSTGRES).text

    def test_ordered_output(self):
        for dialect in ALL_DIALECTS:
            assert "order by a_id, b_id" in emit_regmap_query(dialect).text


class TestGeoQuery:
    def test_postgres_uses_lseg_intersection(self):
        text = emit_geo_query(SqlDialect.POSTGRES).text
        assert "?#" in text
        assert "lseg(point(a.start_pos, 0), point(a.end_pos, 0))" in text

    def test_mysql_uses_st_intersects(self):
        text = emit_geo_query(SqlDialect.MYSQL_INNODB).text
        assert "st_intersects" in text
        assert "linestring" in text

    def test_returns_id_pairs_only(self):
        text = emit_geo_query(SqlDialect.POSTGRES).text
        first = text.split("from")[0]
        assert "bpooverlap" not in first
        assert "a.id as a_id" in first and "b.id as b_id" in first


class TestBulkImport:
    def test_three_statements(self):
        for dialect in ALL_DIALECTS:
            stmts = emit_bulk_import(dialect, "/data/x.bed").statements()
            assert len(stmts) == 3
            assert stmts[2] == "truncate table staging_regions;"

    def test_dialect_load_keywords(self):
        assert emit_bulk_import(SqlDialect.POSTGRES, "/d/x.bed").text.startswith("copy ")
        for d in (SqlDialect.MYSQL_INNODB, SqlDialect.MYSQL_MYISAM):
            assert emit_bulk_import(d, "/d/x.bed").text.startswith("load data infile ")

    def test_id_assignment_continues_from_max(self):
        text = emit_bulk_import(SqlDialect.POSTGRES, "/d/x.bed").text
        assert "coalesce(max(id), 0)" in text
        assert "row_number() over" in text

    def test_path_validation(self):
        with pytest.raises(ValueError, match="unsafe"):
            emit_bulk_import(SqlDialect.POSTGRES, "/tmp/x'; drop table regions; --")


class TestRandomGen:
    def test_single_transaction(self):
        for dialect in ALL_DIALECTS:
            text = emit_random_gen(dialect, count=100).text
            assert text.count("start transaction;") == 1
            assert text.count("commit;") == 1
            assert text.count("insert into regions") == 1

    def test_parameter_substitution(self):
        text = emit_random_gen(
            SqlDialect.POSTGRES, count=777, coord_lower=10, coord_upper=2000, max_size=100
        ).text
        assert "generate_series(1, 777)" in text
        assert "floor(random() * 1890)" in text  # 2000 - 10 - 100
        assert "cast(10 + floor" in text

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            emit_random_gen(SqlDialect.POSTGRES, count=0)
        with pytest.raises(ValueError):
            emit_random_gen(SqlDialect.POSTGRES, count=10, coord_lower=0, coord_upper=400)


class TestInsertScripts:
    def test_batch_is_one_transactional_insert(self):
        stmts = emit_batch_insert(SqlDialect.POSTGRES).statements()
        assert stmts[0] == "start transaction;"
        assert stmts[-1] == "commit;"
        assert sum("insert into regions" in s for s in stmts) == 1

    def test_rowwise_is_one_statement_per_region(self):
        stmts = emit_rowwise_insert(SqlDialect.POSTGRES).statements()
        assert len(stmts) == len(DEMO_REGIONS)
        assert all(s.startswith("insert into regions") for s in stmts)
        assert "transaction" not in " ".join(stmts)

    def test_explicit_ids_from_start_id(self):
        text = emit_batch_insert(
            SqlDialect.POSTGRES, DEMO_REGIONS[:2], dataset=7, start_id=100
        ).text
        assert "(100, 7, 'chr1', 100, 250)" in text
        assert "(101, 7, 'chr1', 200, 600)" in text

    def test_chromosome_token_validation(self):
        from regmap.intervals import GenomicRegion

        bad = GenomicRegion("chr1;drop", 0, 10)
        with pytest.raises(ValueError, match="token"):
            emit_batch_insert(SqlDialect.POSTGRES, [bad])

    def test_batch_requires_rows(self):
        with pytest.raises(ValueError):
            emit_batch_insert(SqlDialect.POSTGRES, [])


class TestSearchQueries:
    def test_invalid_predicate(self):
        invalid, _ = emit_search_queries(SqlDialect.POSTGRES)
        assert invalid.kind is ScriptKind.INVALID_SEARCH
        assert "start_pos < 0" in invalid.text
        assert "end_pos < start_pos" in invalid.text

    def test_default_proximity_parameters_are_myc_tss(self):
        _, proximity = emit_search_queries(SqlDialect.POSTGRES)
        # chr8:128748314 +/- 100000
        assert "chromosome = 'chr8'" in proximity.text
        assert "128848314" in proximity.text
        assert "128648314" in proximity.text

    def test_window_validation(self):
        with pytest.raises(ValueError):
            emit_search_queries(SqlDialect.POSTGRES, window=0)
        with pytest.raises(ValueError, match="token"):
            emit_search_queries(SqlDialect.POSTGRES, chrom="chr8; drop")


class TestDeterminismAndGoldens:
    def test_identical_inputs_identical_bytes(self):
        for dialect in ALL_DIALECTS:
            first = [s.text for s in emit_all(dialect)]
            second = [s.text for s in emit_all(dialect)]
            assert first == second

    @pytest.mark.parametrize("dialect", ALL_DIALECTS, ids=lambda d: d.value)
    def test_scripts_match_frozen_goldens(self, dialect):
        for script in emit_all(dialect):
            golden = GOLDEN_DIR / script.filename
            assert golden.exists(), f"missing golden {script.filename}"
            assert script.text == golden.read_text(encoding="utf-8"), script.filename

    def test_mysql_pair_differs_only_in_engine_clause(self):
        innodb = {s.kind: s.text for s in emit_all(SqlDialect.MYSQL_INNODB)}
        myisam = {s.kind: s.text for s in emit_all(SqlDialect.MYSQL_MYISAM)}
        for kind, text in innodb.items():
            assert text.replace("engine=innodb", "engine=myisam") == myisam[kind], kind

    def test_text_hygiene(self):
        for dialect in ALL_DIALECTS:
            for script in emit_all(dialect):
                assert script.text.endswith(";\n"), script.filename
                assert "\r" not in script.text
                assert script.text == script.text.lower() or any(
                    token in script.text for token in ("chrX",)
                )

    def test_statement_splitting_reassembles(self):
        for dialect in ALL_DIALECTS:
            for script in emit_all(dialect):
                stmts = script.statements()
                assert stmts, script.filename
                assert all(s.endswith(";") for s in stmts)
                # no statement loses content relative to the script
                squashed = re.sub(r"\s+", " ", " ".join(stmts))
                original = re.sub(r"\s+", " ", script.text).strip()
                assert squashed == original


class TestScriptObject:
    def test_filename_tagging(self):
        script = emit_ddl(SqlDialect.POSTGRES)
        assert script.filename == "ddl.postgres.sql"
        assert isinstance(script, SqlScript)

    def test_kind_coverage(self):
        kinds = {s.kind for s in emit_all(SqlDialect.POSTGRES)}
        assert kinds == set(ScriptKind)
