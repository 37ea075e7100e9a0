import json

import pytest

from x1curves.data import (ChecksumError, ModelDatabase, ModelEntry, export_tables, load_database,
                           load_entry, table_row, verify_database)
from x1curves.poly import BiPoly

BUNDLED = list(range(4, 29)) + [30]


def squash(s: str) -> str:
    return s.replace(" ", "")


def test_bundled_levels():
    db = load_database()
    assert list(db) == BUNDLED
    assert 29 not in db
    for N in range(8, 24):
        assert db[N].raw_F is not None
    for N in (11, 14, 15):
        assert db[N].genus1 is not None
    genus = {N: db[N].genus for N in db}
    assert [N for N, g in genus.items() if g == 0] == [4, 5, 6, 7, 8, 9, 10, 12]
    assert [N for N, g in genus.items() if g == 1] == [11, 14, 15]


def test_stats_genus_column():
    db = load_database()
    for N in db:
        if db[N].stats:
            assert db[N].stats["g"] == db[N].genus


def test_checksum_detects_corruption():
    obj = load_entry(13).to_json()
    ModelEntry.from_json(obj)
    bad = json.loads(json.dumps(obj))
    bad["optimized_f"]["terms"][0][2] = "7"
    with pytest.raises(ChecksumError):
        ModelEntry.from_json(bad)
    # unchecked load still parses
    assert ModelEntry.from_json(bad, check=False).N == 13


def test_entry_round_trip():
    for N in BUNDLED:
        e = load_entry(N)
        assert ModelEntry.from_json(e.to_json()) == e


def test_database_round_trip():
    db = load_database()
    assert ModelDatabase.loads(db.dumps()) == db


def test_export_row16_matches_printed_table():
    assert squash(table_row(load_entry(16), "optimized")[0]) == squash("16 y^2 + (x^3 + x^2 - x + 1)y + x^2")


def test_export_genus1_row11():
    rows = [squash(r) for r in table_row(load_entry(11), "genus1")]
    assert rows == ["11y^2=x^3-432x+8208", "r=(y+108)/216", "s=1+(y-108)/(6x+72)"]


def test_export_stats_row16():
    assert table_row(load_entry(16), "stats") == ["16  2 3 2 13 6 5 23"]
    with pytest.raises(ValueError):
        table_row(load_entry(16), "nope")


def test_export_files(tmp_path):
    paths = export_tables(tmp_path)
    assert {p.name for p in paths} == {"x1_models.json", "x1_tables.txt"}
    db = ModelDatabase.loads((tmp_path / "x1_models.json").read_text())
    assert db == load_database()
    for N in BUNDLED:
        if db[N].optimized_f is not None:
            assert BiPoly.from_json(db[N].optimized_f.to_json()) == db[N].optimized_f
    text = (tmp_path / "x1_tables.txt").read_text()
    assert "16  y^2 + (x^3 + x^2 - x + 1)y + x^2" in text
    with pytest.raises(ValueError):
        export_tables(tmp_path, ("xml",))


def test_verify_small_subset():
    db = load_database()
    sub = ModelDatabase({N: db[N] for N in (7, 11, 13, 24)})
    report = verify_database(sub, n_primes=2, points=10)
    assert report.ok
    skipped = [r for r in report.results if r.ok is None]
    assert [r.N for r in skipped] == [7, 24]


def test_verify_reports_corrupted_row13():
    db = load_database()
    e = db[13]
    terms = dict(e.optimized_f.terms)
    terms[(0, 0)] = terms.get((0, 0), 0) + 1
    bad = ModelEntry(**{**e.__dict__, "optimized_f": BiPoly(terms, e.optimized_f.vars)})
    report = verify_database(ModelDatabase({13: bad, 16: db[16]}), n_primes=2, points=10, raw=False)
    assert not report.ok
    assert {r.N for r in report.failures()} == {13}
