import csv
import json

import pytest

from conftest import cached_compute
from gross_sha.cli import EXIT_OK, EXIT_USAGE, main
from gross_sha.numerics import PrecisionContext
from gross_sha.records import CSV_HEADER, SCHEMA_VERSION, RunRecord, csv_text, load_cache, record_from_result


def test_record_roundtrip():
    rec = record_from_result(cached_compute(23), PrecisionContext(50))
    back = RunRecord.from_json(rec.to_json())
    assert back == rec
    assert back.timing == rec.timing
    assert rec.sha_rounded == 1 and rec.integral and rec.is_square


def test_equality_ignores_timing():
    rec = record_from_result(cached_compute(7), PrecisionContext(50))
    other = RunRecord.from_json(rec.to_json())
    other.timing = {"runtime_ms": 12345}
    assert other == rec


def test_csv_header_and_blank_runtime():
    rec = record_from_result(cached_compute(7), PrecisionContext(50))
    rows = list(csv.reader(csv_text([rec]).splitlines()))
    assert rows[0] == CSV_HEADER
    assert ",".join(rows[0]) == "q,mod8,h,j,r,m,epsilon_id,L,omega,sha_analytic,sha_rounded,abs_error,is_square,precision,X,runtime_ms"
    assert rows[1][-1] == ""
    assert rows[1][:7] == ["7", "7", "1", "1", "1", "1", "0"]
    timed = list(csv.reader(csv_text([rec], timings=True).splitlines()))
    assert timed[1][-1] == str(rec.timing["runtime_ms"])


def test_load_cache_skips_bad_lines(tmp_path):
    rec = record_from_result(cached_compute(7), PrecisionContext(50))
    path = tmp_path / "c.jsonl"
    foreign = json.loads(rec.to_json())
    foreign["schema_version"] = SCHEMA_VERSION + 1
    path.write_text("not json\n" + json.dumps({"q": 3}) + "\n" + json.dumps(foreign) + "\n" + rec.to_json() + "\n")
    cache = load_cache(str(path))
    assert list(cache) == [7] and cache[7] == rec


def test_compute_human(capsys):
    assert main(["compute", "--q", "7"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "#Sha (rounded)   1" in out
    assert "perfect square   yes" in out


def test_compute_json(capsys):
    assert main(["compute", "--q", "23", "--json"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["h"] == 3 and data["sha_rounded"] == 1 and data["integral"]


@pytest.mark.parametrize("q", ["4", "13", "3", "x"])
def test_compute_rejects_bad_q(q):
    with pytest.raises(SystemExit) as exc:
        code = main(["compute", "--q", q])
        raise SystemExit(code)
    assert exc.value.code == EXIT_USAGE


def test_usage_errors():
    for argv in (["bogus"], ["verify", "--suite", "nope"], ["table", "--mod8", "7"]):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == EXIT_USAGE
    assert main(["table", "--mod8", "5", "--qmax", "50", "--out", "/dev/null"]) == EXIT_USAGE
    assert main(["anchor", "--q", "23"]) == EXIT_USAGE


def test_table_resume_and_jobs(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["table", "--mod8", "3", "--qmax", "60", "--out", str(a), "--jobs", "1"]) == EXIT_OK
    assert main(["table", "--mod8", "3", "--qmax", "60", "--out", str(b), "--jobs", "3"]) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()
    rows = list(csv.DictReader(a.read_text().splitlines()))
    assert [int(r["q"]) for r in rows] == [11, 19, 43, 59]
    assert all(r["is_square"] == "true" for r in rows)

    # drop the last two cached records and resume
    cache = tmp_path / "a.csv.jsonl"
    lines = cache.read_text().splitlines()
    partial = tmp_path / "partial.jsonl"
    partial.write_text("\n".join(lines[:2]) + "\n")
    c = tmp_path / "c.csv"
    assert main(["table", "--mod8", "3", "--qmax", "60", "--out", str(c), "--jobs", "1", "--resume", str(partial)]) == EXIT_OK
    assert c.read_bytes() == a.read_bytes()
    assert len(partial.read_text().splitlines()) == 4


def test_verify_census(capsys):
    assert main(["verify", "--suite", "census"]) == EXIT_OK
    assert "18" in capsys.readouterr().out


def test_anchor_command(capsys):
    assert main(["anchor", "--q", "11", "--bound", "200"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "sign=upper" in out and "sign=lower" in out
