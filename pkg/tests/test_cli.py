"""End-to-end runs of the command-line front end."""

import csv
import io

import pytest

from dsulab import load_edge_list, oracle_mst_weight, parse_graph_spec
from dsulab.cli import main
from dsulab.experiment import CSV_HEADER


def read_rows(text):
    return list(csv.DictReader(io.StringIO(text)))


# -- gen ----------------------------------------------------------------------


def test_gen_writes_loadable_file(tmp_path):
    out = tmp_path / "g.txt.gz"
    assert main(["gen", "er:100:250:7", str(out), "--weighted"]) == 0
    g = load_edge_list(out)
    assert g.m == 250
    assert g.weighted


def test_gen_rejects_file_paths(tmp_path):
    src = tmp_path / "in.txt"
    src.write_text("0 1\n")
    assert main(["gen", str(src), str(tmp_path / "out.txt")]) == 2


def test_gen_rejects_malformed_spec(tmp_path):
    assert main(["gen", "er:nope", str(tmp_path / "out.txt")]) == 2


# -- cc / mst -----------------------------------------------------------------


def test_cc_stdout_csv(capsys):
    rc = main(["cc", "--graph", "er:300:800:2", "--threads", "1,2",
               "--warmup", "0", "--iters", "2", "--seed", "2"])
    assert rc == 0
    out = capsys.readouterr().out
    lines = out.splitlines()
    assert lines[0] == ",".join(CSV_HEADER)
    rows = read_rows(out)
    assert len(rows) == 4
    assert {r["threads"] for r in rows} == {"1", "2"}
    assert all(r["benchmark"] == "cc" for r in rows)
    assert all(r["components"] for r in rows)
    counts = {r["components"] for r in rows}
    assert len(counts) == 1  # same stream, same final partition


def test_cc_csv_file(tmp_path):
    out = tmp_path / "rows.csv"
    rc = main(["cc", "--graph", "hc:2000:5000:1", "--variant", "rem",
               "--threads", "2", "--warmup", "0", "--iters", "1",
               "--csv", str(out)])
    assert rc == 0
    rows = list(csv.DictReader(out.open()))
    assert len(rows) == 1
    assert rows[0]["variant"] == "rem"
    assert rows[0]["compaction"] == "splitting"


def test_mst_matches_oracle(capsys):
    rc = main(["mst", "--graph", "er:400:1600:5", "--threads", "1,4",
               "--warmup", "0", "--iters", "1"])
    assert rc == 0
    rows = read_rows(capsys.readouterr().out)
    want = oracle_mst_weight(parse_graph_spec("er:400:1600:5", weighted=True))
    assert [int(r["mst_weight"]) for r in rows] == [want, want]
    assert all(r["components"] == "" for r in rows)


def test_structure_flags_reach_the_rows(capsys):
    rc = main(["cc", "--graph", "er:100:200:0", "--variant",
               "cas-pseudo-random", "--compaction", "halving", "--sync",
               "plain-write", "--ipc", "--threads", "1", "--warmup", "0",
               "--iters", "1"])
    assert rc == 0
    row = read_rows(capsys.readouterr().out)[0]
    assert row["variant"] == "cas-pseudo-random"
    assert row["compaction"] == "halving"
    assert row["sync"] == "plain-write"
    assert row["ipc"] == "1"


def test_er_flag_selects_early_recognition(capsys):
    rc = main(["cc", "--graph", "er:100:200:0", "--er", "--threads", "1",
               "--warmup", "0", "--iters", "1"])
    assert rc == 0
    row = read_rows(capsys.readouterr().out)[0]
    assert row["variant"] == "early-recognition"
    assert row["er"] == "1"


def test_er_flag_conflicts_with_other_variants():
    assert main(["cc", "--graph", "er:100:200:0", "--er",
                 "--variant", "cas-rank"]) == 2


def test_bad_thread_list_is_a_usage_error():
    with pytest.raises(SystemExit):
        main(["cc", "--graph", "er:10:10:0", "--threads", "0"])
    with pytest.raises(SystemExit):
        main(["cc", "--graph", "er:10:10:0", "--threads", "a,b"])


def test_invalid_strategy_combo_exits_two():
    assert main(["cc", "--graph", "er:10:10:0", "--er",
                 "--compaction", "compression"]) == 2
    assert main(["cc", "--graph", "er:10:10:0", "--variant", "rem",
                 "--ipc"]) == 2


def test_missing_graph_file_exits_two(tmp_path):
    assert main(["cc", "--graph", str(tmp_path / "absent.txt")]) == 2


# -- matrix ----------------------------------------------------------------------


def test_matrix_sweeps_all_combos(tmp_path, capsys):
    out = tmp_path / "matrix.csv"
    rc = main(["matrix", "--graph", "er:64:160:3", "--threads", "2",
               "--warmup", "0", "--iters", "1", "--csv", str(out)])
    assert rc == 0
    rows = list(csv.DictReader(out.open()))
    assert len(rows) == 67
    combos = {(r["variant"], r["compaction"], r["sync"], r["ipc"])
              for r in rows}
    # the lock variant's inner linking is not a CSV column, so its sixteen
    # rows collapse to four tuples here
    assert len(combos) == 55
    assert {r["variant"] for r in rows} == {
        "cas-rank", "cas-pseudo-random", "early-recognition", "rem",
        "coarse-lock"}
    assert sum(r["variant"] == "coarse-lock" for r in rows) == 16
    progress = capsys.readouterr().err
    assert "[67/67]" in progress


# -- verify -----------------------------------------------------------------------


def test_verify_quick_battery_passes(capsys):
    rc = main(["verify", "--quick"])
    out = capsys.readouterr().out
    assert rc == 0, out
    assert "SUMMARY passed=" in out
    assert "failed=0" in out
    assert "FAIL" not in out
    assert out.count("PASS") >= 7
