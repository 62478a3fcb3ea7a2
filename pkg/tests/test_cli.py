"""Command-line interface: output shapes and exit codes, run in-process."""

import json

import pytest

from arcwords import Digraph, digraph_to_text, family, parse_digraph
from arcwords.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_len_family(capsys):
    code, out, _ = run(capsys, "len", "--family", "theta:3", "--alpha", "3 3 3")
    assert code == 0
    assert out.strip() == "2"


def test_len_with_word(capsys):
    code, out, _ = run(capsys, "len", "--family", "K:4", "--alpha", "2 1 4 4", "--word")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "4"
    assert lines[1].count("->") == 4
    assert lines[2] == "check: ok"


def test_word_alias(capsys):
    code, out, _ = run(capsys, "word", "--family", "theta:4", "--alpha", "2 2 3 4")
    assert code == 0
    assert out.strip().splitlines()[0] == "1"
    assert "(1->2)" in out


def test_len_digraph_file(tmp_path, capsys):
    path = tmp_path / "d.txt"
    path.write_text(digraph_to_text(family("Q", 5)))
    code, out, _ = run(capsys, "len", "--digraph", str(path), "--alpha", "2 2 3 4 5")
    assert code == 0
    assert out.strip() == "1"


def test_len_non_member_exits_1(capsys):
    code, out, err = run(capsys, "len", "--family", "Pvec:3", "--alpha", "1 1 1")
    assert code == 1
    assert "not a member" in err


def test_len_short_alpha_fills_fixed_points(capsys):
    # "3" fills to "3 2 3": move 1 onto 3 keeping 2 and 3 fixed, which on the
    # directed triangle needs two full laps
    code, out, _ = run(capsys, "len", "--family", "theta:3", "--alpha", "3")
    assert code == 0 and out.strip() == "6"
    code, full, _ = run(capsys, "len", "--family", "theta:3", "--alpha", "3 2 3")
    assert code == 0 and full == out


def test_len_parse_failure_exits_2(tmp_path, capsys):
    code, _, err = run(capsys, "len", "--family", "theta:3", "--alpha", "1 4 2")
    assert code == 2
    assert "out of range" in err
    path = tmp_path / "bad.txt"
    path.write_text("graph 3\n1 2\n")
    code, _, err = run(capsys, "len", "--digraph", str(path), "--alpha", "1 1 1")
    assert code == 2
    assert "line 1" in err
    code, _, err = run(capsys, "len", "--family", "theta", "--alpha", "1 1 1")
    assert code == 2  # theta needs an explicit order
    code, _, err = run(capsys, "len", "--family", "nosuch:4", "--alpha", "1 1 1 1")
    assert code == 2


def test_len_size_limit_exits_3(tmp_path, capsys):
    path = tmp_path / "big.txt"
    path.write_text(digraph_to_text(family("K", 9)))
    code, _, err = run(capsys, "len", "--digraph", str(path), "--alpha", " ".join("1" * 9))
    assert code == 3


def test_gamma_family_without_order(capsys):
    code, out, _ = run(capsys, "len", "--family", "gamma3", "--alpha", "2 2 3 4")
    assert code == 0


def test_table_single_digraph(capsys):
    code, out, _ = run(capsys, "table", "--family", "pi:6")
    assert code == 0
    assert "24" in out


def test_table_tournament_class(capsys):
    code, out, _ = run(capsys, "table", "--class", "tournaments", "--n", "5")
    assert code == 0
    for token in ("11", "14", "17"):
        assert token in out


def test_table_connected_csv(capsys):
    code, out, _ = run(capsys, "table", "--class", "connected", "--n", "4", "--format", "csv")
    assert code == 0
    rows = [line.split(",") for line in out.strip().splitlines()]
    assert rows[0][:3] == ["r", "min", "max"]
    assert [r[2] for r in rows[1:]] == ["3", "11", "13"]


def test_table_acyclic_json(capsys):
    code, out, _ = run(capsys, "table", "--class", "acyclic", "--n", "5", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert [row["max"] for row in data["rows"]] == [4, 7, 6, 4]


def test_table_class_requires_n(capsys):
    code, _, err = run(capsys, "table", "--class", "acyclic")
    assert code == 2


def test_table_size_limit(capsys):
    code, _, err = run(capsys, "table", "--class", "all", "--n", "6")
    assert code == 3
    assert "--long" in err or "long" in err


def test_table_cache_dir(tmp_path, capsys):
    code, first, _ = run(capsys, "table", "--class", "tournaments", "--n", "4",
                         "--cache-dir", str(tmp_path))
    assert code == 0
    assert len(list(tmp_path.iterdir())) == 1
    code, second, _ = run(capsys, "table", "--class", "tournaments", "--n", "4",
                          "--cache-dir", str(tmp_path), "--format", "csv")
    assert code == 0
    assert "8,8" in second


def test_table_from_bitstrings(tmp_path, capsys):
    path = tmp_path / "t.txt"
    path.write_text("101\n")
    code, out, _ = run(capsys, "table", "--from", str(path), "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[1].startswith("1,2,2")
    assert lines[2].startswith("2,6,6")


def test_table_from_rejects_weak_tournaments(tmp_path, capsys):
    path = tmp_path / "t.txt"
    path.write_text("111\n")  # transitive: not strongly connected
    code, _, err = run(capsys, "table", "--from", str(path))
    assert code == 1


def test_verify_pass(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "C3", "--n", "3")
    assert code == 0
    assert out.strip().endswith("PASS")


def test_verify_all_characterizations(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "characterizations", "--n", "3")
    assert code == 0
    for theorem in ("C1", "C2", "C3", "CyclFree"):
        assert theorem in out
    assert out.strip().endswith("PASS")


def test_verify_conjectures(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "conjectures", "--n", "5")
    assert code == 0
    assert "observed max" in out


def test_verify_bounds_even_n_exits_2(capsys):
    code, _, err = run(capsys, "verify", "--suite", "bounds", "--n", "4")
    assert code == 2


def test_verify_constructions(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "constructions", "--n", "3")
    assert code == 0
    assert "express_star_optimal" in out


def test_verify_size_limit(capsys):
    code, _, err = run(capsys, "verify", "--suite", "C1", "--n", "7")
    assert code == 3


def test_gen_roundtrip(tmp_path, capsys):
    code, out, _ = run(capsys, "gen", "--family", "kappa:5")
    assert code == 0
    assert parse_digraph(out) == family("kappa", 5)
    target = tmp_path / "k.txt"
    code, out, _ = run(capsys, "gen", "--family", "kappa:5", "--out", str(target))
    assert code == 0
    assert parse_digraph(target.read_text()) == family("kappa", 5)


def test_ingest_text(tmp_path, capsys):
    path = tmp_path / "t.txt"
    path.write_text("101\n011\n")
    code, out, _ = run(capsys, "ingest", str(path))
    assert code == 0
    assert out.count("digraph 3") == 2
    assert "strong=True" in out and "strong=False" in out


def test_ingest_json(tmp_path, capsys):
    path = tmp_path / "t.txt"
    path.write_text("101\n")
    code, out, _ = run(capsys, "ingest", str(path), "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data[0]["n"] == 3 and data[0]["strong"] is True


def test_ingest_bad_line_exits_2(tmp_path, capsys):
    path = tmp_path / "t.txt"
    path.write_text("10z\n")
    code, _, err = run(capsys, "ingest", str(path))
    assert code == 2
    assert "0/1" in err


def test_missing_file_exits_2(capsys):
    code, _, err = run(capsys, "len", "--digraph", "/nonexistent/x.txt", "--alpha", "1")
    assert code == 2
