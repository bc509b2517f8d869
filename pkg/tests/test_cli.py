import csv
import io
import subprocess
import sys

import pytest

from prefixnormal.cli import run
from prefixnormal.enumeration import pnw_count, pnw_density
from prefixnormal.words import is_prefix_normal_naive, parse_word


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


class TestTest:
    def test_prefix_normal_word(self):
        code, out = call("test", "110100")
        assert code == 0
        assert out == "110100 prefix-normal decided_by=vseq\n"

    def test_rejected_word(self):
        code, out = call("test", "101111")
        assert code == 1
        assert out.startswith("101111 not-prefix-normal decided_by=run-filter witness=start:3,length:4,ones:4,prefix_ones:3")

    def test_mixed_words_and_method(self):
        code, out = call("test", "--method", "naive", "110100", "110101101100100")
        assert code == 1
        lines = out.splitlines()
        assert lines[0].endswith("decided_by=naive")
        assert "length:5,ones:4,prefix_ones:3" in lines[1]

    def test_bad_symbol(self, capsys):
        code, _ = call("test", "1012")
        assert code == 2
        assert "position 4" in capsys.readouterr().err

    def test_no_words(self):
        assert call("test")[0] == 2

    def test_file(self, tmp_path):
        path = tmp_path / "words.txt"
        path.write_text("110100\n\n111000\n")
        code, out = call("test", "--file", str(path))
        assert code == 0 and len(out.splitlines()) == 2

    def test_random_is_seeded(self):
        a = call("test", "--random", "20", "--length", "30", "--seed", "5")
        b = call("test", "--random", "20", "--length", "30", "--seed", "5")
        assert a == b
        for line in a[1].splitlines():
            word, verdict = line.split()[:2]
            assert (verdict == "prefix-normal") == is_prefix_normal_naive(parse_word(word))[0]


def test_pnf():
    code, out = call("pnf", "10100110110001110010")
    assert code == 0
    assert out.splitlines() == ["10100110110001110010", "11101001011001010010", "00011010101011010101"]


class TestQuery:
    def test_fig1_point(self):
        assert call("query", "10100110110001110010", "--ones", "5", "--zeros", "6") == (0, "yes 5 7\n")

    def test_absent(self):
        assert call("query", "10100110110001110010", "--ones", "8", "--zeros", "3") == (0, "no 5 7\n")

    def test_too_long(self):
        assert call("query", "0110", "--ones", "3", "--zeros", "2")[0] == 2

    def test_negative(self):
        with pytest.raises(SystemExit):
            call("query", "0110", "--ones", "-1", "--zeros", "2")


class TestEnum:
    def test_list_six(self):
        code, out = call("enum", "--list", "6")
        words = out.split()
        assert code == 0 and len(words) == 23 and words == sorted(words)

    def test_counts_csv(self):
        code, out = call("enum", "--max-n", "12", "--density")
        table = rows(out)
        assert [int(r["pnw"]) for r in table] == [pnw_count(n) for n in range(13)]
        for r in table:
            n = int(r["n"])
            assert sum(int(r[f"pnw_d{d}"]) for d in range(13)) == int(r["pnw"])
            assert all(int(r[f"pnw_d{d}"]) == 0 for d in range(n + 1, 13))

    def test_workers_do_not_change_output(self):
        assert call("enum", "--max-n", "16") == call("enum", "--max-n", "16", "--workers", "3")


class TestCrit:
    def test_recurrence_on_own_output(self):
        code, out = call("crit", "--max-n", "12")
        table = rows(out)
        assert code == 0 and table[0]["n"] == "2"
        for a, b in zip(table, table[1:]):
            assert int(b["pnw"]) == 2 * int(a["pnw"]) - int(a["crit"])
        for r in table:
            assert len(r["ratio"].split(".")[1]) == 3

    def test_byte_identical(self):
        assert call("crit", "--max-n", "14") == call("crit", "--max-n", "14")


def test_ratios():
    code, out = call("ratios", "--min-n", "10", "--max-n", "12", "--step", "2")
    assert code == 0
    assert out.splitlines() == [
        "n,M_trivial,ratio_trivial,M_both,ratio_both",
        "10,256,2.500,222,2.168",
        "12,874,2.561,731,2.142",
    ]


class TestExt:
    def test_count(self):
        assert call("ext", "1010", "--m", "4") == (0, "8\n")

    def test_density(self):
        code, out = call("ext", "10", "--m", "6", "--density", "3")
        assert code == 0 and int(out) == pnw_density(6, 3)

    def test_budget(self):
        assert call("ext", "1", "--m", "60")[0] == 2


def test_bounds():
    code, out = call("bounds", "--max-n", "20")
    table = rows(out)
    assert code == 0 and table[0]["n"] == "2"
    for r in table:
        assert float(r["pnw_fraction"]) <= float(r["upper_bound"]) + 0.0005


class TestGame:
    def test_solve_alice(self):
        code, out = call("game", "solve", "--n", "4")
        lines = out.splitlines()
        assert code == 0 and lines[0] == "winner Alice"
        assert lines[1].startswith("first_move position=")

    def test_solve_bob(self):
        code, out = call("game", "solve", "--n", "7")
        assert out.splitlines()[0] == "winner Bob"

    def test_blocks_verify(self):
        assert call("game", "blocks", "--n", "12", "--k", "2") == (0, "alice_wins yes\n")

    def test_blocks_count(self):
        assert call("game", "blocks", "--n", "12", "--k", "1", "--count") == (0, "outcomes 16 bound 16\n")

    def test_blocks_bad_config(self):
        assert call("game", "blocks", "--n", "10", "--k", "2")[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "prefixnormal", "test", "110100"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("110100 prefix-normal")
    proc = subprocess.run([sys.executable, "-m", "prefixnormal", "test", "101111"], capture_output=True, text=True)
    assert proc.returncode == 1
