"""Tests for the text formats and the command-line front end."""
import numpy as np
import pytest

from orthobeltway import second_moment_invariants
from orthobeltway.cli import cli_main
from orthobeltway.errors import FileFormatError
from orthobeltway.fileio import (
    read_invariants,
    read_signal,
    write_invariants,
    write_signal,
)

from conftest import random_blocked_signal, random_radially_cf_signal


class TestSignalFormat:
    def test_round_trip_is_byte_identical(self, rng):
        for _ in range(10):
            s = random_radially_cf_signal(rng, n=3, k=4)
            text = write_signal(s)
            assert write_signal(read_signal(text)) == text

    def test_comments_and_blanks_ignored(self):
        text = "# a signal\n\n2 2\n1 1 0  # first point\n2 0 2\n"
        s = read_signal(text)
        assert s.k == 2 and s.dim == 2
        assert np.array_equal(s.weights, [1.0, 2.0])

    def test_bad_header(self):
        with pytest.raises(FileFormatError):
            read_signal("2\n1 1 0\n")

    def test_wrong_line_count(self):
        with pytest.raises(FileFormatError):
            read_signal("2 2\n1 1 0\n")

    def test_non_numeric(self):
        with pytest.raises(FileFormatError):
            read_signal("2 1\n1 x 0\n")

    def test_invalid_signal_rejected(self):
        with pytest.raises(FileFormatError):
            read_signal("2 2\n1 1 0\n1 1 0\n")


class TestInvariantFormat:
    def test_round_trip_is_byte_identical(self, rng):
        for _ in range(10):
            s = random_blocked_signal(rng)
            inv = second_moment_invariants(s)
            text = write_invariants(inv)
            assert write_invariants(read_invariants(text)) == text

    def test_lines_are_sorted(self, rng):
        s = random_radially_cf_signal(rng, n=3, k=3)
        lines = write_invariants(second_moment_invariants(s)).splitlines()[1:]
        keys = [tuple(float(v) for v in line.split()) for line in lines]
        assert keys == sorted(keys)

    def test_bad_entry_count(self):
        with pytest.raises(FileFormatError):
            read_invariants("2\n1 1 1 1\n")


class TestCli:
    def test_bound_values(self, capsys):
        assert cli_main(["bound", "4"]) == 0
        assert capsys.readouterr().out.strip() == "30"
        assert cli_main(["bound", "6"]) == 0
        assert capsys.readouterr().out.strip() == "1816214400"
        assert cli_main(["bound", "1", "1", "1", "1", "1"]) == 0
        assert capsys.readouterr().out.strip() == "1"

    def test_usage_error_exits_2(self, capsys):
        assert cli_main(["bound"]) == 2
        assert "usage" in capsys.readouterr().err
        assert cli_main([]) == 2
        capsys.readouterr()
        assert cli_main(["no-such-command"]) == 2
        capsys.readouterr()

    def test_domain_error_exits_1(self, tmp_path, capsys):
        # pairs {1,2} and {2,3} of this support share an orbit triple
        bad = tmp_path / "bad.txt"
        bad.write_text("2 3\n1 1 0\n1 0 1\n1 -1 0\n")
        assert cli_main(["invariants", str(bad), "-o", str(tmp_path / "inv.txt")]) == 1
        assert "error" in capsys.readouterr().err

    def test_signal_invariants_recover_cycle(self, tmp_path, rng):
        s = random_radially_cf_signal(rng, n=3, k=3)
        sig = tmp_path / "sig.txt"
        inv = tmp_path / "inv.txt"
        rec = tmp_path / "rec.txt"
        sig.write_text(write_signal(s))
        assert cli_main(["invariants", str(sig), "-o", str(inv)]) == 0
        assert cli_main(["recover", str(inv), "--dim", "3", "-o", str(rec)]) == 0
        assert cli_main(["equiv", str(sig), str(rec)]) == 0

    def test_equiv_output(self, tmp_path, capsys, rng):
        s = random_radially_cf_signal(rng, n=3, k=3)
        a = tmp_path / "a.txt"
        b = tmp_path / "b.txt"
        a.write_text(write_signal(s))
        b.write_text(write_signal(s.permuted([2, 0, 1])))
        assert cli_main(["equiv", str(a), str(b)]) == 0
        assert capsys.readouterr().out.strip() == "yes"
        b.write_text(write_signal(s.negated()))
        assert cli_main(["equiv", str(a), str(b)]) == 0
        assert capsys.readouterr().out.strip() == "no"

    def test_enumerate_output(self, tmp_path, capsys):
        assert (
            cli_main(
                ["turnpike", "embed", "0", "1", "8", "11", "13", "17",
                 "--scale", "17", "-o", str(tmp_path / "p.txt")]
            )
            == 0
        )
        assert cli_main(["invariants", str(tmp_path / "p.txt"), "-o", str(tmp_path / "i.txt")]) == 0
        assert cli_main(["enumerate", str(tmp_path / "i.txt"), "--dim", "2"]) == 0
        out = capsys.readouterr().out
        header = out.splitlines()[0]
        assert header.startswith("orbits 3 bound 1816214400 truncated 0")

    def test_recover_reports_ambiguity(self, tmp_path, capsys):
        cli_main(
            ["turnpike", "embed", "0", "1", "8", "11", "13", "17",
             "--scale", "17", "-o", str(tmp_path / "p.txt")]
        )
        cli_main(["invariants", str(tmp_path / "p.txt"), "-o", str(tmp_path / "i.txt")])
        capsys.readouterr()
        assert cli_main(["recover", str(tmp_path / "i.txt"), "--dim", "2"]) == 1
        assert "not unique" in capsys.readouterr().err

    def test_turnpike_subcommands(self, capsys):
        assert cli_main(["turnpike", "diffs", "0", "1", "3"]) == 0
        assert capsys.readouterr().out.strip() == "1 2 3"
        assert cli_main(["turnpike", "piccard", "1", "6"]) == 0
        out = capsys.readouterr().out.splitlines()
        assert out[0] == "P 0 1 4 10 12 17"
        assert out[1] == "Q 0 1 8 11 13 17"

    def test_mc_sphere_deterministic_output(self, capsys):
        argv = ["mc-sphere", "--trials", "200", "--seed", "9", "--mode", "every"]
        assert cli_main(argv) == 0
        first = capsys.readouterr().out
        assert cli_main(argv) == 0
        assert capsys.readouterr().out == first
        assert first.splitlines()[0] == "trials 200"

    def test_demo_runs(self, capsys):
        assert cli_main(["demo", "piccard"]) == 0
        out = capsys.readouterr().out
        assert "checks passed" in out

    def test_missing_file_exits_1(self, capsys):
        assert cli_main(["invariants", "/nonexistent/file.txt"]) == 1
        capsys.readouterr()
