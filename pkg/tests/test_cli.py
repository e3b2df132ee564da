"""Command-line interface: exit codes, output contracts, reports."""

import subprocess
import sys

import pytest

from subcubic7.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_pass(capsys):
    code, out, _ = run(capsys, "verify", "3c3", "--jobs", "1")
    assert code == 0
    assert "3c3\tREDUCIBLE" in out


def test_verify_fail_has_counterexample(capsys):
    # 3 colors are not enough, and the offending precoloring is printed
    code, out, _ = run(capsys, "verify", "3c3", "-k", "3", "--jobs", "1")
    assert code == 1
    assert "NOT-REDUCED" in out
    assert "cex=" in out


def test_verify_usage_errors(capsys):
    assert run(capsys, "verify", "9z9")[0] == 2
    assert main([]) == 2
    assert main(["no-such-command"]) == 2


def test_verify_family_expands(capsys):
    code, out, _ = run(capsys, "verify", "3c6m", "--jobs", "1")
    assert code == 0
    assert out.count("REDUCIBLE") == 4


def test_precolor_extend_roundtrip(tmp_path, capsys):
    f = tmp_path / "triangle.txt"
    f.write_text("# toy instance\nk=3 t=2\n3\n0 1\n0 2\n1 2\n")
    code, out, _ = run(capsys, "precolor-extend", str(f), "--jobs", "1")
    assert code == 0
    assert out.splitlines()[0] == "VERDICT all-extendable"
    assert out.splitlines()[-1].startswith("STATS precolorings=")

    # header override: 2 colors cannot even color the precolored edge's
    # completion, so the verdict flips
    code, out, _ = run(capsys, "precolor-extend", str(f), "-k", "2",
                       "--jobs", "1")
    assert code == 1
    assert "VERDICT counterexample" in out
    assert any(line.startswith("CEX ") for line in out.splitlines())


def test_precolor_extend_bad_header(tmp_path, capsys):
    f = tmp_path / "bad.txt"
    f.write_text("k=3\n3\n0 1\n")
    assert run(capsys, "precolor-extend", str(f))[0] == 2
    assert run(capsys, "precolor-extend", str(tmp_path / "missing.txt"))[0] == 2


def test_square_command(tmp_path, capsys):
    f = tmp_path / "c5.txt"
    f.write_text("5\n0 1\n0 4\n1 2\n2 3\n3 4\n")
    code, out, _ = run(capsys, "square", str(f))
    assert code == 0
    assert len(out.strip().splitlines()) == 1 + 10  # C5 squared is K5


def test_chi_command(tmp_path, capsys):
    f = tmp_path / "c5.txt"
    f.write_text("5\n0 1\n0 4\n1 2\n2 3\n3 4\n")
    code, out, _ = run(capsys, "chi", str(f))
    assert (code, out.strip()) == (0, "3")
    code, out, _ = run(capsys, "chi", str(f), "--max", "2")
    assert (code, out.strip()) == (1, "chi > 2")


def test_discharge_check(capsys):
    code, out, _ = run(capsys, "discharge-check")
    assert code == 0
    assert out.count("PASS") >= 6
    code, out, _ = run(capsys, "discharge-check", "--drop-rule", "5c5*5")
    assert code == 1
    assert "FAIL" in out


def test_verify_all_report_and_manifest(tmp_path, capsys):
    rep = tmp_path / "rep"
    man = tmp_path / "manifest.txt"
    code, out, _ = run(capsys, "verify-all", "--only", "3c3", "--jobs", "1",
                       "--manifest", str(man), "--report", str(rep))
    assert code == 0
    header, row = out.strip().splitlines()[:2]
    assert header.split("\t") == ["spec", "whites", "blacks", "precolorings",
                                  "nodes", "seconds", "status"]
    assert row.startswith("3c3\t") and row.endswith("PASS")
    tsv = (rep / "verify_all.tsv").read_text()
    assert tsv.splitlines()[0] == header
    assert (rep / "verify_all.png").stat().st_size > 0
    assert "verdicts" in man.read_text() or "3c3" in man.read_text()


def test_report_is_job_count_invariant(tmp_path, capsys):
    texts = []
    for jobs in ("1", "2"):
        rep = tmp_path / f"rep{jobs}"
        code, out, _ = run(capsys, "verify-all", "--only", "3c4",
                           "--jobs", jobs, "--report", str(rep))
        assert code == 0
        tsv = (rep / "verify_all.tsv").read_text()
        # timing column varies; everything else must be byte-identical
        texts.append(["\t".join(c for i, c in enumerate(l.split("\t"))
                                if i != 5) for l in tsv.splitlines()])
    assert texts[0] == texts[1]


def test_discharge_report(tmp_path, capsys):
    rep = tmp_path / "drep"
    code, out, _ = run(capsys, "discharge-check", "--report", str(rep))
    assert code == 0
    assert (rep / "discharge.tsv").exists()
    assert (rep / "discharge.png").stat().st_size > 0


def test_console_script_entry_point():
    out = subprocess.run([sys.executable, "-m", "subcubic7.cli", "chi",
                          "/dev/null"], capture_output=True, text=True)
    assert out.returncode == 2
