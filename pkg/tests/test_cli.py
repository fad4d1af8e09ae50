import json
import subprocess
import sys

from bsbcert.cli import format_table, main

SESSION = """
ring A = F(32003)[x,y] / (x^2, x*y);
filtration M = adic(maxideal(A));
certify buchsbaum M;
hilbert M 8;
corso M;
"""


def run(tmp_path, text, *flags):
    path = tmp_path / "s.bsb"
    path.write_text(text)
    return main([str(path), *flags])


def test_certify_prints_and_exits_zero(tmp_path, capsys):
    out_json = tmp_path / "c.json"
    assert run(tmp_path, SESSION, "--json", str(out_json), "--trials", "4") == 0
    out = capsys.readouterr().out
    assert "G_BUCHSBAUM" in out
    assert "e_1" in out and "-1" in out
    assert "rhs" in out
    data = json.loads(out_json.read_text())
    assert data["verdict"] == "G_BUCHSBAUM"


def test_hilbert_table(tmp_path, capsys):
    run(tmp_path, "ring A = F(32003)[x,y]; filtration M = adic(maxideal(A)); hilbert M 4;")
    out = capsys.readouterr().out
    rows = [line.split() for line in out.splitlines() if line[:1].isdigit()]
    assert [int(r[1]) for r in rows] == [0, 1, 3, 6, 10]


def test_exit_codes(tmp_path, capsys):
    assert run(tmp_path, "ring A = F(7)[x]; ideal I = (y);") == 4
    assert "1:" in capsys.readouterr().err
    bad = "ring A = F(32003)[x,y,z] / (x*y, x*z); filtration M = adic(maxideal(A)); certify buchsbaum M;"
    assert run(tmp_path, bad) == 3
    fails = ("ring A = F(32003)[x,y]; filtration M = adic((x^4, x^3*y, x*y^3, y^4));"
             " certify buchsbaum M;")
    assert run(tmp_path, fails, "--trials", "2") == 2
    assert main(["--no-such-flag"]) == 4
    assert main([str(tmp_path / "missing.bsb")]) == 4


def test_runtime_error_carries_location(tmp_path, capsys):
    code = run(tmp_path, "ring A = F(32003)[x,y];\ninvariant A (x);")
    assert code == 3
    assert "2:1: invariant A" in capsys.readouterr().err


def test_multiple_certificates_json_list(tmp_path):
    text = SESSION + "certify buchsbaum M;"
    out_json = tmp_path / "c.json"
    run(tmp_path, text, "--json", str(out_json), "--trials", "2")
    assert isinstance(json.loads(out_json.read_text()), list)


def test_deterministic_output(tmp_path, capsys):
    run(tmp_path, SESSION, "--seed", "5", "--trials", "3")
    first = capsys.readouterr().out
    run(tmp_path, SESSION, "--seed", "5", "--trials", "3")
    assert capsys.readouterr().out == first


def test_stdin_and_module_entry(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "bsbcert", "--trials", "2"],
        input="ring A = F(32003)[x,y]; cohomology A;", capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert "h^1" in proc.stdout


def test_usd_bound_flag(tmp_path, capsys):
    run(tmp_path, "ring A = F(32003)[x,y] / (x^2, x*y); dseq A (x);", "--usd-bound", "3")
    out = capsys.readouterr().out
    assert "exponents <= 3" in out and "False" in out


def test_format_table_alignment():
    text = format_table([("a", 1), ("long", 22)], header=("k", "v"))
    lines = text.splitlines()
    assert lines[0].index("v") == lines[2].index("1")
