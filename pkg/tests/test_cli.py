import io
import subprocess
import sys

import pytest

from superlie.algebra import validate
from superlie.cli import corpus_files, main
from superlie.extension import model_from_algebra, verify_model
from superlie.sla import parse, parse_text
from support import CORPUS_DIR, FIXTURES


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), buf)
    return code, buf.getvalue()


def test_corpus_is_bundled():
    names = {p.stem for p in corpus_files()}
    assert names == {p.stem for p in CORPUS_DIR.glob("*.sla")}
    assert len(names) == 12


def test_validate_corpus():
    code, out = run("validate")
    assert code == 0
    assert out.count("valid (") == 12


def test_validate_jacobi_fixture():
    code, out = run("validate", str(FIXTURES / "jacobi_violation.sla"))
    assert code == 1
    assert "INVALID" in out and "jacobi: (x1,x2,x3)" in out


def test_parse_error_exit_code(capsys):
    code, _ = run("validate", str(FIXTURES / "syntax_error.sla"))
    assert code == 2
    assert "syntax_error.sla:4:" in capsys.readouterr().err


def test_missing_file_is_usage_error():
    assert run("series", "no/such/file.sla")[0] == 2


def test_unknown_command():
    assert run("frobnicate")[0] == 2


def test_series_output():
    code, out = run("series", str(CORPUS_DIR / "n4.sla"))
    assert code == 0
    assert "central dims: 6,3,2,1,0" in out
    assert "nilindex=5" in out


def test_derive_dims():
    code, out = run("derive", "--parity", "both", str(CORPUS_DIR / "ex26.sla"))
    assert code == 0
    assert "Der_0 dim=2" in out and "Der_1 dim=3" in out


def test_torus_n1():
    code, out = run("torus", str(CORPUS_DIR / "n1.sla"))
    assert code == 0
    assert "n1: rank=1 torus_dim=2" in out
    assert "t1 = diag(" in out


def test_torus_on_solvable_fails():
    code, out = run("torus", str(CORPUS_DIR / "ex26.sla"))
    assert code == 1
    assert "NotNilpotent" in out


def test_rank_equations():
    code, out = run("rank", str(CORPUS_DIR / "n1.sla"))
    assert code == 0
    assert "-alpha1 + beta1 + beta2 = 0" in out
    assert "maximal_rank=true" in out


def test_extend_n4_not_maximal_rank():
    code, out = run("extend", str(CORPUS_DIR / "n4.sla"))
    assert code == 1
    assert "NotMaximalRank" in out


def test_extend_writes_valid_file(tmp_path):
    target = tmp_path / "n2_ext.sla"
    code, out = run("extend", str(CORPUS_DIR / "n2.sla"), "--out", str(target))
    assert code == 0
    assert "PASS codim_equals_torus" in out
    a = parse(target).algebra
    assert validate(a).ok
    assert verify_model(model_from_algebra(a)).ok


def test_extend_stdout_round_trips():
    code, out = run("extend", str(CORPUS_DIR / "n1.sla"))
    assert code == 0
    text = "\n".join(line for line in out.splitlines() if not line.startswith("# "))
    assert parse_text(text).algebra.dim == 5


def test_check_suite():
    code, out = run("check", "--suite", "paper")
    assert code == 0
    assert "FAIL" not in out
    assert out.strip().splitlines()[-1].endswith("expectations hold")


def test_check_single_file():
    code, out = run("check", str(CORPUS_DIR / "ex33.sla"))
    assert code == 0


def test_check_detects_wrong_expectation(tmp_path):
    text = (CORPUS_DIR / "n1.sla").read_text().replace("expect rank = 1", "expect rank = 2")
    f = tmp_path / "n1.sla"
    f.write_text(text)
    (tmp_path / "thm55.sla").write_text((CORPUS_DIR / "thm55.sla").read_text())
    code, out = run("check", str(f))
    assert code == 1
    assert "FAIL n1 rank: expected 2 got 1" in out


def test_suite_and_files_exclusive():
    assert run("check", "--suite", "paper", str(CORPUS_DIR / "n1.sla"))[0] == 2


def test_report_tsv():
    code, out = run("report", "--format", "tsv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "algebra\tcheck\texpected\tgot\tpass"
    assert all(line.count("\t") == 4 for line in lines)
    assert all(line.endswith("\ttrue") for line in lines[1:])


def test_report_text():
    code, out = run("report", str(CORPUS_DIR / "squares4.sla"))
    assert code == 0
    assert out.startswith("squares4")


@pytest.mark.parametrize("argv", [["--help"], ["torus", "--help"]])
def test_help(argv):
    assert run(*argv)[0] == 0


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "superlie", "torus", str(CORPUS_DIR / "n1.sla")],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert "rank=1 torus_dim=2" in proc.stdout
