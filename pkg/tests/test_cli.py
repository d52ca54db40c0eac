import io
import json
import subprocess
import sys

import pytest

from cycletrace.cli import main
from cycletrace.cli.corpus import CORPUS_DIR
from cycletrace.cli.famfile import load_family, parse_family
from cycletrace.errors import FamilyError


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), stdout=out)
    return code, out.getvalue()


def fam(name):
    return str(CORPUS_DIR / f"{name}.fam")


def machine(*argv):
    code, text = run(*argv, "--format", "machine")
    return code, [json.loads(line) for line in text.splitlines()]


# family files


def test_cone_file_parses():
    d = load_family(CORPUS_DIR / "cone.fam")
    cov = d.covering
    assert d.name == "cone"
    assert cov.scale.base == ("x", "y", "z")
    assert cov.scale.fiber == ("u", "v")
    assert cov.scale.params == ("p", "q")
    (k,) = cov.components
    assert len(k.branches) == 2 and len(k.ideal) == 3 and len(k.ci) == 2


def test_every_corpus_file_parses():
    for path in sorted(CORPUS_DIR.glob("*.fam")):
        assert load_family(path).covering.components


def test_empty_document():
    with pytest.raises(FamilyError) as exc:
        parse_family("# only a comment\n\n")
    assert exc.value.line == 1


def test_duplicate_variable():
    with pytest.raises(FamilyError) as exc:
        parse_family("base s t\nfiber x s\nideal x^2 - s\n")
    assert "duplicate variable" in exc.value.message
    assert (exc.value.line, exc.value.column) == (2, 9)


def test_duplicate_declaration():
    with pytest.raises(FamilyError) as exc:
        parse_family("base s\nbase t\nfiber x\nideal x - s\n")
    assert exc.value.line == 2


def test_unknown_variable_position():
    with pytest.raises(FamilyError) as exc:
        parse_family("base s\nfiber x\nideal x^2 - q\n")
    assert exc.value.line == 3
    assert exc.value.column == 13


def test_weight_must_be_positive():
    with pytest.raises(FamilyError) as exc:
        parse_family("base s\nfiber x\ncomponent A weight 0\nideal x - s\n")
    assert "positive" in exc.value.message
    with pytest.raises(FamilyError):
        parse_family("base s\nfiber x\ncomponent A\nweight -2\nideal x - s\n")


def test_unknown_statement():
    with pytest.raises(FamilyError) as exc:
        parse_family("base s\nfiber x\nideal x - s\nfoo bar\n")
    assert exc.value.line == 4 and exc.value.column == 1


def test_semantic_errors():
    bad = [
        "base s\nfiber x\n",                                        # no components
        "base s\nfiber x\nbranch y = s\n",                           # not a fiber variable
        "base s\nfiber x y\nci x - s\nideal x - s, y\n",             # ci length
        "base s\nfiber x\nideal x - s\nstratum A q=1\n",             # unknown variable
        "base s\nfiber x\nideal x - s\nsymmetric A B\n",             # unknown components
        "base s\nfiber x\nideal x - s\nstratum A s=1\njunction J s=0 from A B\n",
    ]
    for text in bad:
        with pytest.raises(FamilyError):
            parse_family(text)


def test_implicit_main_component():
    d = parse_family("base s\nfiber x\nideal x^2 - s\n")
    assert [c.name for c in d.covering.components] == ["main"]
    assert d.name == "family"


# exit codes per subcommand


@pytest.mark.parametrize("argv,code", [
    (("trace", fam("cone"), "u^2"), 0),
    (("trace", fam("whitney"), "u*dv - v*du"), 0),
    (("classify", fam("cusp")), 0),
    (("check", fam("whitney")), 0),
    (("check", fam("c10")), 1),
    (("check", fam("cusp")), 1),
    (("weights", fam("weights1")), 0),
    (("weights", fam("weights2")), 1),
    (("fibers", fam("cartan")), 0),
    (("fibers", fam("cone"), "--point", "x=0,y=0,z=0"), 0),
    (("residue", fam("cone"), "u^2"), 0),
    (("pullback", fam("douady")), 0),
    (("trace", fam("cone"), "u*q"), 2),
    (("trace", "/nonexistent/file.fam", "u"), 2),
    (("fibers", fam("identity")), 2),
    (("residue", fam("cusp"), "w"), 2),
    (("bogus",), 2),
    ((), 2),
])
def test_exit_codes(argv, code):
    assert run(*argv)[0] == code


def test_corpus_passes():
    code, text = run("corpus")
    assert code == 0
    assert "ok: False" not in text


def test_corpus_only_and_missing_dir(tmp_path):
    assert run("corpus", "--only", "cusp")[0] == 0
    assert run("corpus", "--dir", str(tmp_path))[0] == 2


def test_corpus_mismatch_exit(tmp_path):
    (tmp_path / "cusp.fam").write_text((CORPUS_DIR / "cusp.fam").read_text())
    (tmp_path / "expected.json").write_text(json.dumps(
        {"cusp": {"file": "cusp.fam", "checks": [{"op": "degree", "expect": 5}]}}))
    assert run("corpus", "--dir", str(tmp_path))[0] == 1


# reports


def test_check_c10_report():
    code, recs = machine("check", fam("c10"))
    assert code == 1
    s = recs[-1]
    assert s["record"] == "summary" and s["format"] == "cycletrace-report/1"
    assert s["verdict"] == "ContinuousOnly_evidence"
    assert s["witness"]["item"] == "u*dv"
    assert s["witness"]["sigma"] == "x2*z1/x1"
    assert s["exit_code"] == 1


def test_trace_text_output():
    code, text = run("trace", fam("whitney"), "u*du")
    assert "trace: 2*c*t*dt" in text


def test_machine_output_deterministic():
    for argv in (("check", fam("c10")), ("fibers", fam("cartan")), ("weights", fam("douady")),
                 ("corpus", "--only", "whitney")):
        a = run(*argv, "--format", "machine", "--seed", "7")[1]
        b = run(*argv, "--format", "machine", "--seed", "7")[1]
        assert a == b
        assert all(json.loads(line) for line in a.splitlines())


def test_out_file(tmp_path):
    path = tmp_path / "report.jsonl"
    code, text = run("check", fam("whitney"), "--out", str(path))
    assert code == 0
    recs = [json.loads(line) for line in path.read_text().splitlines()]
    assert recs[-1]["verdict"] == "AGF_certified"
    assert recs[-1]["input_sha256"]


def test_bounds_flags():
    code, recs = machine("check", fam("whitney"), "--form-degree", "1", "--monomial-degree", "2")
    assert recs[-1]["bounds"]["monomial_degree"] == 2


def test_printed_traces_reparse():
    from cycletrace.poly import parse_ratfunc
    code, recs = machine("classify", fam("weights1"))
    for r in recs[:-1]:
        parse_ratfunc(r["trace"], ("x", "y"))


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "cycletrace", "trace", fam("cone"), "u*v"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert "trace: 2*z" in res.stdout


def test_each_corpus_item_is_fast():
    import time
    from cycletrace.cli.corpus import load_expected, run_corpus
    from cycletrace.cli.report import Report
    _, expected = load_expected()
    for name in expected:
        start = time.perf_counter()
        assert run_corpus(Report("corpus"), only=[name])
        assert time.perf_counter() - start < 10, name
