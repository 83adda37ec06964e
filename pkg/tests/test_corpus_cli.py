import json

import pytest

from homolog.cli import main
from homolog.corpus import corpus, lookup, run_verification, verify_entry
from homolog.errors import UnknownEntry
from homolog.invariants import compute_invariants, document_vertex_set

A2_FILE = """\
field F 2
name a2
meta V 2
quiver
  vertex 1
  vertex 2
  arrow a 1 2
module P1
  dim 1=1 2=1
  map a [[1]]
module S2
  dim 2=1
"""

X2_FILE = """\
field F 2
name x2
quiver
  vertex 1
  arrow x 1 1
relations
  x.x
"""


@pytest.fixture
def a2_path(tmp_path):
    p = tmp_path / "a2.alg"
    p.write_text(A2_FILE)
    return str(p)


@pytest.fixture
def x2_path(tmp_path):
    p = tmp_path / "x2.alg"
    p.write_text(X2_FILE)
    return str(p)


def _run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_corpus_has_every_entry():
    names = [e.name for e in corpus()]
    assert len(names) == 13 and "final-example" in names
    assert all(e.expectations for e in corpus())
    assert all(x.basis in ("published", "derived", "immediate") for e in corpus() for x in e.expectations)


def test_lookup_unknown():
    with pytest.raises(UnknownEntry):
        lookup("no-such-algebra")


def test_verify_small_entries():
    rep = run_verification(["a2", "kronecker", "semisimple"])
    assert rep.ok
    data = rep.as_json()
    assert list(data["entries"]) == ["a2", "kronecker", "semisimple"]


def test_low_cutoff_skips_instead_of_failing():
    res = verify_entry(lookup("beilinson-2"), cutoff=1)
    gl = next(c for c in res.checks if c["path"] == "gldim")
    assert gl["actual"] == ">1" and gl["status"] == "n/a-skipped"
    assert not res.failed


def test_invariants_report_keys():
    doc = lookup("a2").document()
    A = doc.algebra()
    data = compute_invariants(A, document_vertex_set(doc, A)).as_json()
    for key in ("dimension", "loewy_length", "gldim", "selfinjective", "pd_V", "ll_tV", "itdim_upper",
                "syzygy_scan", "bounds"):
        assert key in data
    assert "timing" not in data


def test_cli_invariants(capsys, a2_path):
    code, out, _ = _run(capsys, ["invariants", a2_path, "--json"])
    assert code == 0
    data = json.loads(out)
    assert data["gldim"] == 1 and data["V"] == ["2"]
    code, out, _ = _run(capsys, ["invariants", a2_path])
    assert code == 0 and "loewy_length: 2" in out


def test_cli_timing_is_opt_in(capsys, a2_path):
    _, out, _ = _run(capsys, ["invariants", a2_path, "--json", "--timing"])
    assert "timing" in json.loads(out)


def test_cli_bounds(capsys, a2_path):
    code, out, _ = _run(capsys, ["bounds", a2_path, "--simples", "2"])
    assert code == 0 and json.loads(out)["best"] == 1
    code, out, _ = _run(capsys, ["bounds", a2_path, "--best-v"])
    assert json.loads(out)["V"] == ["1", "2"]


def test_cli_syzygy_scan(capsys, a2_path):
    code, out, _ = _run(capsys, ["syzygy-scan", a2_path])
    assert code == 0 and json.loads(out)["stable_depth"] == 1


def test_cli_oracle(capsys, a2_path):
    code, out, _ = _run(capsys, ["oracle", "bracket", a2_path, "--module", "P1", "--generator", "S:1+S2",
                                 "--level", "2"])
    assert code == 0 and json.loads(out)["answer"] == "yes"
    code, out, _ = _run(capsys, ["oracle", "bracket", a2_path, "--module", "P1", "--generator", "S:1+S2",
                                 "--level", "1", "--mode", "summand"])
    assert code == 3 and json.loads(out)["answer"] == "unknown"


def test_cli_it_check(capsys, x2_path):
    code, out, _ = _run(capsys, ["it-check", x2_path, "--m", "0", "--n", "1", "--module", "S:1"])
    assert code == 0 and json.loads(out)["verdict"] == "verified-on-samples"
    code, out, _ = _run(capsys, ["it-check", x2_path, "--m", "0", "--n", "0", "--module", "P:1",
                                 "--samples", "40"])
    assert code == 1 and json.loads(out)["verdict"] == "refuted"


def test_cli_input_errors(capsys, tmp_path, a2_path):
    bad = tmp_path / "bad.alg"
    bad.write_text(A2_FILE.replace("[[1]]", "[[1,1]]"))
    code, _, err = _run(capsys, ["invariants", str(bad)])
    assert code == 2 and "line 10" in err
    code, _, err = _run(capsys, ["invariants", str(tmp_path / "missing.alg")])
    assert code == 2
    code, _, _ = _run(capsys, ["oracle", "bracket", a2_path, "--module", "Q9", "--generator", "P:1",
                               "--level", "1"])
    assert code == 2
    code, _, _ = _run(capsys, ["bounds", a2_path, "--simples", "7"])
    assert code == 2
    code, _, _ = _run(capsys, ["check-corpus", "nope"])
    assert code == 2


def test_cli_cap(capsys, tmp_path):
    p = tmp_path / "ext.alg"
    p.write_text(lookup("exterior-2").text)
    code, _, err = _run(capsys, ["syzygy-scan", str(p), "--dim-cap", "2"])
    assert code == 3 and err.startswith("cap:")


def test_check_corpus_subset_is_deterministic(capsys):
    first = _run(capsys, ["check-corpus", "a2", "loop-x4", "--seed", "0"])
    second = _run(capsys, ["check-corpus", "a2", "loop-x4", "--seed", "0"])
    assert first[0] == 0 and first == second
    assert json.loads(first[1])["status"] == "pass"
