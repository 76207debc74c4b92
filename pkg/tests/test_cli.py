import io
import json
from contextlib import redirect_stdout

import pytest

from plogbound.cli import (
    EXIT_NO_THEOREM,
    EXIT_OK,
    EXIT_PARSE,
    main,
    parse_instance_text,
)

TOY = """
# toy instance
prime = 11
alphas = 108347059433883722041830251/1
H = 10000
lambdas = 3, -2
"""

PAIR_149 = """
prime = 149
alphas = 149, -149
Q = 1
H = 1e20
"""

PAIR_139 = """
prime = 139
alphas = 139, -139
H = 1e20
"""


def _run(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


def _write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_parse_instance_forms():
    fields = parse_instance_text(TOY)
    assert fields["prime"] == 11
    assert fields["H"] == 10000
    assert fields["lambdas"] == (3, -2)
    sci = parse_instance_text("prime=5\nalphas=5\nH = 1e1672\n")
    assert sci["H_log10"] == 1672
    explicit = parse_instance_text("prime=5\nalphas=5\nH = log10:1672.5\n")
    assert explicit["H_log10"] == 1672.5


def test_parse_rejects_garbage():
    with pytest.raises(Exception):
        parse_instance_text("prime 11\n")


def test_bound_pass_and_json_roundtrip(tmp_path):
    inst = _write(tmp_path, "inst.txt", PAIR_149)
    cert_path = str(tmp_path / "cert.json")
    code, out = _run(["bound", inst, "--json", cert_path])
    assert code == EXIT_OK
    assert "best: MGT1_MAIN" in out
    payload = json.loads((tmp_path / "cert.json").read_text())
    assert payload["schema"] == "plogbound-certificate/1"
    assert payload["best"] == "MGT1_MAIN"
    best = next(c for c in payload["certificates"] if c["theorem_id"] == "MGT1_MAIN")
    assert best["passed"] is True
    assert "lo" in best["c_log10"] and "hi" in best["c_log10"]
    assert "lo" in best["bound_log10"]
    # re-validation reproduces identical decisions
    code2, out2 = _run(["bound", "--check", cert_path])
    assert code2 == EXIT_OK
    assert "identical pass/fail decisions" in out2


def test_bound_no_applicable_theorem(tmp_path):
    inst = _write(tmp_path, "inst.txt", PAIR_139)
    code, out = _run(["bound", inst])
    assert code == EXIT_NO_THEOREM
    assert "assumpless1" in out


def test_bound_duplicate_alpha_exit_2(tmp_path):
    inst = _write(tmp_path, "bad.txt", "prime=5\nalphas=5, 5\nH=10\n")
    code, _ = _run(["bound", inst])
    assert code == EXIT_PARSE


def test_verify_deterministic_output(tmp_path):
    inst = _write(tmp_path, "toy.txt", TOY)
    code1, out1 = _run(["verify", inst, "--samples", "10", "--seed", "7"])
    code2, out2 = _run(["verify", inst, "--samples", "10", "--seed", "7"])
    assert code1 == code2 == EXIT_OK
    assert out1 == out2
    assert "violations: 0" in out1


def test_search_command(tmp_path):
    inst = _write(tmp_path, "small.txt", "prime=5\nalphas=5\nH=3\n")
    code, out = _run(["search", inst, "--hmax", "3"])
    assert code == EXIT_OK
    assert "witness" in out


def test_examples_command():
    code, out = _run(["examples"])
    assert code == EXIT_OK
    assert out.count("PASS") >= 3
    assert "FAIL" not in out


def test_pade_command():
    code, out = _run(["pade", "--m", "1", "--k", "1", "--mu", "0", "--alpha", "1/5"])
    assert code == EXIT_OK
    assert "B_0(t) = 2 + 1/5*t" in out
    assert "B_1(t) = 2/5*t" in out
    assert "PASS" in out and "FAIL" not in out


def test_pade_m_mismatch():
    code, _ = _run(["pade", "--m", "2", "--k", "1", "--mu", "0", "--alpha", "1/5"])
    assert code == EXIT_PARSE


def test_bound_from_flags_only():
    code, out = _run(["bound", "--prime", "11",
                      "--alpha", "108347059433883722041830251",
                      "--H", "log10:1673", "--epsilon", "0.3",
                      "--theorem", "MGT1_BEST_EPS"])
    assert code == EXIT_OK
    assert "omega      =  23/10 (exact)" in out


def test_compare_yu_flags():
    code, out = _run(["compare-yu", "--prime", "149", "--A", "150", "--A", "150",
                      "--b", "10", "--b", "10", "--B", "10", "--Bm", "10",
                      "--delta", "1/2"])
    assert code == EXIT_OK
    assert "v_p <" in out


def test_compare_yu_from_instance(tmp_path):
    inst = _write(tmp_path, "pair.txt",
                  "prime=149\nalphas=149, -149\nQ=1\nH=1000000\nlambdas=3, 5, -2\n")
    code, out = _run(["compare-yu", inst])
    assert code == EXIT_OK
    assert "this package" in out
