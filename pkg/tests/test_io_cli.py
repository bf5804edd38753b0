import io as stdio
import json
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import corpus_complex
from ihforms import io
from ihforms.bundles import euler_cochain
from ihforms.cli import execute
from ihforms.complex import CORPUS, Cochain
from ihforms.instances import fiber_cochain, opposite_cochain

rationals = st.fractions(min_value=-10**6, max_value=10**6, max_denominator=10**6)


def run(argv, stdin=""):
    out, err = stdio.StringIO(), stdio.StringIO()
    code, rep = execute(argv, stdin=stdio.StringIO(stdin), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue(), rep


# ---------------------------------------------------------------- round trips


@pytest.mark.parametrize("name", CORPUS)
def test_complex_round_trip(name):
    c = corpus_complex(name)
    text = io.dumps(io.complex_to_json(c))
    back = io.complex_from_json(json.loads(text))
    assert back == c and back.orientation == c.orientation
    assert io.dumps(io.complex_to_json(back)) == text


@given(st.lists(rationals, min_size=21, max_size=21))
def test_cochain_round_trip(vals):
    c = corpus_complex("torus2")
    z = Cochain(c, 1, tuple(vals))
    text = io.dumps(io.cochain_to_json(z))
    back = io.cochain_from_json(c, json.loads(text))
    assert back == z
    assert io.dumps(io.cochain_to_json(back)) == text
    assert all("/" in v for v in json.loads(text)["values"].values())


def test_flux_and_bundle_round_trip():
    omega = fiber_cochain() * Fraction(3, 7) + opposite_cochain()
    text = io.dumps(io.flux_to_json(omega))
    assert io.flux_from_json(json.loads(text)) == omega
    base = corpus_complex("lens(2,1)")
    e = euler_cochain(base, "torsion-gen")
    text = io.dumps(io.bundle_to_json(base, e))
    b2, e2 = io.bundle_from_json(json.loads(text))
    assert b2 == base and e2 == e
    assert io.dumps(io.bundle_to_json(b2, e2)) == text


@pytest.mark.parametrize("obj, field", [
    ({"dimension": 2}, "top_simplices"),
    ({"top_simplices": [[1, 2, 3]]}, "vertex ids"),
    ({"top_simplices": [["a,b", "c", "d"]]}, "comma"),
])
def test_complex_format_errors(obj, field):
    with pytest.raises(io.FormatError, match=field):
        io.complex_from_json(obj)


def test_cochain_format_errors():
    c = corpus_complex("sphere2")
    with pytest.raises(io.FormatError, match="float"):
        io.cochain_from_json(c, {"degree": 1, "values": {"0,1": 0.5}})
    with pytest.raises(io.FormatError, match="not a simplex"):
        io.cochain_from_json(c, {"degree": 1, "values": {"0,9": "1/2"}})
    with pytest.raises(io.FormatError, match="degree"):
        io.cochain_from_json(c, {"degree": 7, "values": {}})
    with pytest.raises(io.FormatError, match="euler"):
        io.bundle_from_json({"base": io.complex_to_json(c), "euler": {"0,1,2": "1/2"}})


# ---------------------------------------------------------------- CLI


def test_gen_pipe_homology():
    _, text, _, _ = run(["gen", "torus2"])
    code, out, _, _ = run(["homology", "--k", "1"], stdin=text)
    assert code == 0 and out.splitlines()[0] == "Z^2"


def test_bundle_flatness_lens():
    code, out, _, _ = run(["bundle", "flatness", "--base", "lens(2,1)", "--euler", "torsion-gen"])
    assert code == 0 and out.splitlines()[0] == "FLAT, order 2, witness verified"


def test_cross_section_fiber(tmp_path):
    _, text, _, _ = run(["gen", "--flux", "torus3/fiber"])
    path = tmp_path / "fiber.json"
    path.write_text(text)
    code, out, _, _ = run(["cross-section", "--flux", str(path)])
    assert code == 0 and out.splitlines()[0] == "SECTION FOUND, integral, margins ≥ 1"


def test_cross_section_exact(tmp_path):
    _, text, _, _ = run(["gen", "--flux", "torus2/exact"])
    code, out, _, _ = run(["cross-section"], stdin=text)
    assert code == 0 and out.startswith("NO SECTION")


def test_json_report_is_deterministic():
    argv = ["bundle", "gysin", "--base", "torus2", "--euler", "generator", "--json"]
    reports = []
    for _ in range(2):
        code, out, _, _ = run(argv)
        assert code == 0
        rep = json.loads(out)
        assert set(rep) == {"command", "verdict", "verdicts", "certificates", "transcript", "timing"}
        rep.pop("timing")
        reports.append(rep)
    assert reports[0] == reports[1]
    assert reports[0]["verdicts"]["total_betti"] == [1, 2, 2, 1]
    assert all(t["ok"] for t in reports[0]["transcript"])


@pytest.mark.parametrize("argv, stdin, needle", [
    (["homology", "--k", "1"], "{not json", "invalid JSON"),
    (["homology", "--k", "9"], None, "degree"),
    (["bundle", "flatness", "--base", "nowhere"], "", "--base"),
    (["bundle", "flatness", "--base", "torus2", "--euler", "torsion-gen"], "", "--euler"),
    (["bundle", "nonorientable", "--base", "torus2"], "", "orientable"),
    (["cross-section", "--flux", "/no/such/file.json"], "", "cannot read"),
    (["frobnicate"], "", "invalid choice"),
    (["ih-check"], "", "--flux"),
])
def test_input_errors_exit_1(argv, stdin, needle):
    if stdin is None:
        stdin = run(["gen", "torus2"])[1]
    code, out, err, _ = run(argv, stdin)
    assert code == 1
    assert needle in err


def test_failed_recheck_exits_2(monkeypatch):
    from ihforms import bundles

    monkeypatch.setattr(bundles.FlatnessWitness, "verify", lambda self, e: False)
    code, _, err, _ = run(["bundle", "flatness", "--base", "lens(2,1)", "--euler", "torsion-gen"])
    assert code == 2 and "verification" in err


def test_other_commands():
    t2 = run(["gen", "torus2"])[1]
    code, out, _, _ = run(["complex", "info"], t2)
    assert code == 0 and "orientable" in out
    code, out, _, _ = run(["hodge"], t2)
    assert out.splitlines()[0] == "harmonic dimensions (1, 2, 1)"
    code, out, _, _ = run(["bundle", "nonorientable", "--base", "klein", "--euler", "torsion-gen"])
    assert code == 0 and out.splitlines()[0] == "FOLIATED"
    code, out, _, _ = run(["bundle", "flatness", "--base", "torus2grid", "--euler", "zero", "--seed", "3"])
    assert code == 0 and "(1) True: direct" in out


def test_ih_check_and_hodge_with_files(tmp_path):
    (tmp_path / "h.json").write_text(run(["gen", "--flux", "torus2/harmonic(1,1)"])[1])
    code, out, _, _ = run(["ih-check", "--flux", str(tmp_path / "h.json")])
    assert code == 0 and out.startswith("INTRINSICALLY HARMONIC")
    c = corpus_complex("torus2")
    (tmp_path / "c.json").write_text(io.dumps(io.complex_to_json(c)))
    z = Cochain(c, 1, tuple(range(c.count(1))))
    (tmp_path / "z.json").write_text(io.dumps(io.cochain_to_json(z)))
    code, out, _, _ = run(["hodge", str(tmp_path / "c.json"), "--cochain", str(tmp_path / "z.json")])
    assert code == 0 and out.startswith("HODGE SPLIT")
    code, out, _, _ = run(["ih-check", str(tmp_path / "c.json"), "--cochain", str(tmp_path / "z.json")])
    assert code == 1


def test_bundle_file(tmp_path):
    base = corpus_complex("lens(2,1)")
    path = tmp_path / "b.json"
    path.write_text(io.dumps(io.bundle_to_json(base, euler_cochain(base, "torsion-gen"))))
    code, out, _, _ = run(["bundle", "flatness", "--bundle", str(path)])
    assert code == 0 and out.startswith("FLAT, order 2")


def test_console_script_entry_point():
    r = subprocess.run([sys.executable, "-m", "ihforms.cli", "gen", "sphere2"], capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["dimension"] == 2
