import json

import pytest

from ybx.catalog import example_structure
from ybx.cli import main, report_payload
from ybx.perms import Permutation, format_cycles, parse_cycles
from ybx.scalars import derive_rng
from ybx.trig import CheckReport

FP = "fp:2305843009213693951"


@pytest.fixture()
def abd_file(tmp_path):
    path = tmp_path / "ex.json"
    path.write_text(json.dumps(example_structure().to_json_dict()))
    return str(path)


@pytest.fixture()
def bundle_file(tmp_path):
    path = tmp_path / "b.json"
    path.write_text(json.dumps({"r": 2, "n": 1, "m": [[0], [1]], "lambda": "1/1"}))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_validate(abd_file, capsys):
    code, out = run(capsys, "validate", "--abd", abd_file)
    assert code == 0
    assert json.loads(out)["valid"] is True


def test_validate_rejects_bad_structure(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"n": 4, "c1": [3, 2, 0, 1], "c2": [1, 2, 3, 0], "a": [0]}))
    with pytest.raises(SystemExit):
        main(["validate", "--abd", str(bad)])


def test_surface_command(abd_file, capsys):
    code, out = run(capsys, "surface", "--abd", abd_file)
    assert code == 0
    assert json.loads(out) == {
        "b": 2,
        "b_k": {"1": 1, "3": 1},
        "chi": -4,
        "genus": 2,
        "fillable": [2],
        "connected": True,
    }


def test_check_aybe_command(abd_file, capsys):
    code, out = run(
        capsys, "check-aybe", "--abd", abd_file, "--points", "3",
        "--seed", "7", "--field", FP,
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["pass"] is True
    assert payload["checks"][0] == {
        "check": "aybe",
        "points": 3,
        "failures": 0,
        "pass": True,
        "seed": 7,
        "backend": FP,
    }


def test_check_aybe_mutation_fails(abd_file, capsys):
    code, out = run(
        capsys, "check-aybe", "--abd", abd_file, "--points", "3", "--field", FP,
        "--mutate",
    )
    assert code == 1
    assert json.loads(out)["pass"] is False


def test_reports_are_deterministic(abd_file, capsys):
    args = ("check-aybe", "--abd", abd_file, "--points", "2", "--field", FP)
    _, out1 = run(capsys, *args)
    _, out2 = run(capsys, *args)
    assert out1 == out2


def test_residues_command(abd_file, capsys):
    code, out = run(capsys, "residues", "--abd", abd_file, "--field", FP)
    assert code == 0
    assert json.loads(out)["pass"] is True


def test_cybe_qybe_hat_commands(abd_file, capsys):
    for cmd in ("cybe", "qybe", "hat"):
        code, out = run(
            capsys, cmd, "--abd", abd_file, "--points", "2", "--field", FP
        )
        assert code == 0, (cmd, out)
        assert json.loads(out)["pass"] is True


def test_massey_compare(abd_file, capsys):
    code, out = run(capsys, "massey", "--abd", abd_file, "--compare", "--field", FP)
    assert code == 0
    assert json.loads(out)["matches_closed_form"] is True


def test_build_r_command(abd_file, capsys):
    code, out = run(capsys, "build-r", "--abd", abd_file, "--field", "q")
    assert code == 0
    payload = json.loads(out)
    assert payload["n"] == 4 and len(payload["entries"]) > 0


def test_novikov_command(capsys):
    code, out = run(capsys, "novikov", "--u", "1.0", "--v", "1.2", "--terms", "60")
    assert code == 0
    assert json.loads(out)["abs_error"] < 1e-10


def test_bundle_command(bundle_file, capsys):
    code, out = run(capsys, "bundle", "--in", bundle_file)
    assert code == 0
    payload = json.loads(out)
    assert payload["simple"] is True
    assert payload["abd"] == {"n": 2, "c1": [1, 0], "c2": [1, 0], "a": [1]}
    assert payload["c2_power_of_c1"] is True


def test_bundle_emit_abd(bundle_file, capsys):
    code, out = run(capsys, "bundle", "--in", bundle_file, "--emit-abd")
    assert code == 0
    assert json.loads(out) == {"n": 2, "c1": [1, 0], "c2": [1, 0], "a": [1]}


def test_abd_iso_command(tmp_path, capsys):
    s = example_structure()
    f1 = tmp_path / "s1.json"
    f2 = tmp_path / "s2.json"
    f1.write_text(json.dumps(s.to_json_dict()))
    from ybx.perms import relabel_abd

    f2.write_text(
        json.dumps(relabel_abd(s, Permutation((1, 2, 3, 0))).to_json_dict())
    )
    code, out = run(capsys, "abd-iso", str(f1), str(f2))
    assert code == 0
    assert json.loads(out)["isomorphic"] is True


def test_suite_small(capsys):
    code, out = run(
        capsys, "suite", "--nmax", "2", "--points", "2", "--field", FP
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["pass"] is True
    assert all(c["pass"] for c in payload["checks"])


def test_suite_determinism(capsys):
    args = ("suite", "--nmax", "2", "--points", "2", "--field", FP)
    _, out1 = run(capsys, *args)
    _, out2 = run(capsys, *args)
    assert out1 == out2


def test_suite_mutation_reports_failures(capsys):
    code, out = run(
        capsys, "suite", "--nmax", "2", "--points", "2", "--field", FP,
        "--mutate", "one-coefficient",
    )
    assert code == 1
    payload = json.loads(out)
    assert payload["mutation_mode"] is True
    assert payload["failures_reported"] >= 1


def test_text_format(abd_file, capsys):
    code, out = run(
        capsys, "check-aybe", "--abd", abd_file, "--points", "2", "--field", FP,
        "--format", "text",
    )
    assert code == 0
    assert "check" in out and "aybe" in out


def test_report_payload_empty():
    assert report_payload([]) == {"checks": [], "pass": True}


def test_report_payload_failing():
    rep = CheckReport(check="x", points=1, failures=1, seed=0, backend="q")
    payload = report_payload([rep])
    assert payload["pass"] is False


def test_report_timing_nonnegative():
    rep = CheckReport(check="x", points=1, failures=0, seed=0, backend="q")
    assert rep.elapsed_ms >= 0
    with_timing = rep.to_json_dict(with_timing=True)
    assert with_timing["elapsed_ms"] >= 0


def test_parser_roundtrip_corpus():
    rng = derive_rng(8, "parser-corpus")
    for _ in range(1000):
        n = rng.randrange(1, 9)
        images = list(range(n))
        rng.shuffle(images)
        p = Permutation(tuple(images))
        assert parse_cycles(format_cycles(p), n) == p
