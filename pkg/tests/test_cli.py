import json

import pytest

from cliffspin import Multivector, Signature, geometric_product, to_json_dict
from cliffspin.cli import main

SIG13 = Signature(1, 3)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_classify_spacetime(capsys):
    code, out, _ = run(capsys, "classify", "--p", "1", "--q", "3")
    assert code == 0
    assert out.strip() == "Cl(1,3) ≅ H(2)"


def test_classify_ascii_and_sum(capsys):
    code, out, _ = run(capsys, "classify", "--p", "1", "--q", "0", "--ascii")
    assert code == 0
    assert out.strip() == "Cl(1,0) ~= R(1) (+) R(1)"


def test_idempotent_output(capsys):
    code, out, _ = run(capsys, "idempotent", "--p", "1", "--q", "3", "--ascii")
    assert code == 0
    assert "idempotent: 0.5 + 0.5 e1" in out
    assert "division ring: H" in out
    assert "ideal real dimension: 8" in out
    assert "ideal dimension over K: 2" in out


def test_fierz_smoke(capsys):
    code, out, _ = run(capsys, "fierz", "--trials", "25", "--seed", "0")
    assert code == 0
    assert "ok" in out and "FAIL" not in out
    assert "resolved as" in out


def test_planewave_csv_and_covariants(capsys):
    code, out, _ = run(
        capsys,
        "planewave",
        "--mass", "1.0",
        "--px", "0.3",
        "--py", "-0.2",
        "--pz", "0.1",
        "--points", "5",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "t,x,y,z,dhe_res,asf_res,matrix_res"
    assert len(lines) >= 7
    payload = json.loads(lines[-1])
    assert abs(payload["sigma"] - 1.0) < 1e-9
    assert abs(payload["omega"]) < 1e-9
    assert payload["J"]["signature"] == [1, 3]


def test_planewave_negative_energy(capsys):
    code, out, _ = run(capsys, "planewave", "--mass", "1.5", "--sign", "-1", "--points", "3")
    assert code == 0


def test_planewave_with_potential(capsys):
    code, _, _ = run(
        capsys,
        "planewave",
        "--mass", "1.0",
        "--px", "0.2",
        "--charge", "0.5",
        "--at", "0.1",
        "--az", "-0.2",
        "--points", "3",
    )
    assert code == 0


def test_verify_rep(capsys):
    code, out, _ = run(capsys, "verify-rep", "--trials", "20")
    assert code == 0
    assert "homomorphism residual" in out


def test_decompose_file(capsys, tmp_path):
    psi = 2.0 * Multivector.scalar(SIG13, 1.0)
    path = tmp_path / "spinor.json"
    path.write_text(json.dumps({"psi": to_json_dict(psi)}))
    code, out, _ = run(capsys, "decompose", "--in", str(path), "--ascii")
    assert code == 0
    assert "rho: 4.0" in out
    assert "beta: 0.0" in out


def test_decompose_file_with_rotor(capsys, tmp_path):
    from cliffspin import exp_bivector

    rot = exp_bivector(
        0.2 * geometric_product(
            Multivector.generator(SIG13, 2), Multivector.generator(SIG13, 3)
        )
    )
    psi = Multivector.scalar(SIG13, 1.0)
    path = tmp_path / "spinor.json"
    path.write_text(json.dumps({"psi": to_json_dict(psi), "rotor": to_json_dict(rot)}))
    code, out, _ = run(capsys, "decompose", "--in", str(path))
    assert code == 0
    assert "rho: 1.0" in out


def test_eval_basic(capsys):
    code, out, _ = run(capsys, "eval", "--sig", "1,3", "e1*e1")
    assert code == 0
    assert out.strip() == "1"


def test_eval_json(capsys):
    code, out, _ = run(capsys, "eval", "--sig", "1,3", "--json", "2*e1^e3")
    assert code == 0
    payload = json.loads(out)
    assert payload["signature"] == [1, 3]
    assert payload["terms"] == [{"blades": [1, 3], "re": 2.0, "im": 0.0}]


def test_eval_bad_signature(capsys):
    code, _, err = run(capsys, "eval", "--sig", "nope", "e1")
    assert code == 2
    assert "bad signature" in err


def test_eval_bad_expression(capsys):
    code, _, err = run(capsys, "eval", "--sig", "1,3", "e1 +")
    assert code == 2
    assert "error:" in err


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as info:
        main(["no-such-command"])
    assert info.value.code == 2


def test_version(capsys):
    with pytest.raises(SystemExit) as info:
        main(["--version"])
    assert info.value.code == 0
