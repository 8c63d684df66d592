import json

import numpy as np
import pytest

from thetalab.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    payload = json.loads(captured.out) if captured.out.strip() else None
    return code, payload, captured.err


def test_congruence_member(capsys):
    code, payload, _ = run_cli(
        capsys, "congruence", "member", "--group", "theta12", "--gamma", "0,-1,1,0"
    )
    assert code == 0
    assert payload == {"group": "Gamma(1,2)", "member": True}
    code, payload, _ = run_cli(
        capsys,
        "congruence", "member", "--group", "gamma-m-2m", "--m", "2", "--gamma", "1,4,0,1",
    )
    assert code == 0 and payload["member"] is True


def test_congruence_index_and_des(capsys):
    code, payload, _ = run_cli(capsys, "congruence", "index", "--group", "gamma0", "--n", "4")
    assert code == 0 and payload["index"] == 6
    code, payload, _ = run_cli(capsys, "congruence", "des", "--m", "2", "--gamma", "1,1,4,5")
    assert code == 0 and payload["des"] == [1, 2, 2, 5]


def test_weilrep_t_matrix(capsys):
    code, payload, _ = run_cli(capsys, "weilrep", "--m", "2", "--mp", "1,1,0,1:+")
    assert code == 0
    matrix = payload["matrix"]
    assert matrix[0] == ["1+0i", "0+0i"]
    assert matrix[1][0] == "0+0i"
    assert abs(complex(matrix[1][1].replace("i", "j")) - 1j) < 1e-12


def test_mp_mul(capsys):
    code, payload, _ = run_cli(
        capsys, "mp", "mul", "--left", "0,-1,1,0:+", "--right", "0,-1,1,0:+"
    )
    assert code == 0
    assert payload == {"mp": "-1,0,0,-1:+"}


def test_discriminant(capsys):
    code, payload, _ = run_cli(
        capsys, "discriminant", "--g", "1", "--parity", "even", "--gamma", "0,3,1,0"
    )
    assert code == 0
    assert payload["lambda"] == {"num": 1, "den": 4}


def test_heisenberg_commands(capsys):
    code, payload, _ = run_cli(capsys, "heisenberg", "splittings", "--type", "2,2")
    assert code == 0 and payload["count"] == 4
    code, payload, _ = run_cli(
        capsys, "heisenberg", "aut", "--type", "2", "--stabilizer-u0sym"
    )
    assert code == 0 and payload["count"] == 4
    serialized = [json.dumps(u, sort_keys=True) for u in payload["automorphisms"]]
    assert serialized == sorted(serialized) or len(serialized) == len(set(serialized))


def test_schrodinger_matrix(capsys):
    code, payload, _ = run_cli(
        capsys, "schrodinger", "matrix", "--type", "4", "--element", "1/4,3,1"
    )
    assert code == 0
    mat = np.array(
        [[complex(e.replace("i", "j")) for e in row] for row in payload["matrix"]]
    )
    assert np.max(np.abs(mat @ mat.conj().T - np.eye(4))) < 1e-12


def test_theta_eval(capsys):
    code, payload, _ = run_cli(
        capsys, "theta", "eval", "--m", "2", "--tau", "0.3+1.1i", "--tol", "1e-12"
    )
    assert code == 0
    assert payload["m"] == 2 and len(payload["values"]) == 2
    assert payload["err_bound"] <= 1e-12


def test_verify_transform(capsys):
    code, payload, _ = run_cli(
        capsys,
        "verify", "transform", "--m", "4", "--mp", "0,-1,1,0:+", "--tau", "0.3+1.1i",
        "--tol", "1e-9",
    )
    assert code == 0
    assert payload["pass"] is True and payload["convention"] == "direct"
    assert payload["residual"] < 1e-9


def test_verify_suite_quick(capsys):
    code, payload, err = run_cli(capsys, "verify", "suite", "--level", "quick")
    assert code == 0
    assert payload["pass"] is True
    assert all(c["pass"] for c in payload["checks"])
    assert "[pass]" in err
    # entries are emitted in the declared order
    ids = [c["check_id"] for c in payload["checks"]]
    assert ids.index("transformation_law") < ids.index("discriminant_oracle")
    assert ids.index("discriminant_oracle") < ids.index("index_multiplicativity")


def test_verify_suite_seed_env(capsys, monkeypatch):
    monkeypatch.setenv("THETA_LAB_SEED", "17")
    code, payload, _ = run_cli(capsys, "verify", "suite", "--level", "quick")
    assert code == 0 and payload["seed"] == 17 and payload["pass"] is True


def test_outputs_are_deterministic(capsys):
    argv = ["theta", "eval", "--m", "4", "--tau", "0.2+0.9i", "--tol", "1e-10"]
    code1 = main(argv)
    out1 = capsys.readouterr().out
    code2 = main(argv)
    out2 = capsys.readouterr().out
    assert code1 == code2 == 0
    assert out1 == out2


def test_bad_input_exits_2(capsys):
    code, _, err = run_cli(capsys, "congruence", "member", "--group", "gamma0", "--gamma", "1,0,0,2")
    assert code == 2 and "error" in err
    code, _, err = run_cli(capsys, "discriminant", "--g", "1", "--parity", "even", "--gamma", "1,1,0,1")
    assert code == 2
    code, _, err = run_cli(capsys, "theta", "eval", "--m", "2", "--tau", "0.3+0.01i")
    assert code == 2


def test_json_round_trips(capsys):
    for argv in (
        ["weilrep", "--m", "2", "--mp", "0,-1,1,0:+"],
        ["heisenberg", "splittings", "--type", "2"],
        ["theta", "eval", "--m", "2", "--tau", "2i"],
    ):
        code = main(argv)
        out = capsys.readouterr().out
        assert code == 0
        assert json.loads(out) == json.loads(out)
