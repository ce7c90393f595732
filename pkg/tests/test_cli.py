import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from jextend import io
from jextend.cli import main
from jextend.oracle import gen_case_a, gen_case_b

WORKED = {
    "dim": 2,
    "mode": "skew",
    "conjugation": [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]],
    "domain_basis": [[[1.0, 0.0], [0.0, 0.0]]],
    "action": [[[0.0, 0.0], [1.0, 0.0]]],
}


def write(tmp_path, data, name="p.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


def decode(M):
    return np.array([[complex(*z) for z in row] for row in M])


def test_check_worked(tmp_path, capsys):
    assert main(["check", write(tmp_path, WORKED)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["residual_skew"] == 0.0 and out["valid"]


def test_check_rejects_non_skew(tmp_path, capsys):
    bad = dict(WORKED, action=[[[1.0, 0.0], [0.0, 0.0]]])
    assert main(["check", write(tmp_path, bad)]) == 1
    assert json.loads(capsys.readouterr().out)["residual_skew"] == 2.0


@pytest.mark.parametrize(
    "text",
    ["not json", "[]", json.dumps(dict(WORKED, dim=3)), json.dumps(dict(WORKED, mode="hermitian")),
     json.dumps(dict(WORKED, action=[])), json.dumps(dict(WORKED, conjugation=[[[2, 0], [0, 0]], [[0, 0], [1, 0]]]))],
)
def test_malformed_files_exit_3(tmp_path, text):
    path = tmp_path / "bad.json"
    path.write_text(text)
    assert main(["check", str(path)]) == 3
    assert main(["extend", str(path)]) == 3


def test_missing_file_exit_3(tmp_path):
    assert main(["check", str(tmp_path / "nope.json")]) == 3


def test_extend_worked(tmp_path):
    out = tmp_path / "r.json"
    assert main(["extend", write(tmp_path, WORKED), "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    np.testing.assert_allclose(decode(rep["B"]), [[0, -1], [1, 0]], atol=1e-12)
    assert rep["defect_dim"] == 2 and rep["doubled"] is False


def test_extend_isometric_scalar(tmp_path, capsys):
    data = {"dim": 1, "mode": "isometric", "conjugation": [[[1.0, 0.0]]], "domain_basis": [], "action": []}
    assert main(["extend", write(tmp_path, data)]) == 0
    b = decode(json.loads(capsys.readouterr().out)["B"])[0, 0]
    assert min(abs(b - 1), abs(b + 1)) < 1e-10


def test_extend_force_double(tmp_path, capsys):
    assert main(["extend", write(tmp_path, WORKED), "--force-double"]) == 0
    rep = json.loads(capsys.readouterr().out)
    B = decode(rep["B"])
    assert rep["doubled"] and rep["extended_dim"] == 4
    np.testing.assert_allclose(B @ [1, 0, 0, 0], [0, 1, 0, 0], atol=1e-8)


def test_extend_validation_failure_exit_1(tmp_path):
    bad = dict(WORKED, action=[[[1.0, 0.0], [0.0, 0.0]]])
    assert main(["extend", write(tmp_path, bad)]) == 1


def test_extend_exhausted_exit_2(tmp_path, capsys):
    data = {"dim": 1, "mode": "skew", "conjugation": [[[1.0, 0.0]]], "domain_basis": [], "action": []}
    assert main(["extend", write(tmp_path, data), "--max-retries", "0"]) == 2
    assert json.loads(capsys.readouterr().out)["error"] == "Exhausted"


def test_split_identity(tmp_path, capsys):
    data = {"dim": 2, "conjugation": WORKED["conjugation"]}
    assert main(["split", write(tmp_path, data)]) == 0
    out = json.loads(capsys.readouterr().out)
    np.testing.assert_allclose(decode(out["M"])[0], np.array([1, 1j]) / np.sqrt(2), atol=1e-12)


def test_split_odd_dimension_exit_1(tmp_path):
    data = {"dim": 3, "conjugation": io.encode_matrix(np.eye(3))}
    assert main(["split", write(tmp_path, data)]) == 1


def test_split_random_dim_8(tmp_path, capsys):
    from jextend import random_conjugation

    data = {"dim": 8, "conjugation": io.encode_matrix(random_conjugation(8, 3).coeff)}
    assert main(["split", write(tmp_path, data), "--tol", "1e-10"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert max(v for k, v in out.items() if k.startswith("residual")) <= 1e-10


def test_gen_then_check(tmp_path):
    out = tmp_path / "g.json"
    assert main(["gen", "--mode", "skew", "--dim", "4", "--domain", "2", "--seed", "7", "--out", str(out)]) == 0
    assert main(["check", str(out)]) == 0
    assert main(["extend", str(out)]) == 0


def test_gen_empty_domain(tmp_path):
    out = tmp_path / "g.json"
    assert main(["gen", "--mode", "isometric", "--dim", "3", "--domain", "0", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["domain_basis"] == []


def test_gen_bad_flags_exit_3(tmp_path):
    assert main(["gen", "--mode", "skew", "--dim", "2", "--domain", "3"]) == 3
    with pytest.raises(SystemExit) as info:
        main(["gen", "--mode", "skew"])
    assert info.value.code == 3


@settings(max_examples=30, deadline=None)
@given(n=st.integers(1, 6), data=st.data(), seed=st.integers(0, 10**6), mode=st.sampled_from(["skew", "isometric"]))
def test_round_trip(n, data, seed, mode):
    m = data.draw(st.integers(0, n))
    P = (gen_case_a if mode == "skew" else gen_case_b)(n, m, seed)
    text = io.dumps(io.problem_to_dict(P))
    Q = io.problem_from_dict(json.loads(text))
    assert np.array_equal(Q.conjugation.coeff, P.conjugation.coeff)
    assert np.array_equal(Q.op.domain, P.op.domain)
    assert np.array_equal(Q.op.action, P.op.action)
    assert io.dumps(io.problem_to_dict(Q)) == text


def test_gen_extend_pipeline(tmp_path):
    failures = []
    for mode in ("skew", "isometric"):
        for k in range(200):
            n = 1 + k % 8
            path = tmp_path / f"{mode}{k}.json"
            args = ["gen", "--mode", mode, "--dim", str(n), "--domain", str((k // 8) % (n + 1)), "--seed", str(k)]
            assert main(args + ["--out", str(path)]) == 0
            code = main(["extend", str(path), "--out", str(tmp_path / "r.json")])
            if code:
                failures.append((mode, k, code))
    assert not failures
